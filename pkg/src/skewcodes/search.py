"""Clique search for large families of nonintersecting planes.

The pipeline: enumerate every plane spanned by two independent alphabet
vectors (deduplicated by exact canonical form), build the graph whose
edges join exactly nonintersecting planes, then find a large clique.
A clique is precisely a pairwise nonintersecting family.

Two search modes: a branch-and-bound maximum-clique solver with greedy
coloring bounds (proves optimality when it runs to completion), and a
seeded iterated-local-search heuristic whose budget counts improvement
rounds, so results are reproducible for a fixed seed and rng seed.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from itertools import product
from multiprocessing import Pool
from random import Random

from .cyclotomic import canonical_rref, cyc_rank
from .lift import SubspaceC, pair_nonintersecting_c


class LimitExceededError(ValueError):
    """Candidate enumeration would exceed the configured pair limit."""


class TooLargeError(ValueError):
    """Graph is beyond the exact-search vertex bound."""


class InvalidSeedError(ValueError):
    """Seed clique has unknown vertices or a non-adjacent pair."""


@dataclass
class CandidateSet:
    """Deduplicated candidate planes over one alphabet.

    One plane per distinct row space; each kept plane is the first
    generator pair found in the deterministic enumeration order.
    """

    n: int
    include_zero: bool
    m: int
    planes: list[SubspaceC]

    def __len__(self) -> int:
        return len(self.planes)


def _alphabet_vectors(n: int, m: int, include_zero: bool):
    symbols: list[int | None] = ([None] if include_zero else [])
    symbols += list(range(n))
    for vec in product(symbols, repeat=m):
        if any(x is not None for x in vec):
            yield vec


def enumerate_planes(n: int, m: int, include_zero: bool = False,
                     limit: int = 2_000_000) -> CandidateSet:
    """All distinct planes spanned by two independent alphabet vectors.

    Vectors run in lexicographic symbol order (zero first when present);
    pairs run in index order, so the output is deterministic.
    """
    if n < 1:
        raise ValueError("alphabet needs a positive root order")
    if m < 2:
        raise ValueError("planes need ambient dimension >= 2")
    count = (n + 1) ** m - 1 if include_zero else n ** m
    pairs = count * (count - 1) // 2
    if pairs > limit:
        raise LimitExceededError(
            f"{count} vectors give {pairs} pairs, over the limit of {limit}")
    vectors = list(_alphabet_vectors(n, m, include_zero))
    planes: list[SubspaceC] = []
    seen: set = set()
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            cand = SubspaceC(n, (vectors[i], vectors[j]))
            rows = cand.cyc_rows()
            if cyc_rank(rows) != 2:
                continue
            key = canonical_rref(rows)
            if key in seen:
                continue
            seen.add(key)
            planes.append(cand)
    return CandidateSet(n, include_zero, m, planes)


def canonical_key(plane: SubspaceC):
    """The exact row-space identity used for deduplication."""
    return canonical_rref(plane.cyc_rows())


@dataclass
class DisjointnessGraph:
    """Vertices are candidate planes; edges are exact nonintersections."""

    count: int
    adjacency: list[int]  # bitmask per vertex, symmetric, no self loops

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2

    def digest(self) -> str:
        """Stable identity of the graph for search provenance."""
        h = hashlib.sha256()
        h.update(f"{self.count};".encode())
        h.update(";".join(format(a, "x") for a in self.adjacency).encode())
        return h.hexdigest()


_GRAPH_PLANES: list[SubspaceC] | None = None


def _graph_init(planes: list[SubspaceC]) -> None:
    global _GRAPH_PLANES
    _GRAPH_PLANES = planes


def _graph_rows(rows: list[int]) -> list[tuple[int, int]]:
    planes = _GRAPH_PLANES
    out = []
    for i in rows:
        mask = 0
        for j in range(i + 1, len(planes)):
            if pair_nonintersecting_c(planes[i], planes[j]):
                mask |= 1 << j
        out.append((i, mask))
    return out


def build_graph(candidates: CandidateSet,
                jobs: int | None = None) -> DisjointnessGraph:
    """Exact pairwise nonintersection tests over all candidate pairs."""
    planes = candidates.planes
    n = len(planes)
    if jobs and jobs > 1 and n >= 64:
        chunks = [list(range(c, n, jobs * 4)) for c in range(jobs * 4)]
        with Pool(jobs, initializer=_graph_init,
                  initargs=(planes,)) as pool:
            results = pool.map(_graph_rows, [c for c in chunks if c])
        upper = dict(pair for chunk in results for pair in chunk)
        adjacency = [upper[i] for i in range(n)]
    else:
        _graph_init(planes)
        adjacency = [mask for _, mask in _graph_rows(list(range(n)))]
    for i in range(n):
        mask = adjacency[i]
        while mask:
            j = (mask & -mask).bit_length() - 1
            adjacency[j] |= 1 << i
            mask &= mask - 1
    return DisjointnessGraph(n, adjacency)


@dataclass
class CliqueResult:
    """A pairwise adjacent vertex set plus how it was found."""

    vertices: list[int]
    exact: bool
    nodes: int
    seconds: float
    warning: str | None = None

    @property
    def size(self) -> int:
        return len(self.vertices)


def _check_clique(graph: DisjointnessGraph, vertices) -> None:
    vs = list(vertices)
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            if not graph.has_edge(vs[a], vs[b]):
                raise InvalidSeedError(
                    f"vertices {vs[a]} and {vs[b]} are not adjacent")


def _color_order(p_mask: int, adjacency: list[int]):
    """Greedy coloring; returns vertices with color numbers ascending."""
    order: list[int] = []
    bounds: list[int] = []
    color = 0
    while p_mask:
        color += 1
        avail = p_mask
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~adjacency[v] & ~(1 << v)
            p_mask &= ~(1 << v)
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique_exact(graph: DisjointnessGraph,
                     time_budget: float | None = None,
                     max_vertices: int = 5000) -> CliqueResult:
    """Branch-and-bound maximum clique with greedy coloring bounds.

    Runs to a proven optimum unless the wall-clock budget expires first;
    the result's exact flag records which happened, and the best clique
    found so far is returned either way.
    """
    if graph.count > max_vertices:
        raise TooLargeError(
            f"{graph.count} vertices exceed the exact bound {max_vertices}")
    start = time.monotonic()
    deadline = start + time_budget if time_budget else None
    adjacency = graph.adjacency
    best: list[int] = []
    nodes = 0
    aborted = False

    def expand(r: list[int], p_mask: int) -> None:
        nonlocal best, nodes, aborted
        nodes += 1
        if aborted or (deadline and time.monotonic() > deadline):
            aborted = True
            return
        order, bounds = _color_order(p_mask, adjacency)
        for idx in range(len(order) - 1, -1, -1):
            if len(r) + bounds[idx] <= len(best):
                return
            v = order[idx]
            r.append(v)
            new_p = p_mask & adjacency[v]
            if new_p:
                expand(r, new_p)
            elif len(r) > len(best):
                best = r.copy()
            r.pop()
            p_mask &= ~(1 << v)
            if aborted:
                return

    if graph.count:
        expand([], (1 << graph.count) - 1)
    result = CliqueResult(
        vertices=sorted(best),
        exact=not aborted,
        nodes=nodes,
        seconds=time.monotonic() - start,
        warning="budget expired before optimality proof" if aborted else None,
    )
    _check_clique(graph, result.vertices)
    return result


def _greedy_extend(adjacency: list[int], clique: list[int],
                   order: list[int]) -> list[int]:
    out = list(clique)
    common = -1
    for v in out:
        common &= adjacency[v]
    for v in order:
        if common >> v & 1:
            out.append(v)
            common &= adjacency[v]
    return out


def clique_heuristic(graph: DisjointnessGraph,
                     seed_clique=(),
                     budget: int = 100,
                     rng_seed: int = 12345) -> CliqueResult:
    """Iterated local search: grow the seed, then perturb and regrow.

    The budget is a number of improvement rounds, not wall time, so a
    fixed (seed_clique, budget, rng_seed) always returns the same clique
    and a larger budget never returns a smaller one.  Budget 0 returns
    the seed unchanged.  Never returns fewer vertices than the seed.
    """
    seed = list(seed_clique)
    if len(set(seed)) != len(seed):
        raise InvalidSeedError("seed clique repeats a vertex")
    for v in seed:
        if not 0 <= v < graph.count:
            raise InvalidSeedError(f"seed vertex {v} out of range")
    _check_clique(graph, seed)
    start = time.monotonic()
    rng = Random(rng_seed)
    adjacency = graph.adjacency
    best = list(seed)
    cur = list(seed)
    for round_idx in range(budget):
        order = list(range(graph.count))
        rng.shuffle(order)
        if round_idx == 0:
            cand = _greedy_extend(adjacency, cur, order)
        else:
            cand = list(best)
            if cand:
                drop = rng.randrange(1, max(2, len(cand) // 2 + 1))
                for _ in range(drop):
                    cand.pop(rng.randrange(len(cand)))
            cand = _greedy_extend(adjacency, cand, order)
        if len(cand) > len(best):
            best = cand
    result = CliqueResult(
        vertices=sorted(best),
        exact=False,
        nodes=budget,
        seconds=time.monotonic() - start,
    )
    _check_clique(graph, result.vertices)
    return result


def verify_clique_planes(candidates: CandidateSet,
                         vertices: list[int]) -> bool:
    """Re-verify a clique straight from the planes, ignoring the graph."""
    for a in range(len(vertices)):
        for b in range(a + 1, len(vertices)):
            pa = candidates.planes[vertices[a]]
            pb = candidates.planes[vertices[b]]
            if not pair_nonintersecting_c(pa, pb):
                return False
    return True


def seed_indices(candidates: CandidateSet,
                 planes: list[SubspaceC]) -> list[int]:
    """Map externally supplied planes onto candidate vertices.

    Matching is by exact row space, so any generator of the same plane
    works.  A plane absent from the candidate set raises InvalidSeed.
    """
    lookup = {canonical_key(p): i for i, p in enumerate(candidates.planes)}
    out = []
    for p in planes:
        key = canonical_key(p)
        if key not in lookup:
            raise InvalidSeedError("seed plane is not in the candidate set")
        out.append(lookup[key])
    return out
