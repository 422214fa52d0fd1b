"""On-disk interchange format for subspace families.

A code file is JSON with a fixed shape: format_version, kind, alphabet
parameters, dimensions, the symbol rows of every subspace, a provenance
block, and an optional verification certificate.  Symbols are stored
exactly: finite-field entries as element indices under the recorded
defining polynomial, complex entries as "Z" for zero or the integer
exponent j for zeta_n^j.  Nothing floating-point is ever written, so a
file round-trips losslessly.

Files with an empty subspace list are readable (verification treats them
as vacuous); converting one to an in-memory family raises.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .codes_ff import CodeFF, SubspaceFF
from .gf import (
    Field,
    NotIrreducibleError,
    NotPrimeError,
    NotPrimitiveError,
)
from .lift import CodeC, SubspaceC

FORMAT_VERSION = 1
KINDS = ("finite-field", "lifted", "psk", "search")


class CodeFileError(ValueError):
    """The file is not a well-formed code file."""


@dataclass
class CodeFileData:
    """Parsed file contents, still symbol-level."""

    format_version: int
    kind: str
    parameters: dict
    m: int
    mt: int
    subspaces: list
    provenance: dict
    certificate: dict | None

    def is_empty(self) -> bool:
        return not self.subspaces

    def is_finite_field(self) -> bool:
        return self.kind == "finite-field"

    def field(self) -> Field:
        if not self.is_finite_field():
            raise CodeFileError("not a finite-field code file")
        p = self.parameters["p"]
        k = self.parameters["k"]
        poly = self.parameters["poly"]
        try:
            return Field(p, k, poly)
        except (NotPrimeError, NotIrreducibleError, NotPrimitiveError,
                ValueError) as e:
            raise CodeFileError(f"bad field parameters: {e}") from e

    def to_code(self) -> CodeFF | CodeC:
        """Reconstruct the in-memory family; empty files raise."""
        if self.is_empty():
            raise CodeFileError("code file contains no subspaces")
        try:
            if self.is_finite_field():
                f = self.field()
                planes = [SubspaceFF(f, tuple(tuple(int(x) for x in row)
                                              for row in rows))
                          for rows in self.subspaces]
                return CodeFF(f, self.m, self.mt, planes,
                              dict(self.provenance))
            n = self.parameters["n"]
            planes = [
                SubspaceC(n, tuple(tuple(None if x == "Z" else int(x)
                                         for x in row) for row in rows))
                for rows in self.subspaces]
            return CodeC(n, self.m, self.mt, planes, dict(self.provenance),
                         self.certificate if self.certificate else None)
        except CodeFileError:
            raise
        except (TypeError, ValueError) as e:
            raise CodeFileError(f"inconsistent subspace data: {e}") from e


def _infer_kind(code: CodeFF | CodeC) -> str:
    if isinstance(code, CodeFF):
        return "finite-field"
    construction = str(code.provenance.get("construction", ""))
    if "search" in construction:
        return "search"
    if "psk" in construction:
        return "psk"
    return "lifted"


def _parameters_for(code: CodeFF | CodeC, kind: str) -> dict:
    if isinstance(code, CodeFF):
        return {"p": code.field.p, "k": code.field.k, "q": code.field.q,
                "poly": list(code.field.poly)}
    if kind == "psk":
        includes_zero = False
    elif kind == "search":
        includes_zero = bool(code.provenance.get("include_zero", False))
    else:
        includes_zero = True
    return {"n": code.n, "includes_zero": includes_zero}


def _symbol_rows(code: CodeFF | CodeC) -> list:
    if isinstance(code, CodeFF):
        return [[list(row) for row in s.rows] for s in code.planes]
    return [[["Z" if x is None else int(x) for x in row] for row in s.rows]
            for s in code.planes]


def write_code_file(path, code: CodeFF | CodeC,
                    certificate: dict | None = None) -> None:
    """Serialize a family; pass a certificate only for in-process runs."""
    kind = _infer_kind(code)
    if certificate is None and isinstance(code, CodeC):
        certificate = code.certificate
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "parameters": _parameters_for(code, kind),
        "m": code.m,
        "mt": code.t,
        "subspaces": _symbol_rows(code),
        "provenance": code.provenance,
    }
    if certificate is not None:
        doc["certificate"] = certificate
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_code_file(path) -> CodeFileData:
    """Parse and validate the JSON shape; raises CodeFileError on damage."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise CodeFileError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise CodeFileError(f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise CodeFileError("top level must be an object")
    for key in ("format_version", "kind", "parameters", "m", "mt",
                "subspaces", "provenance"):
        if key not in doc:
            raise CodeFileError(f"missing field {key!r}")
    if doc["format_version"] != FORMAT_VERSION:
        raise CodeFileError(
            f"unsupported format_version {doc['format_version']!r}")
    kind = doc["kind"]
    if kind not in KINDS:
        raise CodeFileError(f"unknown kind {kind!r}")
    params = doc["parameters"]
    if not isinstance(params, dict):
        raise CodeFileError("parameters must be an object")
    required = ("p", "k", "poly") if kind == "finite-field" else ("n",)
    for key in required:
        if key not in params:
            raise CodeFileError(f"parameters missing {key!r} for {kind}")
    m, mt = doc["m"], doc["mt"]
    if not (isinstance(m, int) and isinstance(mt, int) and 0 < mt <= m):
        raise CodeFileError("bad dimensions m/mt")
    subspaces = doc["subspaces"]
    if not isinstance(subspaces, list):
        raise CodeFileError("subspaces must be a list")
    for rows in subspaces:
        if not (isinstance(rows, list) and len(rows) == mt):
            raise CodeFileError("each subspace needs exactly mt rows")
        for row in rows:
            if not (isinstance(row, list) and len(row) == m):
                raise CodeFileError("each row needs exactly m symbols")
            for x in row:
                if kind == "finite-field":
                    if not isinstance(x, int):
                        raise CodeFileError(f"bad field symbol {x!r}")
                elif not (x == "Z" or isinstance(x, int)):
                    raise CodeFileError(f"bad complex symbol {x!r}")
    cert = doc.get("certificate")
    if cert is not None and not isinstance(cert, dict):
        raise CodeFileError("certificate must be an object")
    return CodeFileData(
        format_version=doc["format_version"],
        kind=kind,
        parameters=params,
        m=m,
        mt=mt,
        subspaces=subspaces,
        provenance=doc["provenance"],
        certificate=cert,
    )
