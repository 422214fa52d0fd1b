"""Families of pairwise nonintersecting subspaces over fixed finite alphabets.

The package builds maximal sets of t-dimensional subspaces of m-dimensional
space, any two meeting only at the origin, with generator matrices whose
entries come from a finite field or from a small set of roots of unity.
It certifies the nonintersection property exactly, measures the geometry
of a family (principal angles, diversity products), and searches for
larger families by clique methods.
"""

__version__ = "0.1.0"
