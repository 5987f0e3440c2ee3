"""Exact rational linear algebra: vectors, row reduction, subspaces.

Everything here works on tuples of :class:`fractions.Fraction`, so rank and
membership decisions are exact.  The quantum side of the package uses floats
and lives in :mod:`conebelief.hermitian` instead.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(values) -> Vec:
    return tuple(Fraction(v) for v in values)


def zero_vec(d: int) -> Vec:
    return (ZERO,) * d


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c, a: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * x for x in a)


def vdot(a: Vec, b: Vec) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), ZERO)


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def primitive(a: Vec) -> Vec:
    """Scale a rational vector by a positive factor to a primitive integer vector."""
    if is_zero_vec(a):
        return a
    denom_lcm = 1
    for x in a:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in a]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return tuple(Fraction(v, g) for v in ints)


def rref(rows: list[Vec]) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if not rows:
        return [], []
    d = len(rows[0])
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(d):
        pr = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    out = [tuple(row) for row in mat[:r]]
    return out, pivots


def rank(rows: list[Vec]) -> int:
    return len(rref(rows)[0])


def nullspace(rows: list[Vec], d: int) -> list[Vec]:
    """Basis of {x : R x = 0} for the given constraint rows."""
    red, pivots = rref(list(rows))
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fc in free:
        x = [ZERO] * d
        x[fc] = ONE
        for row, pc in zip(red, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return basis


class Subspace:
    """A linear subspace of rational d-space, kept in canonical rref basis form."""

    __slots__ = ("dim_ambient", "basis")

    def __init__(self, dim_ambient: int, vectors=()):
        self.dim_ambient = dim_ambient
        red, _ = rref([vec(v) for v in vectors])
        self.basis: tuple[Vec, ...] = tuple(red)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vec) -> bool:
        return is_zero_vec(self.reduce(v))

    def reduce(self, v: Vec) -> Vec:
        """Canonical representative of v modulo this subspace."""
        x = list(v)
        for row in self.basis:
            pc = next(i for i, val in enumerate(row) if val != 0)
            if x[pc] != 0:
                f = x[pc]
                x = [a - f * b for a, b in zip(x, row)]
        return tuple(x)

    def annihilators(self) -> list[Vec]:
        """Functionals a with <a, s> = 0 for every s in the subspace."""
        return nullspace([list(b) for b in self.basis], self.dim_ambient)

    def add(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.dim_ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        rows = self.annihilators() + other.annihilators()
        return Subspace(self.dim_ambient, nullspace(rows, self.dim_ambient))

    def includes(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(b) for b in other.basis)

    def _check(self, other: "Subspace"):
        if self.dim_ambient != other.dim_ambient:
            from .errors import InputError

            raise InputError(
                f"subspace dimension mismatch: {self.dim_ambient} vs {other.dim_ambient}"
            )

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.dim_ambient == other.dim_ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.dim_ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.dim_ambient})"
