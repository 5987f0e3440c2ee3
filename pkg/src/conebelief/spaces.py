"""Concrete option spaces: gambles on a finite possibility space, and
Hermitian measurement operators on a finite-dimensional complex Hilbert space.

A classical option is a rational gamble table (one value per atom, in atom
order); a quantum option is an n x n complex Hermitian matrix.  Both are
coordinatized into real vectors of the ambient dimension (|atoms| or n^2),
and both carry a background ordering: pointwise nonnegativity for gambles,
positive semidefiniteness for measurements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import hermitian as hm
from .errors import InputError
from .linalg import Vec, vec, zero_vec

CLASSICAL = "classical"
QUANTUM = "quantum"

# Quantum weak ordering: accept lambda_min down to this tolerance.
WEAK_EIG_TOL = 1e-10


@dataclass(frozen=True)
class Space:
    """Descriptor of one option space.

    classical: ``atoms`` is the ordered tuple of distinct atom labels.
    quantum: ``dim`` is the Hilbert-space dimension n.
    """

    kind: str
    atoms: tuple[str, ...] = ()
    dim: int = 0

    def __post_init__(self):
        if self.kind == CLASSICAL:
            if not self.atoms:
                raise InputError("classical space needs at least one atom")
            if len(set(self.atoms)) != len(self.atoms):
                raise InputError("atom labels must be distinct")
        elif self.kind == QUANTUM:
            if self.dim < 1:
                raise InputError("quantum dimension must be >= 1")
        else:
            raise InputError(f"unknown space kind {self.kind!r}")

    @classmethod
    def classical(cls, atoms) -> "Space":
        return cls(kind=CLASSICAL, atoms=tuple(atoms))

    @classmethod
    def quantum(cls, n: int) -> "Space":
        return cls(kind=QUANTUM, dim=n)

    @property
    def is_classical(self) -> bool:
        return self.kind == CLASSICAL

    @property
    def ambient_dim(self) -> int:
        return len(self.atoms) if self.is_classical else self.dim * self.dim

    def zero_option(self):
        if self.is_classical:
            return zero_vec(len(self.atoms))
        return np.zeros((self.dim, self.dim), dtype=complex)

    def unit_option(self):
        if self.is_classical:
            return vec([1] * len(self.atoms))
        return np.eye(self.dim, dtype=complex)

    def validate_option(self, u):
        if self.is_classical:
            u = vec(u)
            if len(u) != len(self.atoms):
                raise InputError(
                    f"gamble has {len(u)} entries for {len(self.atoms)} atoms"
                )
            return u
        u = hm.check_hermitian(u)
        if u.shape[0] != self.dim:
            raise InputError(f"matrix is {u.shape[0]}x{u.shape[0]}, space is n={self.dim}")
        return u

    def __repr__(self):
        if self.is_classical:
            return f"Space(classical, atoms={list(self.atoms)})"
        return f"Space(quantum, n={self.dim})"


def coordinatize(space: Space, u):
    """Real coordinate vector of an option (exact classically, float quantum)."""
    u = space.validate_option(u)
    if space.is_classical:
        return u
    return hm.coordinatize(u)


def uncoordinatize(space: Space, x):
    if space.is_classical:
        return space.validate_option(x)
    return hm.uncoordinatize(np.asarray(x, float), space.dim)


def options_equal(space: Space, u, v, tol: float = 1e-9) -> bool:
    if space.is_classical:
        return vec(u) == vec(v)
    return bool(np.linalg.norm(np.asarray(u) - np.asarray(v)) <= tol)


def background_weak(space: Space, u) -> bool:
    """u >= 0 in the background ordering (includes the null option)."""
    u = space.validate_option(u)
    if space.is_classical:
        return all(x >= 0 for x in u)
    return hm.min_eigenvalue(u) >= -WEAK_EIG_TOL


def background_strict(space: Space, u) -> bool:
    """u > 0: weakly positive and not the null option."""
    u = space.validate_option(u)
    if space.is_classical:
        return background_weak(space, u) and not all(x == 0 for x in u)
    return background_weak(space, u) and np.linalg.norm(u) > WEAK_EIG_TOL


def archimedean_bound(space: Space, u):
    """Smallest shift alpha >= 0 with u + alpha * unit weakly positive."""
    u = space.validate_option(u)
    if space.is_classical:
        return max(Fraction(0), max(-x for x in u))
    return max(0.0, -hm.min_eigenvalue(u))


def scale_option(space: Space, c, u):
    if space.is_classical:
        c = Fraction(c)
        return tuple(c * x for x in vec(u))
    return float(c) * np.asarray(u, dtype=complex)


def add_options(space: Space, u, v):
    if space.is_classical:
        return tuple(a + b for a, b in zip(vec(u), vec(v), strict=True))
    return np.asarray(u, dtype=complex) + np.asarray(v, dtype=complex)


def neg_option(space: Space, u):
    return scale_option(space, -1, u)


def basis_options(space: Space) -> list:
    """Options forming the fixed coordinate basis of the space."""
    if space.is_classical:
        d = len(space.atoms)
        out = []
        for i in range(d):
            e = [Fraction(0)] * d
            e[i] = Fraction(1)
            out.append(tuple(e))
        return out
    n = space.dim
    return [hm.uncoordinatize(row, n) for row in np.eye(n * n)]


def parse_number(v) -> Fraction:
    """Accept ints, 'p/q' strings, or floats that are exactly representable."""
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, bool):
        raise InputError("boolean is not a number")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        if v != int(v):
            return Fraction(v).limit_denominator(10**9)
        return Fraction(int(v))
    raise InputError(f"cannot parse number {v!r}")


def option_to_json(space: Space, u):
    if space.is_classical:
        out = []
        for x in vec(u):
            out.append(int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}")
        return out
    u = space.validate_option(u)
    return [[[float(z.real), float(z.imag)] for z in row] for row in u]


def option_from_json(space: Space, data):
    if space.is_classical:
        if not isinstance(data, list) or len(data) != len(space.atoms):
            raise InputError("gamble array has wrong length")
        return tuple(parse_number(v) for v in data)
    try:
        mat = np.array(
            [[complex(ent[0], ent[1]) for ent in row] for row in data], dtype=complex
        )
    except (TypeError, IndexError) as exc:
        raise InputError(f"bad quantum option encoding: {exc}") from exc
    return space.validate_option(mat)
