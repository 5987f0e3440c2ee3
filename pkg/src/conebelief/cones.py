"""Polyhedral cones with exact double description conversion.

A cone is kept in both representations: generators (lineality basis + extreme
rays) and halfspaces (equality normals + inequality normals ``<h, x> >= 0``).
Conversion runs the incremental double description method over rationals,
factoring out the lineality space first so degenerate (lower-dimensional)
cones are handled uniformly; the dual direction reuses the same routine on
the polar cone.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .linalg import (
    Subspace,
    Vec,
    is_zero_vec,
    primitive,
    rank,
    rref,
    vdot,
    vec,
    vscale,
    vsub,
)
from .lp import posi_member


def _reduce_mod(basis, v: Vec) -> Vec:
    x = list(v)
    for row in basis:
        pc = next(i for i, val in enumerate(row) if val != 0)
        if x[pc] != 0:
            f = x[pc]
            x = [a - f * b for a, b in zip(x, row)]
    return tuple(x)


def dd_h_to_v(d: int, eq_rows, ineq_rows) -> tuple[list[Vec], list[Vec]]:
    """Generators (lineality basis, extreme rays) of {x : Ex = 0, Hx >= 0}."""
    lin: list[Vec] = [
        tuple(Fraction(1 if j == i else 0) for j in range(d)) for i in range(d)
    ]
    rays: list[Vec] = []
    processed: list[Vec] = []

    def canon(rs):
        lin_t = tuple(lin)
        out, seen = [], set()
        for r in rs:
            r = primitive(_reduce_mod(lin_t, r))
            if is_zero_vec(r) or r in seen:
                continue
            seen.add(r)
            out.append(r)
        return out

    def shrink_lineality(a: Vec):
        """Split off a lineality direction not orthogonal to a; None if all are."""
        nonlocal lin, rays
        vals = [vdot(a, l) for l in lin]
        k = next((i for i, v in enumerate(vals) if v != 0), None)
        if k is None:
            return None
        lstar = lin[k] if vals[k] > 0 else vscale(-1, lin[k])
        vstar = vdot(a, lstar)
        new_lin = [
            vsub(l, vscale(vals[i] / vals[k], lin[k]))
            for i, l in enumerate(lin)
            if i != k
        ]
        lin = list(rref(new_lin)[0])
        rays = [vsub(r, vscale(vdot(a, r) / vstar, lstar)) for r in rays]
        return lstar

    for a in [vec(r) for r in eq_rows]:
        if shrink_lineality(a) is not None:
            rays = canon(rays)
            continue
        vals = [vdot(a, r) for r in rays]
        zero = [r for r, v in zip(rays, vals) if v == 0]
        pos = [(r, v) for r, v in zip(rays, vals) if v > 0]
        neg = [(r, v) for r, v in zip(rays, vals) if v < 0]
        combos = [vsub(vscale(vp, q), vscale(vq, p)) for p, vp in pos for q, vq in neg]
        rays = canon(zero + combos)

    for h in [vec(r) for r in ineq_rows]:
        lstar = shrink_lineality(h)
        if lstar is not None:
            rays = canon(rays + [lstar])
            processed.append(h)
            continue
        vals = [vdot(h, r) for r in rays]
        if all(v >= 0 for v in vals):
            processed.append(h)
            continue
        zsets = [
            frozenset(k for k, row in enumerate(processed) if vdot(row, r) == 0)
            for r in rays
        ]
        keep = [r for r, v in zip(rays, vals) if v >= 0]
        combos = []
        for i, (p, vp) in enumerate(zip(rays, vals)):
            if vp <= 0:
                continue
            for j, (q, vq) in enumerate(zip(rays, vals)):
                if vq >= 0:
                    continue
                t = zsets[i] & zsets[j]
                adjacent = not any(
                    k not in (i, j) and zsets[k] >= t for k in range(len(rays))
                )
                if adjacent:
                    combos.append(vsub(vscale(vp, q), vscale(vq, p)))
        rays = canon(keep + combos)
        processed.append(h)

    return list(rref(lin)[0]), rays


def _prune_rays(lineality, rays):
    """Drop rays that are nonnegative combinations of the remaining generators."""
    kept = list(rays)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1 :]
        gens = others + list(lineality) + [vscale(-1, l) for l in lineality]
        if gens and posi_member(kept[i], gens).kind == "feasible":
            kept.pop(i)
        else:
            i += 1
    return kept


class PolyCone:
    """A closed polyhedral cone with both representations cached."""

    __slots__ = ("d", "lineality", "rays", "eq", "ineq")

    def __init__(self, d, lineality, rays, eq, ineq):
        self.d = d
        self.lineality: Subspace = lineality
        self.rays: tuple[Vec, ...] = tuple(rays)
        self.eq: tuple[Vec, ...] = tuple(eq)
        self.ineq: tuple[Vec, ...] = tuple(ineq)

    @classmethod
    def from_halfspaces(cls, d: int, ineq=(), eq=()) -> "PolyCone":
        eq = [vec(r) for r in eq]
        ineq = [vec(r) for r in ineq]
        for r in eq + ineq:
            if len(r) != d:
                raise InputError("halfspace normal has wrong dimension")
        lin, rays = dd_h_to_v(d, eq, ineq)
        rays = _prune_rays(lin, rays)
        return cls(d, Subspace(d, lin), rays, eq, ineq)

    @classmethod
    def from_generators(cls, d: int, rays=(), lineality=()) -> "PolyCone":
        rays = [vec(r) for r in rays]
        lineality = [vec(r) for r in lineality]
        for r in rays + lineality:
            if len(r) != d:
                raise InputError("generator has wrong dimension")
        lin_s = Subspace(d, lineality)
        rays = [primitive(lin_s.reduce(r)) for r in rays]
        rays = [r for r in rays if not is_zero_vec(r)]
        # The polar cone of the generators, computed by the same DD routine,
        # yields the halfspace normals of the primal cone; a second pass
        # canonicalizes the generator side.
        eq, ineq = dd_h_to_v(d, list(lin_s.basis), rays)
        lin2, rays2 = dd_h_to_v(d, eq, ineq)
        rays2 = _prune_rays(lin2, rays2)
        return cls(d, Subspace(d, lin2), rays2, eq, ineq)

    def contains(self, v) -> bool:
        v = vec(v)
        return all(vdot(a, v) == 0 for a in self.eq) and all(
            vdot(h, v) >= 0 for h in self.ineq
        )

    def generators(self) -> list[Vec]:
        out = list(self.rays)
        for l in self.lineality.basis:
            out.append(l)
            out.append(vscale(-1, l))
        return out

    def includes(self, other: "PolyCone") -> bool:
        return all(self.contains(g) for g in other.generators())

    def equals(self, other: "PolyCone") -> bool:
        return self.includes(other) and other.includes(self)

    def intersection(self, other: "PolyCone") -> "PolyCone":
        self._check(other)
        return PolyCone.from_halfspaces(
            self.d, ineq=self.ineq + other.ineq, eq=self.eq + other.eq
        )

    def minkowski_sum(self, other: "PolyCone") -> "PolyCone":
        self._check(other)
        return PolyCone.from_generators(
            self.d,
            rays=self.rays + other.rays,
            lineality=self.lineality.basis + other.lineality.basis,
        )

    def is_pointed(self) -> bool:
        return self.lineality.dim == 0

    def dim(self) -> int:
        return rank([list(g) for g in self.generators()])

    def _check(self, other: "PolyCone"):
        if self.d != other.d:
            raise InputError("cone dimension mismatch")

    def __repr__(self):
        return f"PolyCone(d={self.d}, lin={self.lineality.dim}, rays={len(self.rays)})"


def dd_convert(cone: PolyCone, direction: str) -> PolyCone:
    """Recompute one representation from the other ('v_to_h' or 'h_to_v')."""
    if direction == "v_to_h":
        return PolyCone.from_generators(
            cone.d, rays=cone.rays, lineality=cone.lineality.basis
        )
    if direction == "h_to_v":
        return PolyCone.from_halfspaces(cone.d, ineq=cone.ineq, eq=cone.eq)
    raise InputError(f"unknown direction {direction!r}")
