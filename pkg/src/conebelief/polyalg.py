"""Exact reasoning about polyhedral cones minus unions of subspaces.

Reject sets and desirable sets in this package have the form
``(C \\ (X_1 u ... u X_m)) + P`` with C, P polyhedral cones and X_k linear
subspaces.  Everything needed about them reduces to rational LPs plus one
classical fact: a convex set contained in a finite union of subspaces is
contained in one of them.  That fact also makes witnesses constructive: from
points p_k avoiding X_k individually, a point avoiding all of them lies on a
segment between them, and only finitely many segment points can be bad.
"""

from __future__ import annotations

from fractions import Fraction

from .cones import PolyCone
from .errors import InputError
from .linalg import Subspace, Vec, vadd, vdot, vec, vscale, vsub, zero_vec
from .lp import FREE, solve_lp_mixed


def _region_rows(cone: PolyCone, x: Vec | None = None):
    """LP rows for w in cone (x=None) or for x - w in cone (x given)."""
    eqs, ineqs = [], []
    for a in cone.eq:
        if x is None:
            eqs.append((a, Fraction(0)))
        else:
            eqs.append((vscale(-1, a), -vdot(a, x)))
    for h in cone.ineq:
        if x is None:
            ineqs.append((h, Fraction(0)))
        else:
            ineqs.append((vscale(-1, h), -vdot(h, x)))
    return eqs, ineqs


class Region:
    """A polyhedron in w-space given by exact equality/inequality rows."""

    def __init__(self, d: int, eqs=(), ineqs=()):
        self.d = d
        self.eqs = list(eqs)
        self.ineqs = list(ineqs)

    def with_row(self, row, rhs, kind="eq") -> "Region":
        r = Region(self.d, self.eqs, self.ineqs)
        (r.eqs if kind == "eq" else r.ineqs).append((vec(row), Fraction(rhs)))
        return r

    def feasible_point(self) -> Vec | None:
        res = solve_lp_mixed(self.d, FREE * self.d, self.eqs, self.ineqs)
        return res.x if res.status == "feasible" else None

    def maximize(self, obj):
        return solve_lp_mixed(self.d, FREE * self.d, self.eqs, self.ineqs, objective=obj)

    def point_with_nonzero(self, functional) -> Vec | None:
        """A point of the region where the functional does not vanish."""
        functional = vec(functional)
        for sgn in (1, -1):
            res = self.maximize(vscale(sgn, functional))
            if res.status == "optimal" and res.value != 0:
                return res.x
            if res.status == "unbounded":
                if res.x is not None and vdot(functional, res.x) != 0:
                    return res.x
                pinned = self.with_row(functional, sgn, kind="eq")
                p = pinned.feasible_point()
                if p is not None:
                    return p
        return None

    def subset_of_subspace(self, x: Subspace) -> bool:
        return all(self.point_with_nonzero(a) is None for a in x.annihilators())

    def point_off_subspaces(self, subspaces) -> Vec | None:
        """A region point outside every given subspace, or None if covered.

        A convex set inside a finite union of subspaces lies inside one of
        them, so "no such point" is equivalent to the region being covered by
        a single subspace, which is LP-testable.  The combining step walks a
        segment between partial witnesses: a subspace not containing one
        endpoint meets the segment in at most one point, so with m subspaces
        some candidate among m+1 rational parameters survives.
        """
        subspaces = list(subspaces)
        if self.feasible_point() is None:
            return None
        if any(x.dim == x.dim_ambient for x in subspaces):
            return None
        # A witness off each subspace individually, or covered by that one.
        partial: list[Vec] = []
        for x in subspaces:
            q = None
            for a in x.annihilators():
                q = self.point_with_nonzero(a)
                if q is not None:
                    break
            if q is None:
                return None
            partial.append(q)
        if not subspaces:
            return self.feasible_point()
        w = partial[0]
        for k in range(1, len(subspaces)):
            if not subspaces[k].contains(w):
                continue
            w = _segment_point_off(w, partial[k], subspaces[: k + 1])
        return w


def _segment_point_off(p: Vec, q: Vec, subspaces) -> Vec:
    """A convex combination of p and q outside every listed subspace, given
    that each subspace misses p or misses q (so spoils at most one point)."""
    m = len(subspaces)
    for i in range(1, m + 2):
        t = Fraction(i, m + 2)
        cand = vadd(vscale(1 - t, p), vscale(t, q))
        if all(not x.contains(cand) for x in subspaces):
            return cand
    raise AssertionError("segment search must succeed by the counting bound")


def strict_sum_region(x: Vec, carrier: PolyCone, ambient: PolyCone) -> Region:
    """Region of decompositions w with w in carrier and x - w in ambient."""
    if carrier.d != ambient.d:
        raise InputError("carrier/ambient dimension mismatch")
    e1, i1 = _region_rows(carrier)
    e2, i2 = _region_rows(ambient, x)
    return Region(carrier.d, e1 + e2, i1 + i2)


def strict_sum_member(x, carrier: PolyCone, excluded, ambient: PolyCone) -> bool:
    """Exact membership of x in (carrier \\ union(excluded)) + ambient."""
    x = vec(x)
    region = strict_sum_region(x, carrier, ambient)
    if region.feasible_point() is None:
        return False
    return region.point_off_subspaces(list(excluded)) is not None


def cone_intersect_subspace(cone: PolyCone, x: Subspace) -> PolyCone:
    return PolyCone.from_halfspaces(
        cone.d, ineq=cone.ineq, eq=list(cone.eq) + list(x.annihilators())
    )


def dset_subset(c1: PolyCone, x1, c2: PolyCone, x2):
    """Exact test of (c1 \\ union(x1)) subset of (c2 \\ union(x2)).

    Returns (True, None) or (False, witness) with the witness a point of the
    left set outside the right one.
    """
    x1 = list(x1)
    x2 = list(x2)
    d = c1.d

    # Violations of the cone part: a point of c1 off union(x1) that breaks
    # one of c2's halfspaces or equalities.
    base_eqs, base_ineqs = _region_rows(c1)
    probes = [(h, Fraction(-1), "ineq-neg") for h in c2.ineq]
    probes += [(a, Fraction(1), "eq") for a in c2.eq]
    probes += [(a, Fraction(-1), "eq") for a in c2.eq]
    for row, val, _kind in probes:
        region = Region(d, base_eqs + [(vec(row), val)], base_ineqs)
        w = region.point_off_subspaces(x1)
        if w is not None:
            return False, w

    # Violations of the exclusions: a point of c1 inside some excluded
    # subspace of the right set but off union(x1).
    for xk in x2:
        k_eqs = base_eqs + [(a, Fraction(0)) for a in xk.annihilators()]
        region = Region(d, k_eqs, base_ineqs)
        w = region.point_off_subspaces(x1)
        if w is not None:
            return False, w
    return True, None


def cone_subset(c1: PolyCone, c2: PolyCone):
    """Inclusion of plain cones; returns (bool, witness generator or None)."""
    for g in c1.generators():
        if not c2.contains(g):
            return False, g
    return True, None
