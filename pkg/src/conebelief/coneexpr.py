"""Symbolic accept cones and their membership oracles.

An accept cone is an expression tree over a handful of node kinds: finitely
generated cones (optionally absorbing the background cone), halfspaces from a
precise linear functional, pullbacks through calling-off maps, intersections,
Minkowski sums, and span augmentations.  Classical expressions flatten to an
exact :class:`~conebelief.cones.PolyCone` (cached); quantum expressions
compile membership queries into PSD margin problems solved by column
generation.
"""

from __future__ import annotations

import numpy as np

from . import events as ev
from . import hermitian as hm
from . import spaces as sp
from .cones import PolyCone
from .errors import InputError
from .linalg import Subspace, vec
from .psd import MarginOutcome, NumSystem, PsdTerm, solve_margin
from .spaces import Space


class ConeExpr:
    """Base class; every node knows its space and caches a classical flatten."""

    __slots__ = ("space", "_flat")

    def __init__(self, space: Space):
        self.space = space
        self._flat = None

    def flatten(self) -> PolyCone:
        if not self.space.is_classical:
            raise InputError("flatten is classical-only; quantum cones are oracles")
        if self._flat is None:
            self._flat = self._flatten()
        return self._flat

    def member(self, u, tol_mode: bool = False):
        """Membership of an option; classical bool, quantum bool | None."""
        u = self.space.validate_option(u)
        if self.space.is_classical:
            return self.flatten().contains(u)
        builder = QuantumBuilder(self.space)
        self._compile(builder, AffineMat(np.asarray(u, complex)))
        return builder.decide()

    def _flatten(self) -> PolyCone:
        raise NotImplementedError

    def _compile(self, builder: "QuantumBuilder", target: "AffineMat"):
        raise NotImplementedError


class Gen(ConeExpr):
    """Nonnegative hull of finitely many options, plus the background cone
    (the orthant / PSD cone) when ``include_background`` is set."""

    __slots__ = ("gens", "include_background")

    def __init__(self, space, gens=(), include_background=True):
        super().__init__(space)
        self.gens = tuple(space.validate_option(g) for g in gens)
        self.include_background = include_background

    def _flatten(self):
        rays = [vec(g) for g in self.gens]
        if self.include_background:
            rays.extend(sp.basis_options(self.space))
        return PolyCone.from_generators(self.space.ambient_dim, rays=rays)

    def _compile(self, builder, target):
        expr = target
        for g in self.gens:
            lam = builder.new_var("+")
            expr = expr.minus_scaled(lam, np.asarray(g, complex))
        if self.include_background:
            builder.add_psd(expr)
        else:
            builder.add_zero(expr)


class Halfspace(ConeExpr):
    """{u : <c, u> >= 0} for a fixed functional (a prior / density matrix)."""

    __slots__ = ("normal",)

    def __init__(self, space, normal):
        super().__init__(space)
        self.normal = space.validate_option(normal)

    def _flatten(self):
        return PolyCone.from_halfspaces(self.space.ambient_dim, ineq=[vec(self.normal)])

    def _compile(self, builder, target):
        builder.add_ineq(target, np.asarray(self.normal, complex))


class Pullback(ConeExpr):
    """{u : call_off(event, u) in child}."""

    __slots__ = ("event", "child")

    def __init__(self, event: ev.Event, child: ConeExpr):
        if event.space != child.space:
            raise InputError("pullback event and cone live in different spaces")
        super().__init__(child.space)
        self.event = event
        self.child = child

    def _flatten(self):
        inner = self.child.flatten()
        # The calling-off map is self-adjoint, so halfspaces pull back by
        # applying the map to their normals.
        ineq = []
        for h in inner.ineq:
            h2 = ev.call_off_coords(self.event, h)
            if any(x != 0 for x in h2):
                ineq.append(h2)
        eq = []
        for a in inner.eq:
            a2 = ev.call_off_coords(self.event, a)
            if any(x != 0 for x in a2):
                eq.append(a2)
        return PolyCone.from_halfspaces(self.space.ambient_dim, ineq=ineq, eq=eq)

    def _compile(self, builder, target):
        p = self.event.projector
        self.child._compile(builder, target.conjugate_by(p))


class Intersect(ConeExpr):
    __slots__ = ("children",)

    def __init__(self, *children: ConeExpr):
        if not children:
            raise InputError("intersection needs at least one cone")
        super().__init__(children[0].space)
        for c in children:
            if c.space != self.space:
                raise InputError("intersection across spaces")
        self.children = tuple(children)

    def _flatten(self):
        flat = [c.flatten() for c in self.children]
        ineq = [h for f in flat for h in f.ineq]
        eq = [a for f in flat for a in f.eq]
        return PolyCone.from_halfspaces(self.space.ambient_dim, ineq=ineq, eq=eq)

    def _compile(self, builder, target):
        for c in self.children:
            c._compile(builder, target)


class MinkSum(ConeExpr):
    __slots__ = ("children",)

    def __init__(self, *children: ConeExpr):
        if not children:
            raise InputError("sum needs at least one cone")
        super().__init__(children[0].space)
        for c in children:
            if c.space != self.space:
                raise InputError("sum across spaces")
        self.children = tuple(children)

    def _flatten(self):
        flat = [c.flatten() for c in self.children]
        rays = [r for f in flat for r in f.rays]
        lin = [l for f in flat for l in f.lineality.basis]
        return PolyCone.from_generators(self.space.ambient_dim, rays=rays, lineality=lin)

    def _compile(self, builder, target):
        rest = target
        parts = []
        for _ in self.children[1:]:
            block = builder.new_matrix_block()
            parts.append(block)
            rest = rest.minus(block)
        self.children[0]._compile(builder, rest)
        for child, block in zip(self.children[1:], parts):
            child._compile(builder, block)


class SpanAug(ConeExpr):
    """child + span(basis): adds a linear space of free directions."""

    __slots__ = ("child", "basis")

    def __init__(self, child: ConeExpr, basis):
        super().__init__(child.space)
        self.basis = tuple(child.space.validate_option(b) for b in basis)
        self.child = child

    def _flatten(self):
        inner = self.child.flatten()
        return PolyCone.from_generators(
            self.space.ambient_dim,
            rays=inner.rays,
            lineality=list(inner.lineality.basis) + [vec(b) for b in self.basis],
        )

    def _compile(self, builder, target):
        expr = target
        for b in self.basis:
            nu = builder.new_var("f")
            expr = expr.minus_scaled(nu, np.asarray(b, complex))
        self.child._compile(builder, expr)


class AffineMat:
    """A Hermitian-matrix expression, affine in the builder's scalar unknowns."""

    __slots__ = ("const", "terms")

    def __init__(self, const, terms=()):
        self.const = const
        self.terms = list(terms)

    def minus_scaled(self, var: int, m: np.ndarray) -> "AffineMat":
        return AffineMat(self.const, self.terms + [(var, -m)])

    def minus(self, other: "AffineMat") -> "AffineMat":
        return AffineMat(
            self.const - other.const,
            self.terms + [(v, -m) for v, m in other.terms],
        )

    def conjugate_by(self, p: np.ndarray) -> "AffineMat":
        return AffineMat(p @ self.const @ p, [(v, p @ m @ p) for v, m in self.terms])


class QuantumBuilder:
    """Accumulates a :class:`~conebelief.psd.NumSystem` for one membership query.

    Rows are kept as sparse var->coeff maps until :meth:`system`, since new
    unknowns may appear after a row was recorded.
    """

    def __init__(self, space: Space):
        self.space = space
        self.signs: list[str] = []
        self.eqs: list[tuple[dict, float]] = []  # row . x = rhs
        self.ineqs: list[tuple[dict, float]] = []  # row . x >= rhs
        self.psd: list[PsdTerm] = []
        self._basis = sp.basis_options(space)

    def new_var(self, sign: str) -> int:
        self.signs.append(sign)
        return len(self.signs) - 1

    def new_matrix_block(self) -> AffineMat:
        terms = []
        for b in self._basis:
            v = self.new_var("f")
            terms.append((v, np.asarray(b, complex)))
        return AffineMat(np.zeros((self.space.dim, self.space.dim), complex), terms)

    def add_psd(self, affine: AffineMat):
        self.psd.append(PsdTerm(const=affine.const, coeffs=list(affine.terms)))

    def add_zero(self, affine: AffineMat):
        # One scalar equality per coordinate of the Hermitian space.
        const_c = hm.coordinatize(affine.const)
        term_c = [(v, hm.coordinatize(m)) for v, m in affine.terms]
        for c in range(self.space.ambient_dim):
            row = {}
            for v, mc in term_c:
                row[v] = row.get(v, 0.0) + mc[c]
            self.eqs.append((row, -const_c[c]))

    def add_ineq(self, affine: AffineMat, normal: np.ndarray):
        # <normal, affine> >= 0 under the trace inner product.
        const = float(np.real(np.trace(normal @ affine.const)))
        row = {}
        for v, m in affine.terms:
            row[v] = row.get(v, 0.0) + float(np.real(np.trace(normal @ m)))
        self.ineqs.append((row, -const))

    def add_eq_row(self, row: dict, rhs: float):
        self.eqs.append((dict(row), rhs))

    def _dense(self, row: dict) -> np.ndarray:
        out = np.zeros(len(self.signs))
        for v, c in row.items():
            out[v] = c
        return out

    def system(self) -> NumSystem:
        return NumSystem(
            nvars=len(self.signs),
            signs="".join(self.signs),
            eqs=[(self._dense(r), b) for r, b in self.eqs],
            ineqs=[(self._dense(r), b) for r, b in self.ineqs],
            psd=self.psd,
        )

    def solve(self) -> MarginOutcome:
        return solve_margin(self.system())

    def decide(self):
        out = self.solve()
        cls = out.classify()
        if cls == "member":
            return True
        if cls == "non-member":
            return False
        return None
