"""Assessments, statement models and their closure.

A statement model pairs an accept cone (a :class:`~conebelief.coneexpr.ConeExpr`)
with symbolic reject pieces.  Reject sets are never enumerated; each piece
denotes, relative to the model's accept cone P, either

* ``RayReject(rays)``: { mu*r - p : r in rays, mu > 0, p in P }, the raw
  closure form for explicitly rejected options, or
* ``StrictReject(carrier, excluded)``: { -(d + p) : d in carrier minus the
  excluded subspaces, p in P }, the cone-minus-subspace form produced by
  backgrounds, conditioning and contraction.

Classically every query about these sets is decided exactly through the
polyhedral machinery; in the quantum space the canonical shapes produced by
the package's own operators admit an equivalent simplification
(``-u in carrier + P`` and ``-u`` off the excluded subspaces) which is what
the float oracles evaluate, with boundary cases reported as unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import spaces as sp
from .coneexpr import ConeExpr, Gen, Halfspace, MinkSum, QuantumBuilder, SpanAug, AffineMat
from .cones import PolyCone
from .errors import InputError
from .hermitian import FloatSubspace
from .linalg import Subspace, vec, zero_vec
from .polyalg import cone_subset, dset_subset, strict_sum_member
from .psd import solve_max
from .spaces import Space

QUANTUM_SUBSPACE_TOL = 1e-8


def t_and(*vals):
    if any(v is False for v in vals):
        return False
    if any(v is None for v in vals):
        return None
    return True


def t_or(*vals):
    if any(v is True for v in vals):
        return True
    if any(v is None for v in vals):
        return None
    return False


def t_not(v):
    return None if v is None else not v


@dataclass(frozen=True)
class Status:
    """Multi-flag status of one option against one model (True/False/None)."""

    accepted: bool | None
    rejected: bool | None
    desirable: bool | None
    indifferent: bool | None

    @property
    def unresolved(self):
        return t_and(t_not(self.accepted), t_not(self.rejected))

    @property
    def unknown(self) -> bool:
        return None in (self.accepted, self.rejected, self.desirable, self.indifferent)

    def flags(self) -> dict:
        return {
            "accepted": self.accepted,
            "rejected": self.rejected,
            "desirable": self.desirable,
            "indifferent": self.indifferent,
            "unresolved": self.unresolved,
        }


class Assessment:
    """Finite accept/reject statement lists over one space."""

    __slots__ = ("space", "accept", "reject")

    def __init__(self, space: Space, accept=(), reject=()):
        self.space = space
        self.accept = tuple(space.validate_option(u) for u in accept)
        self.reject = tuple(space.validate_option(u) for u in reject)

    def __repr__(self):
        return f"Assessment(accept={len(self.accept)}, reject={len(self.reject)})"


class RayReject:
    __slots__ = ("rays",)

    def __init__(self, space: Space, rays):
        self.rays = tuple(space.validate_option(r) for r in rays)


class StrictReject:
    """Reject piece -(carrier minus excluded + accept).

    ``absorbing`` marks the canonical shapes produced by this package's own
    operators, for which (carrier \\ X) + accept = (carrier + accept) \\ X;
    membership then needs no LP.  Pieces of raw closures (whose carrier is a
    background cone strictly below the accept cone) are not absorbing and go
    through the exact decomposition machinery.
    """

    __slots__ = ("carrier", "excluded", "absorbing")

    def __init__(self, carrier: ConeExpr, excluded, absorbing=False):
        self.carrier = carrier
        self.excluded = tuple(excluded)
        self.absorbing = absorbing


class InconsistentModel:
    """The contradiction model accepting and rejecting every option."""

    is_inconsistent = True

    def status(self, u) -> Status:
        return Status(True, True, True, True)

    def __repr__(self):
        return "INCONSISTENT"


INCONSISTENT = InconsistentModel()


class BeliefModel:
    """A statement model: accept cone plus symbolic reject pieces."""

    is_inconsistent = False

    def __init__(self, space: Space, accept: ConeExpr, pieces=()):
        self.space = space
        self.accept = accept
        self.pieces = tuple(pieces)

    # -- membership oracles ------------------------------------------------

    def accept_member(self, u):
        return self.accept.member(u)

    def reject_member(self, u):
        results = [piece_member(self, piece, u) for piece in self.pieces]
        return t_or(*results) if results else False

    def status(self, u) -> Status:
        u = self.space.validate_option(u)
        nu = sp.neg_option(self.space, u)
        acc = self.accept_member(u)
        rej = self.reject_member(u)
        acc_neg = self.accept_member(nu)
        rej_neg = self.reject_member(nu)
        return Status(
            accepted=acc,
            rejected=rej,
            desirable=t_and(acc, rej_neg),
            indifferent=t_and(acc, acc_neg),
        )

    def desirable_member(self, u):
        """u accepted while -u is rejected (the strict part of acceptance)."""
        nu = sp.neg_option(self.space, u)
        return t_and(self.accept_member(u), self.reject_member(nu))

    def __repr__(self):
        return f"{type(self).__name__}(space={self.space!r}, pieces={len(self.pieces)})"


class DesirabilityModel(BeliefModel):
    """Canonical model: closed accept cone whose lineality space is the
    indifference space; desirable = accept minus indifference."""

    def __init__(self, space, accept, indifference, gens=(), precise=None):
        super().__init__(
            space, accept, (StrictReject(accept, (indifference,), absorbing=True),)
        )
        self.indifference = indifference
        self.gens = tuple(gens)
        self.precise = precise

    def desirable_member(self, u):
        acc = self.accept_member(u)
        return t_and(acc, t_not(in_subspace(self.space, self.indifference, u)))

    def has_trivial_indifference(self) -> bool:
        return subspace_dim(self.indifference) == 0


def subspace_dim(s) -> int:
    return s.dim


def trivial_subspace(space: Space):
    if space.is_classical:
        return Subspace(space.ambient_dim)
    return FloatSubspace(space.ambient_dim)


def in_subspace(space: Space, s, u):
    if space.is_classical:
        return s.contains(vec(u))
    coords = sp.coordinatize(space, u)
    resid = np.linalg.norm(coords - s.project(coords))
    scale = max(1.0, np.linalg.norm(coords))
    if resid <= QUANTUM_SUBSPACE_TOL * scale:
        return True
    return False


def vacuous_model(space: Space) -> DesirabilityModel:
    """The least resolved coherent model: the background ordering alone."""
    return DesirabilityModel(
        space,
        accept=Gen(space, gens=(), include_background=True),
        indifference=trivial_subspace(space),
    )


def coherent_model(space: Space, gens) -> DesirabilityModel:
    """Model whose desirable cone is generated by ``gens`` and the background."""
    out = least_resolved(space, gens=gens, indifference=trivial_subspace(space))
    if out is INCONSISTENT:
        raise InputError("generators are not coherent with the background")
    return out


def precise_model(space: Space, normal) -> DesirabilityModel:
    """The model of a precise prior / density operator: desirable options are
    those with strictly positive expectation under the given functional."""
    normal = space.validate_option(normal)
    if space.is_classical:
        indiff = Subspace(space.ambient_dim, Subspace(space.ambient_dim, [vec(normal)]).annihilators())
    else:
        coords = sp.coordinatize(space, normal)
        indiff = FloatSubspace(space.ambient_dim, [coords]).orthocomplement()
    return DesirabilityModel(
        space, accept=Halfspace(space, normal), indifference=indiff, precise=normal
    )


# -- reject piece membership ----------------------------------------------


def piece_member(model: BeliefModel, piece, u):
    space = model.space
    u = space.validate_option(u)
    if isinstance(piece, RayReject):
        return t_or(*[_ray_reject_member(model, r, u) for r in piece.rays]) if piece.rays else False
    nu = sp.neg_option(space, u)
    if space.is_classical:
        if piece.absorbing:
            flat = _summed_carrier(model, piece).flatten()
            if not flat.contains(vec(nu)):
                return False
            return all(not x.contains(vec(nu)) for x in piece.excluded)
        carrier = piece.carrier.flatten()
        ambient = model.accept.flatten()
        return strict_sum_member(vec(nu), carrier, piece.excluded, ambient)
    # Quantum canonical shapes: (carrier \ X) + P = (carrier + P) \ X, so the
    # test is membership in the summed cone plus exclusion of -u itself.
    inside = _summed_carrier(model, piece).member(nu)
    offs = [t_not(in_subspace(space, x, nu)) for x in piece.excluded]
    return t_and(inside, *offs)


_SUMMED_CACHE: dict[tuple[int, int], ConeExpr] = {}


def _summed_carrier(model: BeliefModel, piece: StrictReject) -> ConeExpr:
    if piece.carrier is model.accept:
        return model.accept
    key = (id(piece), id(model.accept))
    expr = _SUMMED_CACHE.get(key)
    if expr is None:
        expr = MinkSum(piece.carrier, model.accept)
        _SUMMED_CACHE[key] = expr
    return expr


def _ray_reject_member(model: BeliefModel, r, u):
    """sup{mu >= 0 : mu*r - u in accept} > 0, by LP / margin maximization."""
    space = model.space
    if space.is_classical:
        flat = model.accept.flatten()
        rv, uv = vec(r), vec(u)
        eq_rows = []
        ineq_rows = []
        for a in flat.eq:
            eq_rows.append(((_dot(a, rv),), _dot(a, uv)))
        for h in flat.ineq:
            ineq_rows.append(((_dot(h, rv),), _dot(h, uv)))
        from .lp import solve_lp_mixed

        res = solve_lp_mixed(1, "+", eq_rows, ineq_rows, objective=(Fraction(1),))
        if res.status == "unbounded":
            return True
        if res.status == "optimal":
            return res.value > 0
        return False
    builder = QuantumBuilder(space)
    mu = builder.new_var("+")
    target = AffineMat(-np.asarray(u, complex), [(mu, np.asarray(r, complex))])
    model.accept._compile(builder, target)
    obj = np.zeros(len(builder.signs))
    obj[mu] = 1.0
    out = solve_max(builder.system(), np.resize(obj, len(builder.signs)))
    if out.status == "infeasible":
        return False
    if out.status == "unbounded":
        return True
    if out.status == "cap":
        return None
    if out.t_lower >= 1e-6:
        return True
    if out.t_upper <= 1e-9:
        return False
    return None


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


# -- deductive closure -----------------------------------------------------


def deductively_closable(a: Assessment) -> bool:
    """No rejected statement lies in the closed conic hull of the accepted ones."""
    flat = Gen(a.space, gens=a.accept, include_background=False).flatten() if a.space.is_classical else None
    for r in a.reject:
        if a.space.is_classical:
            if flat.contains(vec(r)):
                return False
        else:
            if Gen(a.space, gens=a.accept, include_background=False).member(r):
                return False
    return True


def close(a: Assessment, background: DesirabilityModel):
    """Least resolved statement model including the assessment and respecting
    the background; INCONSISTENT when no such model exists.

    The accept part is the conic hull of the background accept cone and the
    accepted statements; the reject part keeps the explicitly rejected
    options as rays and the background's desirable set as a strict piece,
    both taken relative to the new accept cone.
    """
    if a.space != background.space:
        raise InputError("assessment and background live in different spaces")
    accept = _absorb_gens(background.accept, a.accept)
    pieces = []
    for piece in background.pieces:
        pieces.append(piece)
    if a.reject:
        pieces.append(RayReject(a.space, a.reject))
    model = BeliefModel(a.space, accept, pieces)
    if _zero_rejected(model):
        return INCONSISTENT
    return model


def _absorb_gens(accept: ConeExpr, extra_gens) -> ConeExpr:
    """posi(accept u extra) with Gen nodes merged when the shape allows."""
    if not extra_gens:
        return accept
    space = accept.space
    if isinstance(accept, Gen):
        return Gen(space, gens=accept.gens + tuple(extra_gens), include_background=accept.include_background)
    if isinstance(accept, SpanAug) and isinstance(accept.child, Gen):
        g = accept.child
        return SpanAug(
            Gen(space, gens=g.gens + tuple(extra_gens), include_background=g.include_background),
            accept.basis,
        )
    return MinkSum(accept, Gen(space, gens=extra_gens, include_background=False))


def _zero_rejected(model: BeliefModel):
    """Whether the model's reject set contains the null option (breaks M2)."""
    out = []
    for piece in model.pieces:
        if isinstance(piece, RayReject):
            out.append(t_or(*[model.accept.member(r) for r in piece.rays]) if piece.rays else False)
        else:
            out.append(_strict_zero_rejected(model, piece))
    return t_or(*out) if out else False


def _strict_zero_rejected(model: BeliefModel, piece: StrictReject):
    """Exists d in carrier minus exclusions with -d in the accept cone."""
    space = model.space
    if space.is_classical:
        carrier = piece.carrier.flatten()
        ambient = model.accept.flatten()
        return strict_sum_member(zero_vec(space.ambient_dim), carrier, piece.excluded, ambient)
    # Quantum: the decomposition set F = {d : d in carrier, -d in accept} is a
    # convex cone of Hermitians; F escapes every excluded subspace iff for
    # each exclusion some coordinate functional of its orthocomplement can be
    # normalized to 1 on F (convex sets inside a union of subspaces lie in
    # one of them).
    for x in piece.excluded:
        ortho = _ortho_basis(space, x)
        found = False
        for c in ortho:
            for sgn in (1.0, -1.0):
                if _sweep_feasible(model, piece, sgn * c):
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True if piece.excluded else _sweep_feasible(model, piece, None)


def _ortho_basis(space: Space, x: FloatSubspace):
    comp = x.orthocomplement()
    return [comp.basis[i] for i in range(comp.dim)]


def _sweep_feasible(model: BeliefModel, piece: StrictReject, functional):
    builder = QuantumBuilder(model.space)
    d_block = builder.new_matrix_block()
    piece.carrier._compile(builder, d_block)
    neg = AffineMat(-d_block.const, [(v, -m) for v, m in d_block.terms])
    model.accept._compile(builder, neg)
    if functional is not None:
        row = {}
        for k, (v, m) in enumerate(d_block.terms):
            from . import hermitian as hm

            row[v] = float(np.dot(functional, hm.coordinatize(m)))
        builder.add_eq_row(row, 1.0)
    out = builder.solve()
    cls = out.classify()
    return cls == "member"


# -- least resolved canonical model ----------------------------------------


def least_resolved(space: Space, gens=(), indifference=None, background_gens=()):
    """Canonical model for desirable generators plus an indifference space.

    Checks the compatibility condition (the coherent desirable cone meets the
    indifference space only at 0, equivalently 0 is not in their sum) and
    returns INCONSISTENT when it fails.
    """
    gens = tuple(space.validate_option(g) for g in gens)
    if indifference is None:
        indifference = trivial_subspace(space)
    cone = Gen(space, gens=tuple(background_gens) + gens, include_background=True)
    if space.is_classical:
        flat = cone.flatten()
        if flat.lineality.dim > 0:
            return INCONSISTENT
        inter = PolyCone.from_halfspaces(
            space.ambient_dim,
            ineq=flat.ineq,
            eq=list(flat.eq) + list(indifference.annihilators()),
        )
        if inter.rays or inter.lineality.dim > 0:
            return INCONSISTENT
        accept = SpanAug(cone, [tuple(b) for b in indifference.basis]) if indifference.dim else cone
        return DesirabilityModel(space, accept, indifference, gens=gens)
    # Quantum checks by margin queries.  A zero nonneg combination of
    # generators and PSD parts puts the negative of some positively weighted
    # generator back in the cone, so per-generator tests detect pointedness
    # failures; indifference compatibility is tested on basis directions.
    for g in gens:
        if np.linalg.norm(g) <= 1e-12:
            return INCONSISTENT
        if cone.member(sp.neg_option(space, g)) is True:
            return INCONSISTENT
    if indifference.dim:
        basis_mats = [
            sp.uncoordinatize(space, indifference.basis[i])
            for i in range(indifference.dim)
        ]
        # Nonzero intersection of the cone with the indifference space: the
        # feasible coefficient set is a convex cone, so it contains a nonzero
        # point iff some coefficient can be normalized to +-1.
        for j in range(len(basis_mats)):
            for s in (1.0, -1.0):
                builder = QuantumBuilder(space)
                nus = [builder.new_var("f") for _ in basis_mats]
                target = AffineMat(
                    np.zeros((space.dim, space.dim), complex),
                    [(nu, np.asarray(b, complex)) for nu, b in zip(nus, basis_mats)],
                )
                cone._compile(builder, target)
                builder.add_eq_row({nus[j]: 1.0}, s)
                if builder.decide() is True:
                    return INCONSISTENT
        accept = SpanAug(cone, basis_mats)
    else:
        accept = cone
    return DesirabilityModel(space, accept, indifference, gens=gens)


# -- model comparison -------------------------------------------------------

VERIFIED = "verified"
FALSIFIED = "falsified"
UNKNOWN = "unknown"


@dataclass
class IncludeResult:
    outcome: str
    witness: object = None


def model_include(m1, m2, probes=()) -> IncludeResult:
    """Componentwise inclusion m1 subseteq m2 (accept and reject parts).

    Classical models are compared exactly by flattening; quantum models fall
    back to generator witnesses plus the given probe options and report
    unknown when sampling finds no counterexample.
    """
    if m2 is INCONSISTENT or getattr(m2, "is_inconsistent", False):
        return IncludeResult(VERIFIED)
    if m1 is INCONSISTENT or getattr(m1, "is_inconsistent", False):
        return IncludeResult(FALSIFIED, "inconsistent-left")
    if m1.space != m2.space:
        raise InputError("models live in different spaces")
    if m1.space.is_classical:
        ok, w = cone_subset(m1.accept.flatten(), m2.accept.flatten())
        if not ok:
            return IncludeResult(FALSIFIED, ("accept", w))
        for piece in m1.pieces:
            res = _piece_included(m1, piece, m2)
            if res.outcome != VERIFIED:
                return res
        return IncludeResult(VERIFIED)
    # Quantum sampled comparison; exact verification is unavailable, so a
    # clean pass over the probes stays "unknown" per the reporting contract.
    for u in probes:
        a1, a2 = m1.accept_member(u), m2.accept_member(u)
        if a1 is True and a2 is False:
            return IncludeResult(FALSIFIED, ("accept", u))
        r1, r2 = m1.reject_member(u), m2.reject_member(u)
        if r1 is True and r2 is False:
            return IncludeResult(FALSIFIED, ("reject", u))
    return IncludeResult(UNKNOWN)


def _piece_included(m1, piece, m2) -> IncludeResult:
    """Classical exact inclusion of one reject piece in m2's reject set.

    Verification goes through a structurally matching piece of m2 (same ray
    vector with included base, or a dominating strict piece via dset_subset);
    falsification is by a concrete rejected-by-m1 option that every piece of
    m2 declines.
    """
    if isinstance(piece, RayReject):
        for r in piece.rays:
            structural = any(
                isinstance(p2, RayReject) and vec(r) in [vec(r2) for r2 in p2.rays]
                for p2 in m2.pieces
            )
            if structural:
                continue
            if m2.reject_member(r) is False:
                return IncludeResult(FALSIFIED, ("reject", r))
            return IncludeResult(UNKNOWN, ("ray-piece", r))
        return IncludeResult(VERIFIED)
    c1, x1 = _normalized_dset(m1, piece)
    witness = None
    for p2 in m2.pieces:
        if not isinstance(p2, StrictReject):
            continue
        c2, x2 = _normalized_dset(m2, p2)
        ok, w = dset_subset(c1, x1, c2, x2)
        if ok:
            return IncludeResult(VERIFIED)
        witness = w
    if witness is not None:
        rejected_option = sp.neg_option(m1.space, tuple(witness))
        if m2.reject_member(rejected_option) is False:
            return IncludeResult(FALSIFIED, ("reject", rejected_option))
        return IncludeResult(UNKNOWN, ("reject", rejected_option))
    # m2 has no strict piece at all: generators of the carrier that escape
    # the exclusions witness nonemptiness of the left piece.
    for g in c1.generators():
        if not any(x.contains(g) for x in x1):
            if m2.reject_member(sp.neg_option(m1.space, g)) is False:
                return IncludeResult(FALSIFIED, ("reject", sp.neg_option(m1.space, g)))
    return IncludeResult(UNKNOWN, "reject-shape")


def _normalized_dset(model, piece: StrictReject):
    """Flattened (cone, exclusions) with -reject_piece = cone minus exclusions.

    Valid for the canonical shapes produced by this package's operators,
    where (carrier \\ X) + accept = (carrier + accept) \\ X.
    """
    if piece.carrier is model.accept:
        flat = model.accept.flatten()
    else:
        flat = MinkSum(piece.carrier, model.accept).flatten()
    return flat, list(piece.excluded)


def model_meet(m1: BeliefModel, m2: BeliefModel) -> BeliefModel:
    """Componentwise intersection of two models with strict reject pieces.

    (C1 \\ X1) intersect (C2 \\ X2) = (C1 intersect C2) \\ (X1 u X2), so the
    meet of two canonical models is canonical again.
    """
    if getattr(m1, "is_inconsistent", False):
        return m2
    if getattr(m2, "is_inconsistent", False):
        return m1
    if m1.space != m2.space:
        raise InputError("meet of models in different spaces")
    from .coneexpr import Intersect

    accept = Intersect(m1.accept, m2.accept)
    strict1 = [p for p in m1.pieces if isinstance(p, StrictReject)]
    strict2 = [p for p in m2.pieces if isinstance(p, StrictReject)]
    canonical = (
        len(strict1) == len(m1.pieces) == 1
        and len(strict2) == len(m2.pieces) == 1
        and strict1[0].carrier is m1.accept
        and strict2[0].carrier is m2.accept
    )
    if not canonical:
        raise InputError("model meet needs canonical strict-piece models")
    piece = StrictReject(
        accept,
        tuple(strict1[0].excluded) + tuple(strict2[0].excluded),
        absorbing=strict1[0].absorbing and strict2[0].absorbing,
    )
    return BeliefModel(m1.space, accept, (piece,))


def model_equal(m1, m2, probes=()) -> IncludeResult:
    r1 = model_include(m1, m2, probes)
    if r1.outcome != VERIFIED and r1.outcome != UNKNOWN:
        return r1
    r2 = model_include(m2, m1, probes)
    if r2.outcome == VERIFIED and r1.outcome == VERIFIED:
        return IncludeResult(VERIFIED)
    if r2.outcome == FALSIFIED:
        return r2
    if r1.outcome == FALSIFIED:
        return r1
    return IncludeResult(UNKNOWN)
