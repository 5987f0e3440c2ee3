"""Conformance suites: property tests for every axiom family.

Each suite samples deterministic instances (seed + stream + index), evaluates
the quantified statement of each axiom, and reports per-axiom outcomes with
replayable witnesses for any violation.  Classical checks are exact; quantum
checks use the documented tolerances and report boundary cases as unknown
instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import beliefchange as bc
from . import events as ev
from . import rand as rd
from . import serialize as io
from . import spaces as sp
from .errors import GenerationError
from .models import (
    INCONSISTENT,
    Assessment,
    BeliefModel,
    DesirabilityModel,
    FALSIFIED,
    UNKNOWN,
    VERIFIED,
    close,
    least_resolved,
    model_equal,
    model_include,
    model_meet,
    t_and,
    t_not,
    trivial_subspace,
    vacuous_model,
)
from .rand import GenConfig, rand_coherent_model, rand_event, rand_option, stream_rng
from .spaces import Space

PASS = "pass"
FAIL = "fail"
EXPECTED_CX = "expected-counterexample"
VACUOUS = "vacuous"

QTOL = 1e-9


@dataclass
class AxiomResult:
    axiom: str
    outcome: str = PASS
    checks: int = 0
    unknowns: int = 0
    vacuous: int = 0
    witness: object = None

    def record(self, ok, witness=None):
        self.checks += 1
        if ok is None:
            self.unknowns += 1
        elif ok is False and self.outcome in (PASS, VACUOUS):
            self.outcome = FAIL
            self.witness = witness

    def record_vacuous(self):
        self.checks += 1
        self.vacuous += 1

    def to_json(self):
        out = {
            "axiom": self.axiom,
            "outcome": self.outcome,
            "checks": self.checks,
        }
        if self.unknowns:
            out["unknowns"] = self.unknowns
        if self.vacuous:
            out["vacuous"] = self.vacuous
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class AxiomReport:
    suite: str
    space: str
    seed: int
    trials: int
    results: list[AxiomResult] = field(default_factory=list)

    def passed(self) -> bool:
        return all(r.outcome in (PASS, VACUOUS, EXPECTED_CX) for r in self.results)

    def unknown_rate(self) -> float:
        checks = sum(r.checks for r in self.results)
        unknowns = sum(r.unknowns for r in self.results)
        return unknowns / checks if checks else 0.0

    def to_json(self):
        return {
            "suite": self.suite,
            "space": self.space,
            "seed": self.seed,
            "trials": self.trials,
            "unknown_rate": round(self.unknown_rate(), 6),
            "results": [r.to_json() for r in self.results],
        }


def _spaces_for(cfg: GenConfig, kind: str, seed, idx) -> Space:
    return rd.rand_space(cfg, kind, stream_rng(seed, "space", kind, idx))


def _opt_eq(space, a, b):
    return sp.options_equal(space, a, b, tol=QTOL)


def _wit(space, **parts):
    out = {}
    for key, val in parts.items():
        if isinstance(val, ev.Event):
            out[key] = io.event_to_json(val)
        elif isinstance(val, (tuple, np.ndarray)):
            out[key] = sp.option_to_json(space, val)
        else:
            out[key] = val
    return out


# ---------------------------------------------------------------------------
# Event axioms E1-E9 (plus the derived laws and the ordering equivalences)
# ---------------------------------------------------------------------------


def run_events_suite(kind: str, cfg: GenConfig, call_off_fn=None) -> AxiomReport:
    calloff = call_off_fn or ev.call_off
    report = AxiomReport("events", kind, cfg.seed, cfg.trials)

    def sample(idx, tag):
        rng = stream_rng(cfg.seed, "events", tag, idx)
        space = _spaces_for(cfg, kind, cfg.seed, (tag, idx))
        return rng, space

    r = AxiomResult("E1")
    for i in range(cfg.trials):
        rng, space = sample(i, "E1")
        e = rand_event(space, rng)
        u, v = rand_option(space, rng), rand_option(space, rng)
        lam = rd.rand_scalar(space, rng)
        lhs = calloff(e, sp.add_options(space, u, sp.scale_option(space, lam, v)))
        rhs = sp.add_options(
            space, calloff(e, u), sp.scale_option(space, lam, calloff(e, v))
        )
        r.record(_opt_eq(space, lhs, rhs), _wit(space, event=e, u=u, v=v, lam=str(lam)))
    report.results.append(r)

    r = AxiomResult("E2")
    for i in range(cfg.trials):
        rng, space = sample(i, "E2")
        e = rand_event(space, rng)
        u = rand_option(space, rng)
        once = calloff(e, u)
        r.record(_opt_eq(space, once, calloff(e, once)), _wit(space, event=e, u=u))
    report.results.append(r)

    r = AxiomResult("E3")
    for i in range(cfg.trials):
        rng, space = sample(i, "E3")
        e = rand_event(space, rng)
        u = rd.rand_weak_option(space, rng)
        r.record(sp.background_weak(space, calloff(e, u)), _wit(space, event=e, u=u))
    report.results.append(r)

    r = AxiomResult("E4")
    for i in range(cfg.trials):
        rng, space = sample(i, "E4")
        e = rand_event(space, rng)
        u = rand_option(space, rng)
        unit = ev.Event.unit(space)
        ok = t_and(
            _opt_eq(space, calloff(unit, u), u),
            _opt_eq(space, calloff(e, unit.as_option()), e.as_option()),
            sp.background_weak(space, unit.as_option()),
        )
        r.record(ok, _wit(space, event=e, u=u))
    report.results.append(r)

    r = AxiomResult("E5")
    for i in range(cfg.trials):
        rng, space = sample(i, "E5")
        u = rand_option(space, rng)
        null = ev.Event.null(space)
        ok = t_and(
            _opt_eq(space, calloff(null, u), space.zero_option()),
            _opt_eq(space, null.as_option(), space.zero_option()),
        )
        r.record(ok, _wit(space, u=u))
    report.results.append(r)

    r = AxiomResult("E6")
    for i in range(cfg.trials):
        rng, space = sample(i, "E6")
        u = rand_option(space, rng)
        alpha = sp.archimedean_bound(space, u)
        shifted = sp.add_options(
            space, u, sp.scale_option(space, alpha, space.unit_option())
        )
        r.record(sp.background_weak(space, shifted), _wit(space, u=u, alpha=str(alpha)))
    report.results.append(r)

    r = AxiomResult("E7")
    for i in range(cfg.trials):
        rng, space = sample(i, "E7")
        e1, e2 = rand_event(space, rng), rand_event(space, rng)
        if not ev.nonpositivity_implication(e1, e2):
            r.record_vacuous()
            continue
        samples = [rand_option(space, rng) for _ in range(3)]
        ok = t_and(
            ev.order_leq(e1, e2), ev.order_leq_by_calloff(e1, e2, samples)
        )
        r.record(ok, _wit(space, e1=e1, e2=e2))
    report.results.append(r)

    r = AxiomResult("E8")
    for i in range(cfg.trials):
        rng, space = sample(i, "E8")
        e = rand_event(space, rng)
        u = rand_option(space, rng)
        ce = ev.complement(e)
        summed = sp.add_options(space, e.as_option(), ce.as_option())
        ok = t_and(
            _opt_eq(space, summed, space.unit_option()),
            _opt_eq(space, calloff(ce, calloff(e, u)), space.zero_option()),
            ev.complement(ce) == e,
            _opt_eq(space, calloff(e, ce.as_option()), space.zero_option()),
        )
        r.record(ok, _wit(space, event=e, u=u))
    report.results.append(r)

    r = AxiomResult("E9")
    for i in range(cfg.trials):
        rng, space = sample(i, "E9")
        e1, e2 = rand_event(space, rng), rand_event(space, rng)
        em = ev.meet(e1, e2)
        k1, k2, km = ev.kernel(e1), ev.kernel(e2), ev.kernel(em)
        ksum = k1.add(k2)
        if space.is_classical:
            subspace_ok = ksum == km
        else:
            subspace_ok = ksum.equals(km)
        f = _sample_kernel_option(space, em, rng)
        f1, f2 = ev.kernel_sum_decompose(e1, e2, f)
        decomp_ok = t_and(
            _opt_eq(space, calloff(e1, f1), space.zero_option()),
            _opt_eq(space, calloff(e2, f2), space.zero_option()),
            _opt_eq(space, sp.add_options(space, f1, f2), f),
        )
        r.record(t_and(subspace_ok, decomp_ok), _wit(space, e1=e1, e2=e2, f=f))
    report.results.append(r)

    r = AxiomResult("PROP1")
    for i in range(cfg.trials):
        rng, space = sample(i, "P1")
        e1, e2 = rand_event(space, rng), rand_event(space, rng)
        ok = _prop1_agree(space, e1, e2, rng)
        r.record(ok, _wit(space, e1=e1, e2=e2))
    report.results.append(r)

    r = AxiomResult("BIJECTION")
    for i in range(cfg.trials):
        rng, space = sample(i, "BJ")
        e1, e2 = rand_event(space, rng), rand_event(space, rng)
        images_equal = _opt_eq(
            space, calloff(e1, space.unit_option()), calloff(e2, space.unit_option())
        )
        r.record(images_equal == (e1 == e2), _wit(space, e1=e1, e2=e2))
    report.results.append(r)

    r = AxiomResult("KERNELS_IDENTIFY")
    for i in range(cfg.trials):
        rng, space = sample(i, "KI")
        e1, e2 = rand_event(space, rng), rand_event(space, rng)
        k1, k2 = ev.kernel(e1), ev.kernel(e2)
        kernels_equal = (k1 == k2) if space.is_classical else k1.equals(k2)
        r.record(kernels_equal == (e1 == e2), _wit(space, e1=e1, e2=e2))
    report.results.append(r)

    if kind == "quantum":
        r = AxiomResult("MEET_ALTPROJ")
        for i in range(cfg.trials):
            rng, space = sample(i, "AP")
            e1, e2 = rand_event(space, rng), rand_event(space, rng)
            direct = ev.meet(e1, e2)
            indirect = ev.altproj_meet(e1, e2)
            dist = float(np.linalg.norm(direct.projector - indirect.projector))
            r.record(dist <= 1e-8, _wit(space, e1=e1, e2=e2, dist=dist))
        report.results.append(r)

    return report


def _sample_kernel_option(space, event, rng):
    if space.is_classical:
        basis = ev.kernel(event).basis
        f = space.zero_option()
        for b in basis:
            f = sp.add_options(space, f, sp.scale_option(space, rng.randint(-3, 3), tuple(b)))
        return f
    mats = ev.kernel_matrices(event)
    f = space.zero_option()
    for m in mats:
        f = sp.add_options(space, f, sp.scale_option(space, rng.randint(-3, 3), m))
    return f


def _prop1_agree(space, e1, e2, rng):
    """Statements (i) ordering, (ii) kernel inclusion, (iii) the nonpositivity
    implication must agree pairwise."""
    s1 = ev.order_leq(e1, e2)
    k1, k2 = ev.kernel(e1), ev.kernel(e2)
    s2 = k1.includes(k2) if space.is_classical else k1.includes(k2)
    s3 = ev.nonpositivity_implication(e1, e2)
    probes = [rand_option(space, rng) for _ in range(3)]
    s1b = ev.order_leq_by_calloff(e1, e2, probes) if s1 else s1
    return s1 == s2 == s3 and (not s1 or s1b)


# ---------------------------------------------------------------------------
# Model axioms and closure laws
# ---------------------------------------------------------------------------


def check_model_axioms(m, samples) -> list[AxiomResult]:
    """M1 status-quo indifference, M2 strictness, M3 deductive closure,
    M4 no limbo (the convex-cone parts on sampled options)."""
    from .models import _zero_rejected

    space = m.space
    zero = space.zero_option()
    out = []
    r = AxiomResult("M1")
    st = m.status(zero)
    r.record(t_and(st.accepted, st.indifferent), _wit(space, u=zero))
    for b in sp.basis_options(space):
        r.record(m.accept_member(b), _wit(space, u=b))
    out.append(r)
    r = AxiomResult("M2")
    r.record(t_not(_zero_rejected(m)), _wit(space, u=zero))
    out.append(r)
    r = AxiomResult("M3")
    accepted = [u for u in samples if m.accept_member(u) is True]
    for a, b in zip(accepted, accepted[1:]):
        s = sp.add_options(space, a, b)
        r.record(m.accept_member(s), _wit(space, u=a, v=b))
    out.append(r)
    r = AxiomResult("M4")
    rejected = [u for u in samples if m.reject_member(u) is True]
    accepted = accepted[:3]
    for u in rejected[:3]:
        for p in accepted:
            probe = sp.add_options(
                space, sp.scale_option(space, 2, u), sp.neg_option(space, p)
            )
            r.record(m.reject_member(probe), _wit(space, u=u, v=p))
    out.append(r)
    return out


def check_desirability_axioms(m: DesirabilityModel, samples) -> list[AxiomResult]:
    """DI1 background, DI2 strictness, DI3 deductive closedness,
    DI4 compatibility of desirables with indifferents."""
    space = m.space
    out = []
    r = AxiomResult("DI1")
    for b in sp.basis_options(space):
        r.record(m.accept_member(b), _wit(space, u=b))
    r.record(m.accept_member(space.zero_option()))
    out.append(r)
    r = AxiomResult("DI2")
    r.record(t_not(m.desirable_member(space.zero_option())))
    out.append(r)
    r = AxiomResult("DI3")
    desirable = [u for u in samples if m.desirable_member(u) is True]
    for a, b in zip(desirable, desirable[1:]):
        r.record(m.desirable_member(sp.add_options(space, a, b)), _wit(space, u=a, v=b))
    out.append(r)
    r = AxiomResult("DI4")
    indiff_basis = m.indifference.basis
    for u in desirable[:3]:
        for b in indiff_basis:
            bopt = tuple(b) if space.is_classical else sp.uncoordinatize(space, np.asarray(b, float))
            r.record(
                m.desirable_member(sp.add_options(space, u, bopt)),
                _wit(space, u=u),
            )
    out.append(r)
    return out


def check_coherence(m: DesirabilityModel, samples) -> list[AxiomResult]:
    """D1 background inside the desirable cone, D2 the null option outside it,
    D3 closure under conic combination."""
    space = m.space
    out = []
    r = AxiomResult("D1")
    for b in sp.basis_options(space):
        r.record(m.desirable_member(b), _wit(space, u=b))
    out.append(r)
    r = AxiomResult("D2")
    bad_gen = any(
        sp.options_equal(space, g, space.zero_option()) for g in m.gens
    )
    r.record(not bad_gen, _wit(space, u=space.zero_option()))
    for g in m.gens:
        r.record(
            t_not(m.accept_member(sp.neg_option(space, g))),
            _wit(space, u=g),
        )
    r.record(t_not(m.desirable_member(space.zero_option())))
    out.append(r)
    r = AxiomResult("D3")
    desirable = [u for u in samples if m.desirable_member(u) is True]
    for a, b in zip(desirable, desirable[1:]):
        r.record(m.desirable_member(sp.add_options(space, a, b)), _wit(space, u=a, v=b))
    out.append(r)
    return out


def _rand_closable_assessment(space, rng, max_each=3):
    for _ in range(rd.RESAMPLE_BUDGET):
        acc = [rand_option(space, rng) for _ in range(rng.randint(0, max_each))]
        rej = [rand_option(space, rng) for _ in range(rng.randint(0, max_each))]
        a = Assessment(space, accept=acc, reject=rej)
        if close(a, vacuous_model(space)) is not INCONSISTENT:
            return a
    raise GenerationError("no closable assessment found")


def run_models_suite(kind: str, cfg: GenConfig) -> AxiomReport:
    report = AxiomReport("models", kind, cfg.seed, cfg.trials)
    r_idem = AxiomResult("CLOSURE_IDEMPOTENT")
    r_ext = AxiomResult("CLOSURE_EXTENSIVE")
    r_mono = AxiomResult("CLOSURE_MONOTONE")
    for i in range(cfg.trials):
        rng = stream_rng(cfg.seed, "models", "closure", i)
        space = _spaces_for(cfg, kind, cfg.seed, ("closure", i))
        if not space.is_classical:
            continue  # closure laws are exact-arithmetic checks
        v = vacuous_model(space)
        a = _rand_closable_assessment(space, rng)
        m = close(a, v)
        wit = io.assessment_to_json(a)
        for u in a.accept:
            r_ext.record(m.accept_member(u), wit)
        for u in a.reject:
            r_ext.record(m.reject_member(u), wit)
        m2 = bc.expand(m, Assessment(space))
        r_idem.record(
            m2 is not INCONSISTENT and model_equal(m, m2).outcome == VERIFIED, wit
        )
        bigger = Assessment(
            space,
            accept=a.accept + (rand_option(space, rng),),
            reject=a.reject,
        )
        mb = close(bigger, v)
        if mb is INCONSISTENT:
            r_mono.record(True, wit)
        else:
            r_mono.record(model_include(m, mb).outcome == VERIFIED, wit)
    report.results.extend([r_idem, r_ext, r_mono])

    m_axioms: dict[str, AxiomResult] = {}
    for i in range(cfg.trials // 4 + 1):
        rng = stream_rng(cfg.seed, "models", "axioms", i)
        space = _spaces_for(cfg, kind, cfg.seed, ("axioms", i))
        model = rand_coherent_model(space, rng, cfg.extra_generators)
        samples = [rand_option(space, rng) for _ in range(8)]
        entries = (
            check_model_axioms(model, samples)
            + check_desirability_axioms(model, samples)
            + check_coherence(model, samples)
        )
        for e in entries:
            agg = m_axioms.setdefault(e.axiom, AxiomResult(e.axiom))
            agg.checks += e.checks
            agg.unknowns += e.unknowns
            if e.outcome == FAIL and agg.outcome != FAIL:
                agg.outcome = FAIL
                agg.witness = e.witness
    report.results.extend(m_axioms.values())

    r_comp = AxiomResult("D_COMPATIBILITY_EQUIV")
    for i in range(cfg.trials):
        rng = stream_rng(cfg.seed, "models", "compat", i)
        space = _spaces_for(cfg, kind, cfg.seed, ("compat", i))
        if not space.is_classical:
            continue
        gens = [rand_option(space, rng) for _ in range(rng.randint(0, 3))]
        dim_i = rng.randint(0, max(0, space.ambient_dim - 1))
        from .linalg import Subspace

        basis = [rand_option(space, rng) for _ in range(dim_i)]
        indiff = Subspace(space.ambient_dim, basis)
        direct = _d_meets_i(space, gens, indiff)
        via_sum = _zero_in_d_plus_i(space, gens, indiff)
        r_comp.record(direct == via_sum, {"gens": [sp.option_to_json(space, g) for g in gens]})
    report.results.append(r_comp)

    r_least = AxiomResult("LEAST_RESOLVED_DESIRABLE")
    for i in range(cfg.trials // 2 + 1):
        rng = stream_rng(cfg.seed, "models", "least", i)
        space = _spaces_for(cfg, kind, cfg.seed, ("least", i))
        if not space.is_classical:
            continue
        model = rand_coherent_model(space, rng, 2)
        u = rand_option(space, rng)
        canonical = model.desirable_member(u)
        direct = _direct_desirable(space, model, u)
        r_least.record(canonical == direct, _wit(space, u=u))
    report.results.append(r_least)
    return report


def _d_meets_i(space, gens, indiff):
    """Exact decision of D intersect I != empty for the coherent hull of gens."""
    from .coneexpr import Gen
    from .cones import PolyCone

    flat = Gen(space, gens=gens, include_background=True).flatten()
    if flat.lineality.dim > 0:
        return True  # 0 lies in the strict hull, hence in D, hence in D cap I
    inter = PolyCone.from_halfspaces(
        space.ambient_dim, ineq=flat.ineq, eq=list(flat.eq) + list(indiff.annihilators())
    )
    return bool(inter.rays) or inter.lineality.dim > 0


def _zero_in_d_plus_i(space, gens, indiff):
    """Exact decision of 0 in D + I via an LP over a normalized strict combo."""
    from .lp import solve_lp_mixed

    d = space.ambient_dim
    basis = list(sp.basis_options(space)) + [tuple(g) for g in gens]
    nb = len(basis)
    ni = indiff.dim
    nvars = nb + ni
    rows = []
    for c in range(d):
        coeffs = [Fraction(b[c]) for b in basis]
        coeffs += [Fraction(indiff.basis[j][c]) for j in range(ni)]
        rows.append((tuple(coeffs), Fraction(0)))
    rows.append(((Fraction(1),) * nb + (Fraction(0),) * ni, Fraction(1)))
    res = solve_lp_mixed(nvars, "+" * nb + "f" * ni, rows)
    return res.status == "feasible"


def _direct_desirable(space, model: DesirabilityModel, u):
    """Membership of u in D + I by the direct oracle: some indifferent shift
    of u lands in the desirable cone and u itself is not indifferent."""
    from .coneexpr import Gen, SpanAug

    if model.indifference.dim == 0:
        inner = Gen(space, gens=model.gens, include_background=True)
        return inner.member(u) and not sp.options_equal(space, u, space.zero_option())
    inner = SpanAug(
        Gen(space, gens=model.gens, include_background=True),
        [tuple(b) for b in model.indifference.basis],
    )
    from .models import in_subspace

    return inner.member(u) and not in_subspace(space, model.indifference, u)


# ---------------------------------------------------------------------------
# Revision postulates BR1-BR8 and the expansion dichotomy
# ---------------------------------------------------------------------------


def _probes(space, rng, count=6):
    return [rand_option(space, rng) for _ in range(count)]


def _inclusion_ok(m1, m2, probes):
    res = model_include(m1, m2, probes)
    if res.outcome == VERIFIED:
        return True, None
    if res.outcome == FALSIFIED:
        return False, res.witness
    return None, res.witness


def _equality_ok(m1, m2, probes):
    res = model_equal(m1, m2, probes)
    if res.outcome == VERIFIED:
        return True, None
    if res.outcome == FALSIFIED:
        return False, res.witness
    return None, res.witness


def _quantum_status_agree(space, m1, m2, probes):
    """Flag-by-flag status agreement on probes, skipping undecided ones."""
    disagreements = 0
    unknowns = 0
    witness = None
    for u in probes:
        s1, s2 = m1.status(u), m2.status(u)
        if s1.unknown or s2.unknown:
            unknowns += 1
            continue
        if s1.flags() != s2.flags():
            disagreements += 1
            witness = _wit(space, u=u, left=str(s1.flags()), right=str(s2.flags()))
    return disagreements, unknowns, witness


def _model_agreement(space, m1, m2, probes):
    """True/False/None equality evidence: exact classically, sampled quantum."""
    if space.is_classical:
        return _equality_ok(m1, m2, probes)
    if getattr(m1, "is_inconsistent", False) or getattr(m2, "is_inconsistent", False):
        same = getattr(m1, "is_inconsistent", False) == getattr(m2, "is_inconsistent", False)
        return same, None
    bad, unk, wit = _quantum_status_agree(space, m1, m2, probes)
    if bad:
        return False, wit
    if unk == len(probes):
        return None, None
    return True, None


def run_revision_suite(kind: str, cfg: GenConfig) -> AxiomReport:
    report = AxiomReport("revision", kind, cfg.seed, cfg.trials)
    results = {name: AxiomResult(name) for name in (
        "BR1", "BR2", "BR3", "BR4", "BR5", "BR6", "BR7", "BR8",
        "EXPAND_DICHOTOMY", "UNION_MEET", "REVISED_BACKGROUND",
    )}
    for i in range(cfg.trials):
        rng = stream_rng(cfg.seed, "revision", i)
        space = _spaces_for(cfg, kind, cfg.seed, ("revision", i))
        m = rand_coherent_model(space, rng, cfg.extra_generators)
        e1 = rand_event(space, rng)
        e2 = rand_event(space, rng)
        me1, me2 = bc.event_model(e1), bc.event_model(e2)
        probes = _probes(space, rng)
        wit = {
            "model": io.model_to_json(m),
            "e1": io.event_to_json(e1),
            "e2": io.event_to_json(e2),
        }

        rev1 = bc.revise(m, e1)

        # BR1: the revision is a closed model respecting the minimal background.
        from .models import _zero_rejected

        st0 = rev1.status(space.zero_option())
        results["BR1"].record(
            t_and(st0.accepted, t_not(_zero_rejected(rev1))), wit
        )

        # BR2: the new information is retained.
        ok, w = _inclusion_ok(me1, rev1, probes)
        results["BR2"].record(ok, wit | {"detail": _maybe_wit(space, w)})

        # BR3/BR4: revision against expansion, with the consistency side
        # condition for the converse inclusion.
        exp1 = bc.expand(m, me1)
        if exp1 is INCONSISTENT:
            results["BR3"].record(True)
            results["BR4"].record_vacuous()
        else:
            ok, w = _inclusion_ok(rev1, exp1, probes)
            results["BR3"].record(ok, wit | {"detail": _maybe_wit(space, w)})
            ok, w = _inclusion_ok(exp1, rev1, probes)
            results["BR4"].record(ok, wit | {"detail": _maybe_wit(space, w)})

        # BR5: revision by an event model is never inconsistent.
        results["BR5"].record(rev1 is not INCONSISTENT, wit)

        # BR6: revising by the closure of the new information changes nothing.
        closed = bc.close_event_model(me1)
        rev1b = bc.revise(m, closed.event)
        ok, w = _model_agreement(space, rev1, rev1b, probes)
        results["BR6"].record(ok, wit | {"detail": _maybe_wit(space, w)})

        # BR7/BR8 with the union of two event models reduced to the meet event.
        em = ev.meet(e1, e2)
        lhs = bc.revise(m, em)
        mid = bc.expand(rev1, me2)
        if mid is INCONSISTENT:
            results["BR7"].record(True)
            results["BR8"].record_vacuous()
        else:
            ok, w = _inclusion_ok(lhs, mid, probes)
            results["BR7"].record(ok, wit | {"detail": _maybe_wit(space, w)})
            ok, w = _inclusion_ok(mid, lhs, probes)
            results["BR8"].record(ok, wit | {"detail": _maybe_wit(space, w)})

        # Expansion dichotomy: expanding with an event model keeps the model
        # only for the unit event and otherwise contradicts.
        if ev.is_regular(e1):
            ok, w = _model_agreement(space, exp1, m, probes)
            results["EXPAND_DICHOTOMY"].record(ok, wit)
        else:
            results["EXPAND_DICHOTOMY"].record(exp1 is INCONSISTENT, wit)

        # Union/meet reduction at the kernel level.
        k_sum = ev.kernel(e1).add(ev.kernel(e2))
        k_meet = ev.kernel(em)
        same = (k_sum == k_meet) if space.is_classical else k_sum.equals(k_meet)
        results["UNION_MEET"].record(same, wit)

        # Revised background equals the revision of the vacuous model, and its
        # accept oracle agrees with the direct called-off weak test.
        vb = bc.revised_background(space, e1)
        agree = True
        for u in probes:
            direct = sp.background_weak(space, ev.call_off(e1, u))
            got = vb.accept_member(u)
            if got is None:
                continue
            if got != direct:
                agree = False
        results["REVISED_BACKGROUND"].record(agree, wit)

    report.results.extend(results.values())
    return report


def _maybe_wit(space, w):
    if w is None:
        return None
    if isinstance(w, tuple) and len(w) == 2 and isinstance(w[0], str):
        kind, val = w
        try:
            return {kind: sp.option_to_json(space, val)}
        except Exception:
            return {kind: str(val)}
    return str(w)


# ---------------------------------------------------------------------------
# Contraction postulates BC1-BC8
# ---------------------------------------------------------------------------


def run_contraction_suite(kind: str, cfg: GenConfig) -> AxiomReport:
    report = AxiomReport("contraction", kind, cfg.seed, cfg.trials)
    results = {name: AxiomResult(name) for name in (
        "BC1", "BC2", "BC3", "BC4", "BC5", "BC6", "BC7", "BC8",
    )}
    for i in range(cfg.trials):
        rng = stream_rng(cfg.seed, "contraction", i)
        space = _spaces_for(cfg, kind, cfg.seed, ("contraction", i))
        m = rand_coherent_model(space, rng, cfg.extra_generators)
        e1 = rd.rand_nonregular_event(space, rng)
        e2 = rd.rand_nonregular_event(space, rng)
        me1 = bc.event_model(e1)
        probes = _probes(space, rng)
        wit = {
            "model": io.model_to_json(m),
            "e1": io.event_to_json(e1),
            "e2": io.event_to_json(e2),
        }

        con1 = bc.contract(m, e1)

        from .models import _zero_rejected

        st0 = con1.status(space.zero_option())
        results["BC1"].record(t_and(st0.accepted, t_not(_zero_rejected(con1))), wit)

        ok, w = _inclusion_ok(con1, m, probes)
        results["BC2"].record(ok, wit | {"detail": _maybe_wit(space, w)})

        # BC3: when the complemented information is consistent with the model
        # (only for the null event), contraction changes nothing.
        if bc.consistent(m, bc.negate_event_model(me1)):
            ok, w = _model_agreement(space, con1, m, probes)
            results["BC3"].record(ok, wit | {"detail": _maybe_wit(space, w)})
        else:
            results["BC3"].record_vacuous()

        # BC4: recovery of the new information would require its negation to
        # be inconsistent; event models never are, so the premise must fail.
        premise = model_include(me1, con1, probes).outcome == VERIFIED
        if premise:
            results["BC4"].record(False, wit)
        else:
            results["BC4"].record_vacuous()

        # BC5: premise Me <= M only holds for the unit event, which is outside
        # the contraction domain.
        premise = model_include(me1, m, probes).outcome == VERIFIED
        if premise:
            exp_back = bc.expand(con1, me1)
            ok, w = (
                (False, None)
                if exp_back is INCONSISTENT
                else _inclusion_ok(m, exp_back, probes)
            )
            results["BC5"].record(ok, wit)
        else:
            results["BC5"].record_vacuous()

        # BC6: contracting by the closed event model changes nothing.
        con1b = bc.contract(m, bc.close_event_model(me1).event)
        ok, w = _model_agreement(space, con1, con1b, probes)
        results["BC6"].record(ok, wit | {"detail": _maybe_wit(space, w)})

        # BC7: the meet of two contractions against contraction by the union
        # (the meet event).  Violations are the expected counterexamples.
        em = ev.meet(e1, e2)
        con2 = bc.contract(m, e2)
        met = model_meet(con1, con2)
        conm = bc.contract(m, em)
        res = model_include(met, conm, probes)
        if res.outcome == VERIFIED:
            results["BC7"].record(True)
        elif res.outcome == FALSIFIED:
            r = results["BC7"]
            r.checks += 1
            if r.outcome != FAIL:
                r.outcome = EXPECTED_CX
                r.witness = wit | {"detail": _maybe_wit(space, res.witness)}
        else:
            r = results["BC7"]
            r.checks += 1
            r.unknowns += 1

        # BC8: under its consistency side condition.
        side = bc.consistent(bc.negate_event_model(me1), conm)
        if side:
            res = model_include(conm, con1, probes)
            if res.outcome == VERIFIED:
                results["BC8"].record(True)
            elif res.outcome == FALSIFIED:
                r = results["BC8"]
                r.checks += 1
                if r.outcome != FAIL:
                    r.outcome = EXPECTED_CX
                    r.witness = wit | {"detail": _maybe_wit(space, res.witness)}
            else:
                results["BC8"].record(None)
        else:
            results["BC8"].record_vacuous()

    report.results.extend(results.values())
    return report


# ---------------------------------------------------------------------------
# Levi and Harper identities
# ---------------------------------------------------------------------------


def run_identities_suite(kind: str, cfg: GenConfig) -> AxiomReport:
    report = AxiomReport("identities", kind, cfg.seed, cfg.trials)
    r_levi = AxiomResult("LEVI")
    r_harper = AxiomResult("HARPER")
    for i in range(cfg.trials):
        rng = stream_rng(cfg.seed, "identities", i)
        space = _spaces_for(cfg, kind, cfg.seed, ("identities", i))
        m = rand_coherent_model(space, rng, cfg.extra_generators)
        e = rand_event(space, rng)
        probes = _probes(space, rng, count=8)
        wit = {"model": io.model_to_json(m), "event": io.event_to_json(e)}

        lhs, rhs = bc.levi_sides(m, e)
        ok, w = _model_agreement(space, lhs, rhs, probes)
        r_levi.record(ok, wit | {"detail": _maybe_wit(space, w)})

        h1, h2 = bc.harper_sides(m, e)
        ok, w = _model_agreement(space, h1, h2, probes)
        r_harper.record(ok, wit | {"detail": _maybe_wit(space, w)})
    report.results.extend([r_levi, r_harper])
    return report


# ---------------------------------------------------------------------------
# Counterexample hunt
# ---------------------------------------------------------------------------


def counterexample_hunt(axiom: str, cfg: GenConfig, kind: str = "classical"):
    """Search random instances for a violation of BC7 or BC8.

    Returns a replayable witness dict, or None when the budget is exhausted.
    Deterministic under the seed; the first violating instance is returned.
    """
    if axiom not in ("BC7", "BC8"):
        from .errors import InputError

        raise InputError("hunt supports BC7 and BC8")
    for i in range(cfg.trials):
        rng = stream_rng(cfg.seed, "hunt", axiom, i)
        space = _spaces_for(cfg, kind, cfg.seed, ("hunt", i))
        try:
            m = rand_coherent_model(space, rng, cfg.extra_generators)
            e1 = rd.rand_nonregular_event(space, rng)
            e2 = rd.rand_nonregular_event(space, rng)
        except GenerationError:
            continue
        found = evaluate_hunt_instance(axiom, m, e1, e2)
        if found is not None:
            return {
                "axiom": axiom,
                "trial": i,
                "seed": cfg.seed,
                "model": io.model_to_json(m),
                "e1": io.event_to_json(e1),
                "e2": io.event_to_json(e2),
                "witness_option": sp.option_to_json(space, found),
            }
    return None


def evaluate_hunt_instance(axiom: str, m: DesirabilityModel, e1, e2):
    """The violating option for this instance, or None when the postulate holds."""
    em = ev.meet(e1, e2)
    con1 = bc.contract(m, e1)
    con2 = bc.contract(m, e2)
    conm = bc.contract(m, em)
    if axiom == "BC7":
        met = model_meet(con1, con2)
        res = model_include(met, conm)
        if res.outcome == FALSIFIED and isinstance(res.witness, tuple):
            return res.witness[1]
        return None
    side = bc.consistent(bc.negate_event_model(bc.event_model(e1)), conm)
    if not side:
        return None
    res = model_include(conm, con1)
    if res.outcome == FALSIFIED and isinstance(res.witness, tuple):
        return res.witness[1]
    return None


def replay_hunt_witness(data) -> bool:
    """Re-evaluate a stored hunt witness; True when the violation reproduces."""
    space = io.space_from_json(data["model"]["space"])
    m = io.model_from_json(data["model"])
    e1 = io.event_from_json(data["e1"], space)
    e2 = io.event_from_json(data["e2"], space)
    found = evaluate_hunt_instance(data["axiom"], m, e1, e2)
    return found is not None


SUITE_RUNNERS = {
    "events": run_events_suite,
    "models": run_models_suite,
    "revision": run_revision_suite,
    "contraction": run_contraction_suite,
    "identities": run_identities_suite,
}


def run_suites(names, kinds, cfg: GenConfig) -> list[AxiomReport]:
    reports = []
    for name in names:
        for kind in kinds:
            reports.append(SUITE_RUNNERS[name](kind, cfg))
    return reports
