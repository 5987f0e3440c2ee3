"""Semidefinite feasibility by LP column generation.

Positive-semidefinite constraints ``X(x) >= 0`` (with ``X`` affine in the
scalar unknowns) are relaxed to finitely many scalar cuts ``v* X(x) v >= 0``
over a growing set of unit vectors ``v``.  Each round solves the LP
relaxation, evaluates the true minimum eigenvalue at the candidate point,
and adds the eigenvector of the most violated constraint as a new cut.
The loop stops when a round improves the relaxation value by less than
``IMPROVE_TOL`` or after ``MAX_ROUNDS`` rounds; an undecided query is
reported as such rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .errors import InputError
from .hermitian import check_hermitian, eigh_jacobi

IMPROVE_TOL = 1e-10
MAX_ROUNDS = 500
BOX = 1e8

# Membership thresholds on the converged margin t*.
MEMBER_TOL = -1e-9
NONMEMBER_TOL = -1e-6


@dataclass
class PsdTerm:
    """An affine Hermitian expression const + sum_j x_j * coeff_j."""

    const: np.ndarray
    coeffs: list[tuple[int, np.ndarray]] = field(default_factory=list)

    def value(self, x: np.ndarray) -> np.ndarray:
        out = np.array(self.const, dtype=complex)
        for j, m in self.coeffs:
            out = out + x[j] * m
        return out


@dataclass
class NumSystem:
    """Scalar unknowns with linear rows and PSD-constrained expressions."""

    nvars: int
    signs: str  # '+' nonnegative, 'f' free, per variable
    eqs: list[tuple[np.ndarray, float]] = field(default_factory=list)
    ineqs: list[tuple[np.ndarray, float]] = field(default_factory=list)  # a.x >= b
    psd: list[PsdTerm] = field(default_factory=list)

    def validate(self):
        if len(self.signs) != self.nvars:
            raise InputError("signs length must match variable count")
        for term in self.psd:
            check_hermitian(term.const, tol=1e-9)
            for _, m in term.coeffs:
                check_hermitian(m, tol=1e-9)


@dataclass
class MarginOutcome:
    status: str  # 'converged' | 'unbounded' | 'infeasible' | 'cap'
    t_lower: float = -np.inf
    t_upper: float = np.inf
    x: np.ndarray | None = None

    def classify(self) -> str:
        """'member' / 'non-member' / 'unknown' against the margin thresholds."""
        if self.status == "infeasible":
            return "non-member"
        if self.status == "unbounded":
            return "member"
        t = self.t_upper if self.status == "cap" else max(self.t_lower, min(self.t_upper, self.t_lower))
        if self.t_lower >= MEMBER_TOL:
            return "member"
        if self.t_upper <= NONMEMBER_TOL:
            return "non-member"
        return "unknown"


def _seed_cuts(n: int) -> list[np.ndarray]:
    cuts = [np.eye(n, dtype=complex)[:, i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = np.zeros(n, dtype=complex)
            v[i] = 1.0
            v[j] = 1.0
            cuts.append(v / np.sqrt(2))
            v = np.zeros(n, dtype=complex)
            v[i] = 1.0
            v[j] = 1.0j
            cuts.append(v / np.sqrt(2))
    return cuts


def _cut_row(term: PsdTerm, v: np.ndarray, nvars: int):
    const = float(np.real(v.conj() @ term.const @ v))
    row = np.zeros(nvars)
    for j, m in term.coeffs:
        row[j] += float(np.real(v.conj() @ m @ v))
    return row, const


def solve_margin(system: NumSystem) -> MarginOutcome:
    """Maximize the minimum eigenvalue margin t with X_k(x) >= t*I for all k."""
    return _column_generation(system, margin_mode=True)


def solve_max(system: NumSystem, objective: np.ndarray) -> MarginOutcome:
    """Maximize objective . x subject to X_k(x) >= 0 and the linear rows.

    The outcome's t bounds carry the objective value (lower = certified at a
    truly feasible point, upper = LP relaxation bound).
    """
    return _column_generation(system, margin_mode=False, objective=np.asarray(objective, float))


def _column_generation(system, margin_mode, objective=None) -> MarginOutcome:
    system.validate()
    n_x = system.nvars
    nv = n_x + (1 if margin_mode else 0)

    bounds = []
    for s in system.signs:
        bounds.append((0.0, BOX) if s == "+" else (-BOX, BOX))
    if margin_mode:
        bounds.append((-BOX, BOX))

    c_min = np.zeros(nv)
    if margin_mode:
        c_min[-1] = -1.0
    else:
        c_min[:n_x] = -objective

    a_eq, b_eq = [], []
    for row, rhs in system.eqs:
        r = np.zeros(nv)
        r[:n_x] = row
        a_eq.append(r)
        b_eq.append(rhs)
    a_ub, b_ub = [], []
    for row, rhs in system.ineqs:
        r = np.zeros(nv)
        r[:n_x] = -np.asarray(row, float)
        a_ub.append(r)
        b_ub.append(-rhs)

    cut_rows, cut_rhs = [], []

    def add_cut(term, v):
        row, const = _cut_row(term, v, n_x)
        r = np.zeros(nv)
        r[:n_x] = -row
        if margin_mode:
            r[-1] = 1.0
        cut_rows.append(r)
        cut_rhs.append(const)

    for term in system.psd:
        for v in _seed_cuts(term.const.shape[0]):
            add_cut(term, v)

    if not system.psd:
        res = linprog(
            c_min,
            A_ub=np.array(a_ub) if a_ub else None,
            b_ub=np.array(b_ub) if b_ub else None,
            A_eq=np.array(a_eq) if a_eq else None,
            b_eq=np.array(b_eq) if b_eq else None,
            bounds=bounds,
            method="highs",
        )
        if res.status == 2:
            return MarginOutcome(status="infeasible")
        x = res.x[:n_x] if res.x is not None else None
        if margin_mode:
            return MarginOutcome(status="unbounded", t_lower=np.inf, t_upper=np.inf, x=x)
        val = float(objective @ x) if x is not None else np.inf
        at_box = res.status == 3 or (x is not None and np.any(np.abs(x) >= 0.9 * BOX))
        if at_box:
            return MarginOutcome(status="unbounded", t_lower=val, t_upper=np.inf, x=x)
        return MarginOutcome(status="converged", t_lower=val, t_upper=val, x=x)

    t_lower = -np.inf
    best_x = None
    prev_upper = np.inf
    for _ in range(MAX_ROUNDS):
        res = linprog(
            c_min,
            A_ub=np.array(a_ub + cut_rows),
            b_ub=np.array(b_ub + cut_rhs),
            A_eq=np.array(a_eq) if a_eq else None,
            b_eq=np.array(b_eq) if b_eq else None,
            bounds=bounds,
            method="highs",
        )
        if res.status == 2:
            return MarginOutcome(status="infeasible")
        if res.x is None:
            return MarginOutcome(status="cap", t_lower=t_lower, x=best_x)
        x = res.x[:n_x]
        upper = res.x[-1] if margin_mode else float(objective @ x)

        true_margin = np.inf
        worst = None
        for term in system.psd:
            w, q = eigh_jacobi(term.value(x))
            if w[0] < true_margin:
                true_margin = w[0]
                worst = (term, q[:, 0])
        if margin_mode:
            cand = true_margin
        else:
            cand = upper if true_margin >= -1e-9 else -np.inf
        if cand > t_lower:
            t_lower = cand
            best_x = x

        at_box = np.any(np.abs(res.x) >= 0.9 * BOX)
        if margin_mode:
            gap_closed = upper - t_lower <= IMPROVE_TOL * max(1.0, abs(upper))
        else:
            gap_closed = true_margin >= -1e-9 and upper - t_lower <= 1e-7 * max(
                1.0, abs(upper)
            )
        stalled = prev_upper - upper < IMPROVE_TOL * max(1.0, abs(upper))
        prev_upper = upper
        if gap_closed and not at_box:
            return MarginOutcome(
                status="converged", t_lower=t_lower, t_upper=upper, x=best_x
            )
        if at_box and true_margin >= -1e-9:
            return MarginOutcome(
                status="unbounded", t_lower=t_lower, t_upper=np.inf, x=x
            )
        if stalled and not at_box:
            return MarginOutcome(
                status="converged", t_lower=t_lower, t_upper=upper, x=best_x
            )
        add_cut(worst[0], worst[1] / np.linalg.norm(worst[1]))

    return MarginOutcome(status="cap", t_lower=t_lower, t_upper=prev_upper, x=best_x)
