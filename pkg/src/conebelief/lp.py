"""Exact rational linear programming.

A small two-phase primal simplex over :class:`fractions.Fraction` with
Bland's anti-cycling pivot rule (deterministic lowest-index tie-breaking).
It only does what the rest of the package needs: decide feasibility of
``A x = b`` with sign-constrained variables, optionally maximize a linear
objective, and hand back verifiable certificates (a feasible point, or a
Farkas functional separating the right-hand side from the column cone).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .linalg import Vec, ZERO, ONE, vec

NONNEG = "+"
FREE = "f"


@dataclass(frozen=True)
class LPResult:
    status: str  # 'optimal' | 'feasible' | 'infeasible' | 'unbounded'
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    farkas: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class FeasibilityCertificate:
    """Outcome of a conic membership query.

    ``weights`` reproduce the target exactly when feasible; when infeasible,
    ``functional`` is nonpositive on every generator and strictly positive on
    the target.
    """

    kind: str  # 'feasible' | 'infeasible'
    weights: tuple[Fraction, ...] | None = None
    functional: tuple[Fraction, ...] | None = None


def solve_lp(nvars, signs, eq_rows, objective=None, maximize=True) -> LPResult:
    """Solve max/min of ``objective . x`` subject to ``rows . x = rhs`` per row.

    ``signs[i]`` is '+' (x_i >= 0) or 'f' (free).  With ``objective=None``
    only feasibility is decided ('feasible'/'infeasible').
    """
    if len(signs) != nvars:
        raise InputError("signs length must match variable count")
    for coeffs, _rhs in eq_rows:
        if len(coeffs) != nvars:
            raise InputError("constraint row has wrong width")

    # Split free variables into a positive and a negative column.
    col_of: list[tuple[int, int]] = []  # (original var, multiplier)
    for i, s in enumerate(signs):
        if s == NONNEG:
            col_of.append((i, 1))
        elif s == FREE:
            col_of.append((i, 1))
            col_of.append((i, -1))
        else:
            raise InputError(f"unknown sign {s!r}")
    ncols = len(col_of)
    m = len(eq_rows)

    flips = []
    tab = []  # m rows of length ncols + m + 1 (structural | artificial | rhs)
    for r, (coeffs, rhs) in enumerate(eq_rows):
        coeffs = vec(coeffs)
        rhs = Fraction(rhs)
        flip = -1 if rhs < 0 else 1
        flips.append(flip)
        row = [flip * coeffs[v] * mult for v, mult in col_of]
        row += [ONE if k == r else ZERO for k in range(m)]
        row.append(flip * rhs)
        tab.append(row)

    basis = [ncols + r for r in range(m)]
    width = ncols + m

    def pivot(r, c):
        pv = tab[r][c]
        tab[r] = [x / pv for x in tab[r]]
        for i in range(m):
            if i != r and tab[i][c] != 0:
                f = tab[i][c]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        basis[r] = c

    def run_simplex(costs, allowed):
        """Minimize costs.x with Bland's rule; returns True when optimal."""
        while True:
            duals = [costs[basis[i]] for i in range(m)]
            enter = None
            for j in range(width):
                if j not in allowed:
                    continue
                red = costs[j] - sum(duals[i] * tab[i][j] for i in range(m))
                if red < 0:
                    enter = j
                    break
            if enter is None:
                return True
            leave = None
            best = None
            for i in range(m):
                if tab[i][enter] > 0:
                    ratio = tab[i][width] / tab[i][enter]
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave is None:
                return False  # unbounded in the entering direction
            pivot(leave, enter)

    # Phase 1: minimize the sum of artificials.
    costs1 = [ZERO] * ncols + [ONE] * m
    allowed1 = set(range(width))
    run_simplex(costs1, allowed1)
    w = sum(costs1[basis[i]] * tab[i][width] for i in range(m))
    if w > 0:
        duals = [costs1[basis[i]] for i in range(m)]
        pi = []
        for r in range(m):
            art = ncols + r
            pi.append(sum(duals[i] * tab[i][art] for i in range(m)))
        farkas = tuple(pi[r] * flips[r] for r in range(m))
        return LPResult(status="infeasible", farkas=farkas)

    # Drive leftover artificials out of the basis where possible.
    for i in range(m):
        if basis[i] >= ncols:
            c = next((j for j in range(ncols) if tab[i][j] != 0), None)
            if c is not None:
                pivot(i, c)

    def extract_x():
        xs = [ZERO] * ncols
        for i in range(m):
            if basis[i] < ncols:
                xs[basis[i]] = tab[i][width]
        out = [ZERO] * nvars
        for j, (v, mult) in enumerate(col_of):
            out[v] += mult * xs[j]
        return tuple(out)

    if objective is None:
        return LPResult(status="feasible", x=extract_x())

    obj = vec(objective)
    if len(obj) != nvars:
        raise InputError("objective has wrong width")
    sign = -1 if maximize else 1
    costs2 = [sign * obj[v] * mult for v, mult in col_of] + [ZERO] * m
    allowed2 = set(range(ncols))
    bounded = run_simplex(costs2, allowed2)
    if not bounded:
        return LPResult(status="unbounded", x=extract_x())
    x = extract_x()
    value = sum((obj[v] * x[v] for v in range(nvars)), ZERO)
    return LPResult(status="optimal", x=x, value=value)


def solve_lp_mixed(nvars, signs, eq_rows=(), ineq_rows=(), objective=None, maximize=True) -> LPResult:
    """Like :func:`solve_lp` but also accepts rows ``a . x >= b`` via slacks.

    The returned solution is truncated to the original variables.
    """
    eqs = [(tuple(vec(a)), Fraction(b)) for a, b in eq_rows]
    ineqs = [(vec(a), Fraction(b)) for a, b in ineq_rows]
    total = nvars + len(ineqs)
    signs2 = "".join(signs) + NONNEG * len(ineqs)
    rows = [(coeffs + (ZERO,) * len(ineqs), rhs) for coeffs, rhs in eqs]
    for k, (a, b) in enumerate(ineqs):
        slack = [ZERO] * len(ineqs)
        slack[k] = Fraction(-1)
        rows.append((tuple(a) + tuple(slack), b))
    obj2 = None
    if objective is not None:
        obj2 = tuple(vec(objective)) + (ZERO,) * len(ineqs)
    res = solve_lp(total, signs2, rows, objective=obj2, maximize=maximize)
    if res.x is not None:
        return LPResult(res.status, res.x[:nvars], res.value, res.farkas)
    return res


def posi_member(target, generators) -> FeasibilityCertificate:
    """Decide membership of ``target`` in the closed cone of the generators.

    Exact: returns nonnegative weights reproducing the target, or a Farkas
    functional y with <y, g> <= 0 for every generator and <y, target> > 0.
    """
    target = vec(target)
    gens = [vec(g) for g in generators]
    d = len(target)
    for g in gens:
        if len(g) != d:
            raise InputError("generator dimension mismatch")
    rows = [(tuple(g[i] for g in gens), target[i]) for i in range(d)]
    res = solve_lp(len(gens), [NONNEG] * len(gens), rows)
    if res.status == "infeasible":
        return FeasibilityCertificate(kind="infeasible", functional=res.farkas)
    return FeasibilityCertificate(kind="feasible", weights=res.x)
