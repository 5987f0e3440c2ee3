"""Events and the calling-off operation.

Classical events are subsets of the possibility space, acting on gambles by
indicator multiplication.  Quantum events are orthogonal projectors P, acting
on measurements by two-sided compression A -> PAP.  Both give linear,
idempotent, monotone maps; the kernel of the map is the post-event
indifference space, and meets are computed through kernels.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import hermitian as hm
from . import spaces as sp
from .errors import ConvergenceError, InputError
from .linalg import Subspace
from .spaces import Space

EVENT_EQ_TOL = 1e-9

REGULAR = "regular"
PROPER = "proper"
IMPROPER = "improper"


class Event:
    """A calling-off event: a subset of atoms, or an orthogonal projector."""

    __slots__ = ("space", "subset", "projector")

    def __init__(self, space: Space, subset=None, projector=None):
        self.space = space
        if space.is_classical:
            subset = frozenset(subset or ())
            unknown = subset - set(space.atoms)
            if unknown:
                raise InputError(f"subset mentions unknown atoms {sorted(unknown)}")
            self.subset = subset
            self.projector = None
        else:
            p = hm.normalize_projector(np.asarray(projector, dtype=complex))
            if p.shape[0] != space.dim:
                raise InputError("projector size does not match the space")
            self.subset = None
            self.projector = p

    @classmethod
    def from_subspace_basis(cls, space: Space, vectors) -> "Event":
        return cls(space, projector=hm.projector_from_vectors(vectors, space.dim))

    @classmethod
    def unit(cls, space: Space) -> "Event":
        if space.is_classical:
            return cls(space, subset=space.atoms)
        return cls(space, projector=np.eye(space.dim, dtype=complex))

    @classmethod
    def null(cls, space: Space) -> "Event":
        if space.is_classical:
            return cls(space, subset=())
        return cls(space, projector=np.zeros((space.dim, space.dim), dtype=complex))

    def as_option(self):
        """The event viewed as an option (indicator gamble / the projector)."""
        if self.space.is_classical:
            return tuple(
                Fraction(1) if a in self.subset else Fraction(0)
                for a in self.space.atoms
            )
        return self.projector

    def rank(self) -> int:
        if self.space.is_classical:
            return len(self.subset)
        return hm.projector_rank(self.projector)

    def __eq__(self, other):
        if not isinstance(other, Event) or self.space != other.space:
            return False
        if self.space.is_classical:
            return self.subset == other.subset
        return bool(
            np.linalg.norm(self.projector - other.projector) <= EVENT_EQ_TOL
        )

    def __hash__(self):
        if self.space.is_classical:
            return hash((self.space, self.subset))
        return hash((self.space, self.projector.round(6).tobytes()))

    def __repr__(self):
        if self.space.is_classical:
            return f"Event({sorted(self.subset)})"
        return f"Event(projector rank {self.rank()} in n={self.space.dim})"


def _check_same_space(e: Event, space: Space):
    if e.space != space:
        raise InputError("event and option live in different spaces")


def call_off(e: Event, u):
    """The called-off option: indicator product, or the compression PuP."""
    u = e.space.validate_option(u)
    if e.space.is_classical:
        return tuple(
            x if a in e.subset else Fraction(0) for a, x in zip(e.space.atoms, u)
        )
    return e.projector @ u @ e.projector


def call_off_coords(e: Event, x):
    """Calling-off as a map on real coordinates (used for halfspace pullbacks)."""
    if e.space.is_classical:
        return tuple(
            v if a in e.subset else Fraction(0) for a, v in zip(e.space.atoms, x)
        )
    mat = hm.uncoordinatize(np.asarray(x, float), e.space.dim)
    return hm.coordinatize(e.projector @ mat @ e.projector)


def kernel(e: Event):
    """Kernel of the calling-off map, as a subspace of option coordinates.

    Classical: exact rational subspace spanned by the basis gambles on atoms
    outside the event.  Quantum: the Hermitians A with PAP = 0, dimension
    n^2 - m^2 for a rank-m projector.
    """
    if e.space.is_classical:
        d = len(e.space.atoms)
        basis = []
        for i, a in enumerate(e.space.atoms):
            if a not in e.subset:
                v = [Fraction(0)] * d
                v[i] = Fraction(1)
                basis.append(tuple(v))
        return Subspace(d, basis)
    rows = [hm.coordinatize(m) for m in kernel_matrices(e)]
    return hm.FloatSubspace(e.space.ambient_dim, rows)


def kernel_matrices(e: Event) -> list[np.ndarray]:
    """Hermitian basis of {A : PAP = 0} (quantum spaces only)."""
    if e.space.is_classical:
        raise InputError("kernel_matrices is quantum-only")
    n = e.space.dim
    w, q = hm.eigh_jacobi(e.projector)
    # Columns ordered null-part first, range-part last.
    order = np.argsort(w, kind="stable")
    q = q[:, order]
    m = int(round(np.sum(w > 0.5)))
    k = n - m  # null dimension
    out = []
    for i in range(n):
        for j in range(i, n):
            if i >= k and j >= k:
                continue  # both indices in the range block: PAP would survive
            if i == j:
                out.append(np.outer(q[:, i], q[:, i].conj()))
            else:
                vi, vj = q[:, i], q[:, j]
                sym = np.outer(vi, vj.conj()) + np.outer(vj, vi.conj())
                anti = 1j * (np.outer(vi, vj.conj()) - np.outer(vj, vi.conj()))
                out.append(sym / np.sqrt(2))
                out.append(anti / np.sqrt(2))
    return out


def complement(e: Event) -> Event:
    if e.space.is_classical:
        return Event(e.space, subset=set(e.space.atoms) - e.subset)
    return Event(e.space, projector=np.eye(e.space.dim) - e.projector)


def meet(e1: Event, e2: Event) -> Event:
    """The event whose kernel is kernel(e1) + kernel(e2).

    Classical: set intersection.  Quantum: the projector onto
    range(P1) ∩ range(P2), computed as the orthocomplement of
    range(I-P1) + range(I-P2).
    """
    if e1.space != e2.space:
        raise InputError("meet of events in different spaces")
    if e1.space.is_classical:
        return Event(e1.space, subset=e1.subset & e2.subset)
    n = e1.space.dim
    n1 = hm.projector_range(np.eye(n) - e1.projector)
    n2 = hm.projector_range(np.eye(n) - e2.projector)
    stacked = np.hstack([n1, n2])
    q = hm.orthonormal_columns(list(stacked.T), n)
    return Event(e1.space, projector=np.eye(n) - q @ q.conj().T)


def altproj_meet(e1: Event, e2: Event, tol: float = 1e-12, max_iter: int = 10000) -> Event:
    """Meet of two quantum events via alternating orthogonal projections.

    Iterates X <- (P1 P2)^k until successive iterates differ by at most tol
    in Frobenius norm, then symmetrizes and re-idempotizes the limit.  A
    second, independent route to :func:`meet`, used as a cross-check.
    """
    if e1.space.is_classical or e1.space != e2.space:
        raise InputError("altproj_meet needs two quantum events in one space")
    step = e1.projector @ e2.projector
    x = step.copy()
    for _ in range(max_iter):
        nxt = x @ step
        if np.linalg.norm(nxt - x) <= tol:
            x = nxt
            break
        x = nxt
    else:
        raise ConvergenceError(
            "alternating projections hit the iteration cap", last_iterate=x
        )
    x = (x + x.conj().T) / 2
    w, q = hm.eigh_jacobi(x)
    keep = q[:, w >= 0.5]
    return Event(e1.space, projector=keep @ keep.conj().T)


def kernel_sum_decompose(e1: Event, e2: Event, f, residual_tol: float = 1e-10):
    """Split f in kernel(meet(e1,e2)) as f1 + f2 with f_i in kernel(e_i).

    Classical split: f1 = (1 - ind(E1) + ind(E2)) f / 2 and symmetrically,
    which is exact.  Quantum split: a truncated alternating-compression
    series, truncated once the e2-compression residual of the partial sum
    drops below ``residual_tol``.
    """
    if e1.space != e2.space:
        raise InputError("events live in different spaces")
    space = e1.space
    f = space.validate_option(f)
    em = meet(e1, e2)
    offm = call_off(em, f)
    if space.is_classical:
        if any(x != 0 for x in offm):
            raise InputError("option is not in the kernel of the meet")
        one = space.unit_option()
        i1 = e1.as_option()
        i2 = e2.as_option()
        w1 = tuple((a - b + c) / 2 for a, b, c in zip(one, i1, i2))
        w2 = tuple((a - b + c) / 2 for a, b, c in zip(one, i2, i1))
        f1 = tuple(w * x for w, x in zip(w1, f))
        f2 = tuple(w * x for w, x in zip(w2, f))
        return f1, f2
    if np.linalg.norm(offm) > 1e-8:
        raise InputError("option is not in the kernel of the meet")
    p1, p2 = e1.projector, e2.projector
    p12 = p1 @ p2
    p21 = p2 @ p1
    b = np.zeros_like(f)
    left = p2 @ f @ p2
    right_l = np.eye(space.dim, dtype=complex)  # (P2 P1)^k accumulators
    for _ in range(10000):
        lk = right_l  # (P2P1)^k
        term = lk @ left @ lk.conj().T - (p12 @ lk.conj().T) @ f @ (lk @ p21)
        b = b + term
        right_l = p21 @ right_l
        residual = np.linalg.norm(p2 @ (f - b) @ p2)
        if residual <= residual_tol:
            break
    else:
        raise ConvergenceError("kernel-sum series did not reach tolerance", b)
    f1 = b
    f2 = f - b
    return f1, f2


def order_leq(e1: Event, e2: Event) -> bool:
    """Event ordering: classical subset / quantum range inclusion."""
    if e1.space != e2.space:
        raise InputError("ordering of events in different spaces")
    if e1.space.is_classical:
        return e1.subset <= e2.subset
    resid = (np.eye(e1.space.dim) - e2.projector) @ e1.projector
    return bool(np.linalg.norm(resid) <= 1e-8)


def order_leq_by_calloff(e1: Event, e2: Event, samples) -> bool:
    """The commuting-projection form of the event ordering on sampled options."""
    for u in samples:
        a = call_off(e1, u)
        b = call_off(e1, call_off(e2, u))
        c = call_off(e2, call_off(e1, u))
        if not (
            sp.options_equal(e1.space, a, b) and sp.options_equal(e1.space, a, c)
        ):
            return False
    return True


def nonpositivity_implication(e1: Event, e2: Event) -> bool:
    """Whether every option killed by e2 has a non-strictly-positive e1 image.

    Decided exactly: a violation exists iff some kernel direction of e2 has a
    background-strict image under e1 (an atom of E1 outside E2 classically; a
    null vector of P2 escaping null(P1) in the quantum case).
    """
    if e1.space != e2.space:
        raise InputError("events live in different spaces")
    if e1.space.is_classical:
        return not (e1.subset - e2.subset)
    n = e1.space.dim
    null2 = hm.projector_range(np.eye(n) - e2.projector)
    for k in range(null2.shape[1]):
        v = null2[:, k]
        img = e1.projector @ v
        if np.linalg.norm(img) > 1e-8:
            # rank-one witness: A = vv* lies in kernel(e2), P1 A P1 > 0.
            return False
    return True


def classify(e: Event) -> str:
    """'regular' (the unit event), 'improper' (the null event), else 'proper'.

    Regular events are also proper; the returned label is the strongest one.
    """
    if e == Event.unit(e.space):
        return REGULAR
    if e == Event.null(e.space):
        return IMPROPER
    return PROPER


def is_proper(e: Event) -> bool:
    return classify(e) != IMPROPER


def is_regular(e: Event) -> bool:
    return classify(e) == REGULAR
