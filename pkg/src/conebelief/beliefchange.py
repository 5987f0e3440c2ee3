"""Belief change for statement models: expansion, revision, contraction.

New information arrives as the statement model of an event (accept the
kernel of its calling-off map, reject nothing).  Expansion is closure of the
componentwise union and collapses to contradiction for every non-unit event;
revision instead pulls the accept cone back through the calling-off map and
installs the kernel as the new indifference space, which never produces a
contradiction.  Contraction is the meet of the model with the revision by
the complemented event, which makes Harper's identity hold by construction;
Levi's identity is a theorem about these operators and is checked by the
conformance suites.
"""

from __future__ import annotations

import numpy as np

from . import events as ev
from . import spaces as sp
from .coneexpr import Gen, Pullback, SpanAug
from .errors import InputError
from .events import Event
from .hermitian import FloatSubspace
from .linalg import Subspace
from .models import (
    INCONSISTENT,
    Assessment,
    BeliefModel,
    DesirabilityModel,
    RayReject,
    close,
    model_meet,
    trivial_subspace,
    _absorb_gens,
    _zero_rejected,
)
from .spaces import Space


class EventModel(BeliefModel):
    """The statement model of an event: its kernel accepted as indifferent,
    nothing rejected.  One-to-one with events through the kernel."""

    def __init__(self, event: Event):
        space = event.space
        self.event = event
        self.kernel = ev.kernel(event)
        basis = _kernel_basis_options(event)
        accept = SpanAug(Gen(space, gens=(), include_background=False), basis)
        super().__init__(space, accept, ())

    def __repr__(self):
        return f"EventModel({self.event!r})"


def _kernel_basis_options(event: Event) -> list:
    if event.space.is_classical:
        return [tuple(b) for b in ev.kernel(event).basis]
    return ev.kernel_matrices(event)


def event_model(e: Event) -> EventModel:
    return EventModel(e)


def negate_event_model(me: EventModel) -> EventModel:
    """The statement model of the complemented event."""
    return EventModel(ev.complement(me.event))


def close_event_model(me: EventModel) -> EventModel:
    """Closure of an event model: already deductively closed, so an equal model."""
    return EventModel(me.event)


def union_event_models(m1: EventModel, m2: EventModel) -> EventModel:
    """Closure of the union of two event models: the model of the meet event,
    whose kernel is the sum of the two kernels."""
    return EventModel(ev.meet(m1.event, m2.event))


def expand(m: BeliefModel, new) -> BeliefModel:
    """Closure of the componentwise union of a model with new information.

    ``new`` may be an Assessment, an EventModel, or another model with
    symbolic reject pieces.  Returns INCONSISTENT when the union is not
    deductively closable.
    """
    if getattr(m, "is_inconsistent", False) or getattr(new, "is_inconsistent", False):
        return INCONSISTENT
    if isinstance(new, Assessment):
        accept = _absorb_gens(m.accept, new.accept)
        pieces = list(m.pieces)
        if new.reject:
            pieces.append(RayReject(m.space, new.reject))
        out = BeliefModel(m.space, accept, pieces)
    else:
        if m.space != new.space:
            raise InputError("expansion across spaces")
        if isinstance(new, EventModel):
            basis = _kernel_basis_options(new.event)
            accept = SpanAug(m.accept, basis) if basis else m.accept
        else:
            from .coneexpr import MinkSum

            accept = MinkSum(m.accept, new.accept)
        out = BeliefModel(m.space, accept, tuple(m.pieces) + tuple(new.pieces))
    if _zero_rejected(out):
        return INCONSISTENT
    return out


def consistent(m: BeliefModel, new) -> bool | None:
    """Two belief states are consistent when their join is deductively closable."""
    res = expand(m, new)
    if res is INCONSISTENT:
        return False
    return True


def conditioned_member(oracle, e: Event, u):
    """Membership of u in the conditioned desirable set: call off, then ask.

    ``oracle`` is any option predicate (e.g. a model's desirable_member);
    chaining events composes the calling-off maps.
    """
    return oracle(ev.call_off(e, u))


def desirable_oracle(m):
    return m.desirable_member


def revise(m: DesirabilityModel, e: Event) -> DesirabilityModel:
    """Belief revision by an event: desirable options are those whose
    called-off versions were desirable, indifference grows to the kernel.

    The first argument must be a canonical model with trivial indifference
    (conditioning with a nontrivial indifference space is the caller's job,
    by quotienting it away first).  Never inconsistent.
    """
    if not isinstance(m, DesirabilityModel):
        raise InputError("revision needs a canonical desirability model")
    if not m.has_trivial_indifference():
        raise InputError("revision requires a trivial indifference space")
    if e.space != m.space:
        raise InputError("event and model live in different spaces")
    accept = Pullback(e, m.accept)
    return DesirabilityModel(m.space, accept, ev.kernel(e), gens=m.gens)


def revised_background(space: Space, e: Event) -> DesirabilityModel:
    """The background model after the event: revision of the vacuous model."""
    from .models import vacuous_model

    return revise(vacuous_model(space), e)


def contract(m: DesirabilityModel, e: Event) -> BeliefModel:
    """Belief contraction by an event: meet with the revision by the
    complement, withdrawing desirability of options the complemented event
    calls off.  The unit event is outside the operator's domain (contracting
    it would have to remove the background)."""
    if ev.is_regular(e):
        raise InputError("cannot contract by the unit event")
    return contract_core(m, e)


def contract_core(m: DesirabilityModel, e: Event) -> BeliefModel:
    """The defining meet, without the domain restriction (used internally for
    identity checks at edge events)."""
    if not isinstance(m, DesirabilityModel) or not m.has_trivial_indifference():
        raise InputError("contraction needs a canonical model with trivial indifference")
    rev = revise(m, ev.complement(e))
    return model_meet(m, rev)


def levi_sides(m: DesirabilityModel, e: Event):
    """Both sides of Levi's identity: revision, and expansion after
    contraction by the complemented event."""
    lhs = revise(m, e)
    rhs = expand(contract_core(m, ev.complement(e)), event_model(e))
    return lhs, rhs


def harper_sides(m: DesirabilityModel, e: Event):
    """Both sides of Harper's identity: the contraction, and the meet of the
    model with the revision by the complemented event."""
    lhs = contract_core(m, e)
    rhs = model_meet(m, revise(m, ev.complement(e)))
    return lhs, rhs
