"""JSON encodings for spaces, options, events, models and reports."""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from . import events as ev
from . import spaces as sp
from .coneexpr import Gen, SpanAug
from .errors import InputError
from .hermitian import FloatSubspace
from .linalg import Subspace, vec
from .models import (
    INCONSISTENT,
    Assessment,
    BeliefModel,
    DesirabilityModel,
    RayReject,
    StrictReject,
    trivial_subspace,
)
from .spaces import Space


def space_to_json(space: Space) -> dict:
    if space.is_classical:
        return {"kind": "classical", "atoms": list(space.atoms)}
    return {"kind": "quantum", "dim": space.dim}


def space_from_json(data) -> Space:
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError("space descriptor must be an object with a 'kind'")
    if data["kind"] == "classical":
        return Space.classical(data["atoms"])
    if data["kind"] == "quantum":
        return Space.quantum(int(data["dim"]))
    raise InputError(f"unknown space kind {data['kind']!r}")


def number_to_json(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def event_to_json(e: ev.Event) -> dict:
    if e.space.is_classical:
        return {
            "kind": "classical",
            "subset": sorted(e.subset),
            "atoms": list(e.space.atoms),
        }
    return {
        "kind": "quantum",
        "projector": [[[z.real, z.imag] for z in row] for row in e.projector],
    }


def event_from_json(data, space: Space | None = None) -> ev.Event:
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError("event must be an object with a 'kind'")
    if data["kind"] == "classical":
        if space is None:
            if "atoms" in data:
                space = Space.classical(data["atoms"])
            elif not data.get("subset"):
                # The null event is classifiable without knowing the atoms.
                space = Space.classical(["_"])
                return ev.Event(space, subset=())
            else:
                raise InputError(
                    "classical event file needs 'atoms' to fix the space"
                )
        return ev.Event(space, subset=data.get("subset", ()))
    if data["kind"] == "quantum":
        if "projector" in data:
            mat = np.array(
                [[complex(p[0], p[1]) for p in row] for row in data["projector"]]
            )
            if space is None:
                space = Space.quantum(mat.shape[0])
            return ev.Event(space, projector=mat)
        if "subspace_basis" in data:
            vecs = [
                np.array([complex(p[0], p[1]) for p in row])
                for row in data["subspace_basis"]
            ]
            if space is None:
                if not vecs:
                    raise InputError("empty subspace basis needs an explicit space")
                space = Space.quantum(len(vecs[0]))
            return ev.Event.from_subspace_basis(space, vecs)
        raise InputError("quantum event needs 'projector' or 'subspace_basis'")
    raise InputError(f"unknown event kind {data['kind']!r}")


def assessment_to_json(a: Assessment) -> dict:
    return {
        "space": space_to_json(a.space),
        "accept": [sp.option_to_json(a.space, u) for u in a.accept],
        "reject": [sp.option_to_json(a.space, u) for u in a.reject],
    }


def assessment_from_json(data) -> Assessment:
    space = space_from_json(data["space"])
    return Assessment(
        space,
        accept=[sp.option_from_json(space, u) for u in data.get("accept", ())],
        reject=[sp.option_from_json(space, u) for u in data.get("reject", ())],
    )


def model_to_json(m: DesirabilityModel) -> dict:
    space = m.space
    if space.is_classical:
        basis = [[number_to_json(x) for x in b] for b in m.indifference.basis]
    else:
        basis = [list(map(float, b)) for b in m.indifference.basis]
    return {
        "space": space_to_json(space),
        "desirable_generators": [sp.option_to_json(space, g) for g in m.gens],
        "indifferent_basis": basis,
        "include_background": True,
    }


def model_from_json(data) -> DesirabilityModel:
    """Build the canonical model a file describes, without coherence filtering
    (the axiom checkers report violations on loaded files)."""
    space = space_from_json(data["space"])
    gens = [sp.option_from_json(space, g) for g in data.get("desirable_generators", ())]
    include_bg = bool(data.get("include_background", True))
    raw_basis = data.get("indifferent_basis", ())
    if space.is_classical:
        indiff = Subspace(space.ambient_dim, [vec([Fraction(x) if isinstance(x, str) else Fraction(x) for x in b]) for b in raw_basis])
        basis_opts = [tuple(b) for b in indiff.basis]
    else:
        indiff = FloatSubspace(space.ambient_dim, [np.asarray(b, float) for b in raw_basis])
        basis_opts = [sp.uncoordinatize(space, indiff.basis[i]) for i in range(indiff.dim)]
    cone = Gen(space, gens=gens, include_background=include_bg)
    accept = SpanAug(cone, basis_opts) if basis_opts else cone
    return DesirabilityModel(space, accept, indiff, gens=gens)


def statement_model_to_json(m: BeliefModel) -> dict:
    """Extended encoding for non-canonical classical models (one strict reject
    piece over a flattened accept cone)."""
    space = m.space
    if not space.is_classical:
        raise InputError("statement-model files are classical-only")
    flat = m.accept.flatten()
    pieces = []
    for p in m.pieces:
        if isinstance(p, RayReject):
            pieces.append(
                {"rays": [sp.option_to_json(space, r) for r in p.rays]}
            )
        else:
            pieces.append(
                {
                    "excluded_bases": [
                        [[number_to_json(v) for v in b] for b in x.basis]
                        for x in p.excluded
                    ]
                }
            )
    return {
        "kind": "statement",
        "space": space_to_json(space),
        "accept_rays": [[number_to_json(v) for v in r] for r in flat.rays],
        "accept_lineality": [[number_to_json(v) for v in b] for b in flat.lineality.basis],
        "reject_pieces": pieces,
    }


def statement_model_from_json(data) -> BeliefModel:
    space = space_from_json(data["space"])
    rays = [vec([Fraction(x) for x in r]) for r in data.get("accept_rays", ())]
    lin = [vec([Fraction(x) for x in b]) for b in data.get("accept_lineality", ())]
    cone = Gen(space, gens=rays, include_background=False)
    accept = SpanAug(cone, [tuple(b) for b in lin]) if lin else cone
    pieces = []
    for p in data.get("reject_pieces", ()):
        if "rays" in p:
            pieces.append(RayReject(space, [sp.option_from_json(space, r) for r in p["rays"]]))
        else:
            excl = [
                Subspace(space.ambient_dim, [vec([Fraction(x) for x in b]) for b in bases])
                for bases in p["excluded_bases"]
            ]
            pieces.append(StrictReject(accept, excl or [trivial_subspace(space)]))
    return BeliefModel(space, accept, pieces)


def any_model_from_json(data):
    if isinstance(data, dict) and data.get("kind") == "statement":
        return statement_model_from_json(data)
    return model_from_json(data)


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def dump_json(path: str, data) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
