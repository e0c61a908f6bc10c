"""JSON formats for knot data and representations.

Knot data is one of::

    {"type": "lin", "genus": g, "Q": [[...]], "T": [[...]], "alpha": [...], "beta": [...]}
    {"type": "twobridge", "w": "x y"}             (optional "name", "p")
    {"type": "pretzel", "p": 3, "q": 5, "r": 7}

A representation document is::

    {"presentation": <knot data, or a path to a knot-data file>,
     "cover": n,                                   (optional: lift to the n-fold branched cover)
     "assignment": {"x1": [[re, im], [re, im], [re, im], [re, im]], ...}}

Matrix entries are listed row-major.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import SchemaError
from .exactlin import IntMatrix
from .presentation import LinPresentation, Presentation, knot_group, lift_sigman, parse_word
from .pretzel import BrieskornGroup
from .reps import Representation
from .sl2 import Sl2
from .twobridge import TwoBridgeKnot


@dataclass(frozen=True)
class KnotData:
    kind: str
    raw: dict
    lin: LinPresentation | None = None
    twobridge: TwoBridgeKnot | None = None
    brieskorn: BrieskornGroup | None = None

    def presentation(self, cover: int | None = None) -> Presentation:
        if self.kind == "lin":
            return knot_group(self.lin) if cover is None else lift_sigman(self.lin, cover)
        if cover is not None:
            raise SchemaError(f"'cover' is only supported for Lin knot data, not {self.kind}")
        if self.kind == "twobridge":
            return self.twobridge.group
        return self.brieskorn.presentation


def _require(doc: dict, key: str, kind: type | tuple = object):
    if key not in doc:
        raise SchemaError(f"missing field {key!r}")
    val = doc[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise SchemaError(f"field {key!r} has the wrong type")
    return val


def _int_matrix(val, name: str) -> IntMatrix:
    if not isinstance(val, list) or not all(isinstance(r, list) for r in val):
        raise SchemaError(f"{name} must be a list of rows")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in val for x in r):
        raise SchemaError(f"{name} entries must be integers")
    widths = {len(r) for r in val}
    if len(widths) > 1:
        raise SchemaError(f"{name} rows have different lengths")
    return IntMatrix.from_rows(val, widths.pop() if widths else 0)


def parse_knot(doc: Any) -> KnotData:
    if not isinstance(doc, dict):
        raise SchemaError("knot data must be a JSON object")
    kind = _require(doc, "type", str)
    if kind == "lin":
        g = _require(doc, "genus", int)
        labels = tuple(f"x{i}" for i in range(1, 2 * g + 1))
        words = {}
        for key in ("alpha", "beta"):
            lst = _require(doc, key, list)
            if not all(isinstance(s, str) for s in lst):
                raise SchemaError(f"{key} must be a list of word strings")
            try:
                words[key] = tuple(parse_word(s, labels) for s in lst)
            except LookupError as exc:
                raise SchemaError(str(exc)) from None
        lp = LinPresentation(
            g, words["alpha"], words["beta"], _int_matrix(_require(doc, "Q"), "Q"), _int_matrix(_require(doc, "T"), "T")
        )
        return KnotData("lin", doc, lin=lp)
    if kind == "twobridge":
        w = _require(doc, "w", str)
        p = doc.get("p")
        if p is not None and (not isinstance(p, int) or isinstance(p, bool)):
            raise SchemaError("field 'p' must be an integer")
        try:
            word = parse_word(w, ("x", "y"))
        except LookupError as exc:
            raise SchemaError(str(exc)) from None
        return KnotData("twobridge", doc, twobridge=TwoBridgeKnot(word, doc.get("name", ""), p))
    if kind == "pretzel":
        p, q, r = (_require(doc, k, int) for k in ("p", "q", "r"))
        return KnotData("pretzel", doc, brieskorn=BrieskornGroup(p, q, r))
    raise SchemaError(f"unknown knot type {kind!r}")


def _read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None


def load_knot(path: str | Path) -> KnotData:
    return parse_knot(_read_json(path))


def lin_to_dict(lp: LinPresentation) -> dict:
    labels = lp.labels
    return {
        "type": "lin",
        "genus": lp.genus,
        "Q": lp.seifert_Q.tolist(),
        "T": lp.gluing_T.tolist(),
        "alpha": [w.format(labels) for w in lp.alpha],
        "beta": [w.format(labels) for w in lp.beta],
    }


def _matrix_json(A: Sl2) -> list[list[float]]:
    return [[z.real, z.imag] for z in (complex(A.a), complex(A.b), complex(A.c), complex(A.d))]


def _matrix_from_json(val, label: str) -> Sl2:
    try:
        entries = [complex(float(re), float(im)) for re, im in val]
    except (TypeError, ValueError):
        raise SchemaError(f"matrix for {label} must be four [re, im] pairs") from None
    if len(entries) != 4:
        raise SchemaError(f"matrix for {label} must have four entries")
    return Sl2(*entries)


def rep_to_dict(rep: Representation, knot: dict | str, cover: int | None = None) -> dict:
    doc: dict = {"presentation": knot}
    if cover is not None:
        doc["cover"] = cover
    doc["assignment"] = {lab: _matrix_json(A) for lab, A in rep.as_dict().items()}
    return doc


def parse_rep(doc: Any, base: Path | None = None, det_tol: float | None = None) -> tuple[Representation, KnotData]:
    if not isinstance(doc, dict):
        raise SchemaError("representation must be a JSON object")
    ref = _require(doc, "presentation", (dict, str))
    if isinstance(ref, str):
        path = Path(ref)
        if base is not None and not path.is_absolute():
            path = base / path
        knot = load_knot(path)
    else:
        knot = parse_knot(ref)
    cover = doc.get("cover")
    if cover is not None and (not isinstance(cover, int) or isinstance(cover, bool)):
        raise SchemaError("field 'cover' must be an integer")
    pres = knot.presentation(cover)
    assignment = _require(doc, "assignment", dict)
    mats = {lab: _matrix_from_json(val, lab) for lab, val in assignment.items()}
    kw = {} if det_tol is None else {"det_tol": det_tol}
    try:
        rep = Representation.from_mapping(pres, mats, **kw)
    except LookupError as exc:
        raise SchemaError(str(exc)) from None
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    return rep, knot


def load_rep(path: str | Path, det_tol: float | None = None) -> tuple[Representation, KnotData]:
    path = Path(path)
    return parse_rep(_read_json(path), path.parent, det_tol)
