"""JSON poset files: ``n``, ``relations``, ``labels``, ``parts``, ``realizer``."""

from __future__ import annotations

import json
import re
from pathlib import Path

from . import constructions as C
from .poset import LinearExtension, Poset, PosetError, Realizer, from_relations


def record_to_doc(rec: C.ConstructionRecord) -> dict:
    P = rec.poset
    doc = {"n": P.n, "relations": P.covers.tolist()}
    if P.labels is not None:
        doc["labels"] = list(P.labels)
    if rec.parts:
        doc["parts"] = {k: list(v) for k, v in rec.parts.items()}
    if rec.realizer is not None:
        doc["realizer"] = [rec.realizer.lx.order.tolist(), rec.realizer.ly.order.tolist()]
    return doc


def doc_to_record(doc: dict, family: str = "file") -> C.ConstructionRecord:
    try:
        n = int(doc["n"])
        rel = [tuple(map(int, p)) for p in doc.get("relations", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise PosetError(f"malformed poset document: {exc}") from None
    if any(len(p) != 2 for p in rel):
        raise PosetError("relations must be index pairs")
    P = from_relations(n, rel, doc.get("labels"))
    parts = {k: [int(x) for x in v] for k, v in (doc.get("parts") or {}).items()}
    realizer = None
    if doc.get("realizer") is not None:
        lx, ly = doc["realizer"]
        realizer = Realizer(LinearExtension(lx), LinearExtension(ly))
        if not realizer.is_valid_for(P):
            raise PosetError("realizer does not realize the relations")
    return C.ConstructionRecord(family, None, P, parts, realizer)


def save(rec: C.ConstructionRecord, path) -> None:
    Path(path).write_text(json.dumps(record_to_doc(rec), indent=1) + "\n")


def load(path) -> C.ConstructionRecord:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise PosetError(f"{path}: not valid JSON ({exc})") from None
    return doc_to_record(doc, Path(path).stem)


FAMILIES = {
    "ru": C.build_R,
    "pw": C.build_P,
    "antichain-es": C.build_antichain_es,
    "kww": C.build_kww,
    "planar-hp": C.build_planar_hp,
    "chain": C.build_chain,
    "antichain": C.build_antichain,
}

LIFTS = {"lift-simple": C.lift_simple, "lift-diagonal": C.lift_diagonal}


def build(family: str, parameter: str) -> C.ConstructionRecord:
    """Build a family member; lifts take a base spec such as ``kww-2``."""
    if family in LIFTS:
        base = resolve(parameter)
        rec = LIFTS[family](base.poset)
        return C.ConstructionRecord(family, parameter, rec.poset, rec.parts)
    if family not in FAMILIES:
        raise PosetError(f"unknown family {family!r}")
    try:
        k = int(parameter)
    except ValueError:
        raise PosetError(f"family {family} takes an integer parameter, got {parameter!r}") from None
    return FAMILIES[family](k)


_SPEC = re.compile(r"^([a-z][a-z-]*?)-(\d+)$")


def resolve(spec: str) -> C.ConstructionRecord:
    """A poset from a file path, or a family spec like ``ru-3``."""
    p = Path(spec)
    if p.exists():
        return load(p)
    m = _SPEC.match(spec)
    if m and m.group(1) in FAMILIES:
        return build(m.group(1), m.group(2))
    raise PosetError(f"{spec}: no such file or family spec")
