"""JSON documents for every payload the command line reads or writes.

Schemas (all keys required unless marked optional):

ring          {"kind", "names", "degrees", "modulus", "caps", "top_degree"};
              toy rings may instead be given as {"factors": [...], "coefficients": {"p", "m"}}
poly          {"ring": ring, "terms": [{"exponents": [...], "coefficient": int}]}
chern vector  {"ring": ring, "classes": [{"degree": d, "terms": [...]}]}
schedule      {"r", "p", "m", "D", "mode", "moves": [{"degree", "kind", "data"}]}
arrangement   {"ground", "modulus", "dimension_cap",
               "chains": [{"subsets": [[...]], "multiplicities": [...], "coefficient": int}]}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .blowup import ArrangementElement, ArrangementRing, elements_of, mask_of
from .chern_ops.schedule import AdamsMove, NoOp, Schedule, SteenrodMove
from .chern_ops.vector import AdamsCombination, ChernVector
from .errors import ParseError
from .poly import Poly, PolyRing
from .symfunc import Partition


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def ring_to_json(ring: PolyRing) -> dict:
    return {
        "kind": ring.kind,
        "names": list(ring.names),
        "degrees": list(ring.degrees),
        "modulus": ring.modulus,
        "caps": None if ring.caps is None else list(ring.caps),
        "top_degree": ring.top_degree,
    }


def ring_from_json(doc: dict) -> PolyRing:
    try:
        if "factors" in doc:
            from .toychow import parse_ring

            spec = "x".join(f"P{n}" for n in doc["factors"])
            coeffs = doc.get("coefficients") or {}
            return parse_ring(spec, coeffs.get("p"), coeffs.get("m", 1)).ring
        return PolyRing(
            tuple(doc["names"]), tuple(doc["degrees"]), doc.get("modulus"),
            None if doc.get("caps") is None else tuple(doc["caps"]),
            doc.get("top_degree"), doc.get("kind", "formal"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad ring document: {exc}") from None


def terms_to_json(f: Poly) -> list[dict]:
    return [{"exponents": list(e), "coefficient": c} for e, c in f.sorted_terms()]


def terms_from_json(ring: PolyRing, terms: list[dict]) -> Poly:
    try:
        return Poly(ring, {tuple(t["exponents"]): int(t["coefficient"]) for t in terms})
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad term list: {exc}") from None


def poly_to_json(f: Poly) -> dict:
    return {"ring": ring_to_json(f.ring), "terms": terms_to_json(f)}


def poly_from_json(doc: dict) -> Poly:
    try:
        ring, terms = doc["ring"], doc["terms"]
    except (KeyError, TypeError):
        raise ParseError("polynomial document needs 'ring' and 'terms'") from None
    return terms_from_json(ring_from_json(ring), terms)


def vector_to_json(v: ChernVector) -> dict:
    return {
        "ring": ring_to_json(v.ring),
        "classes": [{"degree": d, "terms": terms_to_json(c)} for d, c in enumerate(v.classes, start=1)],
    }


def vector_from_json(doc: dict) -> ChernVector:
    try:
        ring = ring_from_json(doc["ring"])
        entries = sorted(doc["classes"], key=lambda e: e["degree"])
        D = max((e["degree"] for e in entries), default=0)
        classes = [ring.zero()] * D
        for e in entries:
            classes[e["degree"] - 1] = terms_from_json(ring, e["terms"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad Chern vector document: {exc}") from None
    return ChernVector(ring, tuple(classes))


def schedule_to_json(s: Schedule) -> dict:
    moves = []
    for mv in s.moves:
        if isinstance(mv, AdamsMove):
            data = {"terms": list(mv.combination.terms), "repetitions": mv.combination.repetitions}
        elif isinstance(mv, SteenrodMove):
            ident = mv.identity
            data = {
                "k": ident.k,
                "alpha": ident.alpha,
                "alpha_inv": ident.alpha_inv,
                "source_degree": ident.source_degree,
                "target": str(ident.target),
                "decomposable": terms_to_json(ident.decomposable),
                "identity": f"c{ident.d} = {ident.alpha_inv}*(P^{ident.k}(c{ident.source_degree}) - ({ident.decomposable}))",
            }
        else:
            data = {"reason": mv.reason}
        moves.append({"degree": mv.degree, "kind": mv.kind, "data": data})
    return {"r": s.r, "p": s.p, "m": s.m, "D": s.D, "mode": s.mode, "moves": moves}


def schedule_from_json(doc: dict) -> Schedule:
    try:
        moves = []
        for mv in doc["moves"]:
            d, kind, data = mv["degree"], mv["kind"], mv["data"]
            if kind == "adams":
                moves.append(AdamsMove(d, AdamsCombination(tuple(data["terms"]), doc["p"], data["repetitions"])))
            elif kind == "steenrod":
                try:
                    moves.append(SteenrodMove(d, doc["p"], data["k"]))
                except ValueError as exc:
                    raise ParseError(f"degree {d}: {exc}") from None
            elif kind == "noop":
                moves.append(NoOp(d, data.get("reason", "")))
            else:
                raise ParseError(f"unknown move kind {kind!r}")
        return Schedule(doc["r"], doc["p"], doc["m"], doc["D"], doc["mode"], tuple(moves))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad schedule document: {exc}") from None


def arrangement_to_json(x: ArrangementElement) -> dict:
    terms = []
    for mono, c in x.sorted_terms():
        subsets: list[int] = []
        mults: list[int] = []
        for I in mono:
            if subsets and subsets[-1] == I:
                mults[-1] += 1
            else:
                subsets.append(I)
                mults.append(1)
        terms.append({"subsets": [elements_of(I) for I in subsets], "multiplicities": mults, "coefficient": c})
    ring = x.ring
    return {"ground": ring.N, "modulus": ring.modulus, "dimension_cap": ring.dimension_cap, "chains": terms}


def arrangement_from_json(doc: dict) -> ArrangementElement:
    try:
        ring = ArrangementRing(doc["ground"], doc.get("modulus"), doc.get("dimension_cap"))
        terms = {}
        for t in doc["chains"]:
            mono = []
            for subset, k in zip(t["subsets"], t["multiplicities"]):
                mono.extend([mask_of(subset)] * k)
            key = tuple(mono)
            terms[key] = terms.get(key, 0) + int(t["coefficient"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad arrangement document: {exc}") from None
    return ArrangementElement(ring, terms)


def partition_terms_to_json(coeffs: dict[Partition, int]) -> list[dict]:
    return [
        {"partition": str(nu), "degree": nu.degree, "coefficient": c}
        for nu, c in sorted(coeffs.items(), key=lambda t: (t[0].degree, t[0].parts))
    ]


def load(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
