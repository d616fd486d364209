"""JSON documents for every structure in the package.

Each document is a dict with a ``"type"`` tag; keys are always written in
the order below so output is byte-stable. Integers whose magnitude exceeds
2**53 - 1 are written as decimal strings and read back exactly.
"""

from __future__ import annotations

from typing import Any

from . import ring2mod as rm
from .abgroup import AbHom, FinGenAbGroup
from .errors import ValidationError
from .intmatrix import IntMatrix
from .sgp2 import ChainHom, Homotopy, PicardComplex

SAFE_INT = 2 ** 53 - 1


class DocumentError(ValidationError):
    """A JSON document is malformed or fails validation."""


def encode_int(x: int):
    return str(x) if abs(x) > SAFE_INT else x


def decode_int(x) -> int:
    if isinstance(x, bool):
        raise DocumentError("expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise DocumentError(f"expected an integer, got {x!r}")


def _matrix_out(m: IntMatrix) -> list:
    return [[encode_int(x) for x in row] for row in m.tolist()]


def _matrix_in(rows, n_rows: int, n_cols: int, what: str) -> IntMatrix:
    if not isinstance(rows, list):
        raise DocumentError(f"{what}: expected a list of rows")
    if n_rows == 0:
        if rows not in ([],):
            raise DocumentError(f"{what}: expected no rows")
        return IntMatrix.zeros(0, n_cols)
    if len(rows) != n_rows or any(not isinstance(r, list) or len(r) != n_cols for r in rows):
        raise DocumentError(f"{what}: expected a {n_rows}x{n_cols} matrix")
    return IntMatrix(n_rows, n_cols, [[decode_int(x) for x in r] for r in rows])


def _expect(doc, kind: str) -> dict:
    if not isinstance(doc, dict):
        raise DocumentError(f"expected a {kind!r} document, got {type(doc).__name__}")
    if doc.get("type") != kind:
        raise DocumentError(f"expected a {kind!r} document, got type {doc.get('type')!r}")
    return doc


def _field(doc: dict, key: str):
    try:
        return doc[key]
    except KeyError:
        raise DocumentError(f"{doc.get('type')} document is missing {key!r}") from None


# abelian groups


def group_to_json(g: FinGenAbGroup) -> dict:
    return {"type": "fgab", "gens": g.gens, "rels": _matrix_out(g.rels)}


def group_from_json(doc) -> FinGenAbGroup:
    doc = _expect(doc, "fgab")
    gens = decode_int(_field(doc, "gens"))
    if gens < 0:
        raise DocumentError("fgab: negative generator count")
    rels = _field(doc, "rels")
    if not isinstance(rels, list):
        raise DocumentError("fgab: rels must be a list")
    return FinGenAbGroup(gens, _matrix_in(rels, len(rels), gens, "fgab rels"))


def hom_to_json(f: AbHom) -> dict:
    return {"type": "abhom", "src": group_to_json(f.src), "dst": group_to_json(f.dst),
            "matrix": _matrix_out(f.matrix)}


def hom_from_json(doc) -> AbHom:
    doc = _expect(doc, "abhom")
    src, dst = group_from_json(_field(doc, "src")), group_from_json(_field(doc, "dst"))
    return AbHom(src, dst, _matrix_in(_field(doc, "matrix"), dst.gens, src.gens, "abhom matrix"))


def element_to_json(coords) -> dict:
    return {"type": "elt", "coords": [encode_int(x) for x in coords]}


def element_from_json(doc) -> tuple[int, ...]:
    doc = _expect(doc, "elt")
    return tuple(decode_int(x) for x in _field(doc, "coords"))


# 2-groups


def complex_to_json(a: PicardComplex) -> dict:
    return {"type": "sgp2", "c1": group_to_json(a.c1), "c0": group_to_json(a.c0),
            "delta": _matrix_out(a.delta.matrix)}


def complex_from_json(doc) -> PicardComplex:
    doc = _expect(doc, "sgp2")
    c1, c0 = group_from_json(_field(doc, "c1")), group_from_json(_field(doc, "c0"))
    delta = _matrix_in(_field(doc, "delta"), c0.gens, c1.gens, "sgp2 delta")
    return PicardComplex(c1, c0, AbHom(c1, c0, delta))


def chainhom_to_json(f: ChainHom) -> dict:
    return {"type": "sgp2hom", "src": complex_to_json(f.src), "dst": complex_to_json(f.dst),
            "f1": _matrix_out(f.f1.matrix), "f0": _matrix_out(f.f0.matrix)}


def chainhom_parts(doc) -> tuple[PicardComplex, PicardComplex, AbHom, AbHom]:
    """Parse a chain map without requiring its square to commute."""
    doc = _expect(doc, "sgp2hom")
    src, dst = complex_from_json(_field(doc, "src")), complex_from_json(_field(doc, "dst"))
    f1 = AbHom(src.c1, dst.c1, _matrix_in(_field(doc, "f1"), dst.c1.gens, src.c1.gens, "f1"))
    f0 = AbHom(src.c0, dst.c0, _matrix_in(_field(doc, "f0"), dst.c0.gens, src.c0.gens, "f0"))
    return src, dst, f1, f0


def chainhom_from_json(doc) -> ChainHom:
    return ChainHom(*chainhom_parts(doc))


def homotopy_to_json(h: Homotopy, with_ends: bool = True) -> dict:
    if not with_ends:
        return {"type": "htpy", "t": _matrix_out(h.t.matrix)}
    return {"type": "htpy", "src": chainhom_to_json(h.src), "dst": chainhom_to_json(h.dst),
            "t": _matrix_out(h.t.matrix)}


def homotopy_component(doc, src: FinGenAbGroup, dst: FinGenAbGroup) -> AbHom:
    doc = _expect(doc, "htpy")
    return AbHom(src, dst, _matrix_in(_field(doc, "t"), dst.gens, src.gens, "htpy t"))


def homotopy_from_json(doc) -> Homotopy:
    doc = _expect(doc, "htpy")
    f, g = chainhom_from_json(_field(doc, "src")), chainhom_from_json(_field(doc, "dst"))
    return Homotopy(f, g, homotopy_component(doc, f.src.c0, f.dst.c1))


def triple_from_json(doc) -> tuple[ChainHom, ChainHom, Homotopy]:
    """``{"type": "triple", "gamma": ..., "sigma": ..., "phi": {"type": "htpy", "t": ...}}``."""
    from .sgp2 import triple_homotopy

    doc = _expect(doc, "triple")
    gamma = chainhom_from_json(_field(doc, "gamma"))
    sigma = chainhom_from_json(_field(doc, "sigma"))
    if gamma.dst != sigma.src:
        raise DocumentError("triple: gamma and sigma are not composable")
    t = homotopy_component(_field(doc, "phi"), gamma.src.c0, sigma.dst.c1)
    return gamma, sigma, triple_homotopy(gamma, sigma, t)


def triple_to_json(gamma: ChainHom, sigma: ChainHom, phi: Homotopy) -> dict:
    return {"type": "triple", "gamma": chainhom_to_json(gamma), "sigma": chainhom_to_json(sigma),
            "phi": homotopy_to_json(phi, with_ends=False)}


def lift_from_json(doc) -> tuple[ChainHom, ChainHom]:
    doc = _expect(doc, "lift")
    return chainhom_from_json(_field(doc, "G")), chainhom_from_json(_field(doc, "F"))


def lift_to_json(g: ChainHom, f: ChainHom) -> dict:
    return {"type": "lift", "G": chainhom_to_json(g), "F": chainhom_to_json(f)}


# rings and modules


def _table_in(doc: dict, key: str) -> list:
    t = _field(doc, key)
    if not isinstance(t, list) or any(not isinstance(r, list) for r in t):
        raise DocumentError(f"{doc['type']}: {key} must be a table")
    return [[decode_int(x) for x in r] for r in t]


def _list_in(doc: dict, key: str) -> list:
    t = _field(doc, key)
    if not isinstance(t, list):
        raise DocumentError(f"{doc['type']}: {key} must be a list")
    return [decode_int(x) for x in t]


def _tab(t) -> list:
    return [list(r) for r in t]


def ring_to_json(r: rm.FinRing) -> dict:
    return {"type": "finring", "size": r.size, "add": _tab(r.add), "mul": _tab(r.mul),
            "zero": r.zero, "one": r.one}


def ring_from_json(doc) -> rm.FinRing:
    doc = _expect(doc, "finring")
    return rm.FinRing(decode_int(_field(doc, "size")), _table_in(doc, "add"), _table_in(doc, "mul"),
                      decode_int(_field(doc, "zero")), decode_int(_field(doc, "one")))


def grouptable_to_json(g: rm.FinGroupTable) -> dict:
    return {"type": "fingrp", "size": g.size, "add": _tab(g.add)}


def grouptable_from_json(doc) -> rm.FinGroupTable:
    if isinstance(doc, dict) and doc.get("type") in ("finring", "finmod"):
        return rm.FinGroupTable(decode_int(_field(doc, "size")), _table_in(doc, "add"))
    doc = _expect(doc, "fingrp")
    return rm.FinGroupTable(decode_int(_field(doc, "size")), _table_in(doc, "add"))


def module_to_json(m: rm.Module) -> dict:
    if isinstance(m, rm.FreeMod):
        return {"type": "freemod", "ring": ring_to_json(m.ring), "rank": m.rank}
    return {"type": "finmod", "ring": ring_to_json(m.ring), "size": m.size,
            "add": _tab(m.add), "act": _tab(m.act)}


def module_from_json(doc, ring: rm.FinRing = None) -> rm.Module:
    if isinstance(doc, dict) and doc.get("type") == "freemod":
        r = ring_from_json(_field(doc, "ring"))
        return rm.FreeMod(r, decode_int(_field(doc, "rank")))
    doc = _expect(doc, "finmod")
    r = ring_from_json(_field(doc, "ring"))
    return rm.FinMod(r, decode_int(_field(doc, "size")), _table_in(doc, "add"), _table_in(doc, "act"))


def ring2_to_json(r: rm.Strict2Ring) -> dict:
    return {"type": "ring2", "r1": grouptable_to_json(r.r1), "r0": ring_to_json(r.r0),
            "delta": list(r.delta), "left": _tab(r.left), "right": _tab(r.right)}


def ring2_from_json(doc) -> rm.Strict2Ring:
    doc = _expect(doc, "ring2")
    return rm.Strict2Ring(grouptable_from_json(_field(doc, "r1")), ring_from_json(_field(doc, "r0")),
                          _list_in(doc, "delta"), _table_in(doc, "left"), _table_in(doc, "right"))


def _modmap_out(f: rm.ModHom):
    if isinstance(f.src, rm.FreeMod):
        return {"basis": [f(f.src.basis(i)) for i in range(f.src.rank)]}
    return list(f.values)


def _modmap_in(value, src: rm.Module, dst: rm.Module, what: str) -> rm.ModHom:
    if isinstance(value, dict):
        if not isinstance(src, rm.FreeMod):
            raise DocumentError(f"{what}: basis form needs a free source")
        images = [decode_int(x) for x in value.get("basis", [])]
        if any(not 0 <= x < dst.size for x in images):
            raise DocumentError(f"{what}: basis image out of range")
        return rm.ModHom.from_basis(src, dst, images)
    if not isinstance(value, list):
        raise DocumentError(f"{what}: expected a list of images")
    return rm.ModHom(src, dst, tuple(decode_int(x) for x in value))


def modhom_to_json(f: rm.ModHom) -> dict:
    return {"type": "modhom", "src": module_to_json(f.src), "dst": module_to_json(f.dst),
            "map": _modmap_out(f)}


def modhom_from_json(doc) -> rm.ModHom:
    doc = _expect(doc, "modhom")
    src, dst = module_from_json(_field(doc, "src")), module_from_json(_field(doc, "dst"))
    return _modmap_in(_field(doc, "map"), src, dst, "modhom")


def mod2_to_json(m: rm.Mod2) -> dict:
    return {"type": "mod2", "ring": ring_to_json(m.ring), "m1": module_to_json(m.m1),
            "m0": module_to_json(m.m0), "delta": _modmap_out(m.delta)}


def mod2_from_json(doc) -> rm.Mod2:
    doc = _expect(doc, "mod2")
    ring = ring_from_json(_field(doc, "ring"))
    m1, m0 = module_from_json(_field(doc, "m1")), module_from_json(_field(doc, "m0"))
    return rm.Mod2(ring, m1, m0, _modmap_in(_field(doc, "delta"), m1, m0, "mod2 delta"))


def mod2hom_to_json(f: rm.Mod2Hom) -> dict:
    return {"type": "mod2hom", "src": mod2_to_json(f.src), "dst": mod2_to_json(f.dst),
            "f1": _modmap_out(f.f1), "f0": _modmap_out(f.f0)}


def mod2hom_from_json(doc) -> rm.Mod2Hom:
    doc = _expect(doc, "mod2hom")
    src, dst = mod2_from_json(_field(doc, "src")), mod2_from_json(_field(doc, "dst"))
    return rm.Mod2Hom(src, dst, _modmap_in(_field(doc, "f1"), src.m1, dst.m1, "f1"),
                      _modmap_in(_field(doc, "f0"), src.m0, dst.m0, "f0"))


def modhtpy_to_json(h: rm.ModHomotopy) -> dict:
    return {"type": "modhtpy", "src": mod2hom_to_json(h.src), "dst": mod2hom_to_json(h.dst),
            "t": _modmap_out(h.t)}


def modhtpy_from_json(doc) -> rm.ModHomotopy:
    doc = _expect(doc, "modhtpy")
    f, g = mod2hom_from_json(_field(doc, "src")), mod2hom_from_json(_field(doc, "dst"))
    return rm.ModHomotopy(f, g, _modmap_in(_field(doc, "t"), f.src.m0, f.dst.m1, "modhtpy t"))


def liftmod_from_json(doc) -> tuple[rm.Mod2Hom, rm.Mod2Hom]:
    doc = _expect(doc, "liftmod")
    return mod2hom_from_json(_field(doc, "G")), mod2hom_from_json(_field(doc, "F"))


def liftmod_to_json(g: rm.Mod2Hom, f: rm.Mod2Hom) -> dict:
    return {"type": "liftmod", "G": mod2hom_to_json(g), "F": mod2hom_to_json(f)}


_PARSERS = {
    "fgab": group_from_json,
    "abhom": hom_from_json,
    "elt": element_from_json,
    "sgp2": complex_from_json,
    "sgp2hom": chainhom_from_json,
    "htpy": homotopy_from_json,
    "triple": triple_from_json,
    "lift": lift_from_json,
    "finring": ring_from_json,
    "fingrp": grouptable_from_json,
    "finmod": module_from_json,
    "freemod": module_from_json,
    "modhom": modhom_from_json,
    "ring2": ring2_from_json,
    "mod2": mod2_from_json,
    "mod2hom": mod2hom_from_json,
    "modhtpy": modhtpy_from_json,
    "liftmod": liftmod_from_json,
}

DOCUMENT_TYPES = tuple(_PARSERS)


def parse_document(doc: Any):
    """Parse and validate any tagged document."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise DocumentError("document must be an object with a 'type' field")
    kind = doc["type"]
    if kind not in _PARSERS:
        raise DocumentError(f"unknown document type {kind!r}")
    try:
        return _PARSERS[kind](doc)
    except DocumentError:
        raise
    except ValidationError as exc:
        raise DocumentError(f"{kind}: {exc}") from exc
    except (TypeError, ValueError, IndexError) as exc:
        raise DocumentError(f"{kind}: malformed document ({exc})") from exc
