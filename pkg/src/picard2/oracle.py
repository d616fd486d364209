"""Brute-force checks on explicit groupoid tables.

Everything here works from the definitions (objects, hom-sets, isomorphism
classes) by enumeration and never uses the pi0/pi1 formulas of
:mod:`picard2.sgp2`, so the two can be compared.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import prod
from typing import Optional

from . import abgroup as ab
from .abgroup import AbHom, FinGenAbGroup
from .errors import SearchOverflow, ValidationError
from .intmatrix import IntMatrix
from .sgp2 import ChainHom, Homotopy, PicardComplex, check_2morphism, compose

DEFAULT_CANDIDATE_CAP = 10 ** 7
KINDS = ("faithful", "full", "ess_surj")


def candidate_cap() -> int:
    value = os.environ.get("PICARD2_CANDIDATE_CAP")
    return int(value) if value else DEFAULT_CANDIDATE_CAP


def _finite_elements(g: FinGenAbGroup):
    if not g.is_finite():
        raise ValidationError("oracle needs finite groups")
    elems = list(ab.enumerate_elements(g))
    return elems, {e.normal_form(): i for i, e in enumerate(elems)}


@dataclass
class TableGroupoid:
    """The groupoid of a finite complex, everything by index.

    Morphism ``k`` is ``(source, target, label)``; with ``n = len(labels)``
    the morphism with source x and label c has index ``x * n + c``.
    """

    complex: PicardComplex
    objects: list
    labels: list
    object_add: list = field(repr=False)
    label_add: list = field(repr=False)
    label_target_shift: list = field(repr=False)  # delta(c) as an object index
    object_index: dict = field(repr=False)
    label_index: dict = field(repr=False)

    @property
    def morphisms(self) -> list[tuple[int, int, int]]:
        return [(x, self.object_add[x][self.label_target_shift[c]], c)
                for x in range(len(self.objects)) for c in range(len(self.labels))]

    def morphism_count(self) -> int:
        return len(self.objects) * len(self.labels)

    def target(self, x: int, c: int) -> int:
        return self.object_add[x][self.label_target_shift[c]]

    def compose(self, first: tuple[int, int, int], second: tuple[int, int, int]) -> tuple[int, int, int]:
        if first[1] != second[0]:
            raise ValueError("morphisms are not composable")
        return first[0], second[1], self.label_add[first[2]][second[2]]

    def tensor(self, m: tuple[int, int, int], n: tuple[int, int, int]) -> tuple[int, int, int]:
        return (self.object_add[m[0]][n[0]], self.object_add[m[1]][n[1]],
                self.label_add[m[2]][n[2]])

    def hom_set(self, x: int, y: int) -> list[int]:
        return [c for c in range(len(self.labels)) if self.target(x, c) == y]

    def iso_classes(self) -> list[int]:
        """Class id per object (id = smallest object index in the class)."""
        reach = sorted({self.label_target_shift[c] for c in range(len(self.labels))})
        cls = [-1] * len(self.objects)
        for x in range(len(self.objects)):
            if cls[x] < 0:
                for s in reach:
                    cls[self.object_add[x][s]] = x
        return cls


def _group_table(elems, index, g: FinGenAbGroup) -> list[list[int]]:
    return [[index[g.normal_form(tuple(a + b for a, b in zip(x.coords, y.coords)))] for y in elems]
            for x in elems]


def _check_abelian_table(table, zero: int, what: str):
    n = len(table)
    for x in range(n):
        if table[x][zero] != x:
            raise AssertionError(f"{what}: unit law fails")
        if zero not in table[x]:
            raise AssertionError(f"{what}: missing inverse")
        for y in range(n):
            if table[x][y] != table[y][x]:
                raise AssertionError(f"{what}: not symmetric")
            for z in range(n):
                if table[table[x][y]][z] != table[x][table[y][z]]:
                    raise AssertionError(f"{what}: not associative")


def materialize(a: PicardComplex, check: bool = True) -> TableGroupoid:
    """Explicit groupoid of a finite complex, with its axioms re-checked."""
    if not a.is_finite():
        raise ValidationError("materialize needs a finite complex")
    objs, obj_index = _finite_elements(a.c0)
    labs, lab_index = _finite_elements(a.c1)
    shift = [obj_index[a.delta(c).normal_form()] for c in labs]
    t = TableGroupoid(a, objs, labs, _group_table(objs, obj_index, a.c0),
                      _group_table(labs, lab_index, a.c1), shift, obj_index, lab_index)
    if check:
        check_groupoid_axioms(t)
    return t


def check_groupoid_axioms(t: TableGroupoid) -> None:
    """Raise AssertionError if the tables do not form a strict symmetric 2-group."""
    obj_zero = t.object_index[t.complex.c0.zero().normal_form()]
    lab_zero = t.label_index[t.complex.c1.zero().normal_form()]
    # tensor on objects and composition of labels are abelian groups
    _check_abelian_table(t.object_add, obj_zero, "objects")
    _check_abelian_table(t.label_add, lab_zero, "labels")
    for c in range(len(t.labels)):
        for d in range(len(t.labels)):
            # targets add up along composites, so composition is well typed
            if t.label_target_shift[t.label_add[c][d]] != t.object_add[t.label_target_shift[c]][t.label_target_shift[d]]:
                raise AssertionError("composition does not respect targets")
    n_obj = len(t.objects)
    for x in range(n_obj):
        ident = (x, x, lab_zero)
        for c in range(len(t.labels)):
            m = (x, t.target(x, c), c)
            if t.compose(ident, m) != m:
                raise AssertionError("identity law fails")
            inv = next(d for d in range(len(t.labels)) if t.label_add[c][d] == lab_zero)
            back = (m[1], t.target(m[1], inv), inv)
            if back[1] != x or t.compose(m, back) != ident:
                raise AssertionError("morphism is not invertible")
    # the symmetry x + y -> y + x is the identity; tensor is a functor
    for x in range(n_obj):
        for y in range(n_obj):
            if t.object_add[x][y] != t.object_add[y][x]:
                raise AssertionError("symmetry fails")
        for c in range(len(t.labels)):
            m = (x, t.target(x, c), c)
            for y in range(n_obj):
                ten = t.tensor(m, (y, y, lab_zero))
                if ten[1] != t.target(ten[0], ten[2]):
                    raise AssertionError("tensor is not a functor")


def _object_map(f: ChainHom, s: TableGroupoid, d: TableGroupoid) -> list[int]:
    return [d.object_index[f.f0(x).normal_form()] for x in s.objects]


def _label_map(f: ChainHom, s: TableGroupoid, d: TableGroupoid) -> list[int]:
    return [d.label_index[f.f1(c).normal_form()] for c in s.labels]


def oracle_report(f: ChainHom, kind: str) -> dict:
    """Verdict for one predicate plus the sizes that were enumerated."""
    if kind not in KINDS:
        raise ValueError(f"unknown predicate {kind!r}")
    s = materialize(f.src, check=False)
    d = materialize(f.dst, check=False)
    obj = _object_map(f, s, d)
    lab = _label_map(f, s, d)
    examined = 0
    if kind == "ess_surj":
        cls = d.iso_classes()
        hit = {cls[obj[x]] for x in range(len(s.objects))}
        examined = len(s.objects) + len(d.objects)
        verdict = hit == set(cls)
    else:
        verdict = True
        for x in range(len(s.objects)):
            homs: dict[int, list[int]] = {}
            for c in range(len(s.labels)):
                homs.setdefault(s.target(x, c), []).append(c)
            for y in range(len(s.objects)):
                images = [lab[c] for c in homs.get(y, [])]
                examined += 1
                if kind == "faithful":
                    ok = len(set(images)) == len(images)
                else:
                    ok = set(images) == set(d.hom_set(obj[x], obj[y]))
                if not ok:
                    verdict = False
                    break
            if not verdict:
                break
    return {"verdict": verdict, "objects": len(s.objects) + len(d.objects),
            "morphisms": s.morphism_count() + d.morphism_count(), "candidates": examined}


def oracle_predicate(f: ChainHom, kind: str) -> bool:
    return oracle_report(f, kind)["verdict"]


def _all_homs(src: FinGenAbGroup, dst: FinGenAbGroup) -> list[AbHom]:
    """Every homomorphism between finite groups, images of canonical generators in lex order."""
    factors, _, to_canon, _ = ab.canonicalize(src)
    elems = list(ab.enumerate_elements(dst))
    choices = [[e for e in elems if (d * e).is_zero()] for d in factors]
    homs = []
    for images in itertools.product(*choices):
        on_canon = IntMatrix.from_columns([e.coords for e in images], dst.gens)
        homs.append(AbHom(src, dst, on_canon @ to_canon.matrix, False))
    return homs


@dataclass
class LiftSearchResult:
    g_prime: Optional[ChainHom]
    homotopy: Optional[Homotopy]
    candidates: int
    space: int

    @property
    def found(self) -> bool:
        return self.g_prime is not None


def _search_chunk(g: ChainHom, f: ChainHom, ts, g0s, g1s, squares):
    examined = 0
    for t in ts:
        for i, g0 in enumerate(g0s):
            for j, g1 in enumerate(g1s):
                examined += 1
                if not squares[i][j]:
                    continue
                gp = ChainHom(g.src, f.src, g1, g0)
                h = Homotopy(compose(f, gp), g, t)
                if check_2morphism(h):
                    return gp, h, examined
    return None, None, examined


def oracle_lift_search(g: ChainHom, f: ChainHom, cap: Optional[int] = None,
                       jobs: int = 1) -> LiftSearchResult:
    """First ``(G', h)`` with ``h: f o G' => g``, searching every strict chain map and homotopy.

    Homotopy components are the outer loop, so a strict lift (t = 0) is
    preferred whenever one exists. Raises SearchOverflow when the answer (or
    the proof that there is none) lies beyond ``cap`` candidates.
    """
    p, a, b = g.src, f.src, f.dst
    if g.dst != b:
        raise ValidationError("g and f have different targets")
    for c in (p, a, b):
        if not c.is_finite():
            raise ValidationError("oracle lift search needs finite complexes")
    cap = candidate_cap() if cap is None else cap
    g0s = _all_homs(p.c0, a.c0)
    g1s = _all_homs(p.c1, a.c1)
    ts = _all_homs(p.c0, b.c1)
    per_t = len(g0s) * len(g1s)
    space = len(ts) * per_t
    # strict squares do not depend on t, so test them once per (g0, g1)
    squares = [[ab.compose(g0, p.delta) == ab.compose(a.delta, g1) for g1 in g1s] for g0 in g0s]

    if jobs > 1 and space <= cap and len(ts) > 1:
        size = -(-len(ts) // jobs)
        chunks = [ts[i:i + size] for i in range(0, len(ts), size)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda ch: _search_chunk(g, f, ch, g0s, g1s, squares), chunks))
        offset = 0
        for chunk, (gp, h, n) in zip(chunks, results):
            if gp is not None:
                return LiftSearchResult(gp, h, offset + n, space)
            offset += len(chunk) * per_t
        return LiftSearchResult(None, None, space, space)

    examined = 0
    for t in ts:
        gp, h, n = _search_chunk(g, f, [t], g0s, g1s, squares)
        if examined + n > cap:
            raise SearchOverflow(f"lift search space of {space} candidates exceeds cap {cap}")
        examined += n
        if gp is not None:
            return LiftSearchResult(gp, h, examined, space)
    return LiftSearchResult(None, None, examined, space)


def verify_all(f: ChainHom) -> dict:
    """Compare every predicate of :mod:`picard2.sgp2` with the enumeration verdict."""
    from . import sgp2

    formula = {"faithful": sgp2.is_faithful(f), "full": sgp2.is_full(f),
               "ess_surj": sgp2.is_essentially_surjective(f)}
    out = {}
    for kind in KINDS:
        rep = oracle_report(f, kind)
        out[kind] = {"oracle": rep["verdict"], "formula": formula[kind],
                     "agree": rep["verdict"] == formula[kind]}
    return out


def space_size(*groups: FinGenAbGroup) -> int:
    return prod(g.order() for g in groups)
