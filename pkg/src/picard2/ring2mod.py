"""Finite rings and modules given by tables, strict 2-rings, and 2-modules.

Elements are indices ``0 .. size-1``. A ring carries addition and
multiplication tables; a module carries an addition table and a left
action table ``act[r][m]``. Free modules ``R^n`` are not tabulated: they
encode a coordinate tuple as a base-``|R|`` integer, first coordinate most
significant, so that ``range(size)`` lists them in lexicographic order.

2-modules here are over the discrete 2-ring of a finite ring: a module map
``delta: m1 -> m0``, whose groupoid has the elements of m0 as objects and a
morphism ``x -> x + delta(c)`` for each c in m1.
"""

from __future__ import annotations

import itertools
from dataclasses import InitVar, dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from .errors import ValidationError


def _as_table(rows, n_rows: int, n_cols: int, bound: int, what: str) -> tuple[tuple[int, ...], ...]:
    table = tuple(tuple(int(x) for x in r) for r in rows)
    if len(table) != n_rows or any(len(r) != n_cols for r in table):
        raise ValidationError(f"{what} table must be {n_rows}x{n_cols}")
    if any(not 0 <= x < bound for r in table for x in r):
        raise ValidationError(f"{what} table has an entry out of range")
    return table


def check_abelian_group(add: Sequence[Sequence[int]], what: str = "group") -> int:
    """Validate an addition table exhaustively and return the index of zero."""
    n = len(add)
    if n == 0:
        raise ValidationError(f"{what} is empty")
    full = set(range(n))
    for x in range(n):
        if set(add[x]) != full:
            raise ValidationError(f"{what}: row {x} is not a permutation")
    zeros = [z for z in range(n) if all(add[z][x] == x for x in range(n))]
    if not zeros:
        raise ValidationError(f"{what}: no neutral element")
    zero = zeros[0]
    for x in range(n):
        if zero not in add[x]:
            raise ValidationError(f"{what}: {x} has no inverse")
        for y in range(n):
            if add[x][y] != add[y][x]:
                raise ValidationError(f"{what}: addition is not commutative at ({x}, {y})")
            for z in range(n):
                if add[add[x][y]][z] != add[x][add[y][z]]:
                    raise ValidationError(f"{what}: addition is not associative")
    return zero


@dataclass(frozen=True)
class FinGroupTable:
    """A finite abelian group by its addition table."""

    size: int
    add: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "add", _as_table(self.add, self.size, self.size, self.size, "addition"))
        check_abelian_group(self.add, "group")

    @cached_property
    def zero(self) -> int:
        return next(z for z in range(self.size) if all(self.add[z][x] == x for x in range(self.size)))

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def neg(self, a: int) -> int:
        return self.add[a].index(self.zero)

    def elements(self) -> range:
        return range(self.size)


@dataclass(frozen=True)
class FinRing:
    size: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int
    one: int
    check: InitVar[bool] = True

    def __post_init__(self, check):
        k = self.size
        object.__setattr__(self, "add", _as_table(self.add, k, k, k, "addition"))
        object.__setattr__(self, "mul", _as_table(self.mul, k, k, k, "multiplication"))
        if not (0 <= self.zero < k and 0 <= self.one < k):
            raise ValidationError("zero/one index out of range")
        if check:
            self.validate()

    def validate(self) -> None:
        k, a, m = self.size, self.add, self.mul
        if check_abelian_group(a, "ring addition") != self.zero or any(a[self.zero][x] != x for x in range(k)):
            raise ValidationError("declared zero is not the additive identity")
        for x in range(k):
            if m[self.one][x] != x or m[x][self.one] != x:
                raise ValidationError("declared one is not a two-sided unit")
            for y in range(k):
                for z in range(k):
                    if m[m[x][y]][z] != m[x][m[y][z]]:
                        raise ValidationError("multiplication is not associative")
                    if m[x][a[y][z]] != a[m[x][y]][m[x][z]]:
                        raise ValidationError("left distributivity fails")
                    if m[a[x][y]][z] != a[m[x][z]][m[y][z]]:
                        raise ValidationError("right distributivity fails")

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    @cached_property
    def _neg(self) -> tuple[int, ...]:
        return tuple(self.add[x].index(self.zero) for x in range(self.size))

    def neg(self, a: int) -> int:
        return self._neg[a]

    def elements(self) -> range:
        return range(self.size)


class _ModuleOps:
    """Arithmetic shared by tabulated and free modules."""

    ring: FinRing
    size: int

    def elements(self) -> range:
        return range(self.size)

    def neg(self, a: int) -> int:
        return self.scale(self.ring.neg(self.ring.one), a)

    def minus(self, a: int, b: int) -> int:
        return self.plus(a, self.neg(b))

    def submodule(self, gens: Iterable[int]) -> frozenset[int]:
        """Submodule generated by ``gens``."""
        span = {self.zero}
        for g in gens:
            if g in span:
                continue
            multiples = {self.scale(r, g) for r in self.ring.elements()}
            span = {self.plus(s, x) for s in span for x in multiples}
        return frozenset(span)


@dataclass(frozen=True)
class FinMod(_ModuleOps):
    ring: FinRing
    size: int
    add: tuple[tuple[int, ...], ...]
    act: tuple[tuple[int, ...], ...]
    check: InitVar[bool] = True

    def __post_init__(self, check):
        m = self.size
        object.__setattr__(self, "add", _as_table(self.add, m, m, m, "addition"))
        object.__setattr__(self, "act", _as_table(self.act, self.ring.size, m, m, "action"))
        if check:
            self.validate()

    def validate(self) -> None:
        check_abelian_group(self.add, "module addition")
        r, a, act = self.ring, self.add, self.act
        for x in r.elements():
            for m1 in self.elements():
                for m2 in self.elements():
                    if act[x][a[m1][m2]] != a[act[x][m1]][act[x][m2]]:
                        raise ValidationError("r(m1 + m2) != rm1 + rm2")
        for x in r.elements():
            for y in r.elements():
                for m in self.elements():
                    if act[r.plus(x, y)][m] != a[act[x][m]][act[y][m]]:
                        raise ValidationError("(r1 + r2)m != r1m + r2m")
                    if act[r.times(x, y)][m] != act[x][act[y][m]]:
                        raise ValidationError("(r1 r2)m != r1(r2 m)")
        for m in self.elements():
            if act[r.one][m] != m:
                raise ValidationError("1m != m")

    @cached_property
    def zero(self) -> int:
        return next(z for z in range(self.size) if all(self.add[z][x] == x for x in range(self.size)))

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def scale(self, r: int, a: int) -> int:
        return self.act[r][a]


@dataclass(frozen=True)
class FreeMod(_ModuleOps):
    """``R^rank`` with elements encoded in base |R|."""

    ring: FinRing
    rank: int

    @property
    def size(self) -> int:
        return self.ring.size ** self.rank

    @property
    def zero(self) -> int:
        return self.encode([self.ring.zero] * self.rank)

    def decode(self, x: int) -> tuple[int, ...]:
        k = self.ring.size
        out = []
        for _ in range(self.rank):
            x, d = divmod(x, k)
            out.append(d)
        return tuple(reversed(out))

    def encode(self, coords: Sequence[int]) -> int:
        x = 0
        for c in coords:
            x = x * self.ring.size + c
        return x

    def basis(self, i: int) -> int:
        return self.encode([self.ring.one if j == i else self.ring.zero for j in range(self.rank)])

    def plus(self, a: int, b: int) -> int:
        return self.encode([self.ring.plus(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def scale(self, r: int, a: int) -> int:
        return self.encode([self.ring.times(r, x) for x in self.decode(a)])

    def tabulate(self) -> FinMod:
        elems = self.elements()
        return FinMod(self.ring, self.size,
                      [[self.plus(a, b) for b in elems] for a in elems],
                      [[self.scale(r, a) for a in elems] for r in self.ring.elements()], False)


Module = Union[FinMod, FreeMod]


def same_ring(a: FinRing, b: FinRing) -> bool:
    return (a.size, a.add, a.mul, a.zero, a.one) == (b.size, b.add, b.mul, b.zero, b.one)


@dataclass(frozen=True, eq=False)
class ModHom:
    """R-linear map given by the image of every source element."""

    src: Module
    dst: Module
    values: tuple[int, ...]
    check: InitVar[bool] = True

    def __post_init__(self, check):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not same_ring(self.src.ring, self.dst.ring):
            raise ValidationError("module map between modules over different rings")
        if len(values) != self.src.size or any(not 0 <= v < self.dst.size for v in values):
            raise ValidationError("module map has the wrong length or an out-of-range value")
        if check:
            self.validate()

    @classmethod
    def from_basis(cls, src: FreeMod, dst: Module, images: Sequence[int]) -> "ModHom":
        if len(images) != src.rank:
            raise ValidationError("need one image per basis element")
        values = []
        for x in src.elements():
            y = dst.zero
            for c, img in zip(src.decode(x), images):
                y = dst.plus(y, dst.scale(c, img))
            values.append(y)
        return cls(src, dst, tuple(values), False)

    @classmethod
    def zero_map(cls, src: Module, dst: Module) -> "ModHom":
        return cls(src, dst, (dst.zero,) * src.size, False)

    @classmethod
    def identity(cls, m: Module) -> "ModHom":
        return cls(m, m, tuple(m.elements()), False)

    def validate(self) -> None:
        s, d, v = self.src, self.dst, self.values
        if isinstance(s, FreeMod):
            images = [v[s.basis(i)] for i in range(s.rank)]
            if ModHom.from_basis(s, d, images).values != v:
                raise ValidationError("map out of a free module is not R-linear")
            return
        for a in s.elements():
            for b in s.elements():
                if v[s.plus(a, b)] != d.plus(v[a], v[b]):
                    raise ValidationError("module map is not additive")
            for r in s.ring.elements():
                if v[s.scale(r, a)] != d.scale(r, v[a]):
                    raise ValidationError("module map does not commute with the action")

    def __call__(self, x: int) -> int:
        return self.values[x]

    def image(self) -> frozenset[int]:
        return frozenset(self.values)

    def kernel(self) -> frozenset[int]:
        return frozenset(x for x in self.src.elements() if self.values[x] == self.dst.zero)

    def is_surjective(self) -> bool:
        return len(self.image()) == self.dst.size

    def __eq__(self, other):
        if not isinstance(other, ModHom):
            return NotImplemented
        return self.src == other.src and self.dst == other.dst and self.values == other.values

    def __hash__(self):
        return hash(self.values)


def compose_mod(g: ModHom, f: ModHom) -> ModHom:
    if f.dst != g.src:
        raise ValidationError("cannot compose module maps with mismatched ends")
    return ModHom(f.src, g.dst, tuple(g.values[y] for y in f.values), False)


def add_mod(f: ModHom, g: ModHom) -> ModHom:
    return ModHom(f.src, f.dst, tuple(f.dst.plus(a, b) for a, b in zip(f.values, g.values)), False)


def sub_mod(f: ModHom, g: ModHom) -> ModHom:
    return ModHom(f.src, f.dst, tuple(f.dst.minus(a, b) for a, b in zip(f.values, g.values)), False)


# constructors


def zmod_ring(n: int) -> FinRing:
    return FinRing(n, [[(a + b) % n for b in range(n)] for a in range(n)],
                   [[(a * b) % n for b in range(n)] for a in range(n)], 0, 1 % n)


def dual_numbers_f2() -> FinRing:
    """F2[x]/(x^2); element ``a + b x`` has index ``a + 2b``."""
    elems = [(a, b) for b in range(2) for a in range(2)]
    idx = {e: i for i, e in enumerate(elems)}
    add = [[idx[((p[0] + q[0]) % 2, (p[1] + q[1]) % 2)] for q in elems] for p in elems]
    mul = [[idx[((p[0] * q[0]) % 2, (p[0] * q[1] + p[1] * q[0]) % 2)] for q in elems] for p in elems]
    return FinRing(4, add, mul, 0, 1)


def zero_module(ring: FinRing) -> FinMod:
    return FinMod(ring, 1, [[0]], [[0] for _ in ring.elements()], False)


def regular_module(ring: FinRing) -> FinMod:
    return FinMod(ring, ring.size, ring.add, ring.mul)


def cyclic_module(ring: FinRing, ideal: Iterable[int]) -> tuple[FinMod, ModHom]:
    """``R / I`` for a left ideal I, with the quotient map from R."""
    reg = regular_module(ring)
    ideal = reg.submodule(ideal)
    return quotient_module(reg, ideal)


def direct_sum_modules(*mods: FinMod) -> FinMod:
    ring = mods[0].ring
    elems = list(itertools.product(*(m.elements() for m in mods)))
    idx = {e: i for i, e in enumerate(elems)}
    add = [[idx[tuple(m.plus(x, y) for m, x, y in zip(mods, p, q))] for q in elems] for p in elems]
    act = [[idx[tuple(m.scale(r, x) for m, x in zip(mods, p))] for p in elems] for r in ring.elements()]
    return FinMod(ring, len(elems), add, act)


def quotient_module(m: Module, sub: Iterable[int]) -> tuple[FinMod, ModHom]:
    """``m / sub`` with cosets numbered by their smallest element."""
    sub = sorted(set(sub))
    if m.zero not in sub:
        raise ValidationError("subset is not a submodule")
    class_of = [-1] * m.size
    reps = []
    for x in m.elements():
        if class_of[x] < 0:
            for s in sub:
                class_of[m.plus(x, s)] = len(reps)
            reps.append(x)
    q = FinMod(m.ring, len(reps),
               [[class_of[m.plus(a, b)] for b in reps] for a in reps],
               [[class_of[m.scale(r, a)] for a in reps] for r in m.ring.elements()])
    return q, ModHom(m, q, tuple(class_of), False)


def submodule_restriction(m: Module, sub: Iterable[int]) -> tuple[FinMod, ModHom]:
    """A submodule as a module in its own right, with its inclusion."""
    elems = sorted(set(sub))
    idx = {e: i for i, e in enumerate(elems)}
    try:
        s = FinMod(m.ring, len(elems),
                   [[idx[m.plus(a, b)] for b in elems] for a in elems],
                   [[idx[m.scale(r, a)] for a in elems] for r in m.ring.elements()])
    except KeyError:
        raise ValidationError("subset is not closed under the module operations") from None
    return s, ModHom(s, m, tuple(elems), False)


# strict 2-rings


@dataclass(frozen=True, eq=False)
class Strict2Ring:
    """A crossed module of rings ``delta: r1 -> r0``.

    ``left[r][s]`` is ``r . s`` and ``right[s][r]`` is ``s . r`` for r in
    r0 and s in r1.
    """

    r1: FinGroupTable
    r0: FinRing
    delta: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n, k = self.r1.size, self.r0.size
        delta = tuple(int(x) for x in self.delta)
        if len(delta) != n or any(not 0 <= x < k for x in delta):
            raise ValidationError("delta must list an r0 element for each r1 element")
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "left", _as_table(self.left, k, n, n, "left action"))
        object.__setattr__(self, "right", _as_table(self.right, n, k, n, "right action"))
        self.validate()

    def validate(self) -> None:
        g, r, d, lt, rt = self.r1, self.r0, self.delta, self.left, self.right
        for s in g.elements():
            for t in g.elements():
                if d[g.plus(s, t)] != r.plus(d[s], d[t]):
                    raise ValidationError("delta is not additive")
                if lt[d[s]][t] != rt[s][d[t]]:
                    raise ValidationError("Peiffer condition delta(s).t = s.delta(t) fails")
        for x in r.elements():
            for s in g.elements():
                if d[lt[x][s]] != r.times(x, d[s]):
                    raise ValidationError("delta(r.s) != r delta(s)")
                if d[rt[s][x]] != r.times(d[s], x):
                    raise ValidationError("delta(s.r) != delta(s) r")
                for t in g.elements():
                    if lt[x][g.plus(s, t)] != g.plus(lt[x][s], lt[x][t]):
                        raise ValidationError("left action is not additive in r1")
                    if rt[g.plus(s, t)][x] != g.plus(rt[s][x], rt[t][x]):
                        raise ValidationError("right action is not additive in r1")
                for y in r.elements():
                    if lt[r.plus(x, y)][s] != g.plus(lt[x][s], lt[y][s]):
                        raise ValidationError("left action is not additive in r0")
                    if rt[s][r.plus(x, y)] != g.plus(rt[s][x], rt[s][y]):
                        raise ValidationError("right action is not additive in r0")
                    if lt[r.times(x, y)][s] != lt[x][lt[y][s]]:
                        raise ValidationError("left action is not associative")
                    if rt[s][r.times(x, y)] != rt[rt[s][x]][y]:
                        raise ValidationError("right action is not associative")
                    if rt[lt[x][s]][y] != lt[x][rt[s][y]]:
                        raise ValidationError("left and right actions do not commute")
        for s in g.elements():
            if lt[r.one][s] != s or rt[s][r.one] != s:
                raise ValidationError("unit does not act trivially")
        image = set(d)
        for x in r.elements():
            for i in image:
                if r.times(x, i) not in image or r.times(i, x) not in image:
                    raise ValidationError("image of delta is not a two-sided ideal")


def pi0_ring_with_projection(r2: Strict2Ring) -> tuple[FinRing, tuple[int, ...]]:
    r = r2.r0
    image = sorted(set(r2.delta))
    class_of = [-1] * r.size
    reps = []
    for x in r.elements():
        if class_of[x] < 0:
            for s in image:
                class_of[r.plus(x, s)] = len(reps)
            reps.append(x)
    q = FinRing(len(reps),
                [[class_of[r.plus(a, b)] for b in reps] for a in reps],
                [[class_of[r.times(a, b)] for b in reps] for a in reps],
                class_of[r.zero], class_of[r.one])
    return q, tuple(class_of)


def pi0_ring(r2: Strict2Ring) -> FinRing:
    """``r0 / image(delta)`` with the induced ring structure (axioms re-checked)."""
    return pi0_ring_with_projection(r2)[0]


def dis_ring(r: FinRing) -> Strict2Ring:
    return Strict2Ring(FinGroupTable(1, [[0]]), r, (r.zero,),
                       [[0] for _ in r.elements()], [[0] * r.size])


# 2-modules over R_dis


@dataclass(frozen=True, eq=False)
class Mod2:
    ring: FinRing
    m1: Module
    m0: Module
    delta: ModHom

    def __post_init__(self):
        if not (same_ring(self.m1.ring, self.ring) and same_ring(self.m0.ring, self.ring)):
            raise ValidationError("2-module levels are over a different ring")
        if self.delta.src != self.m1 or self.delta.dst != self.m0:
            raise ValidationError("delta must map m1 to m0")

    @cached_property
    def boundaries(self) -> frozenset[int]:
        return self.delta.image()

    def same_class(self, x: int, y: int) -> bool:
        return self.m0.minus(x, y) in self.boundaries

    def __eq__(self, other):
        if not isinstance(other, Mod2):
            return NotImplemented
        return (same_ring(self.ring, other.ring) and self.m1 == other.m1
                and self.m0 == other.m0 and self.delta == other.delta)

    def __hash__(self):
        return hash((self.m1.size, self.m0.size, self.delta.values))


@dataclass(frozen=True, eq=False)
class Mod2Hom:
    src: Mod2
    dst: Mod2
    f1: ModHom
    f0: ModHom

    def __post_init__(self):
        if (self.f1.src, self.f1.dst) != (self.src.m1, self.dst.m1):
            raise ValidationError("f1 must map src.m1 to dst.m1")
        if (self.f0.src, self.f0.dst) != (self.src.m0, self.dst.m0):
            raise ValidationError("f0 must map src.m0 to dst.m0")
        if compose_mod(self.f0, self.src.delta) != compose_mod(self.dst.delta, self.f1):
            raise ValidationError("2-module map square does not commute")


@dataclass(frozen=True, eq=False)
class ModHomotopy:
    """Candidate 2-morphism ``src => dst``: ``g0 = f0 + delta' t`` and ``t delta = g1 - f1``."""

    src: Mod2Hom
    dst: Mod2Hom
    t: ModHom

    def __post_init__(self):
        if self.src.src != self.dst.src or self.src.dst != self.dst.dst:
            raise ValidationError("homotopy between maps with different endpoints")
        if self.t.src != self.src.src.m0 or self.t.dst != self.src.dst.m1:
            raise ValidationError("homotopy component must map source m0 to target m1")


def check_module_2morphism(h: ModHomotopy) -> bool:
    f, g = h.src, h.dst
    target = f.dst
    objects_ok = g.f0 == add_mod(f.f0, compose_mod(target.delta, h.t))
    natural = compose_mod(h.t, f.src.delta) == sub_mod(g.f1, f.f1)
    return objects_ok and natural


def compose_mod2(g: Mod2Hom, f: Mod2Hom) -> Mod2Hom:
    return Mod2Hom(f.src, g.dst, compose_mod(g.f1, f.f1), compose_mod(g.f0, f.f0))


def identity_mod2(m: Mod2) -> Mod2Hom:
    return Mod2Hom(m, m, ModHom.identity(m.m1), ModHom.identity(m.m0))


def zero_mod2(a: Mod2, b: Mod2) -> Mod2Hom:
    return Mod2Hom(a, b, ModHom.zero_map(a.m1, b.m1), ModHom.zero_map(a.m0, b.m0))


def dis_module(n: Module) -> Mod2:
    z = zero_module(n.ring)
    return Mod2(n.ring, z, n, ModHom.zero_map(z, n))


def dis_module_hom(f: ModHom) -> Mod2Hom:
    a, b = dis_module(f.src), dis_module(f.dst)
    return Mod2Hom(a, b, ModHom.zero_map(a.m1, b.m1), f)


def pi0_module_with_projection(m: Mod2) -> tuple[Module, ModHom]:
    if m.boundaries == {m.m0.zero}:
        return m.m0, ModHom.identity(m.m0)
    return quotient_module(m.m0, m.boundaries)


def pi0_module(m: Mod2) -> Module:
    """``m0 / image(delta)``; the module axioms are re-checked on the quotient tables."""
    return pi0_module_with_projection(m)[0]


def pi1_module(m: Mod2) -> FinMod:
    return submodule_restriction(m.m1, m.delta.kernel())[0]


def pi0_module_hom(f: Mod2Hom) -> ModHom:
    """``[m] -> [f0(m)]`` between the pi0 modules."""
    q_src, p_src = pi0_module_with_projection(f.src)
    q_dst, p_dst = pi0_module_with_projection(f.dst)
    values = [None] * q_src.size
    for x in f.src.m0.elements():
        y = p_dst(f.f0(x))
        c = p_src(x)
        if values[c] is None:
            values[c] = y
        elif values[c] != y:
            raise ValidationError("induced map on pi0 is not well defined")
    return ModHom(q_src, q_dst, tuple(values), False)


def is_essentially_surjective_mod(f: Mod2Hom) -> bool:
    q_dst, p_dst = pi0_module_with_projection(f.dst)
    return len({p_dst(y) for y in f.f0.values}) == q_dst.size


def is_discrete_free_mod(p: Mod2) -> bool:
    return p.m1.size == 1 and isinstance(p.m0, FreeMod)


def canonical_H_mod(m: Mod2) -> Mod2Hom:
    q, proj = pi0_module_with_projection(m)
    target = dis_module(q)
    return Mod2Hom(m, target, ModHom.zero_map(m.m1, target.m1), proj)


def free_cover_mod(n: Module) -> tuple[FreeMod, ModHom]:
    """Free module on a greedily chosen generating set, mapping onto n."""
    gens: list[int] = []
    span = frozenset({n.zero})
    for x in n.elements():
        if x not in span:
            gens.append(x)
            span = n.submodule(gens)
    p = FreeMod(n.ring, len(gens))
    cover = ModHom.from_basis(p, n, gens)
    if not cover.is_surjective():
        raise AssertionError("greedy generating set does not span")
    return p, cover


def lift_discrete_free_mod(g: Mod2Hom, f: Mod2Hom) -> tuple[Mod2Hom, ModHomotopy]:
    """Lift ``g: P -> C`` through an essentially surjective ``f: B -> C`` for discrete free P."""
    p, b, c = g.src, f.src, f.dst
    if g.dst != c:
        raise ValidationError("g and f have different targets")
    if not is_discrete_free_mod(p):
        raise ValidationError("source is not a discrete free 2-module")
    if not is_essentially_surjective_mod(f):
        raise ValidationError("f is not essentially surjective")
    free: FreeMod = p.m0
    objects, witnesses = [], []
    for i in range(free.rank):
        target = g.f0(free.basis(i))
        exact = next((x for x in b.m0.elements() if f.f0(x) == target), None)
        obj = exact if exact is not None else next(
            x for x in b.m0.elements() if c.same_class(target, f.f0(x)))
        gap = c.m0.minus(target, f.f0(obj))
        witnesses.append(next(s for s in c.m1.elements() if c.delta(s) == gap))
        objects.append(obj)
    g_prime = Mod2Hom(p, b, ModHom.zero_map(p.m1, b.m1), ModHom.from_basis(free, b.m0, objects))
    h = ModHomotopy(compose_mod2(f, g_prime), g, ModHom.from_basis(free, c.m1, witnesses))
    if not check_module_2morphism(h):
        raise AssertionError("constructed module lift fails the 2-morphism check")
    return g_prime, h


@dataclass(frozen=True, eq=False)
class ModPresentationCert:
    discrete_free: bool
    essentially_surjective: bool
    composite_is_cover: bool
    cover: ModHom

    @property
    def ok(self) -> bool:
        return self.discrete_free and self.essentially_surjective and self.composite_is_cover


def module_projective_presentation(m: Mod2) -> tuple[Mod2, Mod2Hom, ModPresentationCert]:
    """Essentially surjective map onto ``m`` from a discrete free 2-module."""
    q, proj = pi0_module_with_projection(m)
    free, cover = free_cover_mod(q)
    # lowest-index element of each coset
    reps = {}
    for x in m.m0.elements():
        reps.setdefault(proj(x), x)
    objects = [reps[cover(free.basis(i))] for i in range(free.rank)]
    p = dis_module(free)
    f = Mod2Hom(p, m, ModHom.zero_map(p.m1, m.m1), ModHom.from_basis(free, m.m0, objects))
    cert = ModPresentationCert(
        discrete_free=is_discrete_free_mod(p),
        essentially_surjective=is_essentially_surjective_mod(f),
        composite_is_cover=compose_mod(proj, f.f0).values == cover.values,
        cover=cover,
    )
    return p, f, cert


def all_module_homs(src: FinMod, dst: Module, gens: Optional[Sequence[int]] = None) -> list[ModHom]:
    """Every R-linear map ``src -> dst``, found by assigning images to a generating set."""
    if gens is None:
        free, cover = free_cover_mod(src)
        gens = [cover(free.basis(i)) for i in range(free.rank)]
    out = []
    for images in itertools.product(dst.elements(), repeat=len(gens)):
        values = _extend(src, dst, gens, images)
        if values is not None:
            out.append(ModHom(src, dst, values, False))
    return out


def _extend(src, dst, gens, images) -> Optional[tuple[int, ...]]:
    # breadth-first over sums r.g; a clash means the assignment is not linear
    values = {src.zero: dst.zero}
    frontier = [src.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g, y in zip(gens, images):
                for r in src.ring.elements():
                    z = src.plus(x, src.scale(r, g))
                    w = dst.plus(values[x], dst.scale(r, y))
                    if z in values:
                        if values[z] != w:
                            return None
                    else:
                        values[z] = w
                        nxt.append(z)
        frontier = nxt
    if len(values) != src.size:
        return None
    return tuple(values[x] for x in src.elements())
