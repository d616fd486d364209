"""Independent oracles and random instance generators for the test suite."""

from __future__ import annotations

import itertools
import random
from math import gcd

from picard2 import abgroup as ab
from picard2 import ring2mod as rm
from picard2 import sgp2
from picard2.abgroup import AbHom, FinGenAbGroup
from picard2.intmatrix import IntMatrix


# -- Smith form oracles ------------------------------------------------------


def determinantal_divisors(rows: list[list[int]]) -> list[int]:
    """Invariant factors from gcds of k x k minors (d_k = D_k / D_{k-1})."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                g = gcd(g, _det([[rows[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def _det(a: list[list[int]]) -> int:
    # cofactor expansion, fine for k <= 4
    if len(a) == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * _det([r[:j] + r[j + 1:] for r in a[1:]])
               for j in range(len(a)) if a[0][j])


def naive_smith_diagonal(rows: list[list[int]]) -> list[int]:
    """Smith diagonal by Bezout row/column operations, then gcd/lcm fixing.

    Deliberately different from the library: no smallest-pivot rule, no
    unimodular bookkeeping.
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        i, j = nz[0]
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
            for i in range(t + 1, m):
                if a[i][t]:
                    g, x, y = _bezout(a[t][t], a[i][t])
                    p, q = a[t][t] // g, a[i][t] // g
                    rt, ri = a[t], a[i]
                    a[t] = [x * u + y * v for u, v in zip(rt, ri)]
                    a[i] = [-q * u + p * v for u, v in zip(rt, ri)]
            for j in range(t + 1, n):
                if a[t][j]:
                    g, x, y = _bezout(a[t][t], a[t][j])
                    p, q = a[t][t] // g, a[t][j] // g
                    for r in a:
                        u, v = r[t], r[j]
                        r[t], r[j] = x * u + y * v, -q * u + p * v
        diag.append(abs(a[t][t]))
        t += 1
    # enforce divisibility with (a, b) -> (gcd, lcm)
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                g = gcd(diag[i], diag[j])
                if g != diag[i]:
                    diag[i], diag[j] = g, diag[i] * diag[j] // g
                    changed = True
    return sorted(diag)


def _bezout(a: int, b: int):
    # plain elimination when a | b, otherwise Bezout; avoids row swaps cycling
    if b % a == 0:
        return abs(a), (1 if a > 0 else -1), 0
    return _egcd(a, b)


def _egcd(a: int, b: int):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def random_matrix(rng: random.Random, max_dim: int = 4, lo: int = -10, hi: int = 10,
                  min_dim: int = 1) -> IntMatrix:
    m, n = rng.randint(min_dim, max_dim), rng.randint(min_dim, max_dim)
    return IntMatrix(m, n, [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)])


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> IntMatrix:
    a = IntMatrix.identity(n).tolist()
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-2, 2)
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
    if n:
        k = rng.randrange(n)
        if rng.random() < 0.5:
            a[k] = [-x for x in a[k]]
    return IntMatrix(n, n, a)


# -- random groups, homs and complexes ----------------------------------------


def random_group(rng: random.Random, max_factor: int = 6, max_rank: int = 2,
                 max_torsion: int = 2, finite: bool = False, max_order: int = None) -> FinGenAbGroup:
    """A scrambled presentation of a random group with small invariants."""
    while True:
        k = rng.randint(0, max_torsion)
        factors = [rng.randint(2, max_factor) for _ in range(k)]
        rank = 0 if finite else rng.randint(0, max_rank)
        g = FinGenAbGroup.from_invariants(factors, rank)
        if max_order is None or (g.order() or 0) <= max_order:
            break
    n = g.gens
    extra = rng.randint(0, 1)
    n_total = n + extra
    # add redundant generators killed by relations, then scramble both sides
    rels = [list(r) + [0] * extra for r in g.rels.tolist()]
    rels += [[0] * n + [int(i == j) for j in range(extra)] for i in range(extra)]
    w = random_unimodular(rng, n_total)
    scrambled = IntMatrix(len(rels), n_total, rels) @ w if rels else IntMatrix.zeros(0, n_total)
    if scrambled.rows:
        scrambled = random_unimodular(rng, scrambled.rows) @ scrambled
    if scrambled.rows and rng.random() < 0.3:
        combo = [sum(rng.randint(-1, 1) * x for x in col) for col in scrambled.columns()]
        scrambled = IntMatrix.vstack(scrambled, IntMatrix(1, n_total, [combo]))
    return FinGenAbGroup(n_total, scrambled)


def random_hom(rng: random.Random, src: FinGenAbGroup, dst: FinGenAbGroup, spread: int = 3) -> AbHom:
    """A random well-defined homomorphism, built on canonical generators."""
    sf, sr, to_src, _ = ab.canonicalize(src)
    df, dr, _, from_dst = ab.canonicalize(dst)
    cols = []
    for d in list(sf) + [0] * sr:
        col = []
        for e in df:
            step = e // gcd(d, e) if d else 1
            col.append(step * rng.randint(0, e))
        col += [rng.randint(-spread, spread) if d == 0 else 0 for _ in range(dr)]
        cols.append(col)
    on_canon = IntMatrix.from_columns(cols, len(df) + dr)
    return AbHom(src, dst, from_dst.matrix @ on_canon @ to_src.matrix)


def random_surjection(rng: random.Random, dst: FinGenAbGroup, **kw) -> AbHom:
    while True:
        extra = random_group(rng, **kw)
        src = ab.direct_sum(ab.free_cover(dst)[0], extra)
        cover = ab.free_cover(dst)[1]
        f = AbHom(src, dst, IntMatrix.hstack(cover.matrix, random_hom(rng, extra, dst).matrix))
        if ab.is_surjective(f):
            return f


def random_complex(rng: random.Random, **kw) -> sgp2.PicardComplex:
    c1, c0 = random_group(rng, **kw), random_group(rng, **kw)
    return sgp2.PicardComplex(c1, c0, random_hom(rng, c1, c0))


def random_chain_map_into(rng: random.Random, b: sgp2.PicardComplex, **kw) -> sgp2.ChainHom:
    """``X -> b`` with X = (Y + V -> W + Y); covers nontrivial pi0 and pi1 of X."""
    w, y, v = random_group(rng, **kw), random_group(rng, **kw), random_group(rng, **kw)
    g = random_hom(rng, y, b.c1)
    k_b, incl_b = ab.kernel(b.delta)
    k = ab.compose(incl_b, random_hom(rng, v, k_b))
    x0 = ab.direct_sum(w, y)
    x1 = ab.direct_sum(y, v)
    delta = AbHom(x1, x0, IntMatrix.vstack(IntMatrix.zeros(w.gens, x1.gens),
                                           IntMatrix.hstack(IntMatrix.identity(y.gens),
                                                            IntMatrix.zeros(y.gens, v.gens))))
    x = sgp2.PicardComplex(x1, x0, delta)
    f0 = AbHom(x0, b.c0, IntMatrix.hstack(random_hom(rng, w, b.c0).matrix,
                                          ab.compose(b.delta, g).matrix))
    f1 = AbHom(x1, b.c1, IntMatrix.hstack(g.matrix, k.matrix))
    return sgp2.ChainHom(x, b, f1, f0)


def random_chain_map_from(rng: random.Random, c: sgp2.PicardComplex, **kw) -> sgp2.ChainHom:
    """``c -> X`` with X = (c.c1 + V -> X0)."""
    x0, v = random_group(rng, **kw), random_group(rng, **kw)
    a = random_hom(rng, c.c0, x0)
    b = random_hom(rng, v, x0)
    x1 = ab.direct_sum(c.c1, v)
    delta = AbHom(x1, x0, IntMatrix.hstack(ab.compose(a, c.delta).matrix, b.matrix))
    x = sgp2.PicardComplex(x1, x0, delta)
    f1 = AbHom(c.c1, x1, ab.summand_inclusion([c.c1, v], 0).matrix)
    return sgp2.ChainHom(c, x, f1, a)


def random_chain_map(rng: random.Random, **kw) -> sgp2.ChainHom:
    if rng.random() < 0.5:
        return random_chain_map_into(rng, random_complex(rng, **kw), **kw)
    return random_chain_map_from(rng, random_complex(rng, **kw), **kw)


def random_finite_chain_map(rng: random.Random, max_order: int = 36) -> sgp2.ChainHom:
    """Uniform choice among all chain maps between two small random finite complexes."""
    from picard2.oracle import _all_homs

    kw = dict(finite=True, max_factor=6, max_torsion=2, max_order=max_order)
    while True:
        a, b = random_complex(rng, **kw), random_complex(rng, **kw)
        if rng.random() < 0.5:
            f = random_chain_map_into(rng, b, **kw) if rng.random() < 0.5 else random_chain_map_from(rng, a, **kw)
            if all(x.order() <= max_order for x in (f.src.c0, f.src.c1, f.dst.c0, f.dst.c1)):
                return f
            continue
        f0s = _all_homs(a.c0, b.c0)
        f1s = _all_homs(a.c1, b.c1)
        if len(f0s) * len(f1s) > 4000:
            continue
        maps = [sgp2.ChainHom(a, b, f1, f0) for f0 in f0s for f1 in f1s
                if sgp2.square_commutes(a, b, f1, f0)]
        return rng.choice(maps)


def random_triple(rng: random.Random, **kw):
    """A valid (gamma, sigma, phi) built from a kernel or a cokernel, twisted randomly."""
    if rng.random() < 0.5:
        sigma = random_chain_map(rng, **kw)
        ker = sgp2.kernel2(sigma)
        u = random_chain_map_into(rng, ker.complex, **kw) if rng.random() < 0.6 else sgp2.identity(ker.complex)
        gamma = sgp2.compose(ker.incl, u)
        t = ab.compose(ker.eps.t, u.f0)
    else:
        gamma = random_chain_map(rng, **kw)
        cok = sgp2.cokernel2(gamma)
        v = random_chain_map_from(rng, cok.complex, **kw) if rng.random() < 0.6 else sgp2.identity(cok.complex)
        sigma = sgp2.compose(v, cok.proj)
        t = ab.compose(v.f1, cok.pi.t)
    return gamma, sigma, sgp2.triple_homotopy(gamma, sigma, t)


# -- finite rings and modules --------------------------------------------------


def corpus_rings() -> dict[str, rm.FinRing]:
    return {"Z/2": rm.zmod_ring(2), "Z/3": rm.zmod_ring(3), "Z/4": rm.zmod_ring(4),
            "Z/6": rm.zmod_ring(6), "F2[x]/(x^2)": rm.dual_numbers_f2()}


def cyclic_modules(ring: rm.FinRing) -> list[rm.FinMod]:
    """Nonzero cyclic modules R/I, one per two-sided ideal I != R."""
    reg = rm.regular_module(ring)
    ideals = sorted({reg.submodule([x]) for x in ring.elements()}, key=lambda s: (len(s), sorted(s)))
    return [rm.cyclic_module(ring, i)[0] for i in ideals if len(i) < ring.size]


def small_modules(ring: rm.FinRing, max_size: int) -> list[rm.FinMod]:
    """Direct sums of cyclic modules up to ``max_size`` elements (zero module included)."""
    cyc = cyclic_modules(ring)
    out = [rm.zero_module(ring)]
    for k in range(1, 5):
        for combo in itertools.combinations_with_replacement(range(len(cyc)), k):
            size = 1
            for c in combo:
                size *= cyc[c].size
            if size <= max_size:
                out.append(rm.direct_sum_modules(*(cyc[c] for c in combo)))
    return out


def mod2_corpus(ring: rm.FinRing, max_m0: int = 16, max_m1: int = 8, per_pair: int = 4,
                rng: random.Random = None) -> list[rm.Mod2]:
    """2-modules ``m1 -> m0`` with every delta when few, else a seeded sample."""
    rng = rng or random.Random(0)
    out = []
    for m0 in small_modules(ring, max_m0):
        for m1 in small_modules(ring, max_m1):
            homs = rm.all_module_homs(m1, m0)
            chosen = homs if len(homs) <= per_pair else rng.sample(homs, per_pair)
            out.extend(rm.Mod2(ring, m1, m0, d) for d in chosen)
    return out
