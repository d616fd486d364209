"""Strict symmetric 2-groups presented by two-term complexes ``c1 -> c0``.

The groupoid of a complex has the elements of c0 as objects and a morphism
``x -> y`` for each ``c`` in c1 with ``y = x + delta(c)``; the tensor
product is addition. 1-morphisms are strict chain maps, 2-morphisms are
additive homotopies.

Sign conventions: a homotopy ``t: F => G`` satisfies

    g0 = f0 + delta' o t        and        t o delta = g1 - f1

so a null homotopy ``phi: S o T => 0`` has ``delta_C o phi = -(s0 o t0)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import abgroup as ab
from .abgroup import AbHom, FinGenAbGroup
from .errors import NoSolution, ValidationError
from .intmatrix import IntMatrix


@dataclass(frozen=True)
class PicardComplex:
    c1: FinGenAbGroup
    c0: FinGenAbGroup
    delta: AbHom

    def __post_init__(self):
        if self.delta.src != self.c1 or self.delta.dst != self.c0:
            raise ValidationError("delta must map c1 to c0")

    @classmethod
    def from_matrix(cls, c1: FinGenAbGroup, c0: FinGenAbGroup, delta) -> "PicardComplex":
        if not isinstance(delta, IntMatrix):
            delta = IntMatrix(c0.gens, c1.gens, delta)
        return cls(c1, c0, AbHom(c1, c0, delta))

    def is_finite(self) -> bool:
        return self.c1.is_finite() and self.c0.is_finite()

    def __hash__(self):
        return hash((self.c1, self.c0, self.delta.matrix))

    def __eq__(self, other):
        if not isinstance(other, PicardComplex):
            return NotImplemented
        return (self.c1 == other.c1 and self.c0 == other.c0
                and self.delta.matrix == other.delta.matrix)


@dataclass(frozen=True, eq=False)
class ChainHom:
    src: PicardComplex
    dst: PicardComplex
    f1: AbHom
    f0: AbHom

    def __post_init__(self):
        if (self.f1.src, self.f1.dst) != (self.src.c1, self.dst.c1):
            raise ValidationError("f1 must map src.c1 to dst.c1")
        if (self.f0.src, self.f0.dst) != (self.src.c0, self.dst.c0):
            raise ValidationError("f0 must map src.c0 to dst.c0")
        if not square_commutes(self.src, self.dst, self.f1, self.f0):
            raise ValidationError("chain map square does not commute")

    @classmethod
    def from_matrices(cls, src: PicardComplex, dst: PicardComplex, f1, f0) -> "ChainHom":
        if not isinstance(f1, IntMatrix):
            f1 = IntMatrix(dst.c1.gens, src.c1.gens, f1)
        if not isinstance(f0, IntMatrix):
            f0 = IntMatrix(dst.c0.gens, src.c0.gens, f0)
        return cls(src, dst, AbHom(src.c1, dst.c1, f1), AbHom(src.c0, dst.c0, f0))

    def __matmul__(self, other: "ChainHom") -> "ChainHom":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, ChainHom):
            return NotImplemented
        return (self.src == other.src and self.dst == other.dst
                and self.f1 == other.f1 and self.f0 == other.f0)

    def __hash__(self):
        return hash((self.src, self.dst, self.f1, self.f0))


@dataclass(frozen=True, eq=False)
class Homotopy:
    """A candidate 2-morphism ``src => dst``; validity is decided by :func:`check_2morphism`."""

    src: ChainHom
    dst: ChainHom
    t: AbHom

    def __post_init__(self):
        if self.src.src != self.dst.src or self.src.dst != self.dst.dst:
            raise ValidationError("homotopy between chain maps with different endpoints")
        if self.t.src != self.src.src.c0 or self.t.dst != self.src.dst.c1:
            raise ValidationError("homotopy component must map source c0 to target c1")


def square_commutes(src: PicardComplex, dst: PicardComplex, f1: AbHom, f0: AbHom) -> bool:
    return ab.compose(f0, src.delta) == ab.compose(dst.delta, f1)


def identity(a: PicardComplex) -> ChainHom:
    return ChainHom(a, a, ab.identity_hom(a.c1), ab.identity_hom(a.c0))


def zero(a: PicardComplex, b: PicardComplex) -> ChainHom:
    return ChainHom(a, b, ab.zero_hom(a.c1, b.c1), ab.zero_hom(a.c0, b.c0))


def compose(g: ChainHom, f: ChainHom) -> ChainHom:
    """``g o f``."""
    if f.dst != g.src:
        raise ValidationError("cannot compose chain maps with mismatched ends")
    return ChainHom(f.src, g.dst, ab.compose(g.f1, f.f1), ab.compose(g.f0, f.f0))


def zero_homotopy(f: ChainHom) -> Homotopy:
    return Homotopy(f, f, ab.zero_hom(f.src.c0, f.dst.c1))


def dis(g: FinGenAbGroup) -> PicardComplex:
    """The discrete 2-group ``0 -> g``."""
    zero_group = FinGenAbGroup.trivial()
    return PicardComplex(zero_group, g, ab.zero_hom(zero_group, g))


def pi0(a: PicardComplex) -> tuple[FinGenAbGroup, AbHom]:
    """Isomorphism classes of objects: the cokernel of delta, with its projection."""
    return ab.cokernel(a.delta)


def pi1(a: PicardComplex) -> FinGenAbGroup:
    """Automorphisms of the unit object: the kernel of delta."""
    return ab.kernel(a.delta)[0]


def pi1_inclusion(a: PicardComplex) -> AbHom:
    return ab.kernel(a.delta)[1]


def dis_hom(f: AbHom) -> ChainHom:
    return ChainHom(dis(f.src), dis(f.dst), ab.zero_hom(FinGenAbGroup.trivial(), FinGenAbGroup.trivial()), f)


def pi0_hom(f: ChainHom) -> AbHom:
    # both pi0 groups are presented on the c0 generators with identity projections
    return AbHom(pi0(f.src)[0], pi0(f.dst)[0], f.f0.matrix, False)


def pi1_hom(f: ChainHom) -> AbHom:
    k_src, incl_src = ab.kernel(f.src.delta)
    k_dst, incl_dst = ab.kernel(f.dst.delta)
    images = [ab.solve_preimage(incl_dst, f.f1(incl_src.image_of_generator(j))).coords
              for j in range(k_src.gens)]
    return AbHom.from_images(k_src, k_dst, images, check=False)


def is_faithful(f: ChainHom) -> bool:
    return ab.is_injective(pi1_hom(f))


def is_full(f: ChainHom) -> bool:
    return ab.is_surjective(pi1_hom(f)) and ab.is_injective(pi0_hom(f))


def is_essentially_surjective(f: ChainHom) -> bool:
    return ab.is_surjective(pi0_hom(f))


def is_equivalence(f: ChainHom) -> bool:
    return is_faithful(f) and is_full(f) and is_essentially_surjective(f)


def check_2morphism(h: Homotopy) -> bool:
    f, g = h.src, h.dst
    objects_ok = g.f0 == f.f0 + ab.compose(g.dst.delta, h.t)
    natural = ab.compose(h.t, f.src.delta) == g.f1 - f.f1
    return objects_ok and natural


def null_homotopy(f: ChainHom, t: AbHom) -> Homotopy:
    return Homotopy(f, zero(f.src, f.dst), t)


# kernels and cokernels


@dataclass(frozen=True, eq=False)
class Kernel2:
    complex: PicardComplex
    incl: ChainHom
    eps: Homotopy
    # level-0 embedding of the kernel into src.c0 + dst.c1
    pair_incl: AbHom


@dataclass(frozen=True, eq=False)
class Cokernel2:
    complex: PicardComplex
    proj: ChainHom
    pi: Homotopy


def kernel2(f: ChainHom) -> Kernel2:
    """Kernel 2-group of f.

    Objects are pairs ``(a0, b1)`` with ``f0(a0) + delta'(b1) = 0``; a
    morphism labelled ``a1`` goes ``(a0, b1) -> (a0 + delta(a1), b1 - f1(a1))``.
    """
    a, b = f.src, f.dst
    parts = [a.c0, b.c1]
    pair_group = ab.direct_sum(*parts)
    constraint = AbHom(pair_group, b.c0, IntMatrix.hstack(f.f0.matrix, b.delta.matrix), False)
    k0, pair_incl = ab.kernel(constraint)
    cols = []
    for j in range(a.c1.gens):
        gen = a.c1.generator(j)
        pair = a.delta(gen).coords + (-f.f1(gen)).coords
        cols.append(ab.solve_preimage(pair_incl, pair).coords)
    delta_k = AbHom.from_images(a.c1, k0, cols, check=False)
    k = PicardComplex(a.c1, k0, delta_k)
    to_a0 = ab.compose(ab.summand_projection(parts, 0), pair_incl)
    to_b1 = ab.compose(ab.summand_projection(parts, 1), pair_incl)
    incl = ChainHom(k, a, ab.identity_hom(a.c1), to_a0)
    eps = null_homotopy(compose(f, incl), to_b1)
    return Kernel2(k, incl, eps, pair_incl)


def cokernel2(f: ChainHom) -> Cokernel2:
    """Cokernel 2-group of f.

    Objects are those of the target; morphism labels are classes of pairs
    ``(b1, a0)`` modulo ``(f1(a1), -delta(a1))``, with ``(b1, a0)`` going
    ``y -> y + delta'(b1) + f0(a0)``.
    """
    a, b = f.src, f.dst
    parts = [b.c1, a.c0]
    pair_group = ab.direct_sum(*parts)
    extra = IntMatrix.vstack(f.f1.matrix, -a.delta.matrix).T
    q1 = FinGenAbGroup(pair_group.gens, IntMatrix.vstack(pair_group.rels, extra))
    delta_q = AbHom(q1, b.c0, IntMatrix.hstack(b.delta.matrix, f.f0.matrix))
    q = PicardComplex(q1, b.c0, delta_q)
    into_b1 = AbHom(b.c1, q1, ab.summand_inclusion(parts, 0).matrix, False)
    into_a0 = AbHom(a.c0, q1, ab.summand_inclusion(parts, 1).matrix, False)
    proj = ChainHom(b, q, into_b1, ab.identity_hom(b.c0))
    pi = null_homotopy(compose(proj, f), -into_a0)
    return Cokernel2(q, proj, pi)


# 2-exactness and extensions


@dataclass(frozen=True, eq=False)
class TwoExactnessCert:
    gamma0: ChainHom
    sigma0: ChainHom
    gamma0_full: bool
    gamma0_esssurj: bool
    sigma0_full: bool
    sigma0_faithful: bool

    @property
    def condition1(self) -> bool:
        return self.gamma0_full and self.gamma0_esssurj

    @property
    def condition2(self) -> bool:
        return self.sigma0_full and self.sigma0_faithful

    def recompute(self) -> "TwoExactnessCert":
        return _certify(self.gamma0, self.sigma0)


def _certify(gamma0: ChainHom, sigma0: ChainHom) -> TwoExactnessCert:
    return TwoExactnessCert(gamma0, sigma0,
                            is_full(gamma0), is_essentially_surjective(gamma0),
                            is_full(sigma0), is_faithful(sigma0))


def _check_triple(gamma: ChainHom, sigma: ChainHom, phi: Homotopy):
    if gamma.dst != sigma.src:
        raise ValidationError("gamma and sigma are not composable")
    composite = compose(sigma, gamma)
    if (phi.src != composite or phi.dst != zero(gamma.src, sigma.dst)
            or not check_2morphism(phi)):
        raise ValidationError("phi is not a 2-morphism from sigma o gamma to 0")


def triple_homotopy(gamma: ChainHom, sigma: ChainHom, t: AbHom) -> Homotopy:
    """Wrap a component ``t: A.c0 -> C.c1`` as a homotopy ``sigma o gamma => 0``."""
    return null_homotopy(compose(sigma, gamma), t)


def two_exactness_witnesses(gamma: ChainHom, sigma: ChainHom, phi: Homotopy) -> TwoExactnessCert:
    """Comparison maps ``A -> Ker sigma`` and ``Coker gamma -> C`` with their verdicts."""
    _check_triple(gamma, sigma, phi)
    a = gamma.src
    ker = kernel2(sigma)
    cols = [ab.solve_preimage(ker.pair_incl, gamma.f0(g).coords + phi.t(g).coords).coords
            for g in (a.c0.generator(j) for j in range(a.c0.gens))]
    g0_level0 = AbHom.from_images(a.c0, ker.complex.c0, cols, check=False)
    gamma0 = ChainHom(a, ker.complex, gamma.f1, g0_level0)

    cok = cokernel2(gamma)
    s_level1 = AbHom(cok.complex.c1, sigma.dst.c1,
                     IntMatrix.hstack(sigma.f1.matrix, -phi.t.matrix))
    sigma0 = ChainHom(cok.complex, sigma.dst, s_level1, sigma.f0)
    return _certify(gamma0, sigma0)


def is_2exact(gamma: ChainHom, sigma: ChainHom, phi: Homotopy, cross_check: bool = False) -> bool:
    cert = two_exactness_witnesses(gamma, sigma, phi)
    if cross_check and cert.condition1 != cert.condition2:
        raise AssertionError("2-exactness conditions disagree")
    return cert.condition1


@dataclass(frozen=True)
class ExtensionVerdicts:
    condition1: bool
    condition2: bool
    condition3: bool


def extension_conditions(gamma: ChainHom, sigma: ChainHom, phi: Homotopy) -> ExtensionVerdicts:
    cert = two_exactness_witnesses(gamma, sigma, phi)
    faithful = is_faithful(gamma)
    esssurj = is_essentially_surjective(sigma)
    return ExtensionVerdicts(
        condition1=cert.condition1 and faithful and esssurj,
        condition2=is_equivalence(cert.gamma0) and esssurj,
        condition3=faithful and is_equivalence(cert.sigma0),
    )


def is_extension(gamma: ChainHom, sigma: ChainHom, phi: Homotopy, cross_check: bool = False) -> bool:
    v = extension_conditions(gamma, sigma, phi)
    if cross_check and not (v.condition1 == v.condition2 == v.condition3):
        raise AssertionError("extension conditions disagree")
    return v.condition1


# projectivity


def canonical_H(a: PicardComplex) -> ChainHom:
    """The quotient ``A -> dis(pi0 A)``, full and essentially surjective."""
    g, proj = pi0(a)
    target = dis(g)
    return ChainHom(a, target, ab.zero_hom(a.c1, target.c1), proj)


def is_discrete_free(p: PicardComplex) -> bool:
    return pi1(p).is_trivial() and p.delta.is_zero() and pi0(p)[0].is_free()


def lift_discrete_free(g: ChainHom, f: ChainHom) -> tuple[ChainHom, Homotopy]:
    """Lift ``g: P -> B`` through an essentially surjective ``f: A -> B``.

    Returns ``G'`` with ``f o G'`` isomorphic to g, and the witnessing
    homotopy. Where f0 already hits g0 of a generator on the nose that
    preimage is used; otherwise the lift goes through pi0.
    """
    p, a, b = g.src, f.src, f.dst
    if g.dst != b:
        raise ValidationError("g and f have different targets")
    if not is_discrete_free(p):
        raise ValidationError("source is not discrete free")
    if not is_essentially_surjective(f):
        raise ValidationError("f is not essentially surjective")

    _, _, to_basis, from_basis = ab.canonicalize(p.c0)
    f_pi0 = pi0_hom(f)
    proj_a = pi0(a)[1]
    objects = []
    for i in range(from_basis.src.gens):
        target = g.f0(from_basis.image_of_generator(i))
        try:
            objects.append(ab.solve_preimage(f.f0, target).coords)
            continue
        except NoSolution:
            pass
        cls = ab.solve_preimage(f_pi0, ab.cokernel(b.delta)[1](target))
        objects.append(ab.solve_preimage(proj_a, cls).coords)
    on_basis = AbHom.from_images(from_basis.src, a.c0, objects, check=False)
    g_prime = ChainHom(p, a, ab.zero_hom(p.c1, a.c1), ab.compose(on_basis, to_basis))

    fg = compose(f, g_prime)
    gap = ab.compose(g.f0 - fg.f0, from_basis)
    witnesses = [ab.solve_preimage(b.delta, gap.image_of_generator(i)).coords
                 for i in range(from_basis.src.gens)]
    t = ab.compose(AbHom.from_images(from_basis.src, b.c1, witnesses, check=False), to_basis)
    h = Homotopy(fg, g, t)
    if not check_2morphism(h):
        raise AssertionError("constructed lift fails the 2-morphism check")
    return g_prime, h


@dataclass(frozen=True, eq=False)
class PresentationCert:
    discrete_free: bool
    essentially_surjective: bool
    composite_is_cover: bool
    homotopy: Homotopy  # identity 2-morphism H o F => dis(cover)

    @property
    def ok(self) -> bool:
        return self.discrete_free and self.essentially_surjective and self.composite_is_cover


def projective_presentation(a: PicardComplex) -> tuple[PicardComplex, ChainHom, PresentationCert]:
    """Essentially surjective map from a discrete free 2-group onto ``a``."""
    g, proj = pi0(a)
    free, cover = ab.free_cover(g)
    p = dis(free)
    objects = [ab.solve_preimage(proj, cover.image_of_generator(i)).coords for i in range(free.gens)]
    f = ChainHom(p, a, ab.zero_hom(p.c1, a.c1), AbHom.from_images(free, a.c0, objects, check=False))

    h_f = compose(canonical_H(a), f)
    cover_dis = ChainHom(p, h_f.dst, ab.zero_hom(p.c1, h_f.dst.c1), cover)
    composite_is_cover = h_f == cover_dis
    homotopy = Homotopy(h_f, cover_dis, ab.zero_hom(p.c0, h_f.dst.c1))
    cert = PresentationCert(
        discrete_free=is_discrete_free(p),
        essentially_surjective=is_essentially_surjective(f),
        composite_is_cover=composite_is_cover and check_2morphism(homotopy),
        homotopy=homotopy,
    )
    return p, f, cert


def chain_map_or_none(src: PicardComplex, dst: PicardComplex, f1: AbHom, f0: AbHom) -> Optional[ChainHom]:
    try:
        return ChainHom(src, dst, f1, f0)
    except ValidationError:
        return None
