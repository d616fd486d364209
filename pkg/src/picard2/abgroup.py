"""Finitely generated abelian groups in presentation form.

A group is ``Z^gens / (row span of rels)``. Homomorphisms are integer
matrices acting on coordinate columns: column j of ``AbHom.matrix`` is the
image of source generator j. Every equality test goes through the Smith
normal form of the relation matrix, which is computed once per group and
cached.
"""

from __future__ import annotations

import itertools
from dataclasses import InitVar, dataclass
from functools import cached_property
from math import prod
from typing import Iterator, Optional, Sequence

from .errors import NoSolution, ValidationError
from .intmatrix import (IntMatrix, diagonal_of, integer_nullspace, snf_with_inverse,
                        solve_integer)


@dataclass(frozen=True)
class _Canonical:
    factors: tuple[int, ...]
    rank: int
    to_matrix: IntMatrix    # canonical coords <- presentation coords
    from_matrix: IntMatrix  # presentation coords <- canonical coords


@dataclass(frozen=True)
class FinGenAbGroup:
    gens: int
    rels: IntMatrix

    def __post_init__(self):
        if self.gens < 0:
            raise ValidationError("negative generator count")
        if self.rels.cols != self.gens:
            raise ValidationError(
                f"relation matrix has {self.rels.cols} columns for {self.gens} generators")

    @classmethod
    def presented(cls, gens: int, rels: Sequence[Sequence[int]] = ()) -> "FinGenAbGroup":
        rels = list(rels)
        return cls(gens, IntMatrix(len(rels), gens, rels))

    @classmethod
    def free(cls, rank: int) -> "FinGenAbGroup":
        return cls(rank, IntMatrix.zeros(0, rank))

    @classmethod
    def trivial(cls) -> "FinGenAbGroup":
        return cls.free(0)

    @classmethod
    def cyclic(cls, n: int) -> "FinGenAbGroup":
        """Z/n, with ``cyclic(0)`` the infinite cyclic group."""
        return cls.presented(1, [[n]] if n else [])

    @classmethod
    def from_invariants(cls, factors: Sequence[int], rank: int = 0) -> "FinGenAbGroup":
        k = len(factors)
        return cls.presented(k + rank, [[d if i == j else 0 for j in range(k + rank)]
                                        for i, d in enumerate(factors)])

    @cached_property
    def _canonical(self) -> _Canonical:
        n = self.gens
        _, d, v, vinv = snf_with_inverse(self.rels)
        diag = diagonal_of(d)
        kept = [i for i in range(n) if not (i < len(diag) and diag[i] == 1)]
        factors = tuple(diag[i] for i in kept if i < len(diag) and diag[i] > 1)
        # x -> V^T x sends the relation lattice onto the diagonal one
        to_matrix = IntMatrix(len(kept), n, ([v[j, a] for j in range(n)] for a in kept))
        from_matrix = IntMatrix(n, len(kept), ([vinv[a, j] for a in kept] for j in range(n)))
        return _Canonical(factors, len(kept) - len(factors), to_matrix, from_matrix)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self._canonical.factors

    @property
    def free_rank(self) -> int:
        return self._canonical.rank

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def is_free(self) -> bool:
        """True when the group has no torsion (it is isomorphic to some Z^k)."""
        return not self.invariant_factors

    def has_free_presentation(self) -> bool:
        return self.rels.is_zero()

    def order(self) -> Optional[int]:
        """Number of elements, or None for an infinite group."""
        return prod(self.invariant_factors) if self.is_finite() else None

    def normal_form(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates; equal exactly when the elements are equal."""
        if len(coords) != self.gens:
            raise ValidationError(f"element has {len(coords)} coordinates, group has {self.gens} generators")
        y = list(self._canonical.to_matrix.apply(coords))
        for a, d in enumerate(self.invariant_factors):
            y[a] %= d
        return tuple(y)

    def is_zero(self, coords: Sequence[int]) -> bool:
        return not any(self.normal_form(coords))

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.gens)

    def generator(self, i: int) -> "GroupElement":
        return GroupElement(self, tuple(int(i == j) for j in range(self.gens)))

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class GroupElement:
    group: FinGenAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.group.gens:
            raise ValidationError("coordinate vector does not match the group")

    def _other(self, other: "GroupElement") -> tuple[int, ...]:
        if other.group != self.group:
            raise ValidationError("elements of different groups")
        return other.coords

    def __add__(self, other):
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, self._other(other))))

    def __sub__(self, other):
        return GroupElement(self.group, tuple(a - b for a, b in zip(self.coords, self._other(other))))

    def __neg__(self):
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __rmul__(self, k: int):
        return GroupElement(self.group, tuple(k * a for a in self.coords))

    def normal_form(self) -> tuple[int, ...]:
        return self.group.normal_form(self.coords)

    def is_zero(self) -> bool:
        return self.group.is_zero(self.coords)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group == other.group and self.normal_form() == other.normal_form()

    def __hash__(self):
        return hash((self.group, self.normal_form()))

    def __repr__(self):
        return f"GroupElement({list(self.coords)} in {self.group.describe()})"


@dataclass(frozen=True, eq=False)
class AbHom:
    """Homomorphism ``src -> dst`` given by its values on the source generators."""

    src: FinGenAbGroup
    dst: FinGenAbGroup
    matrix: IntMatrix
    check: InitVar[bool] = True

    def __post_init__(self, check):
        if self.matrix.shape != (self.dst.gens, self.src.gens):
            raise ValidationError(
                f"hom matrix has shape {self.matrix.shape}, expected {(self.dst.gens, self.src.gens)}")
        if check:
            for i in range(self.src.rels.rows):
                if not self.dst.is_zero(self.matrix.apply(self.src.rels.row(i))):
                    raise ValidationError(f"hom is not well defined: relator {i} maps to a nonzero element")

    @classmethod
    def from_rows(cls, src: FinGenAbGroup, dst: FinGenAbGroup, rows: Sequence[Sequence[int]]) -> "AbHom":
        return cls(src, dst, IntMatrix(dst.gens, src.gens, rows))

    @classmethod
    def from_images(cls, src: FinGenAbGroup, dst: FinGenAbGroup, images: Sequence[Sequence[int]],
                    check: bool = True) -> "AbHom":
        """Build from a list of generator images (one coordinate vector per source generator)."""
        return cls(src, dst, IntMatrix.from_columns([tuple(c) for c in images], dst.gens), check)

    def __call__(self, x) -> GroupElement:
        coords = x.coords if isinstance(x, GroupElement) else tuple(x)
        return GroupElement(self.dst, self.matrix.apply(coords))

    def image_of_generator(self, j: int) -> GroupElement:
        return GroupElement(self.dst, self.matrix.col(j))

    def _same_ends(self, other: "AbHom"):
        if self.src != other.src or self.dst != other.dst:
            raise ValidationError("homomorphisms have different source or target")

    def __add__(self, other: "AbHom") -> "AbHom":
        self._same_ends(other)
        return AbHom(self.src, self.dst, self.matrix + other.matrix, False)

    def __sub__(self, other: "AbHom") -> "AbHom":
        self._same_ends(other)
        return AbHom(self.src, self.dst, self.matrix - other.matrix, False)

    def __neg__(self) -> "AbHom":
        return AbHom(self.src, self.dst, -self.matrix, False)

    def __matmul__(self, other: "AbHom") -> "AbHom":
        return compose(self, other)

    def is_zero(self) -> bool:
        return all(self.dst.is_zero(c) for c in self.matrix.columns())

    def __eq__(self, other) -> bool:
        if not isinstance(other, AbHom):
            return NotImplemented
        if self.src != other.src or self.dst != other.dst:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.src, self.dst, tuple(self.dst.normal_form(c) for c in self.matrix.columns())))


def compose(g: AbHom, f: AbHom) -> AbHom:
    """``g o f`` (apply f first)."""
    if f.dst != g.src:
        raise ValidationError("cannot compose: target of f is not the source of g")
    return AbHom(f.src, g.dst, g.matrix @ f.matrix, False)


def identity_hom(g: FinGenAbGroup) -> AbHom:
    return AbHom(g, g, IntMatrix.identity(g.gens), False)


def zero_hom(src: FinGenAbGroup, dst: FinGenAbGroup) -> AbHom:
    return AbHom(src, dst, IntMatrix.zeros(dst.gens, src.gens), False)


def elements_equal(g: FinGenAbGroup, x: Sequence[int], y: Sequence[int]) -> bool:
    return g.normal_form(x) == g.normal_form(y)


def direct_sum(*groups: FinGenAbGroup) -> FinGenAbGroup:
    """Direct sum, generators concatenated in order."""
    if not groups:
        return FinGenAbGroup.trivial()
    return FinGenAbGroup(sum(g.gens for g in groups), IntMatrix.block_diag(*(g.rels for g in groups)))


def summand_inclusion(groups: Sequence[FinGenAbGroup], i: int) -> AbHom:
    total = direct_sum(*groups)
    offset = sum(g.gens for g in groups[:i])
    n = groups[i].gens
    m = IntMatrix(total.gens, n, ([int(r - offset == c) for c in range(n)] for r in range(total.gens)))
    return AbHom(groups[i], total, m, False)


def summand_projection(groups: Sequence[FinGenAbGroup], i: int) -> AbHom:
    return AbHom(direct_sum(*groups), groups[i], summand_inclusion(groups, i).matrix.T, False)


def canonicalize(g: FinGenAbGroup) -> tuple[tuple[int, ...], int, AbHom, AbHom]:
    """Invariant factors, free rank, and the isomorphisms to and from the canonical group.

    The canonical group is ``Z/d1 + ... + Z/dk + Z^r`` presented on k + r
    generators with diagonal relations.
    """
    c = g._canonical
    canon = FinGenAbGroup.from_invariants(c.factors, c.rank)
    return (c.factors, c.rank,
            AbHom(g, canon, c.to_matrix, False),
            AbHom(canon, g, c.from_matrix, False))


def canonical_group(g: FinGenAbGroup) -> FinGenAbGroup:
    return FinGenAbGroup.from_invariants(g.invariant_factors, g.free_rank)


def solve_preimage(f: AbHom, y) -> GroupElement:
    """Some x in f.src with f(x) == y; raises NoSolution if y is not in the image."""
    coords = y.coords if isinstance(y, GroupElement) else tuple(y)
    if isinstance(y, GroupElement) and y.group != f.dst:
        raise ValidationError("element does not belong to the target group")
    system = IntMatrix.hstack(f.matrix, f.dst.rels.T)
    w = solve_integer(system, coords)
    if w is None:
        raise NoSolution(f"{list(coords)} is not in the image")
    return GroupElement(f.src, w[:f.src.gens])


def kernel(f: AbHom) -> tuple[FinGenAbGroup, AbHom]:
    """Kernel as a canonically presented group with its (injective) inclusion."""
    src = f.src
    # x with f(x) in the relation lattice of dst
    lattice = integer_nullspace(IntMatrix.hstack(f.matrix, f.dst.rels.T))
    gens = lattice.submatrix(range(src.gens), range(lattice.cols))
    k = gens.cols
    # coefficient vectors c with gens @ c in the relation lattice of src
    rel_space = integer_nullspace(IntMatrix.hstack(gens, src.rels.T))
    rels = rel_space.submatrix(range(k), range(rel_space.cols)).T
    raw = FinGenAbGroup(k, rels)
    raw_incl = AbHom(raw, src, gens, False)
    _, _, _, from_canon = canonicalize(raw)
    return from_canon.src, compose(raw_incl, from_canon)


def cokernel(f: AbHom) -> tuple[FinGenAbGroup, AbHom]:
    """Cokernel presented on the target generators, with the projection."""
    dst = f.dst
    q = FinGenAbGroup(dst.gens, IntMatrix.vstack(dst.rels, f.matrix.T))
    return q, AbHom(dst, q, IntMatrix.identity(dst.gens), False)


def image_is_everything(f: AbHom) -> bool:
    return cokernel(f)[0].is_trivial()


def is_surjective(f: AbHom) -> bool:
    return image_is_everything(f)


def is_injective(f: AbHom) -> bool:
    return kernel(f)[0].is_trivial()


def is_isomorphism(f: AbHom) -> bool:
    return is_injective(f) and is_surjective(f)


def free_cover(g: FinGenAbGroup) -> tuple[FinGenAbGroup, AbHom]:
    """Free group on the canonical generators of g, mapping onto g."""
    c = g._canonical
    p = FinGenAbGroup.free(len(c.factors) + c.rank)
    return p, AbHom(p, g, c.from_matrix, False)


def lift_free(g: AbHom, f: AbHom) -> AbHom:
    """Lift ``g: P -> B`` through the surjection ``f: A -> B`` when P is free.

    Each generator of P goes to the preimage picked by :func:`solve_preimage`.
    """
    if not g.src.has_free_presentation():
        raise ValidationError("lift_free needs a source presented without relations")
    if g.dst != f.dst:
        raise ValidationError("g and f have different targets")
    if not is_surjective(f):
        raise ValidationError("lift_free needs a surjective f")
    images = [solve_preimage(f, g.image_of_generator(j)).coords for j in range(g.src.gens)]
    return AbHom.from_images(g.src, f.src, images, check=False)


def enumerate_elements(g: FinGenAbGroup) -> Iterator[GroupElement]:
    """All elements of a finite group, in lexicographic order of canonical coordinates."""
    if not g.is_finite():
        raise ValidationError("cannot enumerate an infinite group")
    c = g._canonical
    for canon in itertools.product(*(range(d) for d in c.factors)):
        yield GroupElement(g, c.from_matrix.apply(canon))
