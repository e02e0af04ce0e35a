"""Group rings over finitely generated abelian groups, with a signed action.

The coefficient module for the twisted diagonal class of k maps is the free
abelian group on (k-1)-tuples of fundamental-group elements.  A k-tuple of
loops acts on a basis tuple by conjugation into the first slot, written
additively here because the groups are abelian, and the whole tuple picks up
a global sign from an orientation character evaluated at the first loop:

    (s_1, ..., s_k) . (a_1, ..., a_{k-1})
        = sgn(s_1)^{k-1} (a_1 + s_2 - s_1, ..., a_{k-1} + s_k - s_1)

Maps into the target group transport this action to any source group.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from types import MappingProxyType

from .errors import ArityMismatch, GroupMismatch
from .matrices import checked_int64


@dataclass(frozen=True)
class AbelianGroupSpec:
    """Invariant-factor presentation: Z^free_rank + Z/t_1 + ... + Z/t_r.

    Torsion factors must satisfy t_1 | t_2 | ... so the presentation is
    canonical.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free_rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(self.torsion))
        for t in self.torsion:
            if t < 2:
                raise ValueError(f"torsion factor {t} must be at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"torsion factor {a} does not divide {b}")

    @property
    def generator_count(self) -> int:
        return self.free_rank + len(self.torsion)

    def element(self, free: Iterable[int] = (), torsion: Iterable[int] = ()) -> GroupElement:
        return GroupElement(self, tuple(free), tuple(torsion))

    def identity(self) -> GroupElement:
        return self.element((0,) * self.free_rank, (0,) * len(self.torsion))

    def generators(self) -> tuple[GroupElement, ...]:
        """One element per generator, free generators first."""
        out = []
        for i in range(self.free_rank):
            free = tuple(1 if j == i else 0 for j in range(self.free_rank))
            out.append(self.element(free, (0,) * len(self.torsion)))
        for i in range(len(self.torsion)):
            tors = tuple(1 if j == i else 0 for j in range(len(self.torsion)))
            out.append(self.element((0,) * self.free_rank, tors))
        return tuple(out)

    def elements(self) -> list[GroupElement]:
        """Enumerate the whole group; only valid for finite groups."""
        if self.free_rank:
            raise ValueError("cannot enumerate an infinite group")
        residues: list[tuple[int, ...]] = [()]
        for t in self.torsion:
            residues = [r + (v,) for r in residues for v in range(t)]
        return [self.element((), r) for r in residues]


@dataclass(frozen=True)
class GroupElement:
    """Element written additively; torsion residues are kept reduced."""

    group: AbelianGroupSpec
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def __post_init__(self):
        if len(self.free) != self.group.free_rank:
            raise ArityMismatch(
                f"expected {self.group.free_rank} free coordinates, got {len(self.free)}"
            )
        if len(self.torsion) != len(self.group.torsion):
            raise ArityMismatch(
                f"expected {len(self.group.torsion)} torsion residues, got {len(self.torsion)}"
            )
        object.__setattr__(
            self, "free", tuple(checked_int64(int(v), "group coordinate") for v in self.free)
        )
        object.__setattr__(
            self,
            "torsion",
            tuple(int(v) % t for v, t in zip(self.torsion, self.group.torsion)),
        )

    def _require_same_group(self, other: GroupElement) -> None:
        if self.group != other.group:
            raise GroupMismatch("elements belong to different groups")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._require_same_group(other)
        return GroupElement(
            self.group,
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
        )

    def __neg__(self) -> GroupElement:
        return GroupElement(
            self.group,
            tuple(-a for a in self.free),
            tuple(-a for a in self.torsion),
        )

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def scale(self, n: int) -> GroupElement:
        return GroupElement(
            self.group,
            tuple(n * a for a in self.free),
            tuple(n * a for a in self.torsion),
        )

    def sort_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.free, self.torsion)


@dataclass(frozen=True)
class OrientationCharacter:
    """Sign homomorphism to {+1, -1}, given on generators.

    A torsion generator of odd order must map to +1, otherwise the sign
    would not be constant on its residue class.
    """

    group: AbelianGroupSpec
    free_signs: tuple[int, ...] = ()
    torsion_signs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "free_signs", tuple(self.free_signs))
        object.__setattr__(self, "torsion_signs", tuple(self.torsion_signs))
        if len(self.free_signs) != self.group.free_rank:
            raise ArityMismatch("one sign per free generator required")
        if len(self.torsion_signs) != len(self.group.torsion):
            raise ArityMismatch("one sign per torsion generator required")
        for s in self.free_signs + self.torsion_signs:
            if s not in (1, -1):
                raise ValueError(f"signs must be +1 or -1, got {s}")
        for s, t in zip(self.torsion_signs, self.group.torsion):
            if t % 2 == 1 and s == -1:
                raise ValueError(
                    f"torsion generator of odd order {t} cannot carry sign -1"
                )

    @classmethod
    def trivial(cls, group: AbelianGroupSpec) -> OrientationCharacter:
        return cls(group, (1,) * group.free_rank, (1,) * len(group.torsion))

    def sign(self, element: GroupElement) -> int:
        if element.group != self.group:
            raise GroupMismatch("element and character belong to different groups")
        parity = 0
        for s, v in zip(self.free_signs, element.free):
            if s == -1:
                parity ^= v & 1
        for s, v in zip(self.torsion_signs, element.torsion):
            if s == -1:
                parity ^= v & 1
        return -1 if parity else 1


class GroupRingElement:
    """Integer combination of (k-1)-tuples of group elements.

    >>> z2 = AbelianGroupSpec(0, (2,))
    >>> t = z2.element((), (1,))
    >>> x = GroupRingElement.basis(z2, 2, (t,))
    >>> augment(3 * x - x)
    2
    """

    __slots__ = ("group", "k", "_terms")

    def __init__(
        self,
        group: AbelianGroupSpec,
        k: int,
        terms: Mapping[tuple[GroupElement, ...], int] | None = None,
    ):
        if k < 2:
            raise ArityMismatch(f"k must be at least 2, got {k}")
        canonical: dict[tuple[GroupElement, ...], int] = {}
        for key, coeff in (terms or {}).items():
            tup = tuple(key)
            if len(tup) != k - 1:
                raise ArityMismatch(
                    f"basis tuples must have length {k - 1}, got {len(tup)}"
                )
            for g in tup:
                if g.group != group:
                    raise GroupMismatch("basis tuple entry lies outside the stated group")
            if coeff == 0:
                continue
            canonical[tup] = checked_int64(int(coeff), "group-ring coefficient")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "_terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("GroupRingElement is immutable")

    @property
    def terms(self) -> Mapping[tuple[GroupElement, ...], int]:
        return MappingProxyType(self._terms)

    @classmethod
    def zero(cls, group: AbelianGroupSpec, k: int) -> GroupRingElement:
        return cls(group, k)

    @classmethod
    def basis(
        cls, group: AbelianGroupSpec, k: int, tup: Sequence[GroupElement]
    ) -> GroupRingElement:
        return cls(group, k, {tuple(tup): 1})

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (
            self.group == other.group
            and self.k == other.k
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.group, self.k, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        parts = []
        for tup, coeff in sorted(
            self._terms.items(), key=lambda item: tuple(g.sort_key() for g in item[0])
        ):
            body = ", ".join(f"{g.free}+{g.torsion}" for g in tup)
            parts.append(f"{coeff}*({body})")
        return f"GroupRingElement(k={self.k}, {' + '.join(parts) or '0'})"

    def _require_compatible(self, other: GroupRingElement) -> None:
        if self.group != other.group:
            raise GroupMismatch("group-ring elements over different groups")
        if self.k != other.k:
            raise ArityMismatch(f"k={self.k} does not match k={other.k}")

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        self._require_compatible(other)
        merged = dict(self._terms)
        for tup, coeff in other._terms.items():
            merged[tup] = merged.get(tup, 0) + coeff
        return GroupRingElement(self.group, self.k, merged)

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        return self + (-other)

    def __neg__(self) -> GroupRingElement:
        return GroupRingElement(
            self.group, self.k, {t: -c for t, c in self._terms.items()}
        )

    def __rmul__(self, scalar: int) -> GroupRingElement:
        if not isinstance(scalar, int):
            return NotImplemented
        return GroupRingElement(
            self.group, self.k, {t: scalar * c for t, c in self._terms.items()}
        )


@dataclass(frozen=True)
class Homomorphism:
    """Group map given by the images of the source generators, free first.

    A torsion generator of order t must land on an element killed by t.
    """

    source: AbelianGroupSpec
    target: AbelianGroupSpec
    images: tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.generator_count:
            raise ArityMismatch(
                f"expected {self.source.generator_count} generator images, "
                f"got {len(self.images)}"
            )
        for img in self.images:
            if img.group != self.target:
                raise GroupMismatch("generator image lies outside the target group")
        for order, img in zip(
            self.source.torsion, self.images[self.source.free_rank :]
        ):
            killed = img.scale(order)
            if killed != self.target.identity():
                raise GroupMismatch(
                    f"image of a torsion generator of order {order} is not killed by it"
                )

    @classmethod
    def trivial(cls, source: AbelianGroupSpec, target: AbelianGroupSpec) -> Homomorphism:
        return cls(source, target, (target.identity(),) * source.generator_count)

    @classmethod
    def identity(cls, group: AbelianGroupSpec) -> Homomorphism:
        return cls(group, group, group.generators())

    def __call__(self, element: GroupElement) -> GroupElement:
        if element.group != self.source:
            raise GroupMismatch("element lies outside the source group")
        acc = self.target.identity()
        coords = element.free + element.torsion
        for c, img in zip(coords, self.images):
            if c:
                acc = acc + img.scale(c)
        return acc


@dataclass(frozen=True)
class HomSystem:
    """The k maps induced on fundamental groups by a tuple of maps."""

    source: AbelianGroupSpec
    target: AbelianGroupSpec
    maps: tuple[Homomorphism, ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.maps) < 2:
            raise ArityMismatch("a hom system needs at least two maps")
        for hom in self.maps:
            if hom.source != self.source or hom.target != self.target:
                raise GroupMismatch("every map must share the declared source and target")

    @property
    def k(self) -> int:
        return len(self.maps)


def act(
    sigma: Sequence[GroupElement],
    x: GroupRingElement,
    sgn: OrientationCharacter,
) -> GroupRingElement:
    """Signed conjugation action of a k-tuple on a group-ring element."""
    if len(sigma) != x.k:
        raise ArityMismatch(f"expected a {x.k}-tuple, got {len(sigma)} entries")
    for g in sigma:
        if g.group != x.group:
            raise GroupMismatch("acting tuple entry lies outside the element's group")
    if sgn.group != x.group:
        raise GroupMismatch("orientation character defined on a different group")
    global_sign = sgn.sign(sigma[0]) ** (x.k - 1)
    first = sigma[0]
    result: dict[tuple[GroupElement, ...], int] = {}
    for tup, coeff in x.terms.items():
        moved = tuple(a + s - first for a, s in zip(tup, sigma[1:]))
        result[moved] = result.get(moved, 0) + global_sign * coeff
    return GroupRingElement(x.group, x.k, result)


def induced_act(
    gamma: GroupElement,
    homs: HomSystem,
    x: GroupRingElement,
    sgn: OrientationCharacter,
) -> GroupRingElement:
    """Action of a source loop, transported through the induced maps."""
    if homs.target != x.group:
        raise GroupMismatch("hom system does not land in the element's group")
    if homs.k != x.k:
        raise GroupMismatch(f"hom system has {homs.k} maps, element expects {x.k}")
    return act(tuple(hom(gamma) for hom in homs.maps), x, sgn)


def augment(x: GroupRingElement) -> int:
    """Sum of coefficients; collapses every basis tuple to 1."""
    return sum(x.terms.values())
