"""Integer exterior algebra on a fixed number of degree-one generators.

Elements model cohomology classes of a torus: a term is a strictly increasing
tuple of generator indices (1-based) with a nonzero integer coefficient, and
mixed-degree sums are allowed.  The empty tuple is the degree-zero unit.  All
values are canonical on construction and immutable afterwards, so equality is
plain term-by-term comparison and elements are safe to share across threads.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from itertools import combinations
from types import MappingProxyType

from .errors import RankMismatch
from .matrices import IntegerMatrix, checked_int64

Subset = tuple[int, ...]


def merge_sign(left: Subset, right: Subset) -> int:
    """Parity sign of interleaving two disjoint increasing index tuples.

    Counts the transpositions needed to sort ``left + right``:

    >>> merge_sign((1,), (2,))
    1
    >>> merge_sign((2,), (1,))
    -1
    """
    inversions = 0
    j = 0
    for r in right:
        while j < len(left) and left[j] < r:
            j += 1
        inversions += len(left) - j
    return -1 if inversions % 2 else 1


class ExteriorElement:
    """A canonical integer combination of wedge monomials.

    >>> e1 = ExteriorElement.generator(2, 1)
    >>> e2 = ExteriorElement.generator(2, 2)
    >>> (2 * e1 + e2).wedge(e1 + e2)
    ExteriorElement(2, {(1, 2): 1})
    """

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms: Mapping[Iterable[int], int] | None = None):
        if rank < 0:
            raise RankMismatch(f"rank must be nonnegative, got {rank}")
        canonical: dict[Subset, int] = {}
        for subset, coeff in (terms or {}).items():
            key = tuple(subset)
            if any(b <= a for a, b in zip(key, key[1:])):
                raise ValueError(f"index subset {key} is not strictly increasing")
            if key and (key[0] < 1 or key[-1] > rank):
                raise RankMismatch(f"index subset {key} leaves range 1..{rank}")
            if coeff == 0:
                continue
            canonical[key] = checked_int64(int(coeff), "exterior coefficient")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "_terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("ExteriorElement is immutable")

    @property
    def terms(self) -> Mapping[Subset, int]:
        return MappingProxyType(self._terms)

    @classmethod
    def zero(cls, rank: int) -> ExteriorElement:
        return cls(rank)

    @classmethod
    def one(cls, rank: int) -> ExteriorElement:
        return cls(rank, {(): 1})

    @classmethod
    def generator(cls, rank: int, index: int) -> ExteriorElement:
        """The degree-one basis element e^index, 1-based."""
        return cls(rank, {(index,): 1})

    @classmethod
    def monomial(cls, rank: int, subset: Iterable[int], coeff: int = 1) -> ExteriorElement:
        return cls(rank, {tuple(subset): coeff})

    @classmethod
    def top(cls, rank: int) -> ExteriorElement:
        """The orientation monomial e^{1..rank}."""
        return cls(rank, {tuple(range(1, rank + 1)): 1})

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        degrees = {len(s) for s in self._terms}
        return len(degrees) <= 1

    def degree(self) -> int | None:
        """Common degree of all terms, or None for 0 and mixed elements."""
        degrees = {len(s) for s in self._terms}
        return degrees.pop() if len(degrees) == 1 else None

    def coefficient(self, subset: Iterable[int]) -> int:
        return self._terms.get(tuple(subset), 0)

    def top_coefficient(self) -> int:
        """Coefficient of the full monomial e^{1..rank}; 0 when absent."""
        return self._terms.get(tuple(range(1, self.rank + 1)), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        body = {s: c for s, c in sorted(self._terms.items())}
        return f"ExteriorElement({self.rank}, {body})"

    def __add__(self, other: ExteriorElement) -> ExteriorElement:
        self._require_same_rank(other)
        merged = dict(self._terms)
        for subset, coeff in other._terms.items():
            merged[subset] = merged.get(subset, 0) + coeff
        return ExteriorElement(self.rank, merged)

    def __sub__(self, other: ExteriorElement) -> ExteriorElement:
        return self + (-other)

    def __neg__(self) -> ExteriorElement:
        return ExteriorElement(self.rank, {s: -c for s, c in self._terms.items()})

    def __rmul__(self, scalar: int) -> ExteriorElement:
        if not isinstance(scalar, int):
            return NotImplemented
        return ExteriorElement(
            self.rank, {s: scalar * c for s, c in self._terms.items()}
        )

    def wedge(self, other: ExteriorElement) -> ExteriorElement:
        return wedge(self, other)

    def _require_same_rank(self, other: ExteriorElement) -> None:
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} does not match rank {other.rank}")


def wedge(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    """Graded product; repeated indices kill a term, merge order sets the sign."""
    a._require_same_rank(b)
    result: dict[Subset, int] = {}
    for left, ca in a._terms.items():
        left_set = set(left)
        for right, cb in b._terms.items():
            if left_set.intersection(right):
                continue
            merged = tuple(sorted(left + right))
            contribution = merge_sign(left, right) * ca * cb
            result[merged] = result.get(merged, 0) + contribution
    return ExteriorElement(a.rank, result)


def pullback(matrix: IntegerMatrix, x: ExteriorElement) -> ExteriorElement:
    """Algebra map induced on generators by the transpose of ``matrix``.

    ``matrix`` has shape n x m and sends rank-n elements to rank-m elements;
    a degree-one generator e^i maps to the i-th row of ``matrix`` read as a
    combination of target generators.  On a degree-p monomial the coefficient
    of a target monomial is the determinant of the corresponding p x p minor,
    so top-degree classes scale by the full determinant.
    """
    if x.rank != matrix.rows:
        raise RankMismatch(
            f"element rank {x.rank} does not match matrix row count {matrix.rows}"
        )
    m = matrix.cols
    result: dict[Subset, int] = {}
    for subset, coeff in x.terms.items():
        p = len(subset)
        if p == 0:
            result[()] = result.get((), 0) + coeff
            continue
        if p > m:
            continue
        src_rows = [i - 1 for i in subset]
        for target in combinations(range(1, m + 1), p):
            minor = matrix.minor_det(src_rows, [j - 1 for j in target])
            if minor == 0:
                continue
            result[target] = result.get(target, 0) + coeff * minor
    return ExteriorElement(m, result)


def top_coefficient(x: ExteriorElement) -> int:
    """Evaluation against the orientation monomial e^{1..rank}."""
    return x.top_coefficient()
