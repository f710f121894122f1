from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from attr import dataclass
import attr

from .errors import AlgebraError, ElementIndexError, HomomorphismError, NotASubalgebraError
from .poset import Poset
from .signature import IMPLICATIVE, Signature
from .upsets import DEFAULT_UPSET_LIMIT, SPoset, UpsetAlgebra, upset_masks
from .util import bits_of, iter_bits

Table = Tuple[int, ...]
BinaryTable = Tuple[Tuple[int, ...], ...]


def _table(values: Sequence[int]) -> Table:
    return tuple(values)


def _binary(rows: Sequence[Sequence[int]]) -> BinaryTable:
    return tuple(tuple(row) for row in rows)


def _optional_table(values: Optional[Sequence[int]]) -> Optional[Table]:
    return tuple(values) if values is not None else None


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """A finite implicative semilattice given by tables over the elements ``0..size-1``.

    The order is recovered from the meet table. ``nucleus`` and ``bottom`` are optional.
    Algebras built from upsets remember the S-poset and the upset bitmask of each element.
    """

    meet_table: BinaryTable = attr.ib(converter=_binary)
    imp_table: BinaryTable = attr.ib(converter=_binary)
    top: int
    nucleus: Optional[Table] = attr.ib(default=None, converter=_optional_table)
    bottom: Optional[int] = None
    labels: Optional[Tuple[str, ...]] = attr.ib(default=None, converter=_optional_table)
    sposet: Optional[SPoset] = None
    upsets: Optional[Tuple[int, ...]] = attr.ib(default=None, converter=_optional_table)
    verify: bool = attr.ib(default=True, kw_only=True)

    def __attrs_post_init__(self) -> None:
        size = len(self.meet_table)
        if size < 1:
            raise AlgebraError("An algebra has at least one element")
        for name, a in (("top", self.top), ("bottom", self.bottom)):
            if a is not None and not 0 <= a < size:
                raise AlgebraError(f"The {name} {a} is outside a {size}-element algebra")
        if self.nucleus is not None:
            if len(self.nucleus) != size:
                raise AlgebraError(f"Nucleus table has {len(self.nucleus)} entries for {size}")
            if any(not 0 <= a < size for a in self.nucleus):
                raise AlgebraError("Nucleus table sends an element outside the algebra")
        above = [
            bits_of(b for b in range(size) if self.meet_table[a][b] == a) for a in range(size)
        ]
        object.__setattr__(self, "_above", tuple(above))
        object.__setattr__(self, "_join", None)
        if self.verify:
            self.validate()

    @property
    def size(self) -> int:
        return len(self.meet_table)

    def validate(self) -> None:
        n = self.size
        elements = range(n)
        for table in (self.meet_table, self.imp_table):
            if len(table) != n or any(len(row) != n for row in table):
                raise AlgebraError("Operation tables must be square")
        for a in elements:
            if self.meet_table[a][a] != a:
                raise AlgebraError(f"Meet is not idempotent at {a}")
            for b in elements:
                if self.meet_table[a][b] != self.meet_table[b][a]:
                    raise AlgebraError(f"Meet is not commutative at ({a}, {b})")
                for c in elements:
                    ab = self.meet_table[a][b]
                    if self.meet_table[ab][c] != self.meet_table[a][self.meet_table[b][c]]:
                        raise AlgebraError(f"Meet is not associative at ({a}, {b}, {c})")
                    if self.le(a, self.imp_table[b][c]) != self.le(ab, c):
                        raise AlgebraError(f"Residuation fails at ({a}, {b}, {c})")
            if not self.le(a, self.top):
                raise AlgebraError(f"{self.top} is not the top element")
        if self.bottom is not None and any(not self.le(self.bottom, a) for a in elements):
            raise AlgebraError(f"{self.bottom} is not the bottom element")
        if self.nucleus is not None and not self.is_nucleus(self.nucleus):
            raise AlgebraError("Nucleus table is not a nucleus")

    @classmethod
    def from_upsets(
        cls,
        sposet: SPoset,
        nuclear: bool = True,
        bounded: bool = False,
        limit: Optional[int] = DEFAULT_UPSET_LIMIT,
        verify: bool = False,
    ) -> "FiniteAlgebra":
        view = UpsetAlgebra(sposet, nuclear=nuclear, bounded=bounded)
        masks = upset_masks(sposet.poset, limit)
        index = {mask: i for i, mask in enumerate(masks)}
        meet_table = [[index[a & b] for b in masks] for a in masks]
        imp_table = [[index[view.imp(a, b)] for b in masks] for a in masks]
        nucleus = [index[view.j(a)] for a in masks] if nuclear else None
        poset = sposet.poset
        labels = ["{" + ", ".join(poset.label(x) for x in iter_bits(m)) + "}" for m in masks]
        return cls(
            meet_table,
            imp_table,
            index[poset.carrier_mask],
            nucleus,
            index[0] if bounded else None,
            labels,
            sposet,
            masks,
            verify=verify,
        )

    def _check(self, a: int) -> None:
        if not 0 <= a < self.size:
            raise ElementIndexError(a, self.size)

    def label(self, a: int) -> str:
        self._check(a)
        return self.labels[a] if self.labels is not None else str(a)

    def le(self, a: int, b: int) -> bool:
        return bool(self._above[a] >> b & 1)

    def above(self, a: int) -> int:
        return self._above[a]

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def meet_all(self, elements: Iterable[int]) -> int:
        result = self.top
        for a in elements:
            result = self.meet_table[result][a]
        return result

    def imp(self, a: int, b: int) -> int:
        return self.imp_table[a][b]

    def j(self, a: int) -> int:
        return self.nucleus[a] if self.nucleus is not None else a

    def join(self, a: int, b: int) -> int:
        """Least upper bound; it exists because finite implicative semilattices are Heyting."""
        if self._join is None:
            join = [
                [
                    self.meet_all(iter_bits(self._above[x] & self._above[y]))
                    for y in range(self.size)
                ]
                for x in range(self.size)
            ]
            object.__setattr__(self, "_join", _binary(join))
        return self._join[a][b]

    def negation(self, a: int) -> int:
        if self.bottom is None:
            raise AlgebraError("Negation needs a bottom element")
        return self.imp(a, self.bottom)

    @property
    def nuclear(self) -> bool:
        return self.nucleus is not None

    @property
    def bounded(self) -> bool:
        return self.bottom is not None

    @property
    def signature(self) -> Signature:
        return Signature(nucleus=self.nuclear, bottom=self.bounded)

    def least(self) -> int:
        return self.meet_all(range(self.size))

    def fixpoints(self) -> FrozenSet[int]:
        return frozenset(a for a in range(self.size) if self.j(a) == a)

    def is_nucleus(self, table: Sequence[int]) -> bool:
        for a in range(self.size):
            if not self.le(a, table[a]) or table[table[a]] != table[a]:
                return False
            for b in range(a + 1, self.size):
                if table[self.meet(a, b)] != self.meet(table[a], table[b]):
                    return False
        return True

    def hasse_covers(self) -> List[Tuple[int, int]]:
        covers = []
        for a in range(self.size):
            strictly_above = self._above[a] & ~(1 << a)
            for b in iter_bits(strictly_above):
                if not any(self._above[c] >> b & 1 for c in iter_bits(strictly_above & ~(1 << b))):
                    covers.append((a, b))
        return covers


@dataclass(frozen=True)
class Dual:
    """The meet-prime S-poset of an algebra; ``elements[i]`` is the meet-prime at index ``i``."""

    sposet: SPoset
    elements: Tuple[int, ...]

    def index_of(self, a: int) -> int:
        return self.elements.index(a)


def is_meet_prime(algebra: FiniteAlgebra, m: int) -> bool:
    if m == algebra.top:
        return False
    for a in range(algebra.size):
        if algebra.le(a, m):
            continue
        for b in range(algebra.size):
            if not algebra.le(b, m) and algebra.le(algebra.meet(a, b), m):
                return False
    return True


def meet_primes(algebra: FiniteAlgebra) -> Dual:
    """The dual S-poset: meet-primes ordered by the reverse of the algebra order."""
    elements = tuple(m for m in range(algebra.size) if is_meet_prime(algebra, m))
    relation = {
        (i, k)
        for i, x in enumerate(elements)
        for k, y in enumerate(elements)
        if x != y and algebra.le(y, x)
    }
    s = bits_of(i for i, m in enumerate(elements) if algebra.j(m) == m)
    names = [algebra.label(m) for m in elements] if algebra.labels is not None else None
    return Dual(SPoset(Poset(len(elements), relation, names), s), elements)


def alpha(algebra: FiniteAlgebra, dual: Dual, a: int) -> int:
    """The upset of meet-primes not above ``a``."""
    return bits_of(i for i, m in enumerate(dual.elements) if not algebra.le(a, m))


def epsilon(poset: Poset, x: int) -> int:
    """The meet-prime upset ``X ∖ ↓x`` of ``Up(X)``."""
    return poset.carrier_mask & ~poset.down_mask(x)


def meet_prime_components(algebra: FiniteAlgebra, a: int) -> FrozenSet[int]:
    primes = [m for m in range(algebra.size) if is_meet_prime(algebra, m) and algebra.le(a, m)]
    return frozenset(
        m for m in primes if not any(p != m and algebra.le(p, m) for p in primes)
    )


def is_subalgebra(
    algebra: FiniteAlgebra, elements: Iterable[int], signature: Signature = IMPLICATIVE
) -> bool:
    chosen = set(elements)
    if algebra.top not in chosen:
        return False
    if signature.bottom and algebra.bottom not in chosen:
        return False
    for a in chosen:
        if signature.nucleus and algebra.j(a) not in chosen:
            return False
        for b in chosen:
            if algebra.meet(a, b) not in chosen or algebra.imp(a, b) not in chosen:
                return False
    return True


def subalgebra_closure(
    algebra: FiniteAlgebra, generators: Iterable[int], signature: Signature = IMPLICATIVE
) -> FrozenSet[int]:
    found = {algebra.top}
    queue = [algebra.top]
    seeds = list(generators)
    if signature.bottom:
        if algebra.bottom is None:
            raise AlgebraError("Signature needs a bottom element the algebra lacks")
        seeds.append(algebra.bottom)
    for seed in seeds:
        if seed not in found:
            found.add(seed)
            queue.append(seed)
    while queue:
        a = queue.pop()
        produced = [algebra.j(a)] if signature.nucleus else []
        for b in list(found):
            produced += [algebra.meet(a, b), algebra.imp(a, b), algebra.imp(b, a)]
        for c in produced:
            if c not in found:
                found.add(c)
                queue.append(c)
    return frozenset(found)


def _require_subalgebra(algebra: FiniteAlgebra, elements: Iterable[int]) -> Set[int]:
    chosen = set(elements)
    if not is_subalgebra(algebra, chosen):
        raise NotASubalgebraError(f"{sorted(chosen)} is not closed under meet and implication")
    return chosen


def induced_nucleus(algebra: FiniteAlgebra, elements: Iterable[int]) -> Table:
    """The nucleus ``k(a) = ⋀ {(a → b) → b | b ∈ B}``.

    It is the least nucleus whose fixpoints include B.
    """
    chosen = _require_subalgebra(algebra, elements)
    return tuple(
        algebra.meet_all(algebra.imp(algebra.imp(a, b), b) for b in sorted(chosen))
        for a in range(algebra.size)
    )


def restriction_nucleus(algebra: FiniteAlgebra, elements: Iterable[int]) -> Dict[int, int]:
    """The nucleus ``b ↦ ⋀ {x ∈ B ∩ A_j | b ≤ x}`` on the subalgebra B."""
    chosen = _require_subalgebra(algebra, elements)
    fixed = [x for x in sorted(chosen) if algebra.j(x) == x]
    return {b: algebra.meet_all(x for x in fixed if algebra.le(b, x)) for b in sorted(chosen)}


def nucleus_constructors(algebra: FiniteAlgebra, a: int) -> Tuple[Table, Table, Table]:
    """The closed, open and ``w`` nuclei at ``a``."""
    elements = range(algebra.size)
    closed = tuple(algebra.join(a, b) for b in elements)
    opened = tuple(algebra.imp(a, b) for b in elements)
    w = tuple(algebra.imp(algebra.imp(b, a), a) for b in elements)
    return closed, opened, w


def distributivity_witness(algebra: FiniteAlgebra, a: int, b: int, z: int) -> Tuple[int, int]:
    """For ``a ∧ b ≤ z``, elements ``x ≥ a`` and ``y ≥ b`` whose meet is ``z``."""
    if not algebra.le(algebra.meet(a, b), z):
        raise AlgebraError(f"{a} ∧ {b} is not below {z}")
    az = algebra.imp(a, z)
    bz = algebra.imp(b, z)
    pivot = algebra.imp(algebra.meet(az, bz), z)
    return algebra.meet(pivot, bz), algebra.meet(pivot, az)


def algebras_isomorphic(left: FiniteAlgebra, right: FiniteAlgebra) -> bool:
    """Compare two algebras through their dual S-posets."""
    if left.size != right.size:
        return False
    return meet_primes(left).sposet.is_isomorphic(meet_primes(right).sposet)


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: Table = attr.ib(converter=_table)

    def __attrs_post_init__(self) -> None:
        if len(self.mapping) != self.source.size:
            raise HomomorphismError("Map must assign an image to every source element")
        for image in self.mapping:
            if not 0 <= image < self.target.size:
                raise ElementIndexError(image, self.target.size)
        src, tgt, h = self.source, self.target, self.mapping
        if h[src.top] != tgt.top:
            raise HomomorphismError("Top is not preserved")
        for a in range(src.size):
            for b in range(src.size):
                if h[src.meet(a, b)] != tgt.meet(h[a], h[b]):
                    raise HomomorphismError(f"Meet is not preserved at ({a}, {b})")
                if h[src.imp(a, b)] != tgt.imp(h[a], h[b]):
                    raise HomomorphismError(f"Implication is not preserved at ({a}, {b})")

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    @property
    def nuclear(self) -> bool:
        if not self.source.nuclear or not self.target.nuclear:
            return False
        return all(
            self.mapping[self.source.j(a)] == self.target.j(self.mapping[a])
            for a in range(self.source.size)
        )

    @property
    def bounded(self) -> bool:
        if not self.source.bounded or not self.target.bounded:
            return False
        return self.mapping[self.source.bottom] == self.target.bottom

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.source.size

    @property
    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.size

    def image(self) -> FrozenSet[int]:
        return frozenset(self.mapping)

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """The composite ``other ∘ self``."""
        if other.source is not self.target:
            raise HomomorphismError("Composed homomorphisms do not share an algebra")
        mapping = [other(self(a)) for a in range(self.source.size)]
        return Homomorphism(self.source, other.target, mapping)

    @classmethod
    def identity(cls, algebra: FiniteAlgebra) -> "Homomorphism":
        return cls(algebra, algebra, range(algebra.size))
