from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

from attr import dataclass
import attr

from mautrix.types import SerializableEnum

from .errors import PartitionError
from .poset import Poset
from .signature import BOUNDED_NUCLEAR, IMPLICATIVE, NUCLEAR, Signature
from .upsets import DEFAULT_UPSET_LIMIT, SPoset, UpsetAlgebra, generated_subalgebra, upset_masks
from .util import bits_of, iter_bits

Classes = Tuple[Tuple[int, ...], ...]


def _canonical(classes: Iterable[Iterable[int]]) -> Classes:
    return tuple(sorted(tuple(sorted(members)) for members in classes))


class SubalgebraMode(SerializableEnum):
    PLAIN = "plain"
    NUCLEAR = "nuclear"
    BOUNDED_NUCLEAR = "bounded-nuclear"

    @property
    def signature(self) -> Signature:
        return {
            SubalgebraMode.PLAIN: IMPLICATIVE,
            SubalgebraMode.NUCLEAR: NUCLEAR,
            SubalgebraMode.BOUNDED_NUCLEAR: BOUNDED_NUCLEAR,
        }[self]


@dataclass(frozen=True)
class PartialCorrectPartition:
    """A partial equivalence on a poset whose classes are antichains and lift along ``<``.

    Classes are stored sorted, so equal partitions compare equal.
    """

    ambient: Poset
    classes: Classes = attr.ib(converter=_canonical)

    def __attrs_post_init__(self) -> None:
        seen = 0
        class_of = {}
        for number, members in enumerate(self.classes):
            if not members:
                raise PartitionError("Equivalence classes cannot be empty")
            mask = bits_of(members)
            if mask & seen:
                raise PartitionError("Equivalence classes overlap")
            if mask & ~self.ambient.carrier_mask:
                raise PartitionError("Class contains an element outside the poset")
            if not self.ambient.is_antichain_mask(mask):
                raise PartitionError(f"Class {list(members)} is not an antichain")
            seen |= mask
            for x in members:
                class_of[x] = number
        object.__setattr__(self, "_class_of", class_of)
        object.__setattr__(self, "_domain", seen)
        problem = self._lifting_failure()
        if problem:
            raise PartitionError(problem)

    def _lifting_failure(self) -> Optional[str]:
        X = self.ambient
        for members in self.classes:
            for x in members:
                for y in members:
                    for z in iter_bits(X.up_mask(y) & self._domain & ~(1 << y)):
                        if not any(
                            self.equivalent(w, z)
                            for w in iter_bits(X.up_mask(x) & self._domain & ~(1 << x))
                        ):
                            return f"{x} ~ {y} < {z} has no lift above {x}"
        return None

    @classmethod
    def identity(
        cls, poset: Poset, domain: Optional[Iterable[int]] = None
    ) -> "PartialCorrectPartition":
        members = range(poset.size) if domain is None else domain
        return cls(poset, [(x,) for x in members])

    @classmethod
    def empty(cls, poset: Poset) -> "PartialCorrectPartition":
        return cls(poset, [])

    @property
    def domain(self) -> int:
        return self._domain

    @property
    def is_correct(self) -> bool:
        return self._domain == self.ambient.carrier_mask

    @property
    def is_identity(self) -> bool:
        return all(len(members) == 1 for members in self.classes)

    def class_of(self, x: int) -> Optional[Tuple[int, ...]]:
        number = self._class_of.get(x)
        return self.classes[number] if number is not None else None

    def equivalent(self, x: int, y: int) -> bool:
        number = self._class_of.get(x)
        return number is not None and number == self._class_of.get(y)

    def is_saturated(self, mask: int) -> bool:
        """Whether ``mask ∩ D`` is a union of classes."""
        for members in self.classes:
            inside = bits_of(members) & mask
            if inside and inside != bits_of(members):
                return False
        return True

    def contains_upset(self, mask: int) -> bool:
        X = self.ambient
        outside_top = X.max_of(X.carrier_mask & ~mask)
        return self.is_saturated(mask) and outside_top & ~self._domain == 0


def partition_subalgebra(
    partition: PartialCorrectPartition, limit: Optional[int] = DEFAULT_UPSET_LIMIT
) -> FrozenSet[int]:
    """The upsets ``U`` with ``U ∩ D`` saturated and ``max(X ∖ U) ⊆ D``."""
    return frozenset(
        mask for mask in upset_masks(partition.ambient, limit) if partition.contains_upset(mask)
    )


def is_nuclear_partition(partition: PartialCorrectPartition, sposet: SPoset) -> bool:
    X, s, domain = sposet.poset, sposet.s, partition.domain
    if not partition.is_saturated(s):
        return False
    for x in iter_bits(s):
        for d in iter_bits(X.up_mask(x) & domain):
            if not any(
                partition.equivalent(d, d2) and X.leq(s2, d2)
                for s2 in iter_bits(X.up_mask(x) & s & domain)
                for d2 in iter_bits(domain)
            ):
                return False
    return True


@dataclass(frozen=True)
class PartitionKind:
    total: bool
    strict_heyting: bool
    nuclear: Optional[bool] = None
    nuclear_total: Optional[bool] = None
    nuclear_strict_heyting: Optional[bool] = None


def classify_partition(
    partition: PartialCorrectPartition, sposet: Optional[SPoset] = None
) -> PartitionKind:
    total = partition.is_identity
    strict = partition.is_correct
    if sposet is None:
        return PartitionKind(total, strict)
    X, s = sposet.poset, sposet.s
    nuclear_total = total and all(
        X.max_of(s & X.down_mask(d)) & ~partition.domain == 0 for d in iter_bits(partition.domain)
    )
    return PartitionKind(
        total,
        strict,
        nuclear=is_nuclear_partition(partition, sposet),
        nuclear_total=nuclear_total,
        nuclear_strict_heyting=strict and partition.is_saturated(s),
    )


def subalgebra_leq(first: PartialCorrectPartition, second: PartialCorrectPartition) -> bool:
    """Whether the subalgebra of ``first`` is included in the subalgebra of ``second``."""
    if first.ambient != second.ambient:
        raise PartitionError("Partitions live on different posets")
    if first.domain & ~second.domain:
        return False
    if not second.is_saturated(first.domain):
        return False
    for members in second.classes:
        inside = [x for x in members if first.domain >> x & 1]
        if any(not first.equivalent(inside[0], x) for x in inside[1:]):
            return False
    return True


def enumerate_maximal_subalgebras(
    sposet: SPoset, mode: SubalgebraMode = SubalgebraMode.PLAIN
) -> List[PartialCorrectPartition]:
    """Partitions of the maximal proper subalgebras of ``Up(X)`` for ``mode``.

    Either one point is dropped from the domain, or two points with the same upper covers
    are glued together.
    """
    X, s = sposet.poset, sposet.s
    nuclear = mode != SubalgebraMode.PLAIN
    top_points = X.max_of(X.carrier_mask)
    found = []
    for x in range(X.size):
        if nuclear and sposet.in_s(x) and X.cover_up_mask(x) & ~s:
            continue
        if mode == SubalgebraMode.BOUNDED_NUCLEAR and top_points >> x & 1:
            continue
        found.append(PartialCorrectPartition.identity(X, (y for y in range(X.size) if y != x)))
    for x in range(X.size):
        for y in range(x + 1, X.size):
            if X.cover_up_mask(x) != X.cover_up_mask(y):
                continue
            if nuclear and sposet.in_s(x) != sposet.in_s(y):
                continue
            classes = [(x, y)] + [(z,) for z in range(X.size) if z not in (x, y)]
            found.append(PartialCorrectPartition(X, classes))
    return found


def all_subalgebras(
    sposet: SPoset, signature: Signature, limit: Optional[int] = DEFAULT_UPSET_LIMIT
) -> Set[FrozenSet[int]]:
    """Every subalgebra of ``Up(X)`` for ``signature``, found by adding one upset at a time."""
    view = UpsetAlgebra(sposet, nuclear=signature.nucleus, bounded=signature.bottom)
    everything = upset_masks(sposet.poset, limit)
    start = frozenset(generated_subalgebra(view, (), signature))
    found = {start}
    frontier = [start]
    while frontier:
        current = frontier.pop()
        for mask in everything:
            if mask in current:
                continue
            bigger = frozenset(generated_subalgebra(view, current | {mask}, signature))
            if bigger not in found:
                found.add(bigger)
                frontier.append(bigger)
    return found


def brute_force_maximal_subalgebras(
    sposet: SPoset,
    mode: SubalgebraMode = SubalgebraMode.PLAIN,
    limit: Optional[int] = DEFAULT_UPSET_LIMIT,
) -> Set[FrozenSet[int]]:
    everything = frozenset(upset_masks(sposet.poset, limit))
    proper = [sub for sub in all_subalgebras(sposet, mode.signature, limit) if sub != everything]
    return {sub for sub in proper if not any(sub < other for other in proper)}

