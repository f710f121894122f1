from typing import FrozenSet, Iterable, Iterator, List, Optional, Set

from attr import dataclass

from .errors import AmbientMismatchError, ElementIndexError, NotAnUpsetError, UpsetLimitError
from .poset import Poset
from .signature import Signature
from .util import bits_of, iter_bits, popcount

DEFAULT_UPSET_LIMIT = 24


@dataclass(frozen=True)
class SPoset:
    poset: Poset
    s: int = 0

    def __attrs_post_init__(self) -> None:
        if self.s & ~self.poset.carrier_mask:
            raise ElementIndexError(self.s.bit_length() - 1, self.poset.size)

    @classmethod
    def of(cls, poset: Poset, s: Iterable[int] = ()) -> "SPoset":
        return cls(poset, bits_of(s))

    @property
    def s_set(self) -> FrozenSet[int]:
        return frozenset(iter_bits(self.s))

    @property
    def size(self) -> int:
        return self.poset.size

    def in_s(self, x: int) -> bool:
        return bool(self.s >> x & 1)

    @property
    def is_dense(self) -> bool:
        return self.poset.max_of(self.poset.carrier_mask) & ~self.s == 0

    @property
    def is_locally_dense(self) -> bool:
        tops = self.poset.max_of(self.poset.carrier_mask)
        return self.poset.up_closure(self.s) & tops & ~self.s == 0

    def is_isomorphic(self, other: "SPoset") -> bool:
        return self.poset.is_isomorphic(
            other.poset,
            [self.in_s(x) for x in range(self.size)],
            [other.in_s(x) for x in range(other.size)],
        )


@dataclass(frozen=True)
class Upset:
    poset: Poset
    mask: int = 0

    def __attrs_post_init__(self) -> None:
        if self.mask & ~self.poset.carrier_mask:
            raise ElementIndexError(self.mask.bit_length() - 1, self.poset.size)
        if not self.poset.is_upset_mask(self.mask):
            raise NotAnUpsetError(f"{sorted(iter_bits(self.mask))} is not upward closed")

    @classmethod
    def of(cls, poset: Poset, members: Iterable[int]) -> "Upset":
        return cls(poset, bits_of(members))

    @classmethod
    def generated_by(cls, poset: Poset, members: Iterable[int]) -> "Upset":
        return cls(poset, poset.up_closure(bits_of(members)))

    @property
    def members(self) -> FrozenSet[int]:
        return frozenset(iter_bits(self.mask))

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __le__(self, other: "Upset") -> bool:
        _same_ambient(self, other)
        return self.mask & ~other.mask == 0

    def __and__(self, other: "Upset") -> "Upset":
        return meet(self, other)

    def __or__(self, other: "Upset") -> "Upset":
        return join(self, other)

    def __repr__(self) -> str:
        return "{" + ", ".join(self.poset.label(x) for x in self) + "}"


def _same_ambient(*upsets: Upset) -> Poset:
    poset = upsets[0].poset
    for upset in upsets[1:]:
        if upset.poset is not poset and upset.poset != poset:
            raise AmbientMismatchError()
    return poset


def implies_mask(poset: Poset, u: int, v: int) -> int:
    return poset.carrier_mask & ~poset.down_closure(u & ~v)


def nucleus_mask(poset: Poset, s: int, u: int) -> int:
    return poset.carrier_mask & ~poset.down_closure(s & ~u)


def top(poset: Poset) -> Upset:
    return Upset(poset, poset.carrier_mask)


def bottom(poset: Poset) -> Upset:
    return Upset(poset, 0)


def meet(u: Upset, v: Upset) -> Upset:
    return Upset(_same_ambient(u, v), u.mask & v.mask)


def join(u: Upset, v: Upset) -> Upset:
    return Upset(_same_ambient(u, v), u.mask | v.mask)


def implies(u: Upset, v: Upset) -> Upset:
    """The largest upset ``W`` with ``W ∩ u ⊆ v``."""
    poset = _same_ambient(u, v)
    return Upset(poset, implies_mask(poset, u.mask, v.mask))


def negate(u: Upset) -> Upset:
    return implies(u, bottom(u.poset))


def nucleus_js(sposet: SPoset, u: Upset) -> Upset:
    if u.poset is not sposet.poset and u.poset != sposet.poset:
        raise AmbientMismatchError()
    return Upset(u.poset, nucleus_mask(u.poset, sposet.s, u.mask))


def upset_masks(poset: Poset, limit: Optional[int] = DEFAULT_UPSET_LIMIT) -> List[int]:
    """Every upset of ``poset`` ordered by size, then by sorted members."""
    if limit is not None and poset.size > limit:
        raise UpsetLimitError(poset.size, limit)
    masks = [poset.up_closure(antichain) for antichain in poset.antichain_masks()]
    masks.sort(key=lambda mask: (popcount(mask), list(iter_bits(mask))))
    return masks


def all_upsets(poset: Poset, limit: Optional[int] = DEFAULT_UPSET_LIMIT) -> List[Upset]:
    return [Upset(poset, mask) for mask in upset_masks(poset, limit)]


class UpsetAlgebra:
    """``Up(X)`` of an S-poset as an algebra whose elements are upset bitmasks.

    Nothing is materialized, so the view works on carriers far beyond the ``all_upsets``
    limit. ``nuclear`` equips it with ``j_S`` and ``bounded`` with the constant ``0``.
    """

    def __init__(self, sposet: SPoset, nuclear: bool = True, bounded: bool = False) -> None:
        self.sposet = sposet
        self.poset = sposet.poset
        self.nuclear = nuclear
        self.bounded = bounded

    @property
    def signature(self) -> Signature:
        return Signature(nucleus=self.nuclear, bottom=self.bounded)

    @property
    def top(self) -> int:
        return self.poset.carrier_mask

    @property
    def bottom(self) -> int:
        return 0

    def leq(self, a: int, b: int) -> bool:
        return a & ~b == 0

    def meet(self, a: int, b: int) -> int:
        return a & b

    def join(self, a: int, b: int) -> int:
        return a | b

    def imp(self, a: int, b: int) -> int:
        return implies_mask(self.poset, a, b)

    def j(self, a: int) -> int:
        if not self.nuclear:
            return a
        return nucleus_mask(self.poset, self.sposet.s, a)

    def elements(self, limit: Optional[int] = DEFAULT_UPSET_LIMIT) -> List[int]:
        return upset_masks(self.poset, limit)

    def upset(self, mask: int) -> Upset:
        return Upset(self.poset, mask)

    def generated_subalgebra(self, generators: Iterable[int]) -> Set[int]:
        return generated_subalgebra(self, generators, self.signature)


def generated_subalgebra(
    algebra: UpsetAlgebra, generators: Iterable[int], signature: Signature
) -> Set[int]:
    """Least set of upsets containing ``generators`` and top, closed under ``signature``."""
    found = {algebra.top}
    queue = [algebra.top]
    seeds = list(generators)
    if signature.bottom:
        seeds.append(algebra.bottom)
    for seed in seeds:
        if seed not in found:
            found.add(seed)
            queue.append(seed)
    while queue:
        a = queue.pop()
        produced = []
        if signature.nucleus:
            produced.append(algebra.j(a))
        for b in list(found):
            produced.append(a & b)
            produced.append(algebra.imp(a, b))
            produced.append(algebra.imp(b, a))
        for c in produced:
            if c not in found:
                found.add(c)
                queue.append(c)
    return found
