"""Element sets as Python ints: bit ``i`` is set iff element ``i`` is a member."""
from __future__ import annotations

from typing import Iterable, Iterator


def bits_of(elements: Iterable[int]) -> int:
    mask = 0
    for element in elements:
        mask |= 1 << element
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the members of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subsets_of(mask: int) -> Iterator[int]:
    """Yield every submask of ``mask``, smallest first by size then by value."""
    members = list(iter_bits(mask))
    found = []
    for choice in range(1 << len(members)):
        found.append(bits_of(members[i] for i in iter_bits(choice)))
    found.sort(key=lambda sub: (popcount(sub), sub))
    yield from found
