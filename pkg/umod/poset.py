from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from attr import dataclass
import attr
import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .errors import ElementIndexError, PosetError
from .util import bits_of, iter_bits, popcount

Cover = Tuple[int, int]


def _names_tuple(names: Optional[Iterable[str]]) -> Optional[Tuple[str, ...]]:
    return tuple(names) if names is not None else None


@dataclass(frozen=True)
class Antichain:
    members: FrozenSet[int] = attr.ib(converter=frozenset)

    @property
    def mask(self) -> int:
        return bits_of(self.members)

    @classmethod
    def from_mask(cls, mask: int) -> "Antichain":
        return cls(iter_bits(mask))

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True, eq=False, repr=False)
class Poset:
    """A finite poset on the indices ``0..size-1``.

    ``covers`` holds ``(lower, upper)`` pairs. Any relation whose reflexive-transitive closure
    is antisymmetric is accepted and reduced to its Hasse diagram. Sets of elements are passed
    around internally as int bitmasks; the ``*_mask`` methods work on those, the others on
    plain sets of indices.
    """

    size: int
    covers: FrozenSet[Cover] = attr.ib(factory=frozenset, converter=frozenset)
    names: Optional[Tuple[str, ...]] = attr.ib(default=None, converter=_names_tuple)
    _masks: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = attr.ib(
        default=None, kw_only=True
    )

    def __attrs_post_init__(self) -> None:
        if self.size < 0:
            raise PosetError(f"Poset size must be non-negative, got {self.size}")
        if self.names is not None and len(self.names) != self.size:
            raise PosetError(f"Expected {self.size} names, got {len(self.names)}")
        if self._masks is None:
            covers, up, down = self._derive(self.size, self.covers)
            object.__setattr__(self, "covers", covers)
        else:
            up, down = self._masks
        cover_up = [0] * self.size
        cover_down = [0] * self.size
        for lower, upper in self.covers:
            cover_up[lower] |= 1 << upper
            cover_down[upper] |= 1 << lower
        object.__setattr__(self, "_up", tuple(up))
        object.__setattr__(self, "_down", tuple(down))
        object.__setattr__(self, "_cover_up", tuple(cover_up))
        object.__setattr__(self, "_cover_down", tuple(cover_down))
        object.__setattr__(self, "_masks", None)
        object.__setattr__(self, "_hash", hash((self.size, self.covers)))
        object.__setattr__(self, "_heights", None)

    @staticmethod
    def _derive(size: int, covers: FrozenSet[Cover]) -> Tuple[FrozenSet[Cover], list, list]:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(size))
        for lower, upper in covers:
            for index in (lower, upper):
                if not 0 <= index < size:
                    raise ElementIndexError(index, size)
            if lower == upper:
                raise PosetError(f"Element {lower} cannot cover itself")
            graph.add_edge(lower, upper)
        if not nx.is_directed_acyclic_graph(graph):
            raise PosetError("Order relation contains a cycle")
        reduced = nx.transitive_reduction(graph)
        up = [1 << x for x in range(size)]
        for x in reversed(list(nx.topological_sort(reduced))):
            for upper in reduced.successors(x):
                up[x] |= up[upper]
        down = [1 << x for x in range(size)]
        for x in range(size):
            for y in iter_bits(up[x]):
                down[y] |= 1 << x
        return frozenset(reduced.edges()), up, down

    # Constructors

    @classmethod
    def empty(cls) -> "Poset":
        return cls(0)

    @classmethod
    def chain(cls, size: int) -> "Poset":
        return cls(size, {(x, x + 1) for x in range(size - 1)})

    @classmethod
    def discrete(cls, size: int) -> "Poset":
        return cls(size)

    def extend_below(
        self, covered: Sequence[int], names: Optional[Sequence[str]] = None
    ) -> "Poset":
        """Append one new minimal element per entry of ``covered``.

        Each entry is the bitmask of the new element's upper covers, which must be an antichain
        of existing elements. The new elements are pairwise incomparable.
        """
        if names is not None and len(names) != len(covered):
            raise PosetError(f"Expected {len(covered)} names, got {len(names)}")
        size = self.size + len(covered)
        everything = (1 << self.size) - 1
        up = list(self._up)
        down = list(self._down)
        covers = set(self.covers)
        for offset, mask in enumerate(covered):
            if mask & ~everything:
                raise ElementIndexError(mask.bit_length() - 1, self.size)
            if not self.is_antichain_mask(mask):
                raise PosetError("Upper covers of a new element must form an antichain")
            index = self.size + offset
            reach = 1 << index
            for upper in iter_bits(mask):
                reach |= self._up[upper]
                covers.add((index, upper))
            up.append(reach)
            down.append(1 << index)
            for above in iter_bits(reach & everything):
                down[above] |= 1 << index
        if self.names is None and names is None:
            all_names = None
        else:
            all_names = tuple(self.labels()) + tuple(
                names if names is not None else (str(x) for x in range(self.size, size))
            )
        return Poset(size, covers, all_names, masks=(tuple(up), tuple(down)))

    # Order

    def _check(self, x: int) -> None:
        if not 0 <= x < self.size:
            raise ElementIndexError(x, self.size)

    @property
    def carrier_mask(self) -> int:
        return (1 << self.size) - 1

    def leq(self, x: int, y: int) -> bool:
        self._check(x)
        self._check(y)
        return bool(self._up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def up_mask(self, x: int) -> int:
        self._check(x)
        return self._up[x]

    def down_mask(self, x: int) -> int:
        self._check(x)
        return self._down[x]

    def cover_up_mask(self, x: int) -> int:
        self._check(x)
        return self._cover_up[x]

    def cover_down_mask(self, x: int) -> int:
        self._check(x)
        return self._cover_down[x]

    def up_closure(self, mask: int) -> int:
        result = 0
        for x in iter_bits(mask):
            result |= self.up_mask(x)
        return result

    def down_closure(self, mask: int) -> int:
        result = 0
        for x in iter_bits(mask):
            result |= self.down_mask(x)
        return result

    def max_of(self, mask: int) -> int:
        return bits_of(x for x in iter_bits(mask) if self.up_mask(x) & mask == 1 << x)

    def min_of(self, mask: int) -> int:
        return bits_of(x for x in iter_bits(mask) if self.down_mask(x) & mask == 1 << x)

    def is_upset_mask(self, mask: int) -> bool:
        return self.up_closure(mask) == mask

    def is_downset_mask(self, mask: int) -> bool:
        return self.down_closure(mask) == mask

    def is_antichain_mask(self, mask: int) -> bool:
        for x in iter_bits(mask):
            if (self.up_mask(x) | self.down_mask(x)) & mask != 1 << x:
                return False
        return True

    # Set-valued wrappers

    def upset_of(self, xs: Iterable[int]) -> FrozenSet[int]:
        return frozenset(iter_bits(self.up_closure(bits_of(xs))))

    def downset_of(self, xs: Iterable[int]) -> FrozenSet[int]:
        return frozenset(iter_bits(self.down_closure(bits_of(xs))))

    def covers_up(self, x: int) -> FrozenSet[int]:
        return frozenset(iter_bits(self.cover_up_mask(x)))

    def covers_down(self, x: int) -> FrozenSet[int]:
        return frozenset(iter_bits(self.cover_down_mask(x)))

    def maximal(self, within: Optional[Iterable[int]] = None) -> FrozenSet[int]:
        mask = self.carrier_mask if within is None else bits_of(within)
        return frozenset(iter_bits(self.max_of(mask)))

    def minimal(self, within: Optional[Iterable[int]] = None) -> FrozenSet[int]:
        mask = self.carrier_mask if within is None else bits_of(within)
        return frozenset(iter_bits(self.min_of(mask)))

    def is_upset(self, xs: Iterable[int]) -> bool:
        return self.is_upset_mask(bits_of(xs))

    def is_antichain(self, xs: Iterable[int]) -> bool:
        return self.is_antichain_mask(bits_of(xs))

    # Antichains and chains

    def antichain_masks(self, within: Optional[int] = None) -> Iterator[int]:
        """Antichains inside ``within`` in shortlex order of their sorted member lists."""
        pool = list(iter_bits(self.carrier_mask if within is None else within))
        level: List[Tuple[int, int]] = [(0, -1)]
        while level:
            following = []
            for mask, last in level:
                yield mask
                blocked = self.up_closure(mask) | self.down_closure(mask)
                for x in pool:
                    if x > last and not blocked >> x & 1:
                        following.append((mask | 1 << x, x))
            level = following

    def antichains(self) -> Iterator[Antichain]:
        for mask in self.antichain_masks():
            yield Antichain.from_mask(mask)

    def height_of(self, x: int) -> int:
        """Length of the longest chain in ``↑x``."""
        self._check(x)
        if self._heights is None:
            heights = [0] * self.size
            for y in sorted(range(self.size), key=lambda y: popcount(self._up[y])):
                heights[y] = 1 + max(
                    (heights[z] for z in iter_bits(self._cover_up[y])), default=0
                )
            object.__setattr__(self, "_heights", tuple(heights))
        return self._heights[x]

    def height(self) -> int:
        return max((self.height_of(x) for x in range(self.size)), default=0)

    # Structure

    def label(self, x: int) -> str:
        self._check(x)
        return self.names[x] if self.names is not None else str(x)

    def labels(self) -> List[str]:
        return [self.label(x) for x in range(self.size)]

    def induced(self, xs: Iterable[int]) -> Tuple["Poset", Dict[int, int]]:
        """The subposet on ``xs``, renumbered in increasing index order.

        Returns the subposet and the map from old to new indices.
        """
        elements = sorted(set(xs))
        for x in elements:
            self._check(x)
        index = {x: i for i, x in enumerate(elements)}
        relation = {
            (index[x], index[y]) for x in elements for y in elements if self.lt(x, y)
        }
        names = [self.label(x) for x in elements] if self.names is not None else None
        return Poset(len(elements), relation, names), index

    def to_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for x in range(self.size):
            graph.add_node(x, label=self.label(x))
        graph.add_edges_from(sorted(self.covers))
        return graph

    def is_isomorphic(
        self,
        other: "Poset",
        marks: Optional[Sequence] = None,
        other_marks: Optional[Sequence] = None,
    ) -> bool:
        """Order isomorphism, optionally preserving a per-element mark (S-membership, color)."""
        if self.size != other.size or len(self.covers) != len(other.covers):
            return False
        left = self.to_graph()
        right = other.to_graph()
        if marks is None:
            return DiGraphMatcher(left, right).is_isomorphic()
        for x in range(self.size):
            left.nodes[x]["mark"] = marks[x]
            right.nodes[x]["mark"] = other_marks[x]
        matcher = DiGraphMatcher(left, right, node_match=lambda a, b: a["mark"] == b["mark"])
        return matcher.is_isomorphic()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.size == other.size and self.covers == other.covers

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Poset(size={self.size}, covers={sorted(self.covers)})"
