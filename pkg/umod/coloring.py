from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from attr import dataclass
import attr

from mautrix.types import SerializableEnum

from .errors import ModelError
from .signature import Signature
from .upsets import (
    DEFAULT_UPSET_LIMIT,
    SPoset,
    Upset,
    UpsetAlgebra,
    generated_subalgebra,
    upset_masks,
)
from .util import bits_of, iter_bits


class Variety(SerializableEnum):
    NIS = "nis"
    NIS_BOT = "nis-bot"
    IS = "is"
    IS_BOT = "is-bot"
    DENSE = "dense"
    LOCALLY_DENSE = "locally-dense"

    @property
    def nuclear(self) -> bool:
        return self not in (Variety.IS, Variety.IS_BOT)

    @property
    def bounded(self) -> bool:
        return self not in (Variety.NIS, Variety.IS)

    @property
    def signature(self) -> Signature:
        return Signature(nucleus=self.nuclear, bottom=self.bounded)

    def check_sposet(self, sposet: SPoset) -> None:
        if self == Variety.DENSE and not sposet.is_dense:
            raise ModelError("Dense models need every maximal point in S")
        if self == Variety.LOCALLY_DENSE and not sposet.is_locally_dense:
            raise ModelError("Locally dense models need ↑S ∩ max X ⊆ S")


def color_set(color: int) -> FrozenSet[int]:
    """Variable numbers ``1..n`` of a color bitmask."""
    return frozenset(i + 1 for i in iter_bits(color))


def color_mask(variables: Iterable[int]) -> int:
    return bits_of(i - 1 for i in variables)


def _colors(values: Iterable[int]) -> Tuple[int, ...]:
    return tuple(values)


@dataclass(frozen=True)
class Model:
    """An S-poset colored monotonically by subsets of ``{1..n}``, stored as bitmasks."""

    sposet: SPoset
    n: int
    coloring: Tuple[int, ...] = attr.ib(converter=_colors)

    def __attrs_post_init__(self) -> None:
        poset = self.sposet.poset
        if self.n < 0:
            raise ModelError("Variable count must be non-negative")
        if len(self.coloring) != poset.size:
            raise ModelError(f"Expected {poset.size} colors, got {len(self.coloring)}")
        for x, color in enumerate(self.coloring):
            if color & ~self.full_color:
                raise ModelError(f"Color of {poset.label(x)} uses a variable beyond x{self.n}")
            for y in iter_bits(poset.cover_up_mask(x)):
                if color & ~self.coloring[y]:
                    raise ModelError(
                        f"Coloring is not monotone between {poset.label(x)} and {poset.label(y)}"
                    )

    @property
    def poset(self):
        return self.sposet.poset

    @property
    def full_color(self) -> int:
        return (1 << self.n) - 1

    def color(self, x: int) -> FrozenSet[int]:
        return color_set(self.coloring[x])

    def cover_color(self, x: int) -> int:
        return color_of_set(self, self.poset.cover_up_mask(x))


def color_of_set(model: Model, mask: int) -> int:
    """Intersection of the colors in ``mask``; the full color for the empty set."""
    color = model.full_color
    for x in iter_bits(mask):
        color &= model.coloring[x]
    return color


def generator_masks(model: Model) -> List[int]:
    return [
        bits_of(x for x, color in enumerate(model.coloring) if color >> i & 1)
        for i in range(model.n)
    ]


def generators_of(model: Model) -> List[Upset]:
    return [Upset(model.poset, mask) for mask in generator_masks(model)]


def model_from_upsets(sposet: SPoset, upsets: Sequence[Union[Upset, int]]) -> Model:
    masks = [u.mask if isinstance(u, Upset) else Upset(sposet.poset, u).mask for u in upsets]
    coloring = [
        bits_of(i for i, mask in enumerate(masks) if mask >> x & 1) for x in range(sposet.size)
    ]
    return Model(sposet, len(masks), coloring)


def generation_oracle(
    model: Model, variety: Variety, limit: Optional[int] = DEFAULT_UPSET_LIMIT
) -> bool:
    """Whether the generator upsets generate all of ``Up(X)`` in the variety's signature."""
    view = UpsetAlgebra(model.sposet, nuclear=variety.nuclear, bounded=variety.bounded)
    generated = generated_subalgebra(view, generator_masks(model), variety.signature)
    return len(generated) == len(upset_masks(model.poset, limit))


def irreducibility_failure(
    model: Model, variety: Variety, limit: Optional[int] = DEFAULT_UPSET_LIMIT
) -> Optional[str]:
    """Which irreducibility condition the model breaks, or ``None``."""
    variety.check_sposet(model.sposet)
    if variety in (Variety.DENSE, Variety.LOCALLY_DENSE):
        if generation_oracle(model, variety, limit):
            return None
        return "generators do not generate the upset algebra"
    poset, s = model.poset, model.sposet.s
    top_points = poset.max_of(poset.carrier_mask)
    for x in range(poset.size):
        if variety.bounded and top_points >> x & 1:
            continue
        if model.coloring[x] != model.cover_color(x):
            continue
        if not variety.nuclear:
            return f"(1) {poset.label(x)} has the color of its upper covers"
        if not s >> x & 1:
            return f"(1) {poset.label(x)} has the color of its upper covers and is outside S"
        if poset.cover_up_mask(x) & ~s == 0:
            return f"(1) {poset.label(x)} has the color of its upper covers, all of them in S"
    for x in range(poset.size):
        for y in range(x + 1, poset.size):
            if poset.cover_up_mask(x) != poset.cover_up_mask(y):
                continue
            if model.coloring[x] != model.coloring[y]:
                continue
            if variety.nuclear and model.sposet.in_s(x) != model.sposet.in_s(y):
                continue
            return f"(2) {poset.label(x)} and {poset.label(y)} cannot be told apart"
    return None


def is_irreducible(
    model: Model, variety: Variety, limit: Optional[int] = DEFAULT_UPSET_LIMIT
) -> bool:
    return irreducibility_failure(model, variety, limit) is None
