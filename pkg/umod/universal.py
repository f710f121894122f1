from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple
import logging

from attr import dataclass
import attr

from .coloring import Model, Variety, color_mask, color_set, irreducibility_failure
from .errors import ModelError, NotIrreducibleError, TruncatedModelError
from .poset import Poset
from .upsets import SPoset
from .util import bits_of, iter_bits, popcount, subsets_of

DEFAULT_MAX_LAYER = 64
DEFAULT_MAX_ELEMENTS = 200000
ANTICHAIN_VISITS_PER_ELEMENT = 16

Key = Tuple[str, FrozenSet[int], int]

FIRST_LAYER_KINDS = {
    Variety.NIS: ("r", "s"),
    Variety.NIS_BOT: ("r", "s"),
    Variety.IS: ("r",),
    Variety.IS_BOT: ("r",),
    Variety.DENSE: ("s",),
    Variety.LOCALLY_DENSE: ("r", "s"),
}


@dataclass(frozen=True)
class UElement:
    """A formal symbol ``r_{α,σ}`` or ``s_{α,σ}``.

    Identity is the triple of kind, cover antichain and color; ``layer`` and ``rule`` record
    where the element was born (rule 0 is the first layer).
    """

    kind: str
    cover: FrozenSet[int] = attr.ib(converter=frozenset)
    color: int
    layer: int = attr.ib(eq=False)
    rule: int = attr.ib(eq=False, default=0)

    @property
    def key(self) -> Key:
        return self.kind, self.cover, self.color

    def name(self, ordinal: int) -> str:
        variables = ",".join(str(i) for i in sorted(color_set(self.color)))
        return f"{self.kind}@{self.layer}#{ordinal:02d}{{{variables}}}"


@dataclass(frozen=True)
class TruncationReport:
    reason: str
    completed_layers: int
    elements: int
    height_lower_bound: int


@dataclass(frozen=True, eq=False)
class LayeredModel:
    model: Model
    elements: Tuple[UElement, ...] = attr.ib(converter=tuple)
    variety: Variety
    truncation: Optional[TruncationReport] = None

    def __attrs_post_init__(self) -> None:
        object.__setattr__(self, "_index", {e.key: x for x, e in enumerate(self.elements)})

    @classmethod
    def assemble(
        cls,
        n: int,
        variety: Variety,
        elements: Sequence[UElement],
        truncation: Optional[TruncationReport] = None,
    ) -> "LayeredModel":
        """Rebuild the colored S-poset from elements listed layer by layer."""
        poset = Poset.empty()
        start = 0
        while start < len(elements):
            layer = elements[start].layer
            end = start
            while end < len(elements) and elements[end].layer == layer:
                end += 1
            batch = elements[start:end]
            poset = poset.extend_below(
                [bits_of(e.cover) for e in batch],
                [e.name(ordinal) for ordinal, e in enumerate(batch)],
            )
            start = end
        s = bits_of(x for x, e in enumerate(elements) if e.kind == "s")
        model = Model(SPoset(poset, s), n, [e.color for e in elements])
        return cls(model, elements, variety, truncation)

    @property
    def n(self) -> int:
        return self.model.n

    @property
    def poset(self) -> Poset:
        return self.model.poset

    @property
    def is_truncated(self) -> bool:
        return self.truncation is not None

    @property
    def layers(self) -> int:
        return max((e.layer for e in self.elements), default=0)

    def layer_sizes(self) -> List[int]:
        sizes = [0] * self.layers
        for element in self.elements:
            sizes[element.layer - 1] += 1
        return sizes

    def layer_of(self, x: int) -> int:
        return self.elements[x].layer

    def index_of(self, kind: str, cover: FrozenSet[int], color: int) -> Optional[int]:
        return self._index.get((kind, frozenset(cover), color))

    def prefix(self, k: int) -> "LayeredModel":
        """The submodel of the first ``k`` layers."""
        kept = [e for e in self.elements if e.layer <= k]
        return LayeredModel.assemble(self.n, self.variety, kept)


class UniversalModelBuilder:
    log: logging.Logger = logging.getLogger("umod.universal")

    def __init__(
        self,
        n: int,
        variety: Variety,
        max_layer: Optional[int] = DEFAULT_MAX_LAYER,
        max_elements: Optional[int] = DEFAULT_MAX_ELEMENTS,
    ) -> None:
        if n < 0:
            raise ModelError("Variable count must be non-negative")
        self.n = n
        self.variety = variety
        self.max_layer = max_layer
        self.max_elements = max_elements
        self.full = (1 << n) - 1
        self.elements: List[UElement] = []
        self.poset = Poset.empty()
        self.coloring: List[int] = []
        self.s = 0
        self.first_layer = 0

    def first_layer_elements(self) -> List[UElement]:
        if self.variety.bounded:
            colors = list(subsets_of(self.full))
        else:
            colors = [sigma for sigma in subsets_of(self.full) if sigma != self.full]
        return [
            UElement(kind, (), sigma, 1, 0)
            for kind in FIRST_LAYER_KINDS[self.variety]
            for sigma in colors
        ]

    def _prunable(self, color: int, gate_ok: bool) -> bool:
        if color:
            return False
        return not self.variety.nuclear or not gate_ok

    def _antichains(
        self, new: int, limit: Optional[int] = None
    ) -> Iterator[Optional[Tuple[int, int, bool]]]:
        """Antichains of the current poset meeting ``new``, with their color and gate flag.

        Yields a single ``None`` and stops once more than ``limit`` antichains were visited.
        """
        poset = self.poset
        gated = self.variety == Variety.LOCALLY_DENSE
        forbidden = self.first_layer & ~self.s
        visits = 0
        stack = [(0, self.full, 0, 0, iter_bits(poset.carrier_mask))]
        while stack:
            mask, color, up, blocked, candidates = stack[-1]
            x = next(candidates, None)
            if x is None:
                stack.pop()
                continue
            visits += 1
            if limit is not None and visits > limit:
                yield None
                return
            child = mask | 1 << x
            child_color = color & self.coloring[x]
            child_up = up | poset.up_mask(x)
            gate_ok = not gated or child_up & forbidden == 0
            if child & new:
                yield child, child_color, gate_ok
            if self._prunable(child_color, gate_ok):
                continue
            child_blocked = blocked | child_up | poset.down_mask(x)
            rest = poset.carrier_mask & ~child_blocked & ~((2 << x) - 1)
            if rest & new or (rest and child & new):
                stack.append((child, child_color, child_up, child_blocked, iter_bits(rest)))

    def _apply_rules(self, mask: int, color: int, gate_ok: bool, layer: int) -> List[UElement]:
        cover = tuple(iter_bits(mask))
        proper = [sigma for sigma in subsets_of(color) if sigma != color]
        born = [UElement("r", cover, sigma, layer, 1) for sigma in proper]
        if self.variety.nuclear and gate_ok:
            born += [UElement("s", cover, sigma, layer, 2) for sigma in proper]
            if mask & ~self.s:
                born.append(UElement("s", cover, color, layer, 3))
        return born

    def next_layer(self, layer: int, budget: Optional[int]) -> Optional[List[UElement]]:
        """Elements of the next layer, or ``None`` when more than ``budget`` would be born.

        The antichain search itself gets ``ANTICHAIN_VISITS_PER_ELEMENT`` visits per element
        of budget, so a layer whose candidates outgrow the budget also returns ``None``.
        """
        if layer == 1:
            born = self.first_layer_elements()
            return None if budget is not None and len(born) > budget else born
        new = bits_of(x for x, e in enumerate(self.elements) if e.layer == layer - 1)
        limit = None if budget is None else max(budget, 1) * ANTICHAIN_VISITS_PER_ELEMENT
        born = []
        for found in self._antichains(new, limit):
            if found is None:
                self.log.debug(f"Antichain search for layer {layer} ran past {limit} visits")
                return None
            born += self._apply_rules(*found, layer)
            if budget is not None and len(born) > budget:
                return None
        return born

    def _has_next_layer(self, layer: int) -> bool:
        if layer == 1:
            return bool(self.first_layer_elements())
        new = bits_of(x for x, e in enumerate(self.elements) if e.layer == layer - 1)
        return any(self._apply_rules(*found, layer) for found in self._antichains(new))

    def _add_layer(self, born: List[UElement]) -> None:
        born.sort(
            key=lambda e: (len(e.cover), sorted(e.cover), e.kind, popcount(e.color), e.color)
        )
        start = len(self.elements)
        self.poset = self.poset.extend_below(
            [bits_of(e.cover) for e in born], [e.name(i) for i, e in enumerate(born)]
        )
        for offset, element in enumerate(born):
            self.elements.append(element)
            self.coloring.append(element.color)
            if element.kind == "s":
                self.s |= 1 << start + offset
            if element.layer == 1:
                self.first_layer |= 1 << start + offset

    def _truncate(self, reason: str, layer: int) -> TruncationReport:
        report = TruncationReport(reason, layer - 1, len(self.elements), layer)
        self.log.warning(
            f"Stopped the {self.n}-universal {self.variety.value} model at layer {layer}: "
            f"{reason} reached with {len(self.elements)} elements"
        )
        return report

    def build(self) -> LayeredModel:
        truncation = None
        layer = 1
        while True:
            if self.max_layer is not None and layer > self.max_layer:
                if self._has_next_layer(layer):
                    truncation = self._truncate("max_layer", layer)
                break
            budget = None
            if self.max_elements is not None:
                budget = self.max_elements - len(self.elements)
            born = self.next_layer(layer, budget)
            if born is None:
                truncation = self._truncate("max_elements", layer)
                break
            if not born:
                break
            self._add_layer(born)
            self.log.info(
                f"Layer {layer} of the {self.n}-universal {self.variety.value} model: "
                f"{len(born)} elements, {len(self.elements)} in total"
            )
            layer += 1
        model = Model(SPoset(self.poset, self.s), self.n, self.coloring)
        return LayeredModel(model, self.elements, self.variety, truncation)


def build_universal_model(
    n: int,
    variety: Variety,
    max_layer: Optional[int] = DEFAULT_MAX_LAYER,
    max_elements: Optional[int] = DEFAULT_MAX_ELEMENTS,
) -> LayeredModel:
    return UniversalModelBuilder(n, variety, max_layer, max_elements).build()


@dataclass(frozen=True)
class LayerStatistics:
    """Counts by color size ``d``: all elements, r-elements, and s-elements whose color equals
    (``s_equal``) or is strictly below (``s_less``) the color of their cover."""

    layer_sizes: List[int]
    x: Dict[int, int]
    r: Dict[int, int]
    s_equal: Dict[int, int]
    s_less: Dict[int, int]

    def s(self, d: int) -> int:
        return self.s_equal.get(d, 0) + self.s_less.get(d, 0)

    def at_least(self, d: int) -> int:
        return sum(count for size, count in self.x.items() if size >= d)


def layer_statistics(layered: LayeredModel) -> LayerStatistics:
    full = layered.model.full_color
    x, r, s_equal, s_less = {}, {}, {}, {}
    for element in layered.elements:
        d = popcount(element.color)
        x[d] = x.get(d, 0) + 1
        if element.kind == "r":
            r[d] = r.get(d, 0) + 1
        elif element.rule == 3 or (element.rule == 0 and element.color == full):
            s_equal[d] = s_equal.get(d, 0) + 1
        else:
            s_less[d] = s_less.get(d, 0) + 1
    return LayerStatistics(layered.layer_sizes(), x, r, s_equal, s_less)


def full_color_elements(layered: LayeredModel) -> List[int]:
    full = layered.model.full_color
    return [x for x, e in enumerate(layered.elements) if e.color == full]


def embed_irreducible(model: Model, layered: LayeredModel) -> Tuple[int, ...]:
    """The unique embedding of an irreducible model onto an upset of the universal model."""
    variety = layered.variety
    if model.n != layered.n:
        raise ModelError(f"Model has {model.n} variables, universal model has {layered.n}")
    failure = irreducibility_failure(model, variety)
    if failure is not None:
        raise NotIrreducibleError(variety.value, failure)
    poset = model.poset
    if layered.is_truncated and poset.height() > layered.truncation.completed_layers:
        raise TruncatedModelError(
            f"Model has height {poset.height()} but only "
            f"{layered.truncation.completed_layers} layers were built"
        )
    image: List[Optional[int]] = [None] * poset.size
    for y in sorted(range(poset.size), key=poset.height_of):
        kind = "s" if variety.nuclear and model.sposet.in_s(y) else "r"
        cover = frozenset(image[z] for z in iter_bits(poset.cover_up_mask(y)))
        target = layered.index_of(kind, cover, model.coloring[y])
        if target is None:
            raise ModelError(f"{poset.label(y)} has no counterpart in the universal model")
        image[y] = target
    return tuple(image)


def verify_embedding(model: Model, layered: LayeredModel, image: Sequence[int]) -> bool:
    source, target = model.poset, layered.poset
    if len(set(image)) != source.size:
        return False
    if not target.is_upset_mask(bits_of(image)):
        return False
    for x in range(source.size):
        if layered.model.coloring[image[x]] != model.coloring[x]:
            return False
        if layered.variety.nuclear and layered.model.sposet.in_s(image[x]) != model.sposet.in_s(x):
            return False
        for y in range(source.size):
            if source.leq(x, y) != target.leq(image[x], image[y]):
                return False
    return True


def witness_chain(layered: LayeredModel) -> List[int]:
    """The chain ``r_{∅,{1..n-1}} > r_{{x_1},{1..n-2}} > ...`` of length ``n``."""
    chain: List[int] = []
    cover: FrozenSet[int] = frozenset()
    for k in range(1, layered.n + 1):
        found = layered.index_of("r", cover, color_mask(range(1, layered.n - k + 1)))
        if found is None:
            raise ModelError(f"Witness chain breaks off after {len(chain)} elements")
        chain.append(found)
        cover = frozenset([found])
    return chain


def model_height_bound(layered: LayeredModel) -> int:
    """Exact height of a complete model, or the lower bound known for a truncated one."""
    if layered.truncation is not None:
        return layered.truncation.height_lower_bound
    return layered.poset.height()

