from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple, Union
import itertools
import logging

from attr import dataclass

from .algebra import FiniteAlgebra
from .coloring import Model, Variety, generator_masks, model_from_upsets
from .enumeration import posets_of_size, s_subsets
from .errors import TermError, TruncatedModelError, UnboundVariableError
from .terms import Bot, Imp, J, Meet, Term, Top, Var, parse_term
from .universal import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_LAYER,
    LayeredModel,
    build_universal_model,
)
from .upsets import DEFAULT_UPSET_LIMIT, SPoset, UpsetAlgebra, upset_masks
from .util import bits_of, iter_bits

log: logging.Logger = logging.getLogger("umod.decision")

Algebra = Union[FiniteAlgebra, UpsetAlgebra]
ModelLoader = Callable[[int, Variety], LayeredModel]


def _check_signature(term: Term, nuclear: bool, bounded: bool) -> None:
    if term.uses_nucleus and not nuclear:
        raise TermError(f"{term} uses j, which the algebra does not have")
    if term.uses_bottom and not bounded:
        raise TermError(f"{term} uses 0, which the algebra does not have")


def evaluate(term: Term, algebra: Algebra, assignment: Mapping[int, int]) -> int:
    """Value of ``term`` in ``algebra`` with variable ``i`` sent to ``assignment[i]``."""
    _check_signature(term, algebra.nuclear, algebra.bounded)
    memo: Dict[Term, int] = {}

    def value(t: Term) -> int:
        if t in memo:
            return memo[t]
        if isinstance(t, Var):
            if t.index not in assignment:
                raise UnboundVariableError(t.index)
            result = assignment[t.index]
        elif isinstance(t, Top):
            result = algebra.top
        elif isinstance(t, Bot):
            result = algebra.bottom
        elif isinstance(t, J):
            result = algebra.j(value(t.body))
        elif isinstance(t, Meet):
            result = algebra.meet(value(t.left), value(t.right))
        elif isinstance(t, Imp):
            result = algebra.imp(value(t.left), value(t.right))
        else:
            raise TermError(f"Unknown term node {t!r}")
        memo[t] = result
        return result

    return value(term)


@dataclass(frozen=True, eq=False)
class FreeAlgebra:
    """``Up`` of a universal model, with the generator upsets as distinguished elements."""

    variety: Variety
    layered: LayeredModel
    algebra: FiniteAlgebra
    generators: Tuple[int, ...]

    @property
    def n(self) -> int:
        return self.layered.n

    @property
    def size(self) -> int:
        return self.algebra.size

    def generator_assignment(self) -> Dict[int, int]:
        return {i + 1: g for i, g in enumerate(self.generators)}

    def evaluate(self, term: Term) -> int:
        return evaluate(term, self.algebra, self.generator_assignment())


def _load(
    n: int,
    variety: Variety,
    loader: Optional[ModelLoader],
    max_layer: Optional[int],
    max_elements: Optional[int],
) -> LayeredModel:
    if loader is not None:
        layered = loader(n, variety)
    else:
        layered = build_universal_model(n, variety, max_layer, max_elements)
    if layered.is_truncated:
        report = layered.truncation
        raise TruncatedModelError(
            f"The {n}-universal {variety.value} model was cut off at {report.reason} after "
            f"{report.completed_layers} layers ({report.elements} elements)"
        )
    return layered


def free_algebra(
    n: int,
    variety: Variety,
    max_layer: Optional[int] = DEFAULT_MAX_LAYER,
    max_elements: Optional[int] = DEFAULT_MAX_ELEMENTS,
    limit: Optional[int] = DEFAULT_UPSET_LIMIT,
    loader: Optional[ModelLoader] = None,
) -> FreeAlgebra:
    layered = _load(n, variety, loader, max_layer, max_elements)
    algebra = FiniteAlgebra.from_upsets(
        layered.model.sposet, variety.nuclear, variety.bounded, limit
    )
    position = {mask: i for i, mask in enumerate(algebra.upsets)}
    generators = tuple(position[mask] for mask in generator_masks(layered.model))
    return FreeAlgebra(variety, layered, algebra, generators)


def free_algebra_size(
    n: int,
    variety: Variety,
    max_layer: Optional[int] = DEFAULT_MAX_LAYER,
    max_elements: Optional[int] = DEFAULT_MAX_ELEMENTS,
    limit: Optional[int] = DEFAULT_UPSET_LIMIT,
    loader: Optional[ModelLoader] = None,
) -> int:
    layered = _load(n, variety, loader, max_layer, max_elements)
    return len(upset_masks(layered.poset, limit))


@dataclass(frozen=True)
class Countermodel:
    """A rooted S-poset with an assignment of upsets under which the term is not top.

    ``variables[i]`` is the original number of the variable colored by bit ``i``.
    """

    model: Model
    variables: Tuple[int, ...]
    value: int

    def assignment(self) -> Dict[int, int]:
        masks = generator_masks(self.model)
        return {variable: masks[i] for i, variable in enumerate(self.variables)}

    def reevaluate(self, term: Term, variety: Variety) -> int:
        view = UpsetAlgebra(self.model.sposet, variety.nuclear, variety.bounded)
        return evaluate(term, view, self.assignment())


@dataclass(frozen=True)
class Verdict:
    """``valid`` is ``None`` when the search could not settle the question."""

    term: Term
    variety: Variety
    valid: Optional[bool]
    method: str
    countermodel: Optional[Countermodel] = None


def _cut_down(
    sposet: SPoset, masks: List[int], value: int, variables: Tuple[int, ...]
) -> Countermodel:
    """Restrict a refuting assignment to ``↑x`` for the first maximal point outside ``value``."""
    poset = sposet.poset
    root = min(iter_bits(poset.max_of(poset.carrier_mask & ~value)))
    sub, index = poset.induced(iter_bits(poset.up_mask(root)))
    sub_sposet = SPoset(sub, bits_of(index[x] for x in iter_bits(poset.up_mask(root) & sposet.s)))
    restricted = [bits_of(index[x] for x in iter_bits(mask) if x in index) for mask in masks]
    model = model_from_upsets(sub_sposet, restricted)
    sub_value = bits_of(index[x] for x in iter_bits(value) if x in index)
    return Countermodel(model, variables, sub_value)


def _normalize(term: Term) -> Tuple[Term, Tuple[int, ...]]:
    variables = tuple(sorted(term.variables()))
    renaming = {old: new for new, old in enumerate(variables, start=1)}
    return term.rename(renaming), variables


def decide(
    term: Term,
    variety: Variety,
    max_layer: Optional[int] = DEFAULT_MAX_LAYER,
    max_elements: Optional[int] = DEFAULT_MAX_ELEMENTS,
    loader: Optional[ModelLoader] = None,
) -> Verdict:
    """Whether ``term = 1`` holds in the variety, by evaluation on the free algebra.

    The free algebra is never materialized: the generators are evaluated as upsets of the
    universal model.
    """
    _check_signature(term, variety.nuclear, variety.bounded)
    renamed, variables = _normalize(term)
    layered = _load(len(variables), variety, loader, max_layer, max_elements)
    view = UpsetAlgebra(layered.model.sposet, variety.nuclear, variety.bounded)
    masks = generator_masks(layered.model)
    value = evaluate(renamed, view, {i + 1: mask for i, mask in enumerate(masks)})
    if value == view.top:
        return Verdict(term, variety, True, "decide")
    countermodel = _cut_down(layered.model.sposet, masks, value, variables)
    return Verdict(term, variety, False, "decide", countermodel)


def candidate_sposets(size: int, variety: Variety) -> Iterator[SPoset]:
    """S-posets of ``size`` elements admissible for ``variety``, posets up to isomorphism."""
    for poset in posets_of_size(size):
        if not variety.nuclear:
            yield SPoset(poset)
            continue
        for sposet in s_subsets(poset):
            if variety == Variety.DENSE and not sposet.is_dense:
                continue
            if variety == Variety.LOCALLY_DENSE and not sposet.is_locally_dense:
                continue
            yield sposet


def refute(term: Term, variety: Variety, max_size: int = 4) -> Verdict:
    """Search every admissible S-poset up to ``max_size`` points for a countermodel."""
    _check_signature(term, variety.nuclear, variety.bounded)
    variables = tuple(sorted(term.variables()))
    for size in range(1, max_size + 1):
        checked = 0
        for sposet in candidate_sposets(size, variety):
            view = UpsetAlgebra(sposet, variety.nuclear, variety.bounded)
            upsets = view.elements(limit=None)
            for masks in itertools.product(upsets, repeat=len(variables)):
                checked += 1
                value = evaluate(term, view, dict(zip(variables, masks)))
                if value != view.top:
                    log.debug(f"Found a countermodel of size {size} after {checked} assignments")
                    countermodel = _cut_down(sposet, list(masks), value, variables)
                    return Verdict(term, variety, False, "refute", countermodel)
        log.debug(f"No countermodel among {checked} assignments on {size}-element S-posets")
    return Verdict(term, variety, None, "refute")


def tautology_battery(variety: Variety) -> List[Tuple[str, Term]]:
    """Equations, written as terms that must equal 1, valid throughout ``variety``."""
    schemas = [
        "x1 -> x1",
        "x1 -> x2 -> x1",
        "(x1 -> x2 -> x3) -> (x1 -> x2) -> x1 -> x3",
        "x1 & x2 -> x1",
        "x1 & x2 -> x2",
        "x1 -> x2 -> x1 & x2",
        "x1 & (x1 -> x2) -> x2",
    ]
    if variety.nuclear:
        schemas += [
            "x1 -> j(x1)",
            "j(j(x1)) -> j(x1)",
            "j(x1 & x2) -> j(x1) & j(x2)",
            "j(x1) & j(x2) -> j(x1 & x2)",
            "j(x1 -> x2) -> j(x1) -> j(x2)",
        ]
    if variety.bounded:
        schemas.append("0 -> x1")
    if variety == Variety.DENSE:
        schemas.append("j(0) -> 0")
    if variety == Variety.LOCALLY_DENSE:
        schemas.append("j(~j(0))")
    return [(text, parse_term(text, variety.bounded)) for text in schemas]


def non_theorems(variety: Variety) -> List[Tuple[str, Term]]:
    """Terms that are not valid in ``variety``, each with a finite countermodel."""
    texts = ["x1"]
    if variety.nuclear:
        texts.append("j(x1) -> x1")
    if variety in (Variety.NIS_BOT, Variety.LOCALLY_DENSE):
        texts.append("j(0) -> 0")
    return [(text, parse_term(text, variety.bounded)) for text in texts]
