"""Exhaustive checks of the duality and coloring results on every small structure."""
from functools import partial
from typing import Callable, Dict, List, Tuple
import logging

from attr import dataclass
import attr

from .algebra import (
    Dual,
    FiniteAlgebra,
    alpha,
    distributivity_witness,
    epsilon,
    meet_primes,
)
from .coloring import Variety, generation_oracle, is_irreducible
from .enumeration import (
    homomorphisms,
    kohler_morphisms,
    monotone_colorings,
    posets_up_to,
    sposets_up_to,
)
from .morphisms import (
    KohlerMorphism,
    condition_star,
    pullback_mask,
    right_adjoint,
    satisfies_s_conditions,
)
from .partitions import (
    SubalgebraMode,
    brute_force_maximal_subalgebras,
    enumerate_maximal_subalgebras,
    partition_subalgebra,
)
from .poset import Poset
from .upsets import SPoset, nucleus_mask, upset_masks
from .util import bits_of

log: logging.Logger = logging.getLogger("umod.verify")

# S as a bitmask, the nucleus table it induces, and the S-set of the dual
Variant = Tuple[int, List[int], int]


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: List[str] = attr.ib(factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        if len(self.failures) < 20:
            self.failures.append(message)


def representation_suite(max_size: int) -> SuiteResult:
    """``ε_X`` onto the meet-primes of ``Up(X)`` and ``α_A`` onto the upsets of ``X_A``."""
    result = SuiteResult("representation")
    for sposet in sposets_up_to(max_size):
        poset = sposet.poset
        algebra = FiniteAlgebra.from_upsets(sposet)
        dual = meet_primes(algebra)
        position = {algebra.upsets[m]: i for i, m in enumerate(dual.elements)}
        result.checked += 1
        where = f"{poset!r} with S={sorted(sposet.s_set)}"
        image = [position.get(epsilon(poset, x)) for x in range(poset.size)]
        if None in image or len(set(image)) != len(dual.elements):
            result.fail(f"ε is not a bijection onto the meet-primes for {where}")
            continue
        dual_poset = dual.sposet.poset
        for x in range(poset.size):
            if sposet.in_s(x) != dual.sposet.in_s(image[x]):
                result.fail(f"ε does not carry S onto S_j at {x} for {where}")
            for y in range(poset.size):
                if poset.leq(x, y) != dual_poset.leq(image[x], image[y]):
                    result.fail(f"ε does not preserve the order at ({x}, {y}) for {where}")
        alphas = [alpha(algebra, dual, a) for a in range(algebra.size)]
        if sorted(alphas) != sorted(upset_masks(dual_poset, limit=None)):
            result.fail(f"α is not a bijection onto Up(X_A) for {where}")
        for a in range(algebra.size):
            if alphas[algebra.j(a)] != nucleus_mask(dual_poset, dual.sposet.s, alphas[a]):
                result.fail(f"α does not commute with the nuclei at {a} for {where}")
            for b in range(algebra.size):
                for z in range(algebra.size):
                    if not algebra.le(algebra.meet(a, b), z):
                        continue
                    x, y = distributivity_witness(algebra, a, b, z)
                    if not (algebra.le(a, x) and algebra.le(b, y) and algebra.meet(x, y) == z):
                        result.fail(f"No distributivity witness for ({a}, {b}, {z}) in {where}")
    return result


def nuclear_morphism_suite(max_size: int) -> SuiteResult:
    """Commuting with the nuclei, condition (∗) and the S-morphism clauses agree."""
    result = SuiteResult("nuclear-morphisms")
    sposets = list(sposets_up_to(max_size))
    for source in sposets:
        for target in sposets:
            target_upsets = upset_masks(target.poset, limit=None)
            for f in kohler_morphisms(source.poset, target.poset):
                result.checked += 1
                commutes = all(
                    pullback_mask(f, nucleus_mask(target.poset, target.s, v))
                    == nucleus_mask(source.poset, source.s, pullback_mask(f, v))
                    for v in target_upsets
                )
                star = all(
                    condition_star(f, source.s, target.s, x) for x in range(source.size)
                )
                clauses = satisfies_s_conditions(f, source.s, target.s)
                if not commutes == star == clauses:
                    result.fail(
                        f"{f.mapping} from S={sorted(source.s_set)} to S={sorted(target.s_set)}: "
                        f"commutes={commutes}, star={star}, clauses={clauses}"
                    )
    return result


def _nucleus_variants(poset: Poset, algebra: FiniteAlgebra, dual: Dual) -> List[Variant]:
    """For each S, the nucleus table on ``Up(poset)`` and the S-set it fixes on the dual."""
    position = {v: a for a, v in enumerate(algebra.upsets)}
    variants = []
    for s in range(1 << poset.size):
        j = [position[nucleus_mask(poset, s, v)] for v in algebra.upsets]
        fixed = bits_of(i for i, m in enumerate(dual.elements) if j[m] == m)
        variants.append((s, j, fixed))
    return variants


def functor_suite(max_size: int) -> SuiteResult:
    """Right adjoints of homomorphisms: onto/one-to-one duality, the S-morphism clauses for
    exactly the nuclear ones, and functoriality on every composable pair.

    Upsets are listed in an order fixed by the poset, so one algebra per poset carries the
    homomorphisms and each choice of S only changes the nucleus table.
    """
    result = SuiteResult("functor")
    posets = list(posets_up_to(max_size))
    algebras = [FiniteAlgebra.from_upsets(SPoset(poset), nuclear=False) for poset in posets]
    duals = [meet_primes(algebra) for algebra in algebras]
    variants = [_nucleus_variants(*found) for found in zip(posets, algebras, duals)]
    adjoints: Dict[Tuple[int, int], Dict[Tuple[int, ...], KohlerMorphism]] = {}
    for i, source in enumerate(algebras):
        for k, target in enumerate(algebras):
            found = adjoints[i, k] = {}
            for h in homomorphisms(source, target):
                result.checked += 1
                adjoint = found[h.mapping] = right_adjoint(h, duals[i], duals[k])
                if h.is_injective != adjoint.is_onto:
                    result.fail(f"{h.mapping}: one-to-one does not match onto dual")
                if h.is_surjective != (adjoint.is_total and adjoint.is_injective):
                    result.fail(f"{h.mapping}: onto does not match total one-to-one dual")
                after = [tuple(t_table[b] for b in h.mapping) for _, t_table, _ in variants[k]]
                for s, j, s_dual in variants[i]:
                    before = tuple(h.mapping[b] for b in j)
                    pulled = adjoint.preimage_of(s_dual)
                    for (t, _, t_dual), image in zip(variants[k], after):
                        nuclear = before == image
                        clauses = pulled == adjoint.domain & t_dual and satisfies_s_conditions(
                            adjoint, t_dual, s_dual
                        )
                        if nuclear != clauses:
                            result.fail(
                                f"{h.mapping} from S={s:b} to S={t:b}: nuclear is {nuclear} "
                                f"but the dual clauses disagree"
                            )
    for (i, k), first in adjoints.items():
        for m in range(len(algebras)):
            through = adjoints[i, m]
            for h_mapping, h_star in first.items():
                for g_mapping, g_star in adjoints[k, m].items():
                    result.checked += 1
                    together = through.get(tuple(g_mapping[b] for b in h_mapping))
                    separately = tuple(
                        h_star.mapping[z] if z is not None else None for z in g_star.mapping
                    )
                    if together is None or together.mapping != separately:
                        result.fail(f"Duals of {h_mapping} and {g_mapping} do not compose")
    return result


def maximal_subalgebra_suite(max_size: int) -> SuiteResult:
    result = SuiteResult("maximal-subalgebras")
    for sposet in sposets_up_to(max_size):
        for mode in SubalgebraMode:
            result.checked += 1
            listed = {
                partition_subalgebra(p) for p in enumerate_maximal_subalgebras(sposet, mode)
            }
            if listed != brute_force_maximal_subalgebras(sposet, mode):
                result.fail(
                    f"{sposet.poset!r} with S={sorted(sposet.s_set)} in {mode.value} mode"
                )
    return result


def coloring_suite(max_size: int, max_variables: int = 1) -> SuiteResult:
    """The structural irreducibility test against the generation oracle."""
    result = SuiteResult("coloring")
    varieties = (Variety.NIS, Variety.NIS_BOT, Variety.IS, Variety.IS_BOT)
    for sposet in sposets_up_to(max_size):
        for n in range(max_variables + 1):
            for model in monotone_colorings(sposet, n):
                for variety in varieties:
                    result.checked += 1
                    if is_irreducible(model, variety) != generation_oracle(model, variety):
                        colors = [sorted(model.color(x)) for x in range(sposet.size)]
                        result.fail(
                            f"{variety.value}: {sposet.poset!r} S={sorted(sposet.s_set)} "
                            f"colors={colors}"
                        )
    return result


SUITES: Dict[str, Callable[[int], SuiteResult]] = {
    "representation": representation_suite,
    "nuclear-morphisms": nuclear_morphism_suite,
    "functor": functor_suite,
    "maximal-subalgebras": maximal_subalgebra_suite,
    "coloring": coloring_suite,
}


def verify_duality(
    max_size: int, suites: List[str] = None, max_variables: int = 1
) -> List[SuiteResult]:
    results = []
    for name in suites or list(SUITES):
        suite = SUITES[name]
        if name == "coloring":
            suite = partial(coloring_suite, max_variables=max_variables)
        log.info(f"Running the {name} suite up to size {max_size}")
        found = suite(max_size)
        log.info(f"{name}: {found.checked} checks, {len(found.failures)} failures")
        results.append(found)
    return results
