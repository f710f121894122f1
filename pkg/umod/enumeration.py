"""Exhaustive corpora of small structures, in a deterministic order."""
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple
import itertools

import networkx as nx

from .algebra import FiniteAlgebra, Homomorphism, meet_prime_components, meet_primes
from .coloring import Model, model_from_upsets
from .errors import HomomorphismError
from .morphisms import KohlerMorphism, SMorphism, satisfies_s_conditions
from .poset import Poset
from .upsets import SPoset, upset_masks


def _fingerprint(poset: Poset) -> str:
    return nx.weisfeiler_lehman_graph_hash(poset.to_graph())


@lru_cache(maxsize=None)
def posets_of_size(size: int) -> Tuple[Poset, ...]:
    """Every poset with ``size`` elements, one per isomorphism class.

    Each poset of size ``k`` comes from one of size ``k - 1`` by adding a minimal element
    under some antichain.
    """
    if size == 0:
        return (Poset.empty(),)
    buckets: Dict[str, List[Poset]] = {}
    found = []
    for smaller in posets_of_size(size - 1):
        for antichain in smaller.antichain_masks():
            candidate = smaller.extend_below([antichain])
            bucket = buckets.setdefault(_fingerprint(candidate), [])
            if any(candidate.is_isomorphic(other) for other in bucket):
                continue
            bucket.append(candidate)
            found.append(candidate)
    return tuple(found)


def posets_up_to(size: int) -> Iterator[Poset]:
    for k in range(size + 1):
        yield from posets_of_size(k)


def s_subsets(poset: Poset) -> Iterator[SPoset]:
    for s in range(1 << poset.size):
        yield SPoset(poset, s)


def sposets_up_to(size: int) -> Iterator[SPoset]:
    for poset in posets_up_to(size):
        yield from s_subsets(poset)


def monotone_colorings(sposet: SPoset, n: int) -> Iterator[Model]:
    """Every model on ``sposet`` with ``n`` variables, one per tuple of generator upsets."""
    upsets = upset_masks(sposet.poset, limit=None)
    for choice in itertools.product(upsets, repeat=n):
        yield model_from_upsets(sposet, list(choice))


def kohler_morphisms(source: Poset, target: Poset) -> Iterator[KohlerMorphism]:
    """Every Köhler morphism, over all domains and assignments."""
    options = [None] + list(range(target.size))
    for mapping in itertools.product(options, repeat=source.size):
        candidate = KohlerMorphism(source, target, mapping, validate=False)
        if candidate.violation() is None:
            yield candidate


def s_morphisms(source: SPoset, target: SPoset) -> Iterator[SMorphism]:
    for morphism in kohler_morphisms(source.poset, target.poset):
        if satisfies_s_conditions(morphism, source.s, target.s):
            yield SMorphism(source, target, morphism)


def homomorphisms(source: FiniteAlgebra, target: FiniteAlgebra) -> Iterator[Homomorphism]:
    """Every homomorphism of implicative semilattices from ``source`` to ``target``.

    Each element is the meet of its meet-prime components, so the images of the meet-primes
    decide the map.
    """
    primes = meet_primes(source).elements
    components = [meet_prime_components(source, a) for a in range(source.size)]
    for images in itertools.product(range(target.size), repeat=len(primes)):
        image_of = dict(zip(primes, images))
        mapping = [target.meet_all(image_of[m] for m in components[a]) for a in range(source.size)]
        try:
            yield Homomorphism(source, target, mapping)
        except HomomorphismError:
            continue
