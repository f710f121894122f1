import pytest

from umod.algebra import FiniteAlgebra, Homomorphism, meet_primes
from umod.enumeration import sposets_up_to
from umod.errors import AmbientMismatchError, HomomorphismError, MorphismError
from umod.morphisms import (
    KohlerMorphism,
    SMorphism,
    compose,
    condition_star,
    decompose_kohler,
    dual_hom_of_morphism,
    dual_morphism_of_hom,
    identity,
    is_cofinal_domain,
    is_pmorphism,
    pmorphism_to_kohler,
    pullback_mask,
    quotient_by_upset,
    s_identity,
)
from umod.poset import Poset
from umod.upsets import SPoset, upset_masks
from umod.util import bits_of, popcount

from .conftest import R, S, S_R


@pytest.fixture
def point() -> Poset:
    return Poset.chain(1)


@pytest.fixture
def two_chain() -> Poset:
    return Poset.chain(2)


@pytest.fixture
def fork_tail(fork: Poset) -> KohlerMorphism:
    """The partial identity of the fork that leaves out its least point."""
    return KohlerMorphism(fork, fork, [None, 1, 2, 3])


class TestKohlerMorphism:
    def test_top_only(self, two_chain, point):
        f = KohlerMorphism(two_chain, point, [None, 0])
        assert f(1) == 0
        assert f.domain == 0b10
        assert f.is_onto and not f.is_total
        with pytest.raises(MorphismError):
            f(0)

    def test_back_condition(self, two_chain):
        with pytest.raises(MorphismError):
            KohlerMorphism(two_chain, two_chain, [0, None])

    def test_strictness(self, two_chain):
        with pytest.raises(MorphismError):
            KohlerMorphism(two_chain, two_chain, [1, 1])

    def test_length(self, two_chain, point):
        with pytest.raises(MorphismError):
            KohlerMorphism(two_chain, point, [0])

    def test_from_dict(self, fork, fork_tail):
        assert KohlerMorphism.from_dict(fork, fork, {1: 1, 2: 2, 3: 3}) == fork_tail
        assert fork_tail.image_of(fork.carrier_mask) == 0b1110
        assert fork_tail.preimage_of(0b0011) == 0b0010

    def test_compose_with_identity(self, fork, fork_tail):
        assert compose(identity(fork), fork_tail) == fork_tail
        assert compose(fork_tail, fork_tail) == fork_tail

    def test_compose_mismatch(self, fork_tail, two_chain):
        with pytest.raises(AmbientMismatchError):
            compose(identity(two_chain), fork_tail)


class TestPullback:
    def test_values(self, two_chain, point):
        f = KohlerMorphism(two_chain, point, [None, 0])
        assert pullback_mask(f, 0) == 0
        assert pullback_mask(f, 1) == 0b11

    def test_lower_point_does_not_preserve_bottom(self, two_chain, point):
        f = KohlerMorphism(two_chain, point, [0, None])
        assert pullback_mask(f, 0) == 0b10
        assert not is_cofinal_domain(f)
        assert not dual_hom_of_morphism(f, bounded=True).bounded

    def test_cofinal_preserves_bottom(self, two_chain, point):
        f = KohlerMorphism(two_chain, point, [None, 0])
        assert is_cofinal_domain(f)
        h = dual_hom_of_morphism(f, bounded=True)
        assert h.bounded
        assert h.mapping == (0, 2)

    def test_condition_star_on_identity(self, fork_sposet):
        f = identity(fork_sposet.poset)
        s = fork_sposet.s
        assert all(condition_star(f, s, s, x) for x in range(fork_sposet.size))


class TestSMorphism:
    def test_preimage_of_t(self, two_chain, point):
        source = SPoset.of(two_chain, [1])
        target = SPoset.of(point, [0])
        f = SMorphism.from_dict(source, target, {1: 0})
        assert f(1) == 0
        with pytest.raises(MorphismError):
            SMorphism.from_dict(SPoset(two_chain), target, {1: 0})

    def test_mismatched_posets(self, fork_sposet, two_chain_sposet):
        with pytest.raises(AmbientMismatchError):
            SMorphism(two_chain_sposet, fork_sposet, identity(fork_sposet.poset))

    def test_dual_is_nuclear(self, two_chain, point):
        f = SMorphism.from_dict(SPoset.of(two_chain, [1]), SPoset.of(point, [0]), {1: 0})
        assert dual_hom_of_morphism(f).nuclear

    def test_lift_condition(self, fork, fork_tail):
        with pytest.raises(MorphismError):
            SMorphism(SPoset.of(fork, [0, 1]), SPoset.of(fork, [1]), fork_tail)
        tail = SMorphism(SPoset.of(fork, [1]), SPoset.of(fork, [1]), fork_tail)
        assert tail.domain == 0b1110

    def test_composites_stay_s_morphisms(self, fork_sposet):
        twice = compose(s_identity(fork_sposet), s_identity(fork_sposet))
        assert isinstance(twice, SMorphism)
        assert twice.mapping == (0, 1, 2, 3)


class TestDecomposition:
    def test_recompose(self, fork_tail):
        parts = decompose_kohler(fork_tail)
        assert parts.recompose() == fork_tail
        assert parts.first.domain == fork_tail.domain
        assert parts.second.is_total and parts.second.is_onto
        assert parts.third.is_injective and parts.third.is_total
        with pytest.raises(MorphismError):
            parts.s_morphism_flags()

    def test_factors_of_s_morphism(self, fork, fork_tail):
        tail = SMorphism(SPoset.of(fork, [1]), SPoset.of(fork, [1]), fork_tail)
        parts = decompose_kohler(tail)
        assert parts.s_morphism_flags() == (True, True, True)
        _, domain, image, _ = parts.layouts
        assert domain.size == image.size == 3
        assert popcount(domain.s) == 1

    def test_domain_factor_can_fail_on_s(self, fork_sposet, two_chain_sposet):
        f = SMorphism.from_dict(fork_sposet, two_chain_sposet, {1: 0, 2: 1, 3: 1})
        parts = decompose_kohler(f)
        assert parts.s_morphism_flags() == (False, True, True)
        assert parts.recompose() == f.morphism


class TestDuality:
    def test_identity_round_trip(self, fork_sposet):
        algebra = FiniteAlgebra.from_upsets(fork_sposet)
        dual = dual_morphism_of_hom(Homomorphism.identity(algebra))
        assert dual.morphism.is_total and dual.morphism.is_injective
        assert dual.morphism.is_onto

    def test_non_nuclear_hom_has_no_dual(self, fork_sposet):
        algebra = FiniteAlgebra.from_upsets(fork_sposet, nuclear=False)
        with pytest.raises(HomomorphismError):
            dual_morphism_of_hom(Homomorphism.identity(algebra))

    def test_quotient_by_upset(self, nis1):
        sposet = nis1.model.sposet
        h, inclusion = quotient_by_upset(sposet, bits_of([R, S]))
        assert h.source.size == 8
        assert h.target.size == 4
        assert h.is_surjective and h.nuclear
        assert inclusion.morphism.is_total and inclusion.morphism.is_injective
        dual = dual_morphism_of_hom(h)
        assert popcount(dual.domain) == 2

    def test_quotient_by_every_upset(self):
        for sposet in sposets_up_to(3):
            for upset in upset_masks(sposet.poset):
                h, inclusion = quotient_by_upset(sposet, upset)
                assert h.is_surjective and h.nuclear
                assert inclusion.morphism.image_of(inclusion.morphism.domain) == upset
                assert meet_primes(h.target).sposet.is_isomorphic(inclusion.source)
                dual = dual_morphism_of_hom(h)
                assert dual.morphism.is_total and dual.morphism.is_injective
                assert popcount(dual.morphism.image_of(dual.domain)) == popcount(upset)

    def test_quotient_needs_upset(self, nis1):
        with pytest.raises(MorphismError):
            quotient_by_upset(nis1.model.sposet, bits_of([S_R]))


class TestPMorphism:
    def test_collapse_chain(self, two_chain, point):
        assert is_pmorphism(two_chain, point, [0, 0])
        assert pmorphism_to_kohler(two_chain, point, [0, 0]).mapping == (None, 0)

    def test_not_a_pmorphism(self, two_chain):
        assert not is_pmorphism(Poset.discrete(2), two_chain, [0, 0])
        with pytest.raises(MorphismError):
            pmorphism_to_kohler(Poset.discrete(2), two_chain, [0, 0])
