import pytest

from umod.algebra import (
    FiniteAlgebra,
    Homomorphism,
    algebras_isomorphic,
    alpha,
    distributivity_witness,
    epsilon,
    induced_nucleus,
    is_meet_prime,
    is_subalgebra,
    meet_prime_components,
    meet_primes,
    nucleus_constructors,
    restriction_nucleus,
    subalgebra_closure,
)
from umod.enumeration import sposets_up_to
from umod.errors import AlgebraError, HomomorphismError, NotASubalgebraError
from umod.poset import Poset
from umod.signature import NUCLEAR
from umod.upsets import SPoset, upset_masks

# The three-element chain 0 < 1 < 2 as an implicative semilattice.
CHAIN_MEET = [[0, 0, 0], [0, 1, 1], [0, 1, 2]]
CHAIN_IMP = [[2, 2, 2], [0, 2, 2], [0, 1, 2]]


@pytest.fixture
def chain_algebra() -> FiniteAlgebra:
    return FiniteAlgebra(CHAIN_MEET, CHAIN_IMP, 2, bottom=0)


class TestTables:
    def test_order_from_meet(self, chain_algebra):
        assert chain_algebra.le(0, 2)
        assert not chain_algebra.le(2, 1)
        assert chain_algebra.least() == 0
        assert chain_algebra.join(0, 1) == 1

    def test_bad_residuation(self):
        imp = [row[:] for row in CHAIN_IMP]
        imp[1][0] = 1
        with pytest.raises(AlgebraError):
            FiniteAlgebra(CHAIN_MEET, imp, 2)

    def test_bad_top(self):
        with pytest.raises(AlgebraError):
            FiniteAlgebra(CHAIN_MEET, CHAIN_IMP, 1)

    def test_bad_nucleus(self):
        with pytest.raises(AlgebraError):
            FiniteAlgebra(CHAIN_MEET, CHAIN_IMP, 2, nucleus=[0, 0, 2])

    @pytest.mark.parametrize("nucleus", [[2, 2], [2, 2, 2, 2], [2, 2, 3], [-1, 2, 2]])
    def test_nucleus_table_shape(self, nucleus):
        with pytest.raises(AlgebraError):
            FiniteAlgebra(CHAIN_MEET, CHAIN_IMP, 2, nucleus=nucleus, verify=False)

    @pytest.mark.parametrize("top, bottom", [(3, None), (2, 3), (2, -1)])
    def test_constants_in_range(self, top, bottom):
        with pytest.raises(AlgebraError):
            FiniteAlgebra(CHAIN_MEET, CHAIN_IMP, top, bottom=bottom, verify=False)

    def test_constant_top_nucleus(self):
        algebra = FiniteAlgebra(CHAIN_MEET, CHAIN_IMP, 2, nucleus=[2, 2, 2])
        assert algebra.fixpoints() == {2}
        assert algebra.signature == NUCLEAR

    def test_negation_needs_bottom(self):
        with pytest.raises(AlgebraError):
            FiniteAlgebra(CHAIN_MEET, CHAIN_IMP, 2).negation(1)

    def test_from_upsets_validates(self, fork_sposet):
        algebra = FiniteAlgebra.from_upsets(fork_sposet, bounded=True, verify=True)
        assert algebra.size == len(upset_masks(fork_sposet.poset))
        assert algebra.upsets[algebra.top] == fork_sposet.poset.carrier_mask
        assert algebra.upsets[algebra.bottom] == 0

    def test_free_one_generated_hasse(self, nis1):
        algebra = FiniteAlgebra.from_upsets(nis1.model.sposet)
        assert algebra.size == 8
        assert len(algebra.hasse_covers()) == 10


class TestMeetPrimes:
    def test_chain(self, chain_algebra):
        assert [m for m in range(3) if is_meet_prime(chain_algebra, m)] == [0, 1]
        assert meet_prime_components(chain_algebra, 0) == {0}
        assert meet_prime_components(chain_algebra, 1) == {1}
        assert meet_prime_components(chain_algebra, 2) == frozenset()

    def test_dual_of_upsets_is_the_poset(self, fork_sposet):
        algebra = FiniteAlgebra.from_upsets(fork_sposet)
        dual = meet_primes(algebra)
        assert dual.sposet.is_isomorphic(fork_sposet)

    def test_epsilon_hits_meet_primes(self, fork):
        algebra = FiniteAlgebra.from_upsets(SPoset(fork))
        primes = {algebra.upsets[m] for m in meet_primes(algebra).elements}
        assert {epsilon(fork, x) for x in range(fork.size)} == primes

    def test_alpha_is_an_isomorphism(self, fork_sposet):
        algebra = FiniteAlgebra.from_upsets(fork_sposet)
        dual = meet_primes(algebra)
        values = [alpha(algebra, dual, a) for a in range(algebra.size)]
        assert sorted(values) == sorted(upset_masks(dual.sposet.poset))
        for a in range(algebra.size):
            for b in range(algebra.size):
                assert values[algebra.meet(a, b)] == values[a] & values[b]

    def test_isomorphic_algebras(self, fork_sposet):
        left = FiniteAlgebra.from_upsets(fork_sposet)
        right = FiniteAlgebra.from_upsets(SPoset.of(Poset(4, {(0, 3), (0, 1), (1, 2)}), [0, 1]))
        assert algebras_isomorphic(left, right)


class TestSubalgebras:
    def test_closure(self, chain_algebra):
        assert subalgebra_closure(chain_algebra, [1]) == {1, 2}
        assert is_subalgebra(chain_algebra, [1, 2])
        assert not is_subalgebra(chain_algebra, [0, 1])

    def test_induced_nucleus_fixes_subalgebra(self, fork_sposet):
        algebra = FiniteAlgebra.from_upsets(fork_sposet, nuclear=False)
        sub = subalgebra_closure(algebra, [1])
        k = induced_nucleus(algebra, sub)
        assert algebra.is_nucleus(k)
        assert sub <= {a for a in range(algebra.size) if k[a] == a}

    def test_induced_nucleus_needs_subalgebra(self, chain_algebra):
        with pytest.raises(NotASubalgebraError):
            induced_nucleus(chain_algebra, [0, 1])

    def test_restriction_nucleus(self, nis1):
        algebra = FiniteAlgebra.from_upsets(nis1.model.sposet)
        sub = subalgebra_closure(algebra, [0], NUCLEAR)
        assert len(sub) == 8
        restricted = restriction_nucleus(algebra, sub)
        assert all(restricted[b] == algebra.j(b) for b in sub)

    def test_nucleus_constructors(self, fork_sposet):
        algebra = FiniteAlgebra.from_upsets(fork_sposet)
        for a in range(algebra.size):
            for table in nucleus_constructors(algebra, a):
                assert algebra.is_nucleus(table)

    def test_distributivity_witness(self, fork_sposet):
        algebra = FiniteAlgebra.from_upsets(fork_sposet)
        for a in range(algebra.size):
            for b in range(algebra.size):
                z = algebra.meet(a, b)
                x, y = distributivity_witness(algebra, a, b, z)
                assert algebra.le(a, x) and algebra.le(b, y)
                assert algebra.meet(x, y) == z


class TestHomomorphism:
    def test_identity(self, chain_algebra):
        h = Homomorphism.identity(chain_algebra)
        assert h.is_injective and h.is_surjective
        assert h.bounded

    def test_collapse_to_top_is_not_a_homomorphism(self, chain_algebra):
        two = FiniteAlgebra([[0, 0], [0, 1]], [[1, 1], [0, 1]], 1, bottom=0)
        with pytest.raises(HomomorphismError):
            Homomorphism(chain_algebra, two, [0, 0, 1])
        h = Homomorphism(chain_algebra, two, [0, 1, 1])
        assert h.image() == {0, 1}
        assert h.then(Homomorphism.identity(two)).mapping == h.mapping


class TestSmallAlgebras:
    @pytest.fixture(scope="class")
    def algebras(self):
        return [FiniteAlgebra.from_upsets(sposet) for sposet in sposets_up_to(3)]

    def test_elements_are_meets_of_components(self, algebras):
        for algebra in algebras:
            for a in range(algebra.size):
                components = meet_prime_components(algebra, a)
                assert all(is_meet_prime(algebra, m) and algebra.le(a, m) for m in components)
                assert algebra.meet_all(components) == a

    def test_restriction_nucleus_on_generated_subalgebras(self, algebras):
        for algebra in algebras:
            for a in range(algebra.size):
                sub = subalgebra_closure(algebra, [a])
                k = restriction_nucleus(algebra, sub)
                for b in sub:
                    assert k[b] in sub and algebra.le(b, k[b]) and k[k[b]] == k[b]
                    for c in sub:
                        assert k[algebra.meet(b, c)] == algebra.meet(k[b], k[c])
                if is_subalgebra(algebra, sub, NUCLEAR):
                    assert all(k[b] == algebra.j(b) for b in sub)
