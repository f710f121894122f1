import pytest

from umod.errors import AmbientMismatchError, NotAnUpsetError, UpsetLimitError
from umod.poset import Poset
from umod.upsets import (
    SPoset,
    Upset,
    UpsetAlgebra,
    all_upsets,
    bottom,
    implies,
    meet,
    negate,
    nucleus_js,
    top,
    upset_masks,
)
from umod.util import bits_of

from .conftest import R, S, S_R, S_RS


class TestUpset:
    def test_must_be_upward_closed(self, chain3):
        with pytest.raises(NotAnUpsetError):
            Upset.of(chain3, [0])
        assert Upset.generated_by(chain3, [1]).members == {1, 2}

    def test_lattice_operations(self, antichain2):
        left = Upset.of(antichain2, [0])
        right = Upset.of(antichain2, [1])
        assert (left & right).members == frozenset()
        assert (left | right).members == {0, 1}
        assert left <= top(antichain2)
        assert not left <= right

    def test_mismatched_posets(self, chain3, antichain2):
        with pytest.raises(AmbientMismatchError):
            meet(top(chain3), top(antichain2))

    def test_implication_on_chain(self, chain3):
        u = Upset.of(chain3, [1, 2])
        v = Upset.of(chain3, [2])
        assert implies(u, v).members == {2}
        assert implies(v, u) == top(chain3)
        assert negate(u).members == frozenset()
        assert negate(bottom(chain3)) == top(chain3)

    def test_implication_is_residual(self, fork):
        upsets = all_upsets(fork)
        for a in upsets:
            for b in upsets:
                for c in upsets:
                    assert (a <= implies(b, c)) == (meet(a, b) <= c)


class TestNucleus:
    def test_values(self, nis1):
        sposet = nis1.model.sposet
        poset = sposet.poset
        assert nucleus_js(sposet, bottom(poset)).members == {R}
        assert nucleus_js(sposet, Upset.of(poset, [S])).members == {R, S}
        assert nucleus_js(sposet, top(poset)) == top(poset)

    def test_empty_s_is_constant_top(self, chain3):
        sposet = SPoset(chain3)
        assert nucleus_js(sposet, bottom(chain3)) == top(chain3)

    def test_full_s_is_identity(self, fork):
        sposet = SPoset(fork, fork.carrier_mask)
        for u in all_upsets(fork):
            assert nucleus_js(sposet, u) == u

    def test_nucleus_axioms(self, fork_sposet):
        upsets = all_upsets(fork_sposet.poset)
        for u in upsets:
            ju = nucleus_js(fork_sposet, u)
            assert u <= ju
            assert nucleus_js(fork_sposet, ju) == ju
            for v in upsets:
                assert nucleus_js(fork_sposet, meet(u, v)) == meet(ju, nucleus_js(fork_sposet, v))


class TestEnumeration:
    def test_order(self, antichain2):
        assert upset_masks(antichain2) == [0, 0b01, 0b10, 0b11]

    def test_universal_model(self, nis1):
        found = upset_masks(nis1.poset)
        assert len(found) == 8
        assert bits_of([R, S, S_RS]) in found
        assert bits_of([S_R]) not in found

    def test_limit(self):
        with pytest.raises(UpsetLimitError):
            upset_masks(Poset.discrete(5), limit=4)
        assert len(upset_masks(Poset.discrete(5), limit=None)) == 32


class TestSPoset:
    def test_density(self, chain3):
        assert SPoset.of(chain3, [2]).is_dense
        assert not SPoset.of(chain3, [0]).is_dense
        assert SPoset(chain3).is_locally_dense
        assert not SPoset.of(chain3, [0]).is_locally_dense

    def test_isomorphic(self, antichain2):
        assert SPoset.of(antichain2, [0]).is_isomorphic(SPoset.of(antichain2, [1]))
        assert not SPoset.of(antichain2, [0]).is_isomorphic(SPoset(antichain2))


class TestUpsetAlgebra:
    def test_view_matches_functions(self, fork_sposet):
        view = UpsetAlgebra(fork_sposet)
        poset = fork_sposet.poset
        for a in view.elements():
            assert view.j(a) == nucleus_js(fork_sposet, Upset(poset, a)).mask
            for b in view.elements():
                assert view.imp(a, b) == implies(Upset(poset, a), Upset(poset, b)).mask

    def test_without_nucleus(self, fork_sposet):
        view = UpsetAlgebra(fork_sposet, nuclear=False)
        assert all(view.j(a) == a for a in view.elements())

    def test_generated_subalgebra(self, nis1):
        view = UpsetAlgebra(nis1.model.sposet)
        assert len(view.generated_subalgebra([0])) == 8
        plain = UpsetAlgebra(nis1.model.sposet, nuclear=False)
        assert plain.generated_subalgebra([0]) == {0, nis1.poset.carrier_mask}
