import pytest

from umod.algebra import FiniteAlgebra
from umod.enumeration import (
    homomorphisms,
    kohler_morphisms,
    monotone_colorings,
    posets_of_size,
    posets_up_to,
    s_morphisms,
    s_subsets,
    sposets_up_to,
)
from umod.poset import Poset
from umod.upsets import SPoset


@pytest.mark.parametrize("size, count", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 16)])
def test_posets_up_to_isomorphism(size, count):
    posets = posets_of_size(size)
    assert len(posets) == count
    for i, left in enumerate(posets):
        assert all(not left.is_isomorphic(right) for right in posets[i + 1 :])


def test_posets_up_to():
    assert len(list(posets_up_to(3))) == 1 + 1 + 2 + 5


def test_sposets_up_to():
    # each poset of size k contributes 2^k subsets
    assert len(list(sposets_up_to(2))) == 1 + 2 + 2 * 4


def test_s_subsets():
    assert [s.s for s in s_subsets(Poset.chain(2))] == [0, 1, 2, 3]


def test_monotone_colorings(two_chain_sposet):
    models = list(monotone_colorings(two_chain_sposet, 1))
    assert [m.coloring for m in models] == [(0, 0), (0, 1), (1, 1)]
    assert len(list(monotone_colorings(two_chain_sposet, 2))) == 9


def test_kohler_morphisms():
    point = Poset.chain(1)
    assert [f.mapping for f in kohler_morphisms(point, point)] == [(None,), (0,)]
    found = [f.mapping for f in kohler_morphisms(Poset.chain(2), point)]
    assert found == [(None, None), (None, 0), (0, None)]


def test_s_morphisms():
    point = Poset.chain(1)
    marked, plain = SPoset.of(point, [0]), SPoset(point)
    assert [f.mapping for f in s_morphisms(marked, marked)] == [(None,), (0,)]
    assert [f.mapping for f in s_morphisms(plain, marked)] == [(None,)]


def test_homomorphisms(fork_sposet, two_chain_sposet):
    source = FiniteAlgebra.from_upsets(two_chain_sposet)
    found = list(homomorphisms(source, source))
    assert any(h.is_injective for h in found)
    assert all(h.mapping[source.top] == source.top for h in found)
    target = FiniteAlgebra.from_upsets(fork_sposet)
    assert len(list(homomorphisms(target, target))) >= 1
