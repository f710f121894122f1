import pytest

from umod.coloring import Variety
from umod.poset import Poset
from umod.universal import LayeredModel, build_universal_model
from umod.upsets import SPoset

# Indices of the 1-universal nis model: two maximal points r and s, then s_{r} below r and
# s_{r,s} below both.
R, S, S_R, S_RS = 0, 1, 2, 3


@pytest.fixture(scope="session")
def nis1() -> LayeredModel:
    return build_universal_model(1, Variety.NIS)


@pytest.fixture(scope="session")
def nis_bot0() -> LayeredModel:
    return build_universal_model(0, Variety.NIS_BOT)


@pytest.fixture(scope="session")
def is2() -> LayeredModel:
    return build_universal_model(2, Variety.IS)


@pytest.fixture
def chain3() -> Poset:
    return Poset.chain(3)


@pytest.fixture
def antichain2() -> Poset:
    return Poset.discrete(2)


@pytest.fixture
def fork() -> Poset:
    """0 below 1 and 2, 1 below 3; the source of the failing decomposition example."""
    return Poset(4, {(0, 2), (0, 1), (1, 3)})


@pytest.fixture
def fork_sposet(fork: Poset) -> SPoset:
    return SPoset.of(fork, [0, 1])


@pytest.fixture
def two_chain_sposet() -> SPoset:
    return SPoset.of(Poset.chain(2), [0])
