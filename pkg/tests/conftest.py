import random

import pytest
from hypothesis import settings, strategies as st

from ckembed.ordinal import ZERO, Ordinal, make
from ckembed.verify import TrialConfig, random_space

settings.register_profile("ckembed", deadline=None, max_examples=60)
settings.load_profile("ckembed")


def _ordinal_from(pairs):
    pairs = sorted(pairs, key=lambda ec: ec[0], reverse=True)
    return make(pairs) if pairs else ZERO


@st.composite
def ordinals(draw, depth=2):
    """CNF ordinals with exponents drawn recursively up to ``depth``."""
    if depth == 0:
        return Ordinal.nat(draw(st.integers(0, 6)))
    n = draw(st.integers(0, 3))
    exps = draw(st.lists(ordinals(depth - 1), min_size=n, max_size=n, unique=True))
    coeffs = draw(st.lists(st.integers(1, 4), min_size=n, max_size=n))
    return _ordinal_from(list(zip(exps, coeffs)))


small_ordinals = ordinals(1)


@st.composite
def spaces(draw, depth=3):
    seed = draw(st.integers(0, 10 ** 6))
    cfg = TrialConfig(seed=seed, max_depth=depth, allow_unit=draw(st.booleans()))
    return random_space(cfg, random.Random(seed))


@pytest.fixture
def rng():
    return random.Random(0)
