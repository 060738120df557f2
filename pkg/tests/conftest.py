from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cliffbreak.algebra import AlgebraDescriptor, Multivector
from cliffbreak.parser import parse_context

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def multivectors(desc: AlgebraDescriptor, max_terms: int = 6):
    keys = st.integers(0, desc.dimension - 1)
    return st.dictionaries(keys, rationals, max_size=max_terms).map(
        lambda d: Multivector.from_terms(desc, [(*desc.split_key(k), v) for k, v in d.items()]))


@pytest.fixture(scope="session")
def dirac_h():
    return parse_context("dirac-h")


@pytest.fixture(scope="session")
def dirac_c():
    return parse_context("dirac-c")
