import numpy as np
import pytest
from hypothesis import settings

from dfscodec.codec import prepare_protocol
from dfscodec.groups import builtin_group
from dfscodec.reps import pauli_rep, s3_two_dim_rep, zn_phase_rep

settings.register_profile("suite", max_examples=25, deadline=None)
settings.load_profile("suite")


def make_context(spec: str):
    """Protocol context for a named channel: 'k4', 's3', 'z<N>' or 'z<N>:d'."""
    if spec == "k4":
        group = builtin_group("k4")
        return prepare_protocol(pauli_rep(group))
    if spec == "s3":
        group = builtin_group("s3")
        return prepare_protocol(s3_two_dim_rep(group))
    name, _, dim = spec.partition(":")
    group = builtin_group(name)
    return prepare_protocol(zn_phase_rep(group, int(dim) if dim else 2))


_CONTEXT_CACHE: dict = {}


@pytest.fixture
def context_for():
    def get(spec: str):
        if spec not in _CONTEXT_CACHE:
            _CONTEXT_CACHE[spec] = make_context(spec)
        return _CONTEXT_CACHE[spec]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
