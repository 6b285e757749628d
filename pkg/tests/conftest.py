"""Shared fixtures: warm the JIT kernels once so timed tests see steady state."""

import pytest

from topolattice.numerics import warmup_jit


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    warmup_jit()
