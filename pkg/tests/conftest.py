"""Shared fixtures for the test suite."""

import math
import sys

import numpy as np
import pytest

from sourcefft import make_grid
from sourcefft.spectral_core import RealSignal


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # Re-print the acceptance verdict lines after the capture machinery is
    # done with them, so they survive a plain `pytest` run.
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def default_grid():
    return make_grid(256, 0.0, 2.0 * math.pi)


@pytest.fixture
def band_limited():
    """Factory for seeded random band-limited mean-zero real signals.

    The spectrum is supported on 1 <= |k| <= k_max (default n//8, well below
    the top quarter), so these signals are exactly representable on the grid
    and exactly mean-free.
    """

    def make(grid, seed, k_max=None):
        n = grid.n
        if k_max is None:
            k_max = n // 8
        assert 1 <= k_max < n // 2
        rng = np.random.Generator(np.random.PCG64(seed))
        coeffs = np.zeros(n, dtype=complex)
        for k in range(1, k_max + 1):
            c = rng.standard_normal() + 1j * rng.standard_normal()
            coeffs[k] = c
            coeffs[n - k] = np.conj(c)
        return RealSignal(grid, np.fft.ifft(coeffs).real)

    return make
