"""Sine-kernel resolvent against the reproducing kernel of the Paley-Wiener space on (-1, 1)"""
import math

import numpy as np
import pytest

from services import dirichlet
from utils.errors import DomainError


def test_sine_kernel_diagonal():
    values = dirichlet.sine_kernel(1.5, [0.0, 0.4], [0.0, 0.4])
    np.testing.assert_allclose(np.diag(values), 1.5 / math.pi, rtol=1e-14)
    assert values[0, 1] == pytest.approx(math.sin(0.6) / (math.pi * 0.4), rel=1e-12)


@pytest.mark.parametrize('s', [0.5, 1.0, 2.0])
def test_resolvent_matches_reproducing_kernel(s):
    reports = dirichlet.dirichlet_checks(s, tol=1e-3)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]


def test_resolvent_is_symmetric():
    disc = dirichlet.dirichlet_resolvent(1.0, 64)
    assert disc.value(0.3, -0.5) == pytest.approx(disc.value(-0.5, 0.3), rel=1e-10)


def test_comparison_rows():
    rows = dirichlet.comparison_rows(1.0)
    assert len(rows) == 25
    assert len(rows[0]) == len(dirichlet.COMPARISON_CSV_HEADER)
    assert max(row[-1] for row in rows) <= 1e-3


def test_bandwidth_guard():
    with pytest.raises(DomainError):
        dirichlet.dirichlet_resolvent(4.0, 8)
    with pytest.raises(DomainError):
        dirichlet.dirichlet_resolvent(-1.0)


def test_oracle_domain():
    with pytest.raises(DomainError):
        dirichlet.mpw_kernel_oracle(1.0, 1.0, 0.0)
