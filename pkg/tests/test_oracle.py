"""Finite-difference oracle tests against exactly known spectra."""

import numpy as np
import pytest

from seaqm.engine import Hulthen, solve_chain
from seaqm.errors import GridTooCoarse
from seaqm.oracle import (
    GridSpec,
    anharmonic_numeric,
    fd_eigenvalues,
    fd_eigenvalues_with_error,
    hulthen_numeric,
)
from seaqm.spectra import evaluate_truncated, hulthen_energy_closed_l0, hulthen_energy_series


def test_harmonic_spectrum():
    vals = fd_eigenvalues(lambda x: x * x, GridSpec(-12.0, 12.0, 8000), 3)
    assert vals == pytest.approx([1.0, 3.0, 5.0], abs=5e-8)


def test_hydrogen_levels():
    vals = fd_eigenvalues(lambda x: -2.0 / x, GridSpec(0.0, 200.0, 12000), 3)
    assert vals == pytest.approx([-1.0, -0.25, -1.0 / 9.0], abs=2e-6)


def test_hulthen_l0_closed_form():
    vals = hulthen_numeric(0, 0.5, 1, GridSpec(0.0, 200.0, 16000))
    assert vals[0] == pytest.approx(-0.5625, abs=1e-8)
    assert vals[0] == pytest.approx(hulthen_energy_closed_l0(1, 0.5), abs=1e-8)


def test_hulthen_coulomb_limit_l1():
    vals = hulthen_numeric(1, 0.01, 1, GridSpec(0.0, 400.0, 12000))
    series = hulthen_energy_series(2, 1, 6)
    assert vals[0] == pytest.approx(evaluate_truncated(series, 0.01, 6), abs=1e-8)
    assert vals[0] == pytest.approx(-0.25, abs=1e-2)


def test_anharmonic_harmonic_limit():
    vals = anharmonic_numeric(0.0, 5, GridSpec(-12.0, 12.0, 12000))
    assert vals == pytest.approx([1.0, 3.0, 5.0, 7.0, 9.0], abs=1e-6)


def test_grid_too_coarse():
    with pytest.raises(GridTooCoarse):
        fd_eigenvalues(lambda x: x * x, GridSpec(-12.0, 12.0, 150), 3)


def test_self_consistency_under_doubling():
    grid = GridSpec(-12.0, 12.0, 8000)
    v1, _ = fd_eigenvalues_with_error(lambda x: x * x + 0.5 * x**4, grid, 2)
    v2, _ = fd_eigenvalues_with_error(
        lambda x: x * x + 0.5 * x**4, GridSpec(-12.0, 12.0, 16000), 2
    )
    for a, b in zip(v1, v2):
        assert abs(a - b) / abs(b) < 1e-8


def test_susy_degeneracy_witness():
    # partner potential built from the truncated series shares the upper
    # spectrum of the base problem: its lowest level matches level 2 of the
    # full screened Coulomb Hamiltonian.  The domain stays inside the
    # expansion's convergence radius 2*pi/lam.
    lam = 0.05
    chain = solve_chain(Hulthen(0), 1, 14)
    v1 = chain.rung(1).potential

    def partner(x):
        out = np.zeros_like(x)
        for k in range(14, -1, -1):
            term = np.zeros_like(x)
            for e, c in v1[k].items():
                term += float(c) * x ** float(e)
            out = out * lam + term
        return out

    grid = GridSpec(0.0, 100.0, 12000)
    lowest_partner = fd_eigenvalues(partner, grid, 1)[0]
    second_base = hulthen_numeric(0, lam, 2, grid)[1]
    assert lowest_partner == pytest.approx(second_base, abs=1e-5)


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(0.0, -1.0, 100)
    with pytest.raises(ValueError):
        GridSpec(0.0, 1.0, 2)
    with pytest.raises(ValueError):
        hulthen_numeric(0, 0.0, 1)
