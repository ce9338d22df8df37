import numpy as np
import pytest

from algebra import fermion_so_algebra, fermion_u_algebra, sector_state
from errors import DimensionError
from models import XYParams
from purity import h_purity
from xymodel import (
    bcs_purity, bcs_state, build_hamiltonian, estimate_critical, exact_ground, exact_ground_energy,
    momentum_grid, parity_sector_energies, purity_scan, solve_bogoliubov, thermodynamic_purity,
)

SMALL_CASES = [(N, eta, g) for N in (4, 6) for eta in (0.25, 0.5, 1.0) for g in (0.2, 0.8, 1.0, 1.5)]


def test_two_site_hamiltonian():
    H = build_hamiltonian(XYParams(N=2, g=1.0, eta=1.0)).dense()
    expected = np.array([[1, 0, 0, -1], [0, 0, -1, 0], [0, -1, 0, 0], [-1, 0, 0, -1]])
    assert np.abs(H - expected).max() < 1e-14


def test_zero_coupling():
    p = XYParams(N=4, g=0.0, eta=1.0)
    psi = exact_ground(p)
    assert abs(abs(psi.amplitudes[-1]) - 1) < 1e-12
    assert abs(exact_ground_energy(p) + 2.0) < 1e-12
    report = parity_sector_energies(p)
    assert report['ground_sector'] == 'even'
    assert abs(report['splitting'] - 1.0) < 1e-12


def test_momentum_grid():
    k = momentum_grid(4)
    assert np.abs(k - np.pi * np.array([-3, -1, 1, 3]) / 4).max() < 1e-15
    assert np.abs(np.sort(-momentum_grid(10)) - momentum_grid(10)).max() < 1e-15


@pytest.mark.parametrize('N,eta,g', SMALL_CASES)
def test_bogoliubov_matches_even_sector(N, eta, g):
    p = XYParams(N=N, g=g, eta=eta)
    sol = solve_bogoliubov(p)
    assert abs(sol.ground_energy - exact_ground_energy(p, 'even')) < 1e-8

    ground = exact_ground(p, 'even')
    assert abs(bcs_purity(sol) - h_purity(ground, fermion_u_algebra(N))) < 1e-8


@pytest.mark.parametrize('g', [0.5, 1.5])
def test_bcs_state_is_ground_state(g):
    p = XYParams(N=4, g=g, eta=0.7)
    assert bcs_state(p).overlap(exact_ground(p, 'even')) > 1 - 1e-8


@pytest.mark.slow
@pytest.mark.parametrize('g', [0.3, 0.9, 1.2])
def test_bogoliubov_larger_chains(g):
    p = XYParams(N=10, g=g, eta=1.0)
    ground = exact_ground(p, 'even')
    assert abs(solve_bogoliubov(p).ground_energy - exact_ground_energy(p, 'even')) < 1e-8
    assert abs(bcs_purity(p) - h_purity(ground, fermion_u_algebra(10))) < 1e-8


def test_ground_state_is_so_coherent():
    N = 4
    p = XYParams(N=N, g=0.8, eta=0.6)
    ground = sector_state(exact_ground(p, 'even'), N, 'even')
    assert abs(h_purity(ground, fermion_so_algebra(N, 'even')) - 1) < 1e-8


def test_thermodynamic_limit():
    for g in (0.0, 0.3, 0.7, 0.95):
        assert abs(thermodynamic_purity(g, 1.0) - (1 - g * g / 2)) < 1e-8
    for g in (1.2, 2.0, 10.0):
        assert abs(thermodynamic_purity(g, 1.0) - 0.5) < 1e-8

    for g in (0.5, 1.5):
        assert abs(bcs_purity(XYParams(N=1000, g=g, eta=1.0)) - thermodynamic_purity(g, 1.0)) < 1e-3
    assert abs(bcs_purity(XYParams(N=1000, g=10.0, eta=1.0)) - 0.5) < 5e-3


def test_purity_scan():
    grid = np.linspace(0.0, 2.0, 21)
    scan = purity_scan(grid, 1.0, 20)
    assert len(scan.rows()) == 21
    assert abs(scan.purity[0] - 1) < 1e-12
    assert scan.min_gap[0] == pytest.approx(1.0)
    with pytest.raises(DimensionError):
        purity_scan([0.5, 0.5, 1.0], 1.0, 20)
    with pytest.raises(DimensionError):
        purity_scan([1.0], 1.0, 20)


def test_critical_estimate():
    scan = purity_scan(np.linspace(0.5, 1.5, 201), 1.0, 1000)
    result = estimate_critical(scan)
    assert abs(result['g_c_hat'] - 1.0) < 0.05
    assert 0.85 <= result['nu_hat'] <= 1.15
    assert result['fit_points'] >= 5
    assert set(result['peaks']) == {1000, 500, 250}


def test_critical_estimate_needs_points():
    scan = purity_scan(np.linspace(0.0, 2.0, 11), 1.0, 200)
    with pytest.raises(DimensionError):
        estimate_critical(scan)


def test_parameter_errors():
    with pytest.raises(DimensionError):
        XYParams(N=3, g=1.0, eta=1.0)
    with pytest.raises(DimensionError):
        XYParams(N=4, g=-0.1, eta=1.0)
    with pytest.raises(DimensionError):
        XYParams(N=4, g=1.0, eta=1.5)
    with pytest.raises(DimensionError):
        XYParams(N=4, g=1.0, eta=1.0, boundary='open')
    with pytest.raises(DimensionError):
        build_hamiltonian(XYParams(N=14, g=1.0, eta=1.0))
