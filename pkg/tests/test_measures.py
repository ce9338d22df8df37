import numpy as np
import pytest

from algebra import bipartite_algebra, local_qubit_algebra, random_group_element, spin_algebra
from channels import apply, unitary_map
from errors import DimensionError, UnsupportedAlgebraError
from measures import (
    Mixedness, mixedness, reduced_decomposition, reduced_mixedness, refined_mixedness, roof_mixedness,
    roof_purity_deficit, wootters_concurrence,
)
from models import DensityMatrix
from purity import h_purity
from states import all_down, all_up, bell, ghz, haar_random, haar_random_density, mixture, spin_basis_state, werner

ROOF_OPTS = {'restarts': 6, 'seed': 0}


def test_mixedness_closed_forms():
    assert mixedness([1, 0, 0], Mixedness.ENTROPY) == 0
    assert mixedness([1, 0, 0], Mixedness.RENYI) == 0
    assert abs(mixedness([0.25] * 4, Mixedness.ENTROPY) - np.log(4)) < 1e-14
    assert abs(mixedness([0.25] * 4, Mixedness.RENYI) - 0.75) < 1e-14
    assert abs(mixedness([0.5, 0.5]) - 0.5) < 1e-14
    assert abs(mixedness([0.5, 0.5], 'entropy') - np.log(2)) < 1e-14


def test_mixedness_rejects_non_probabilities():
    with pytest.raises(DimensionError):
        mixedness([0.5, 0.6])
    with pytest.raises(DimensionError):
        mixedness([1.5, -0.5])


def test_wootters_concurrence():
    assert abs(wootters_concurrence(bell()) - 1) < 1e-6
    assert abs(wootters_concurrence(all_up(2).projector())) < 1e-6
    for p in (0.0, 0.25, 0.5, 0.8, 1.0):
        assert abs(wootters_concurrence(werner(p)) - max(0.0, (3 * p - 1) / 2)) < 1e-6


def test_roof_of_pure_state_is_exact():
    alg = local_qubit_algebra(2)
    psi = haar_random(4, seed=9, dims=(2, 2))
    result = roof_purity_deficit(psi.projector(), alg, ROOF_OPTS)
    assert abs(result.value - (1 - h_purity(psi, alg))) < 1e-12
    assert len(result.ensemble) == 1


def test_roof_of_separable_mixture_vanishes():
    rho = mixture([all_up(2), all_down(2)], [0.3, 0.7])
    result = roof_purity_deficit(rho, local_qubit_algebra(2), ROOF_OPTS)
    assert abs(result.value) < 1e-8


@pytest.mark.parametrize('p', [0.0, 0.25, 0.5, 0.8, 1.0])
def test_roof_matches_squared_concurrence_on_werner(p):
    rho = werner(p)
    result = roof_purity_deficit(rho, local_qubit_algebra(2), ROOF_OPTS)
    tangle = wootters_concurrence(rho) ** 2
    assert result.value >= tangle - 1e-6
    assert abs(result.value - tangle) < 2e-2


def test_roof_matches_squared_concurrence_on_rank_two():
    alg = bipartite_algebra(2, 2)
    for seed in range(3):
        rho = haar_random_density(4, 2, seed=seed, dims=(2, 2))
        result = roof_purity_deficit(rho, alg, ROOF_OPTS)
        assert abs(result.value - wootters_concurrence(rho) ** 2) < 2e-2


def test_roof_is_invariant_under_group_unitaries(rng):
    alg = local_qubit_algebra(2)
    rho = haar_random_density(4, 2, seed=4, dims=(2, 2))
    moved = apply(unitary_map(random_group_element(alg, rng)), rho)
    before = roof_purity_deficit(rho, alg, ROOF_OPTS).value
    after = roof_purity_deficit(moved, alg, ROOF_OPTS).value
    assert abs(before - after) < 1e-6


def test_roof_certificate_reconstructs_rho():
    rho = haar_random_density(4, 3, seed=4, dims=(2, 2))
    result = roof_purity_deficit(rho, local_qubit_algebra(2), ROOF_OPTS)
    assert np.abs(result.ensemble.density() - rho.matrix).max() < 1e-8
    assert result.value <= result.baseline + 1e-12
    assert len(result.ensemble) <= 9
    members = sum(p * (1 - h_purity(psi, local_qubit_algebra(2)))
                  for p, psi in zip(result.ensemble.weights, result.ensemble.states))
    assert abs(members - result.value) < 1e-8


def test_roof_is_reproducible():
    rho = haar_random_density(4, 2, seed=5, dims=(2, 2))
    a = roof_purity_deficit(rho, local_qubit_algebra(2), ROOF_OPTS)
    b = roof_purity_deficit(rho, local_qubit_algebra(2), ROOF_OPTS)
    assert a.value == b.value


def test_roof_convexity():
    alg = local_qubit_algebra(2)
    r1 = haar_random_density(4, 2, seed=6, dims=(2, 2))
    r2 = haar_random_density(4, 2, seed=7, dims=(2, 2))
    mixed = DensityMatrix(0.5 * r1.matrix + 0.5 * r2.matrix, dims=(2, 2))
    v1, v2, vm = (roof_purity_deficit(r, alg, ROOF_OPTS).value for r in (r1, r2, mixed))
    assert vm <= 0.5 * v1 + 0.5 * v2 + 2 * 2e-2


def test_reduced_mixedness_qubit_chord():
    alg = spin_algebra(0.5)
    for r in (0.0, 0.3, 0.9, 1.0):
        rho = DensityMatrix(np.diag([(1 + r) / 2, (1 - r) / 2]))
        assert abs(reduced_mixedness(rho, alg) - (1 - r * r) / 2) < 1e-12


def test_reduced_mixedness_spin_one():
    alg = spin_algebra(1)
    assert abs(reduced_mixedness(spin_basis_state(1, 1), alg)) < 1e-12
    assert abs(reduced_mixedness(spin_basis_state(1, 0), alg) - 0.5) < 1e-12
    assert abs(reduced_mixedness(spin_basis_state(1, 0), alg, Mixedness.ENTROPY) - np.log(2)) < 1e-12


def test_reduced_decomposition_two_qubits():
    alg = local_qubit_algebra(2)
    value, weights, directions = reduced_decomposition(ghz(2), alg, opts={'restarts': 2})
    assert abs(value - 0.5) < 1e-6
    assert abs(weights.sum() - 1) < 1e-8
    assert directions.shape[1:] == (2, 3)
    assert abs(reduced_mixedness(all_up(2), alg)) < 1e-12


def test_reduced_decomposition_without_refinement_returns_chords():
    alg = local_qubit_algebra(2)
    psi = haar_random(4, seed=6, dims=(2, 2))
    chord, weights, _ = reduced_decomposition(psi, alg, opts={'restarts': 0})
    assert len(weights) <= 3
    assert refined_mixedness(psi, alg) <= chord + 1e-12
    assert abs(refined_mixedness(all_up(2), alg)) < 1e-12


def test_reduced_mixedness_unsupported():
    with pytest.raises(UnsupportedAlgebraError):
        reduced_mixedness(haar_random(9, seed=1, dims=(3, 3)), bipartite_algebra(3, 3))


def test_roof_mixedness_spin_one():
    alg = spin_algebra(1)
    rho = mixture([spin_basis_state(1, 1), spin_basis_state(1, -1)], [0.5, 0.5])
    result = roof_mixedness(rho, alg, opts={'restarts': 2, 'seed': 0})
    assert abs(result.value) < 1e-10
    pure = roof_mixedness(spin_basis_state(1, 0).projector(), alg)
    assert abs(pure.value - 0.5) < 1e-12
