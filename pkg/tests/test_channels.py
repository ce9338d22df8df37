import numpy as np
import pytest

from algebra import local_qubit_algebra, random_group_element, spin_algebra, summands
from channels import (
    apply, conditional_compose, identity_map, monotonicity_audit, outcome_states, projective_measurement,
    random_unitary_map, sample_unitary_glocc, superoperator, unitary_map,
)
from errors import CertificateError, DimensionError
from models import CPMap, Operator
from states import all_up, ghz, haar_random, haar_random_density, mixture, product_state

ROOF_OPTS = {'restarts': 4, 'seed': 0}


def test_identity_map():
    rho = haar_random_density(4, 3, seed=1)
    out = apply(identity_map(4), rho)
    assert np.abs(out.matrix - rho.matrix).max() < 1e-15


def test_trace_certificate():
    with pytest.raises(CertificateError):
        CPMap((Operator(2 * np.eye(2)),))
    with pytest.raises(CertificateError):
        CPMap((Operator(0.5 * np.eye(2)),))
    subnormal = CPMap((Operator(0.5 * np.eye(2)),), trace_property='nonincreasing')
    assert abs(apply(subnormal, all_up(1)).trace - 0.25) < 1e-15


def test_measurement_on_ghz():
    alg = summands(local_qubit_algebra(2))[0]
    measurement = projective_measurement(alg)
    assert len(measurement.hk_ops) == 2
    out = apply(measurement, ghz(2))
    assert abs(out.trace - 1) < 1e-12
    assert np.abs(out.matrix - np.diag([0.5, 0, 0, 0.5])).max() < 1e-12

    outcomes = outcome_states(measurement, ghz(2))
    assert [round(p, 12) for p, _ in outcomes] == [0.5, 0.5]


def test_random_unitary_preserves_spectrum(rng):
    alg = local_qubit_algebra(2)
    rho = haar_random_density(4, 3, seed=2, dims=(2, 2))
    U = random_group_element(alg, rng)
    out = apply(unitary_map(U), rho)
    assert np.abs(np.linalg.eigvalsh(out.matrix) - np.linalg.eigvalsh(rho.matrix)).max() < 1e-10


def test_conditional_compose():
    alg = summands(local_qubit_algebra(2))[1]
    measurement = projective_measurement(alg)
    same = conditional_compose(measurement, [identity_map(4), identity_map(4)])
    for a, b in zip(same.hk_ops, measurement.hk_ops):
        assert np.abs(a.dense() - b.dense()).max() < 1e-15

    rng = np.random.default_rng(3)
    U0, U1 = (random_group_element(alg, rng) for _ in range(2))
    composed = conditional_compose(measurement, [unitary_map(U0), unitary_map(U1)])
    P0, P1 = (op.dense() for op in measurement.hk_ops)
    assert np.abs(composed.hk_ops[0].dense() - U0.dense() @ P0).max() < 1e-14
    assert np.abs(composed.hk_ops[1].dense() - U1.dense() @ P1).max() < 1e-14

    with pytest.raises(DimensionError):
        conditional_compose(measurement, [identity_map(4)])


def test_superoperator_composition():
    rng = np.random.default_rng(4)
    alg = local_qubit_algebra(2)
    first = random_unitary_map(alg, branches=3, seed=5)
    U = random_group_element(alg, rng)
    composed = conditional_compose(first, [unitary_map(U)] * 3)
    lhs = superoperator(composed)
    rhs = superoperator(unitary_map(U)) @ superoperator(first)
    assert np.abs(lhs - rhs).max() < 1e-12

    rho = haar_random_density(4, 2, seed=6)
    vec = superoperator(composed) @ rho.matrix.reshape(-1)
    assert np.abs(vec.reshape(4, 4) - apply(composed, rho).matrix).max() < 1e-12


def test_sampled_glocc_maps():
    factors = summands(local_qubit_algebra(2))
    single = sample_unitary_glocc(factors, depth=1, seed=0, measure_probability=0.0)
    assert len(single.hk_ops) == 1
    psi = haar_random(4, seed=1, dims=(2, 2))
    assert abs(apply(single, psi).trace - 1) < 1e-12

    pair = sample_unitary_glocc(factors, depth=2, seed=1, measure_probability=1.0)
    assert len(pair.hk_ops) <= 4
    assert pair.trace_property == 'preserving'

    deep = sample_unitary_glocc(factors, depth=3, seed=2)
    rho = haar_random_density(4, 2, seed=3, dims=(2, 2))
    assert abs(apply(deep, rho).trace - 1) < 1e-10


def test_sampling_arguments():
    alg = local_qubit_algebra(2)
    with pytest.raises(DimensionError):
        sample_unitary_glocc([alg, alg], depth=1)
    with pytest.raises(DimensionError):
        sample_unitary_glocc(summands(alg), depth=0)
    with pytest.raises(DimensionError):
        sample_unitary_glocc([], depth=1)


def test_unitary_only_audit_on_pure_state():
    alg = local_qubit_algebra(2)
    rho = haar_random(4, seed=8, dims=(2, 2)).projector()
    maps = [sample_unitary_glocc(summands(alg), depth=2, seed=s, measure_probability=0.0) for s in range(5)]
    summary = monotonicity_audit(rho, alg, maps=maps, roof_opts=ROOF_OPTS)
    assert summary['violations'] == 0
    assert abs(summary['max_excess']) < 1e-9
    assert summary['passed']


def test_audit_on_pure_state_with_measurements():
    alg = local_qubit_algebra(2)
    rho = haar_random(4, seed=9, dims=(2, 2)).projector()
    summary = monotonicity_audit(rho, alg, trials=6, depth=2, seed=3, roof_opts=ROOF_OPTS)
    assert summary['trials'] == 6 and len(summary['rows']) == 6
    assert summary['violations'] == 0
    assert summary['passed']
    assert [row['trial'] for row in summary['rows']] == list(range(6))


def test_audit_flags_entangling_map():
    alg = local_qubit_algebra(2)
    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    plus_up = product_state([(1, 0, 0), (0, 0, 1)]).projector()
    summary = monotonicity_audit(plus_up, alg, maps=[unitary_map(Operator(cnot))], roof_opts=ROOF_OPTS)
    assert summary['violations'] == 1
    assert summary['rows'][0]['status'] == 'violation'
    assert abs(summary['max_excess'] - 1) < 1e-9
    assert not summary['passed']


def test_audit_keeps_separable_state_unentangled():
    alg = local_qubit_algebra(2)
    rho = mixture([product_state([(1, 0, 0), (0, 0, 1)]), product_state([(0, 0, 1), (0, 1, 0)])], [0.4, 0.6])
    summary = monotonicity_audit(rho, alg, trials=4, depth=2, seed=1, roof_opts=ROOF_OPTS)
    assert summary['violations'] == 0
    for row in summary['rows']:
        assert abs(row['before']) < 2e-2
        assert abs(row['after']) < 2e-2


@pytest.mark.slow
def test_audit_on_random_mixed_states():
    alg = local_qubit_algebra(2)
    rho = haar_random_density(4, 2, seed=10, dims=(2, 2))
    summary = monotonicity_audit(rho, alg, trials=200, depth=2, seed=0)
    assert summary['within_tolerance'] + summary['resolved_by_recheck'] >= 0.95 * 200
    assert summary['violations'] == 0


def test_projective_measurement_spin():
    measurement = projective_measurement(spin_algebra(1))
    assert len(measurement.hk_ops) == 3
    total = sum(op.dense() for op in measurement.hk_ops)
    assert np.abs(total - np.eye(3)).max() < 1e-12
