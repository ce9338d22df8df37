import numpy as np
import pytest

from algebra import (
    algebra_by_name, bipartite_algebra, closure_residual, cluster_algebra, collective_cluster_algebra,
    fermion_so_algebra, fermion_u_algebra, fock_vacuum, full_algebra, gell_mann, group_orbit_state, is_subalgebra,
    jordan_wigner, local_qubit_algebra, normalize, random_group_element, relative_reduction, sector_indices,
    sector_state, spin_algebra, summands, verify_normalization,
)
from errors import CertificateError, ConfigError, DimensionError, UnsupportedAlgebraError
from linalg import trace_inner
from models import Operator, PureState
from purity import h_purity
from states import PAULIS, all_up, basis_state, product_state, spin_basis_state


def _gram(alg):
    return np.array([[trace_inner(a.matrix, b.matrix) for b in alg.basis] for a in alg.basis])


@pytest.mark.parametrize('alg,size', [
    (local_qubit_algebra(1), 3),
    (local_qubit_algebra(3), 9),
    (bipartite_algebra(2, 2), 6),
    (bipartite_algebra(2, 3), 11),
    (spin_algebra(1), 3),
    (spin_algebra(1, copies=2), 3),
    (fermion_u_algebra(2), 4),
    (fermion_so_algebra(2), 6),
    (fermion_u_algebra(3), 9),
    (fermion_so_algebra(3), 15),
    (full_algebra(3), 8),
    (cluster_algebra(4, 2), 30),
    (collective_cluster_algebra(4, 2), 6),
])
def test_sizes_orthonormality_and_reference(alg, size):
    assert alg.size == size
    assert np.abs(_gram(alg) - np.eye(size)).max() < 1e-10
    assert abs(h_purity(alg.reference_state, alg) - 1) < 1e-12


@pytest.mark.parametrize('alg', [
    local_qubit_algebra(2), spin_algebra(1.5), bipartite_algebra(2, 3), fermion_u_algebra(3),
    fermion_so_algebra(3), fermion_so_algebra(4, 'odd'),
])
def test_closure(alg):
    assert closure_residual(alg) < 1e-8


def test_normalize_qubit():
    basis, K = normalize([Operator(p, hermitian=True) for p in PAULIS], product_state([(0, 0, 1)]))
    assert len(basis) == 3
    assert abs(K - 2) < 1e-12


def test_normalize_rejects_zero_purity_reference():
    with pytest.raises(CertificateError):
        normalize([Operator(PAULIS[0], hermitian=True)], product_state([(0, 0, 1)]))


def test_local_normalization_constant():
    alg = local_qubit_algebra(4)
    raw = sum(np.vdot(all_up(4).amplitudes, m @ all_up(4).amplitudes).real ** 2 for m in alg.matrices)
    assert abs(alg.K * raw - 1) < 1e-12


def test_gell_mann():
    mats = gell_mann(3)
    assert len(mats) == 8
    for a, ma in enumerate(mats):
        assert abs(np.trace(ma)) < 1e-14
        for b, mb in enumerate(mats):
            assert abs(np.trace(ma @ mb) - 2 * (a == b)) < 1e-12


def test_jordan_wigner_anticommutation():
    rep = jordan_wigner(3)
    c = [op.dense() for op in rep.c]
    for i in range(3):
        for j in range(3):
            anti = c[i] @ c[j].conj().T + c[j].conj().T @ c[i]
            assert np.abs(anti - (i == j) * np.eye(8)).max() < 1e-14
            assert np.abs(c[i] @ c[j] + c[j] @ c[i]).max() < 1e-14


def test_vacuum_and_parity():
    rep = jordan_wigner(3)
    vac = fock_vacuum(3).amplitudes
    for op in rep.c:
        assert np.linalg.norm(op.matrix @ vac) < 1e-15
    assert abs(rep.parity.expectation(vac) - 1) < 1e-15
    assert abs(rep.number(0).expectation(rep.cdag(0).matrix @ vac) - 1) < 1e-15


def test_sector_indices():
    assert len(sector_indices(4, 'even')) == 8
    assert 15 in sector_indices(4, 'even')
    with pytest.raises(ConfigError):
        sector_indices(4, 'both')


def test_sector_state_leak():
    with pytest.raises(DimensionError):
        sector_state(all_up(3), 3, 'even')
    assert sector_state(fock_vacuum(3), 3, 'even').dim == 4


def test_fermion_so_sector_is_irreducible():
    alg = fermion_so_algebra(4, 'even')
    assert alg.dim == 8 and alg.irreducible
    assert not fermion_so_algebra(4).irreducible


def test_single_slater_determinants_have_unit_purity(rng):
    alg = fermion_u_algebra(4)
    for occupation in [(0, 1, 0, 1), (0, 0, 0, 1), (1, 1, 1, 1)]:
        psi = basis_state((2,) * 4, occupation)
        assert abs(h_purity(psi, alg) - 1) < 1e-10
    U = random_group_element(alg, rng)
    psi = basis_state((2,) * 4, (0, 1, 1, 0))
    rotated = PureState.normalized(U.matrix @ psi.amplitudes, dims=psi.dims)
    assert abs(h_purity(rotated, alg) - 1) < 1e-10


def test_spin_examples():
    spin1 = spin_algebra(1)
    assert abs(h_purity(spin_basis_state(1, 1), spin1) - 1) < 1e-10
    assert abs(h_purity(spin_basis_state(1, -1), spin1) - 1) < 1e-10
    assert abs(h_purity(spin_basis_state(1, 0), spin1)) < 1e-10

    pair = spin_algebra(1, copies=2)
    assert abs(h_purity(spin_basis_state(1, 1, copies=2), pair) - 1) < 1e-10
    assert abs(h_purity(spin_basis_state(1, 0, copies=2), pair)) < 1e-10
    assert not pair.irreducible


def test_subalgebra_inclusion():
    local = local_qubit_algebra(2)
    collective = spin_algebra(0.5, copies=2)
    assert is_subalgebra(collective, local)
    assert not is_subalgebra(local, collective)
    assert is_subalgebra(fermion_u_algebra(3), fermion_so_algebra(3))


def test_relative_reduction():
    local = local_qubit_algebra(2)
    collective = spin_algebra(0.5, copies=2)

    report = relative_reduction(all_up(2), local, collective)
    assert abs(report['purity_h1'] - 1) < 1e-12
    assert abs(report['purity_h2'] - 1) < 1e-12
    assert report['chain_mismatch'] < 1e-12

    # up (x) +x: unentangled locally, half the collective spin length
    report = relative_reduction(product_state([(0, 0, 1), (1, 0, 0)]), local, collective)
    assert abs(report['deficit_h1']) < 1e-12
    assert abs(report['further_deficit'] - 0.5) < 1e-12
    assert report['chain_mismatch'] < 1e-12

    with pytest.raises(UnsupportedAlgebraError):
        relative_reduction(all_up(2), collective, local)


def test_summands_are_normalized():
    alg = local_qubit_algebra(3)
    parts = summands(alg)
    assert len(parts) == 3
    assert [p.summand_support for p in parts] == [((0,),), ((1,),), ((2,),)]
    for part in parts:
        assert abs(h_purity(alg.reference_state, part) - 1) < 1e-12
        assert abs(part.K - 8) < 1e-10
    assert len(summands(spin_algebra(1))) == 1


def test_group_orbit_and_normalization():
    alg = bipartite_algebra(2, 3)
    psi = group_orbit_state(alg, seed=4)
    assert abs(h_purity(psi, alg) - 1) < 1e-9
    report = verify_normalization(alg, samples=50, seed=1)
    assert report['violations'] == 0
    assert report['max_purity'] <= 1 + 1e-8


def test_random_group_element_unitary(rng):
    U = random_group_element(spin_algebra(1.5), rng).dense()
    assert np.abs(U.conj().T @ U - np.eye(4)).max() < 1e-10


def test_algebra_by_name():
    assert algebra_by_name('local-qubits', n=2).size == 6
    assert algebra_by_name('bipartite', local_dims=(2, 2)).size == 6
    assert algebra_by_name('collective-spin', j=1, copies=2).dims == (3, 3)
    assert algebra_by_name('fermion-so', n=3, parity='odd').dim == 4
    with pytest.raises(ConfigError) as info:
        algebra_by_name('nosuch')
    assert info.value.field == 'algebra'
    with pytest.raises(ConfigError) as info:
        algebra_by_name('local-qubits')
    assert info.value.field == 'n'


def test_size_limits():
    with pytest.raises(DimensionError):
        local_qubit_algebra(13)
    with pytest.raises(DimensionError):
        fermion_u_algebra(1)
    with pytest.raises(DimensionError):
        cluster_algebra(4, 3)
