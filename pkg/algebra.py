"""
Distinguished observable algebras

Every built-in algebra is a trace-orthonormal Hermitian basis on the full
tensor-product space together with a reference (generalized unentangled)
state that fixes the purity normalization K. Operators built from Pauli or
Jordan-Wigner strings are kept sparse.
"""
import logging

import numpy as np
from scipy import sparse

from config import get_config
from errors import CertificateError, ConfigError, DimensionError, UnsupportedAlgebraError
from linalg import (
    commutator_closure_residual, embed, embed_many, trace_inner, trace_orthonormalize,
    unitary_from_generator,
)
from models import FermionRep, ObservableAlgebra, Operator, PureState
from states import (
    PAULIS, SIGMA_MINUS, all_down, all_up, basis_state, check_qubit_count, check_spin, haar_random, spin_matrices,
)

logger = logging.getLogger(__name__)

MAX_DIM = 4096
FERMION_MAX_MODES = 12
SECTOR_TOL = 1e-10

ALGEBRA_NAMES = (
    'local-qubits', 'bipartite', 'spin', 'collective-spin', 'fermion-u', 'fermion-so',
    'full', 'cluster', 'collective-cluster',
)


def gell_mann(d):
    """Generalized Gell-Mann matrices: d^2 - 1 traceless Hermitian generators of su(d)"""
    mats = []
    for a in range(d):
        for b in range(a + 1, d):
            sym = np.zeros((d, d), dtype=np.complex128)
            sym[a, b] = sym[b, a] = 1.0
            anti = np.zeros((d, d), dtype=np.complex128)
            anti[a, b] = -1j
            anti[b, a] = 1j
            mats.extend([sym, anti])
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        mats.append(np.diag(diag * np.sqrt(2.0 / (l * (l + 1)))).astype(np.complex128))
    return mats


def ket_bra(d, a, b):
    """|a><b| on a d-level system"""
    m = np.zeros((d, d), dtype=np.complex128)
    m[a, b] = 1.0
    return m


def normalize(basis, reference_state, tol=None):
    """
    Trace-orthonormalize `basis` and fix K so the reference state has purity 1

    Returns (orthonormal basis, K) with K = 1 / sum_i <ref|x_i|ref>^2.
    """
    tol = get_config().TOLERANCES['dependent_operator'] if tol is None else tol
    ortho = trace_orthonormalize(basis, tol=tol)
    raw = _raw_purity(ortho, reference_state.amplitudes)
    if raw <= tol:
        raise CertificateError(
            f"reference state {reference_state.label!r} has zero raw purity; it cannot fix the normalization")
    return ortho, 1.0 / raw


def _raw_purity(basis, vector):
    return float(sum(np.vdot(vector, op.matrix @ vector).real ** 2 for op in basis))


def _assemble(name, dims, summand_specs, reference, irreducible):
    """
    Build an ObservableAlgebra from per-summand specs

    Each spec is (raw Hermitian operators, lowering operators, tensor slots).
    Summands act on disjoint slots or are otherwise mutually trace-orthogonal,
    so they are orthonormalized one at a time.
    """
    tol = get_config().TOLERANCES['dependent_operator']
    basis, groups, support, lowering, lowering_summand = [], [], [], [], []
    for s, (raw_ops, lower_ops, slots) in enumerate(summand_specs):
        ortho = trace_orthonormalize(raw_ops, tol=tol)
        groups.append(tuple(range(len(basis), len(basis) + len(ortho))))
        basis.extend(ortho)
        support.append(tuple(slots))
        lowering.extend(lower_ops)
        lowering_summand.extend([s] * len(lower_ops))

    raw = _raw_purity(basis, reference.amplitudes)
    if raw <= tol:
        raise CertificateError(f"reference state {reference.label!r} has zero raw purity for {name}")

    alg = ObservableAlgebra(
        name=name,
        dims=tuple(dims),
        basis=tuple(basis),
        K=1.0 / raw,
        reference_state=reference,
        lowering_ops=tuple(lowering),
        lowering_summand=tuple(lowering_summand),
        summands=tuple(groups),
        summand_support=tuple(support),
        irreducible=irreducible,
    )
    logger.debug(f"Built {alg!r} K={alg.K:.12g} summands={len(groups)}")
    return alg


def _check_dim(dim):
    if dim > MAX_DIM:
        raise DimensionError(f"representation dimension {dim} exceeds {MAX_DIM}")


def local_qubit_algebra(N):
    """su(2) on every qubit, generated by the Pauli matrices"""
    check_qubit_count(N)
    dims = (2,) * N
    specs = []
    for i in range(N):
        ops = [Operator(embed(p, i, dims), hermitian=True, label=f'sigma_{axis}^{i}')
               for axis, p in zip('xyz', PAULIS)]
        lower = [Operator(embed(SIGMA_MINUS, i, dims), label=f'sigma_-^{i}')]
        specs.append((ops, lower, (i,)))
    return _assemble(f'local-qubits(N={N})', dims, specs, all_up(N), irreducible=True)


def bipartite_algebra(m, n):
    """su(m) + su(n) acting as A (x) 1 and 1 (x) B"""
    if m < 2 or n < 2:
        raise DimensionError(f"local dimensions must be >= 2, got {m} and {n}")
    _check_dim(m * n)
    dims = (m, n)
    specs = []
    for slot, d in enumerate(dims):
        ops = [Operator(embed(g, slot, dims), hermitian=True, label=f'lambda_{k}^{slot}')
               for k, g in enumerate(gell_mann(d))]
        lower = [Operator(embed(ket_bra(d, a, b), slot, dims), label=f'|{a}><{b}|^{slot}')
                 for a in range(d) for b in range(a)]
        specs.append((ops, lower, (slot,)))
    return _assemble(f'bipartite({m}x{n})', dims, specs, basis_state(dims, (0, 0), label='|0>|0>'),
                     irreducible=True)


def full_algebra(d):
    """su(d) on a single d-level system: every pure state has purity 1"""
    if d < 2:
        raise DimensionError(f"dimension must be >= 2, got {d}")
    _check_dim(d)
    ops = [Operator(g, hermitian=True, label=f'lambda_{k}') for k, g in enumerate(gell_mann(d))]
    lower = [Operator(ket_bra(d, a, b), label=f'|{a}><{b}|') for a in range(d) for b in range(a)]
    return _assemble(f'full(d={d})', (d,), [(ops, lower, (0,))], basis_state((d,), (0,), label='|0>'),
                     irreducible=True)


def spin_algebra(j, copies=1):
    """Collective su(2) J_a = sum_c J_a^(c) on `copies` spin-j systems"""
    d = check_spin(j)
    if copies < 1:
        raise DimensionError(f"copies must be >= 1, got {copies}")
    _check_dim(d ** copies)
    dims = (d,) * copies
    jx, jy, jz = spin_matrices(j)
    collective = [sum(embed(m, c, dims) for c in range(copies)) for m in (jx, jy, jz)]
    ops = [Operator(m, hermitian=True, label=f'J_{axis}') for axis, m in zip('xyz', collective)]
    lowering = Operator(collective[0] - 1j * collective[1], label='J_-')
    reference = basis_state(dims, (0,) * copies, label=f'|{j:g},{j:g}>^{copies}')
    name = f'spin(j={j:g})' if copies == 1 else f'collective-spin(j={j:g},copies={copies})'
    return _assemble(name, dims, [(ops, [lowering], tuple(range(copies)))], reference,
                     irreducible=(copies == 1))


def cluster_algebra(N, k):
    """su(2^k) on each of the N/k consecutive clusters of k qubits"""
    check_qubit_count(N)
    if k < 1 or N % k:
        raise DimensionError(f"cluster size {k} must divide N={N}")
    d = 2 ** k
    grouped = (d,) * (N // k)
    specs = []
    for c in range(N // k):
        slots = tuple(range(c * k, (c + 1) * k))
        ops = [Operator(embed(g, c, grouped), hermitian=True, label=f'lambda_{i}^[{c}]')
               for i, g in enumerate(gell_mann(d))]
        lower = [Operator(embed(ket_bra(d, a, b), c, grouped), label=f'|{a}><{b}|^[{c}]')
                 for a in range(d) for b in range(a)]
        specs.append((ops, lower, slots))
    return _assemble(f'cluster(N={N},k={k})', (2,) * N, specs, all_up(N), irreducible=True)


def collective_cluster_algebra(N, k):
    """Collective su(2) over each cluster of k consecutive qubits"""
    check_qubit_count(N)
    if k < 1 or N % k:
        raise DimensionError(f"cluster size {k} must divide N={N}")
    dims = (2,) * N
    specs = []
    for c in range(N // k):
        slots = tuple(range(c * k, (c + 1) * k))
        collective = [sum(embed(p / 2, i, dims) for i in slots) for p in PAULIS]
        ops = [Operator(m, hermitian=True, label=f'J_{axis}^[{c}]') for axis, m in zip('xyz', collective)]
        lower = [Operator(sum(embed(SIGMA_MINUS, i, dims) for i in slots), label=f'J_-^[{c}]')]
        specs.append((ops, lower, slots))
    return _assemble(f'collective-cluster(N={N},k={k})', dims, specs, all_up(N), irreducible=(k == 1))


def jordan_wigner(N):
    """
    Fermion modes on N qubits

    n_i = |up><up|_i (occupied is spin up) and
    c_i = (prod_{j<i} -sigma_z^j) sigma_-^i, with sigma_- = |down><up|.
    The Fock vacuum is |down...down>; parity prod_i(-sigma_z^i) is +1 on it.
    """
    if not 1 <= N <= FERMION_MAX_MODES:
        raise DimensionError(f"mode count must lie in [1, {FERMION_MAX_MODES}], got {N}")
    dims = (2,) * N
    minus_z = -PAULIS[2]
    modes = []
    for i in range(N):
        factors = {j: minus_z for j in range(i)}
        factors[i] = SIGMA_MINUS
        modes.append(Operator(embed_many(factors, dims), label=f'c_{i}'))
    parity = Operator(embed_many({j: minus_z for j in range(N)}, dims), hermitian=True, label='P')
    return FermionRep(N=N, c=tuple(modes), parity=parity)


def fock_vacuum(N):
    return all_down(N)


def _fermion_u_ops(rep):
    N = rep.N
    c = [op.matrix for op in rep.c]
    cd = [m.conj().T.tocsr() for m in c]
    half = sparse.identity(2 ** N, dtype=np.complex128, format='csr') / 2
    ops = [Operator(cd[i] @ c[i] - half, hermitian=True, label=f'n_{i}-1/2') for i in range(N)]
    for i in range(N):
        for j in range(i + 1, N):
            hop = cd[i] @ c[j]
            ops.append(Operator.symmetrized(hop + hop.conj().T, label=f'hop_{i}{j}'))
            ops.append(Operator.symmetrized(1j * (hop - hop.conj().T), label=f'ihop_{i}{j}'))
    lowering = [Operator(cd[j] @ c[i], label=f'c+_{j}c_{i}') for i in range(N) for j in range(i + 1, N)]
    return ops, lowering, cd, c


def _check_modes(N):
    if not 2 <= N <= FERMION_MAX_MODES:
        raise DimensionError(f"mode count must lie in [2, {FERMION_MAX_MODES}], got {N}")


def fermion_u_algebra(N):
    """u(N): number-conserving bilinears n_i - 1/2 and hoppings on the Fock space"""
    _check_modes(N)
    ops, lowering, _, _ = _fermion_u_ops(jordan_wigner(N))
    return _assemble(f'fermion-u(N={N})', (2,) * N, [(ops, lowering, tuple(range(N)))], fock_vacuum(N),
                     irreducible=False)


def sector_indices(N, parity):
    """Fock basis indices of one fermion-parity sector ('even' holds the vacuum)"""
    if parity not in ('even', 'odd'):
        raise ConfigError('parity', f"must be 'even' or 'odd', got {parity!r}")
    occupied = N - np.array([bin(i).count('1') for i in range(2 ** N)])
    want = 0 if parity == 'even' else 1
    return np.flatnonzero(occupied % 2 == want)


def sector_state(psi, N, parity):
    """Restrict a Fock-space state to a parity sector; it must live there"""
    idx = sector_indices(N, parity)
    inside = psi.amplitudes[idx]
    leak = 1.0 - float(np.vdot(inside, inside).real)
    if leak > SECTOR_TOL:
        raise DimensionError(f"state {psi.label!r} has weight {leak:.3e} outside the {parity} sector")
    return PureState.normalized(inside, label=f'{psi.label}[{parity}]')


def fermion_so_algebra(N, parity=None):
    """
    so(2N): u(N) plus pairing bilinears c_i c_j + h.c.

    With `parity` set the algebra is restricted to that fermion-parity sector,
    an irreducible spinor representation of dimension 2^(N-1).
    """
    _check_modes(N)
    rep = jordan_wigner(N)
    ops, lowering, cd, c = _fermion_u_ops(rep)
    for i in range(N):
        for j in range(i + 1, N):
            pair = c[i] @ c[j]
            ops.append(Operator.symmetrized(pair + pair.conj().T, label=f'pair_{i}{j}'))
            ops.append(Operator.symmetrized(1j * (pair - pair.conj().T), label=f'ipair_{i}{j}'))
    lowering += [Operator(cd[j] @ cd[i], label=f'c+_{j}c+_{i}') for i in range(N) for j in range(i + 1, N)]

    if parity is None:
        return _assemble(f'fermion-so(N={N})', (2,) * N, [(ops, lowering, tuple(range(N)))], fock_vacuum(N),
                         irreducible=False)

    idx = sector_indices(N, parity)

    def restrict(op, hermitian):
        return Operator(op.matrix[idx][:, idx], hermitian=hermitian, label=op.label)

    if parity == 'even':
        reference = fock_vacuum(N)
    else:
        vector = rep.cdag(0).matrix @ fock_vacuum(N).amplitudes
        reference = PureState.normalized(vector, label='c+_0|vac>', dims=(2,) * N)
    reference = sector_state(reference, N, parity)
    sector_ops = [restrict(op, True) for op in ops]
    sector_lowering = [restrict(op, False) for op in lowering]
    return _assemble(f'fermion-so(N={N},{parity})', (len(idx),), [(sector_ops, sector_lowering, (0,))],
                     reference, irreducible=True)


def summands(alg):
    """The simple summands of `alg` as algebras on the same space, each normalized by the reference"""
    if len(alg.summands) == 1:
        return (alg,)
    parts = []
    for s, group in enumerate(alg.summands):
        basis = tuple(alg.basis[i] for i in group)
        raw = _raw_purity(basis, alg.reference_state.amplitudes)
        if raw <= get_config().TOLERANCES['dependent_operator']:
            raise CertificateError(f"summand {s} of {alg.name} has zero raw purity at the reference")
        lowering = tuple(op for op, owner in zip(alg.lowering_ops, alg.lowering_summand) if owner == s)
        parts.append(ObservableAlgebra(
            name=f'{alg.name}[{s}]',
            dims=alg.dims,
            basis=basis,
            K=1.0 / raw,
            reference_state=alg.reference_state,
            lowering_ops=lowering,
            summand_support=(alg.summand_support[s],),
            irreducible=alg.irreducible,
        ))
    return tuple(parts)


def closure_residual(alg):
    """Largest component of [x_i, x_j]/i outside the span of the basis"""
    return commutator_closure_residual(alg.basis)


def _span_residual(op, basis):
    residual = op.matrix
    for b in basis:
        coef = trace_inner(residual, b.matrix)
        if coef != 0.0:
            residual = residual - coef * b.matrix
    return float(np.sqrt(max(trace_inner(residual, residual), 0.0)))


def is_subalgebra(h2, h1, tol=1e-8):
    """True when every basis element of h2 lies in the real span of h1"""
    if h2.dim != h1.dim:
        return False
    return all(_span_residual(op, h1.basis) <= tol for op in h2.basis)


def _expectations(state, basis):
    if isinstance(state, PureState):
        v = state.amplitudes
        return np.array([np.vdot(v, op.matrix @ v).real for op in basis])
    return np.array([trace_inner(op.matrix, state.matrix) for op in basis])


def relative_reduction(state, h1, h2):
    """
    Reduce a state to h1, then further to a subalgebra h2 of h1

    The second step only needs the h1 expectations: <y_a> = sum_b tr(y_a x_b) <x_b>
    for h2 basis y and h1 basis x. Returns both purities, the deficit 1 - P_h1
    and the further deficit P_h1 - P_h2, plus the largest mismatch between
    the chained and the direct h2 reduction.
    """
    if state.dim != h1.dim:
        raise DimensionError(f"state of dimension {state.dim} does not fit algebra {h1.name} (dim {h1.dim})")
    if not is_subalgebra(h2, h1):
        raise UnsupportedAlgebraError(f"{h2.name} is not a subalgebra of {h1.name}")
    e1 = _expectations(state, h1.basis)
    overlap = np.array([[trace_inner(y.matrix, x.matrix) for x in h1.basis] for y in h2.basis])
    chained = overlap @ e1
    direct = _expectations(state, h2.basis)
    p1 = float(h1.K * np.dot(e1, e1))
    p2 = float(h2.K * np.dot(chained, chained))
    return {
        'purity_h1': p1,
        'purity_h2': p2,
        'deficit_h1': 1.0 - p1,
        'further_deficit': p1 - p2,
        'deficit_h2': 1.0 - p2,
        'chain_mismatch': float(np.abs(chained - direct).max()) if direct.size else 0.0,
    }


def random_group_element(alg, rng, scale=1.0):
    """e^{ih} with h = sum_i c_i x_i, c_i ~ N(0, dim * scale^2)"""
    coefs = rng.standard_normal(alg.size) * np.sqrt(alg.dim) * scale
    h = sum(c * op.matrix for c, op in zip(coefs, alg.basis))
    return unitary_from_generator(Operator.symmetrized(h, label='h'))


def group_orbit_state(alg, seed=None):
    """Random group element applied to the reference state: a generalized coherent state"""
    rng = np.random.default_rng(seed)
    U = random_group_element(alg, rng)
    return PureState.normalized(U.matrix @ alg.reference_state.amplitudes, label=f'orbit({alg.name})',
                                dims=alg.reference_state.dims)


def verify_normalization(alg, samples=1000, seed=0, tol=1e-8):
    """
    Sample Haar-random and group-orbit states and report the largest purity seen

    Returns a summary dict; `violations` counts samples above 1 + tol.
    """
    seeds = np.random.SeedSequence(seed).spawn(2 * samples)
    summary = {'samples': 2 * samples, 'max_purity': 0.0, 'violations': 0}
    for i, child in enumerate(seeds):
        rng = np.random.default_rng(child)
        if i % 2:
            psi = group_orbit_state(alg, rng)
        else:
            psi = haar_random(alg.dim, rng, dims=alg.dims)
        value = alg.K * _raw_purity(alg.basis, psi.amplitudes)
        summary['max_purity'] = max(summary['max_purity'], value)
        if value > 1.0 + tol:
            summary['violations'] += 1
            logger.warning(f"{alg.name}: sample {i} has purity {value:.12g} > 1")
    logger.info(f"Normalization check for {alg.name}: max purity {summary['max_purity']:.12g} "
                f"over {summary['samples']} samples, {summary['violations']} violations")
    return summary


def algebra_by_name(name, n=None, local_dims=None, j=None, copies=None, parity=None, cluster=None):
    """Resolve a CLI algebra name and its options to a built-in algebra"""
    def need(value, field):
        if value is None:
            raise ConfigError(field, f"required by algebra {name!r}")
        return value

    if name == 'local-qubits':
        return local_qubit_algebra(int(need(n, 'n')))
    if name == 'bipartite':
        m, k = need(local_dims, 'local_dims')
        return bipartite_algebra(int(m), int(k))
    if name == 'spin':
        return spin_algebra(float(need(j, 'j')), 1)
    if name == 'collective-spin':
        return spin_algebra(float(need(j, 'j')), int(copies or 2))
    if name == 'fermion-u':
        return fermion_u_algebra(int(need(n, 'n')))
    if name == 'fermion-so':
        return fermion_so_algebra(int(need(n, 'n')), parity)
    if name == 'full':
        dims = need(local_dims, 'local_dims')
        return full_algebra(int(np.prod(dims)))
    if name == 'cluster':
        return cluster_algebra(int(need(n, 'n')), int(need(cluster, 'cluster')))
    if name == 'collective-cluster':
        return collective_cluster_algebra(int(need(n, 'n')), int(need(cluster, 'cluster')))
    raise ConfigError('algebra', f"unknown algebra {name!r}; choose from {', '.join(ALGEBRA_NAMES)}")


def irreducible_builtins():
    """Small irreducible instances of every built-in family, for the theorem suite"""
    return [
        local_qubit_algebra(1),
        local_qubit_algebra(3),
        bipartite_algebra(2, 3),
        full_algebra(3),
        spin_algebra(1),
        spin_algebra(1.5),
        cluster_algebra(4, 2),
        fermion_so_algebra(4, 'even'),
    ]

