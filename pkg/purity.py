"""
Reduced states, h-purity and generalized-entanglement classification

Also hosts the numerical check of the equivalence between maximal purity,
being the unique ground state of an algebra Hamiltonian, and being a
highest-weight vector of a conjugated set of lowering operators.
"""
import logging

import numpy as np

from algebra import random_group_element
from config import get_config
from errors import DimensionError, UnsupportedAlgebraError
from linalg import hermitian_eig, pure_partial_trace, trace_inner
from models import DensityMatrix, GroundStateReport, Operator, PureState, ReducedState
from parallel import map_ordered, spawn_generators
from states import haar_random

logger = logging.getLogger(__name__)

ZERO_REDUCED_TOL = 1e-12
RANDOM_ENTANGLED_MARGIN = 1e-3


def _check_dim(state, alg):
    if state.dim != alg.dim:
        raise DimensionError(f"state of dimension {state.dim} does not fit algebra {alg.name} (dim {alg.dim})")


def reduce(state, alg):
    """Expectations tr(rho x_i) of the algebra's orthonormal basis"""
    _check_dim(state, alg)
    if isinstance(state, PureState):
        v = state.amplitudes
        values = [np.vdot(v, m @ v).real for m in alg.matrices]
    elif isinstance(state, DensityMatrix):
        values = [trace_inner(m, state.matrix) for m in alg.matrices]
    else:
        raise DimensionError(f"cannot reduce {state!r}")
    return ReducedState(algebra=alg, expectations=np.array(values))


def h_purity(state, alg):
    """K * sum_i <psi|x_i|psi>^2 for a pure state"""
    if not isinstance(state, PureState):
        raise DimensionError("h_purity is defined on pure states; use the roof measures for mixed states")
    return reduce(state, alg).purity


def meyer_wallach(state):
    """Q = (2/N) sum_i (1 - tr rho_i^2) from single-qubit partial traces"""
    N = int(round(np.log2(state.dim)))
    if N < 1 or 2 ** N != state.dim:
        raise DimensionError(f"Meyer-Wallach needs a qubit register, got dimension {state.dim}")
    dims = (2,) * N
    total = 0.0
    for i in range(N):
        rho_i = pure_partial_trace(state, dims, [i]).matrix
        total += 1.0 - float(np.real(np.trace(rho_i @ rho_i)))
    return 2.0 * total / N


def is_unentangled(state, alg, tol=None):
    tol = get_config().TOLERANCES['unentangled'] if tol is None else tol
    return h_purity(state, alg) >= 1.0 - tol


def algebra_hamiltonian(reduced):
    """H = -sum_i <x_i> x_i, the algebra element pointing along the reduced state"""
    alg = reduced.algebra
    matrix = sum(-e * m for e, m in zip(reduced.expectations, alg.matrices))
    return Operator.symmetrized(matrix, label=f'H[{alg.name}]')


def ground_state_check(state, alg, gap_tol=None, overlap_tol=None):
    """
    Is `state` the nondegenerate ground state of H = -sum_i <x_i> x_i?

    The ground level counts as nondegenerate when its gap exceeds
    gap_tol * (spectral width); the state spans it when its overlap with the
    ground vector exceeds 1 - overlap_tol. A vanishing reduced state gives
    H = 0, reported as not unique.
    """
    tolerances = get_config().TOLERANCES
    gap_tol = tolerances['degenerate_gap'] if gap_tol is None else gap_tol
    overlap_tol = tolerances['ground_overlap'] if overlap_tol is None else overlap_tol

    reduced = reduce(state, alg)
    if np.abs(reduced.expectations).max() < ZERO_REDUCED_TOL:
        logger.debug(f"{state.label}: reduced state vanishes, H = 0")
        return GroundStateReport(is_unique_ground=False, gap=0.0, overlap=0.0)

    spectrum = hermitian_eig(algebra_hamiltonian(reduced))
    gap = spectrum.ground_gap
    nondegenerate = gap > gap_tol * spectrum.width
    overlap = float(abs(np.vdot(spectrum.eigenvectors[:, 0], state.amplitudes)) ** 2)
    return GroundStateReport(
        is_unique_ground=bool(nondegenerate and overlap > 1.0 - overlap_tol),
        gap=float(gap),
        overlap=overlap,
    )


def adapted_lowering_ops(alg, frame=None, reverse=False):
    """
    Lowering operators conjugated by a group element, U L U^dagger

    `reverse=True` takes the adjoint set (the opposite Weyl chamber); the
    built-in references are annihilated by that set, so its conjugate by U
    annihilates U|ref>.
    """
    if not alg.lowering_ops:
        raise UnsupportedAlgebraError(f"algebra {alg.name} has no lowering operators")
    ops = [op.adjoint() for op in alg.lowering_ops] if reverse else list(alg.lowering_ops)
    if frame is None:
        return ops
    U = frame.dense()
    return [Operator(U @ (op.matrix @ U.conj().T), label=f'U{op.label}U^dag') for op in ops]


def lowest_weight_check(state, alg, ops=None, tol=None):
    """True iff every lowering operator annihilates the state (norm below tol)"""
    tol = get_config().TOLERANCES['lowest_weight'] if tol is None else tol
    ops = alg.lowering_ops if ops is None else ops
    if not ops:
        raise UnsupportedAlgebraError(f"algebra {alg.name} has no lowering operators")
    _check_dim(state, alg)
    return all(np.linalg.norm(op.matrix @ state.amplitudes) < tol for op in ops)


def _orbit_trial(alg, rng):
    U = random_group_element(alg, rng)
    psi = PureState.normalized(U.matrix @ alg.reference_state.amplitudes, label='orbit', dims=alg.reference_state.dims)
    problems = []
    purity = h_purity(psi, alg)
    if abs(purity - 1.0) > get_config().TOLERANCES['unentangled']:
        problems.append(f"purity {purity:.12g}")
    if not ground_state_check(psi, alg).is_unique_ground:
        problems.append("not the unique ground state")
    if alg.lowering_ops and not lowest_weight_check(psi, alg, ops=adapted_lowering_ops(alg, U, reverse=True)):
        problems.append("not annihilated by conjugated raising operators")
    return purity, problems


def _random_trial(alg, rng):
    psi = haar_random(alg.dim, rng, dims=alg.dims)
    purity = h_purity(psi, alg)
    unique = ground_state_check(psi, alg).is_unique_ground
    if purity < 1.0 - RANDOM_ENTANGLED_MARGIN:
        return purity, 'tested', ([f"purity {purity:.6g} but unique ground state"] if unique else [])
    if purity >= 1.0 - get_config().TOLERANCES['unentangled']:
        return purity, 'unentangled', ([] if unique else [f"purity {purity:.12g} but no unique ground state"])
    return purity, 'skipped', []


def theorem_suite(alg, orbit_samples=None, random_samples=None, seed=0, threads=None):
    """
    Numerical equivalence check on an irreducible algebra

    Group-orbit states of the reference must have purity 1, be the unique
    ground state of their algebra Hamiltonian and be annihilated by the
    conjugated raising operators. Haar-random states with purity below
    1 - 1e-3 must fail the ground-state check; random states that happen to
    have purity 1 must pass it. Findings are counted, never raised.
    """
    if not alg.irreducible:
        raise UnsupportedAlgebraError(f"theorem suite needs an irreducible representation, {alg.name} is reducible")

    settings = get_config().THEOREM_CONFIG
    orbit_samples = settings['orbit_samples'] if orbit_samples is None else orbit_samples
    random_samples = settings['random_samples'] if random_samples is None else random_samples
    rngs = spawn_generators(seed, orbit_samples + random_samples)

    logger.info(f"Theorem suite on {alg.name}: {orbit_samples} orbit + {random_samples} random samples")
    orbit = map_ordered(lambda rng: _orbit_trial(alg, rng), rngs[:orbit_samples], threads)
    random = map_ordered(lambda rng: _random_trial(alg, rng), rngs[orbit_samples:], threads)

    summary = {
        'algebra': alg.name,
        'orbit_samples': orbit_samples,
        'orbit_failures': 0,
        'random_samples': random_samples,
        'random_tested': 0,
        'random_unentangled': 0,
        'random_skipped': 0,
        'random_failures': 0,
        'min_orbit_purity': min((p for p, _ in orbit), default=float('nan')),
        'max_random_purity': max((p for p, _, _ in random), default=float('nan')),
        'counterexamples': [],
    }
    for i, (_, problems) in enumerate(orbit):
        if problems:
            summary['orbit_failures'] += 1
            summary['counterexamples'].append(f"orbit sample {i}: {'; '.join(problems)}")
    for i, (_, kind, problems) in enumerate(random):
        summary[f'random_{kind}'] += 1
        if problems:
            summary['random_failures'] += 1
            summary['counterexamples'].append(f"random sample {i}: {'; '.join(problems)}")

    for line in summary['counterexamples']:
        logger.warning(f"{alg.name}: {line}")
    logger.info(f"{alg.name}: orbit failures {summary['orbit_failures']}, "
                f"random failures {summary['random_failures']} (tested {summary['random_tested']})")
    return summary
