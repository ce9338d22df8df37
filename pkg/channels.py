"""
CP maps given by HK operators, conditional composition and GLOCC sampling

A sampled GLOCC map is a chain of stages. Each stage acts on one simple
summand (factor) of the algebra: either a projective measurement in the
eigenbasis of that factor's reference Hamiltonian followed by an outcome
dependent group unitary, or a single group unitary. Every HK operator of a
stage gets its own independently drawn next stage.
"""
import logging

import numpy as np

from algebra import random_group_element, summands
from config import get_config
from errors import DimensionError
from linalg import density_of, hermitian_eig
from measures import RoofEngine
from models import CPMap, DensityMatrix, Operator
from parallel import map_ordered, spawn_generators
from purity import algebra_hamiltonian, reduce

logger = logging.getLogger(__name__)

OUTCOME_TOL = 1e-14
LEVEL_TOL = 1e-9


def apply(cp_map, rho):
    """rho -> sum_i A_i rho A_i^dagger"""
    rho = density_of(rho)
    if rho.dim != cp_map.dim:
        raise DimensionError(f"map of dimension {cp_map.dim} applied to state of dimension {rho.dim}")
    out = np.zeros_like(rho.matrix)
    for op in cp_map.hk_ops:
        A = op.dense()
        out += A @ rho.matrix @ A.conj().T
    return DensityMatrix(out, label=f'{cp_map.label}({rho.label})', dims=rho.dims,
                         subnormalized=(cp_map.trace_property == 'nonincreasing'))


def conditional_compose(cp_map, branches, label=''):
    """HK operators {B_ij A_i}: branch i follows outcome i of `cp_map`"""
    if len(branches) != len(cp_map.hk_ops):
        raise DimensionError(f"{len(branches)} branches for a map with {len(cp_map.hk_ops)} HK operators")
    ops = []
    for i, (A, branch) in enumerate(zip(cp_map.hk_ops, branches)):
        if branch.dim != cp_map.dim:
            raise DimensionError(f"branch {i} has dimension {branch.dim}, expected {cp_map.dim}")
        for j, B in enumerate(branch.hk_ops):
            ops.append(Operator(B.matrix @ A.matrix, label=f'B{i}{j}A{i}'))
    preserving = cp_map.trace_property == 'preserving' and all(b.trace_property == 'preserving' for b in branches)
    return CPMap(tuple(ops), trace_property='preserving' if preserving else 'nonincreasing',
                 label=label or f'{cp_map.label}>>branches')


def identity_map(dim):
    return CPMap((Operator(np.eye(dim), hermitian=True, label='1'),), label='id')


def projective_measurement(alg):
    """
    Projectors onto the eigenspaces of the reference Hamiltonian -sum_i <ref|x_i|ref> x_i

    For a local factor these are the weight spaces of its Cartan element
    pointing along the reference state.
    """
    H = algebra_hamiltonian(reduce(alg.reference_state, alg))
    spectrum = hermitian_eig(H)
    values, vectors = spectrum.eigenvalues, spectrum.eigenvectors
    scale = max(spectrum.width, 1.0)
    levels, start = [], 0
    for k in range(1, len(values) + 1):
        if k == len(values) or values[k] - values[k - 1] > LEVEL_TOL * scale:
            levels.append((start, k))
            start = k
    projectors = []
    for lo, hi in levels:
        V = vectors[:, lo:hi]
        projectors.append(Operator.symmetrized(V @ V.conj().T, label=f'P[{values[lo]:.4g}]'))
    return CPMap(tuple(projectors), label=f'measure[{alg.name}]')


def unitary_map(U, label='U'):
    return CPMap((Operator(U.matrix, label=label),), label=label)


def random_unitary_map(alg, branches=2, seed=None):
    """Mixture of random group unitaries, HK operators sqrt(q_b) U_b"""
    rng = np.random.default_rng(seed)
    q = rng.dirichlet(np.ones(branches))
    ops = tuple(Operator(np.sqrt(qb) * random_group_element(alg, rng).matrix, label=f'sqrt(q{b})U{b}')
                for b, qb in enumerate(q))
    return CPMap(ops, label=f'mix{branches}[{alg.name}]')


def superoperator(cp_map):
    """Liouville matrix sum_i A_i (x) conj(A_i) acting on row-major vec(rho)"""
    return sum(np.kron(op.dense(), op.dense().conj()) for op in cp_map.hk_ops)


def outcome_states(cp_map, rho):
    """(probability, normalized post-state) for every HK operator with nonzero weight"""
    rho = density_of(rho)
    results = []
    for i, op in enumerate(cp_map.hk_ops):
        A = op.dense()
        sigma = A @ rho.matrix @ A.conj().T
        p = float(np.trace(sigma).real)
        if p > OUTCOME_TOL:
            results.append((p, DensityMatrix(sigma / p, label=f'{rho.label}|{i}', dims=rho.dims)))
    return results


def _check_disjoint(factors):
    seen = set()
    for factor in factors:
        slots = set(factor.support)
        if seen & slots:
            raise DimensionError(f"factor {factor.name} overlaps slots {sorted(seen & slots)}")
        seen |= slots


def _stage(factors, rng, measure_probability):
    factor = factors[int(rng.integers(len(factors)))]
    if rng.random() < measure_probability:
        measurement = projective_measurement(factor)
        branches = [unitary_map(random_group_element(factor, rng), label='U') for _ in measurement.hk_ops]
        return conditional_compose(measurement, branches, label=f'measure+U[{factor.name}]')
    return unitary_map(random_group_element(factor, rng), label=f'U[{factor.name}]')


def sample_unitary_glocc(factors, depth=None, seed=None, measure_probability=None):
    """Depth-fold conditional composition of single-factor stages"""
    settings = get_config().GLOCC_CONFIG
    depth = settings['depth'] if depth is None else depth
    measure_probability = settings['measure_probability'] if measure_probability is None else measure_probability
    factors = list(factors)
    if not factors:
        raise DimensionError("GLOCC sampling needs at least one factor")
    if depth < 1:
        raise DimensionError(f"depth must be >= 1, got {depth}")
    _check_disjoint(factors)

    rng = np.random.default_rng(seed)
    cp_map = _stage(factors, rng, measure_probability)
    for level in range(1, depth):
        branches = [_stage(factors, rng, measure_probability) for _ in cp_map.hk_ops]
        cp_map = conditional_compose(cp_map, branches, label=f'glocc(depth={level + 1})')
    return cp_map


def averaged_roof(cp_map, rho, alg, engine, threads=1):
    """sum_o p_o E(rho_o) over the outcomes of the map"""
    return sum(p * engine.evaluate(post, alg, threads=threads).value for p, post in outcome_states(cp_map, rho))


def monotonicity_audit(rho, alg, trials=None, maps=None, depth=None, seed=0, roof_opts=None, threads=None):
    """
    Compare the roof before with the outcome-averaged roof after sampled GLOCC maps

    Trials whose excess exceeds twice the optimizer tolerance are
    re-estimated with `recheck_factor` times the restarts; those still above
    count as violations. Returns a summary dict with one row per trial.
    """
    settings = get_config().GLOCC_CONFIG
    engine = RoofEngine(roof_opts)
    tolerance = 2.0 * engine.config['tolerance']
    factors = summands(alg)

    if maps is None:
        trials = settings['trials'] if trials is None else trials
        maps = [sample_unitary_glocc(factors, depth, seed=rng) for rng in spawn_generators(seed, trials)]
    maps = list(maps)

    before = engine.evaluate(rho, alg, threads=1).value
    logger.info(f"GLOCC audit on {alg.name}: {len(maps)} maps, roof before {before:.8g}")

    def run_trial(indexed):
        i, cp_map = indexed
        after = averaged_roof(cp_map, rho, alg, engine)
        return {'trial': i, 'hk_ops': len(cp_map.hk_ops), 'before': before, 'after': after,
                'excess': after - before, 'status': 'ok' if after - before <= tolerance else 'excess'}

    rows = map_ordered(run_trial, enumerate(maps), threads)

    flagged = [row for row in rows if row['status'] == 'excess']
    if flagged:
        strong = RoofEngine({**engine.config, 'restarts': engine.config['restarts'] * settings['recheck_factor']})
        strong_before = strong.evaluate(rho, alg, threads=1).value
        for row in flagged:
            after = averaged_roof(maps[row['trial']], rho, alg, strong)
            row['recheck_excess'] = after - strong_before
            row['status'] = 'resolved' if after - strong_before <= tolerance else 'violation'
            logger.debug(f"Trial {row['trial']}: recheck excess {row['recheck_excess']:.3e} -> {row['status']}")

    violations = sum(1 for row in rows if row['status'] == 'violation')
    within = sum(1 for row in rows if row['status'] == 'ok')
    summary = {
        'algebra': alg.name,
        'trials': len(rows),
        'within_tolerance': within,
        'rechecked': len(flagged),
        'resolved_by_recheck': len(flagged) - violations,
        'violations': violations,
        'max_excess': max((row['excess'] for row in rows), default=0.0),
        'tolerance': tolerance,
        'passed': violations == 0 and within >= (1.0 - settings['allowed_violation_fraction']) * len(rows),
        'rows': rows,
    }
    if violations:
        logger.warning(f"GLOCC audit: {violations} violations beyond {tolerance:.1e} after recheck")
    logger.info(f"GLOCC audit: {within}/{len(rows)} within tolerance, max excess {summary['max_excess']:.3e}")
    return summary

