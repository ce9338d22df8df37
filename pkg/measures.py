"""
Mixed-state generalized-entanglement measures

The convex roof of the purity deficit 1 - P is searched over ensembles of
rho obtained from isometries acting on its eigen-decomposition: with
rho = sum_i l_i |e_i><e_i| every m-member ensemble is
|psi~_a> = sum_i U_ai sqrt(l_i) |e_i> for an m x r isometry U.
"""
import functools
import logging
from enum import Enum

import numpy as np
import scipy.linalg
import scipy.optimize
import scipy.special

from algebra import summands
from config import get_config
from errors import CertificateError, DimensionError, UnsupportedAlgebraError
from linalg import density_of
from models import Ensemble, PureState, RoofResult
from parallel import map_ordered, spawn_generators
from purity import h_purity, reduce
from states import PAULI_Y

logger = logging.getLogger(__name__)

RANK_TOL = 1e-12
WEIGHT_TOL = 1e-14
RECONSTRUCTION_TOL = 1e-8
FEASIBLE_TOL = 1e-8
MIXEDNESS_ROOF_EVALUATIONS = 2000


class Mixedness(Enum):
    """Concave, permutation-invariant functions on probability vectors"""
    ENTROPY = 'entropy'
    RENYI = 'renyi'

    def evaluate(self, p):
        if self is Mixedness.ENTROPY:
            return float(np.sum(scipy.special.entr(p)))
        return float(1.0 - np.dot(p, p))


def mixedness(p, m=Mixedness.RENYI):
    """sigma_ln(p) = -sum p ln p or sigma_1(p) = 1 - sum p^2"""
    p = np.asarray(p, dtype=float).reshape(-1)
    if np.any(p < 0):
        raise DimensionError(f"probabilities must be non-negative, got {p}")
    if abs(p.sum() - 1.0) > 1e-9:
        raise DimensionError(f"probabilities sum to {p.sum()!r}, expected 1")
    return Mixedness(m).evaluate(p)


def wootters_concurrence(rho):
    """C = max(0, l1 - l2 - l3 - l4), l_i the square roots of the spin-flip spectrum"""
    rho = density_of(rho)
    if rho.dim != 4:
        raise DimensionError(f"concurrence needs a two-qubit state, got dimension {rho.dim}")
    yy = np.kron(PAULI_Y, PAULI_Y)
    flipped = yy @ rho.matrix.conj() @ yy
    root = scipy.linalg.sqrtm(rho.matrix)
    middle = root @ flipped @ root
    values = np.sqrt(np.clip(np.linalg.eigvalsh((middle + middle.conj().T) / 2), 0.0, None))[::-1]
    return float(max(0.0, values[0] - values[1] - values[2] - values[3]))


class RoofEngine:
    """Random-restart search for the convex roof of a pure-state functional"""

    def __init__(self, config=None):
        self.config = {**get_config().ROOF_CONFIG, **(config or {})}

    def evaluate(self, rho, alg, pure_value=None, threads=None):
        """
        Best-found roof of `pure_value` (default 1 - h_purity) at rho

        Restart 0 starts from the eigen-ensemble, whose value is the baseline
        and always a candidate. Pure inputs are evaluated directly.
        """
        rho = density_of(rho)
        if rho.dim != alg.dim:
            raise DimensionError(f"state of dimension {rho.dim} does not fit algebra {alg.name}")

        values, vectors = scipy.linalg.eigh(rho.matrix)
        keep = values > RANK_TOL
        weights = values[keep][::-1]
        eigvecs = vectors[:, keep][:, ::-1]
        r = len(weights)

        use_purity = pure_value is None
        if use_purity:
            def pure_value(psi):
                return 1.0 - h_purity(psi, alg)

        if r == 1:
            psi = PureState.normalized(eigvecs[:, 0], label=rho.label, dims=rho.dims)
            value = float(pure_value(psi))
            return RoofResult(value=value, ensemble=Ensemble([1.0], [psi]), baseline=value)

        m = self.config['ensemble_cap'] or r * r
        if m < r:
            raise DimensionError(f"ensemble cap {m} is below rank {r}")

        W = eigvecs * np.sqrt(weights)
        if use_purity:
            objective = self._purity_objective(W, weights, alg)
        else:
            objective = self._generic_objective(W, pure_value, rho.dims)

        def fun(x):
            return objective(self._isometry(x, m, r))

        restarts = max(1, int(self.config['restarts']))
        rngs = spawn_generators(self.config['seed'], restarts)
        starts = [self._eigen_start(m, r)] + [rng.standard_normal(2 * m * r) for rng in rngs[1:]]
        logger.debug(f"Roof search on {rho.label or 'rho'}: rank {r}, {m} members, {restarts} restarts")

        outcomes = map_ordered(lambda x0: self._run(fun, x0), starts, threads)
        baseline = float(fun(starts[0]))
        best_x, best_value = starts[0], baseline
        failed = 0
        for x, value in outcomes:
            if x is None:
                failed += 1
            elif value < best_value:
                best_x, best_value = x, value

        ensemble = self._ensemble(W, self._isometry(best_x, m, r), rho)
        logger.debug(f"Roof value {best_value:.8g} (baseline {baseline:.8g}, {failed} failed restarts)")
        return RoofResult(value=float(best_value), ensemble=ensemble, baseline=baseline,
                          restarts=restarts, failed_restarts=failed)

    def _options(self):
        options = {'maxiter': int(self.config['max_iterations'])}
        if self.config.get('max_evaluations'):
            key = 'maxfun' if self.config['method'] in ('L-BFGS-B', 'TNC') else 'maxfev'
            options[key] = int(self.config['max_evaluations'])
        return options

    def _run(self, fun, x0):
        try:
            res = scipy.optimize.minimize(
                fun, x0, method=self.config['method'],
                tol=self.config['tolerance'] * 1e-2,
                options=self._options(),
            )
            return res.x, float(fun(res.x))
        except (ValueError, np.linalg.LinAlgError) as e:
            logger.warning(f"Roof restart failed: {e}")
            return None, float('inf')

    @staticmethod
    def _eigen_start(m, r):
        Z = np.zeros((m, r), dtype=np.complex128)
        Z[:r, :r] = np.eye(r)
        return np.concatenate([Z.real.ravel(), Z.imag.ravel()])

    @staticmethod
    def _isometry(x, m, r):
        Z = (x[:m * r] + 1j * x[m * r:]).reshape(m, r)
        U, _ = scipy.linalg.polar(Z)
        return U

    @staticmethod
    def _purity_objective(W, weights, alg):
        # X_i = W^dag x_i W in the eigenbasis; W^dag W = diag(weights)
        X = np.array([W.conj().T @ (m @ W) for m in alg.matrices])
        K = alg.K

        def objective(U):
            p = np.einsum('ak,k,ak->a', U.conj(), weights, U).real
            ex = np.einsum('ak,ikl,al->ai', U.conj(), X, U).real
            mask = p > WEIGHT_TOL
            return float(1.0 - K * np.sum(ex[mask] ** 2 / p[mask, None]))

        return objective

    @staticmethod
    def _generic_objective(W, pure_value, dims):
        def objective(U):
            members = W @ U.T
            p = np.sum(np.abs(members) ** 2, axis=0)
            total = 0.0
            for a in np.flatnonzero(p > WEIGHT_TOL):
                psi = PureState(members[:, a] / np.sqrt(p[a]), dims=dims)
                total += p[a] * pure_value(psi)
            return float(total)

        return objective

    @staticmethod
    def _ensemble(W, U, rho):
        members = W @ U.T
        p = np.sum(np.abs(members) ** 2, axis=0)
        idx = np.flatnonzero(p > WEIGHT_TOL)
        states = [PureState.normalized(members[:, a], label=f'member{k}', dims=rho.dims) for k, a in enumerate(idx)]
        ensemble = Ensemble(p[idx] / p[idx].sum(), states)
        error = float(np.abs(ensemble.density() - rho.matrix).max())
        if error > RECONSTRUCTION_TOL:
            raise CertificateError(f"roof ensemble reconstructs rho only to {error:.3e}")
        return ensemble


def roof_purity_deficit(rho, alg, opts=None, threads=None):
    """min over ensembles of 1 - sum_i p_i P(psi_i); returns a RoofResult"""
    return RoofEngine(opts).evaluate(rho, alg, threads=threads)


@functools.lru_cache(maxsize=32)
def _summand_scales(alg):
    if any(len(group) != 3 for group in alg.summands):
        raise UnsupportedAlgebraError(f"reduced mixedness needs su(2) summands, {alg.name} has other summands")
    return tuple(np.sqrt(part.K) for part in summands(alg))


def _summand_bloch(state, alg):
    """Normalized Bloch vector b_s = sqrt(K_s) <x_s> of every su(2) summand"""
    scales = _summand_scales(alg)
    expectations = reduce(state, alg).expectations
    return np.array([expectations[list(group)] * scale for scale, group in zip(scales, alg.summands)])


def _unit(v):
    r = np.linalg.norm(v)
    return v / r if r > 1e-12 else np.array([0.0, 0.0, 1.0])


def _chord_seed(bloch):
    """
    Feasible decomposition from the diameter chords of every summand

    The two-point chord distributions are coupled comonotonically, which
    needs at most (number of summands + 1) members.
    """
    radii = np.clip(np.linalg.norm(bloch, axis=1), 0.0, 1.0)
    q = (1.0 + radii) / 2.0
    cuts = np.unique(np.concatenate([[0.0, 1.0], q]))
    weights, directions = [], []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi - lo <= 0:
            continue
        mid = (lo + hi) / 2.0
        weights.append(hi - lo)
        directions.append([_unit(b) if mid < qs else -_unit(b) for b, qs in zip(bloch, q)])
    return np.array(weights), np.array(directions)


def _angles(directions):
    theta = np.arccos(np.clip(directions[..., 2], -1.0, 1.0))
    phi = np.arctan2(directions[..., 1], directions[..., 0])
    return theta, phi


def _directions(theta, phi):
    return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)


def reduced_decomposition(state, alg, measure=Mixedness.RENYI, opts=None):
    """
    Decomposition of the reduced state into coherent-state projections minimizing sigma

    Returns (value, weights, directions) with directions[k, s] the unit Bloch
    vector of member k on summand s. A single summand is solved in closed
    form by the diameter chord; otherwise the chord seed is refined by SLSQP
    plus `restarts - 1` random starts, and `restarts=0` returns the seed.
    """
    measure = Mixedness(measure)
    opts = opts or {}
    bloch = _summand_bloch(state, alg)
    seed_w, seed_dirs = _chord_seed(bloch)
    best = (mixedness(seed_w, measure), seed_w, seed_dirs)
    S = len(bloch)
    restarts = int(opts.get('restarts', 4))
    if S == 1 or restarts < 1:
        return best

    members = min(int(opts.get('ensemble_cap') or 3 * S + 1), 3 * S + 1)
    rngs = spawn_generators(opts.get('seed', 0), restarts)

    def unpack(x, L):
        p = x[:L]
        theta = x[L:L + L * S].reshape(L, S)
        phi = x[L + L * S:].reshape(L, S)
        return p, _directions(theta, phi)

    def solve(x0, L):
        constraints = [
            {'type': 'eq', 'fun': lambda x: np.array([x[:L].sum() - 1.0])},
            {'type': 'eq', 'fun': lambda x: (np.einsum('k,ksa->sa', *unpack(x, L)) - bloch).ravel()},
        ]
        bounds = [(0.0, 1.0)] * L + [(None, None)] * (2 * L * S)
        res = scipy.optimize.minimize(
            lambda x: measure.evaluate(np.clip(x[:L], 0.0, None)), x0, method='SLSQP',
            bounds=bounds, constraints=constraints, options={'maxiter': 500, 'ftol': 1e-12},
        )
        p, dirs = unpack(res.x, L)
        p = np.clip(p, 0.0, None)
        violation = max(abs(p.sum() - 1.0), float(np.abs(np.einsum('k,ksa->sa', p, dirs) - bloch).max()))
        if violation > FEASIBLE_TOL:
            return None
        p = p / p.sum()
        return measure.evaluate(p), p, dirs

    theta, phi = _angles(seed_dirs)
    L0 = len(seed_w)
    candidates = [solve(np.concatenate([seed_w, theta.ravel(), phi.ravel()]), L0)]
    for rng in rngs[1:]:
        p0 = rng.dirichlet(np.ones(members))
        angles = np.concatenate([rng.uniform(0, np.pi, members * S), rng.uniform(-np.pi, np.pi, members * S)])
        candidates.append(solve(np.concatenate([p0, angles]), members))

    for candidate in candidates:
        if candidate is not None and candidate[0] < best[0]:
            best = candidate
    return best


def reduced_mixedness(state, alg, measure=Mixedness.RENYI, opts=None):
    """sigma of the reduced state: least mixedness over decompositions into coherent-state projections"""
    return float(reduced_decomposition(state, alg, measure, opts)[0])


def refined_mixedness(state, alg, measure=Mixedness.RENYI, seed=0):
    """Reduced mixedness from the chord seed polished by a single SLSQP run"""
    return reduced_mixedness(state, alg, measure, {'seed': seed, 'restarts': 1})


def roof_mixedness(rho, alg, measure=Mixedness.RENYI, opts=None, threads=None):
    """
    Ensemble roof of the reduced mixedness of pure members (an upper bound)

    The ensemble search scores members by their chord decompositions only,
    with a derivative-free method and a capped number of evaluations unless
    configured otherwise. Members of the best ensemble are then re-scored
    with refined_mixedness, which never exceeds the chord value.
    """
    opts = {'method': 'Powell', 'max_evaluations': MIXEDNESS_ROOF_EVALUATIONS, **(opts or {})}
    seed = opts.get('seed', get_config().ROOF_CONFIG['seed'])

    def chord_value(psi):
        return reduced_mixedness(psi, alg, measure, {'restarts': 0})

    result = RoofEngine(opts).evaluate(rho, alg, pure_value=chord_value, threads=threads)
    members = [refined_mixedness(psi, alg, measure, seed) for psi in result.ensemble.states]
    value = min(float(np.dot(result.ensemble.weights, members)), result.value)
    logger.debug(f"Mixedness roof {result.value:.8g} from chords, {value:.8g} refined")
    return RoofResult(value=value, ensemble=result.ensemble, baseline=result.baseline,
                      restarts=result.restarts, failed_restarts=result.failed_restarts)
