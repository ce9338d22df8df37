"""
Anisotropic XY chain in a transverse field

H = -g sum_i [(1+eta) J_x^i J_x^{i+1} + (1-eta) J_y^i J_y^{i+1}] + sum_i J_z^i
with J = sigma/2 and periodic closure. Under the Jordan-Wigner convention of
algebra.jordan_wigner this is, in the even fermion-parity sector,

    H = -(g/2) sum_j [c_j^+ c_{j+1} + eta c_j^+ c_{j+1}^+ + h.c.] + sum_j (n_j - 1/2)

with antiperiodic closure c_N = -c_0, so k = (2m+1) pi / N. Each (k, -k)
pair is a 2x2 problem with eps_k = 1 - g cos k,
Lambda_k = sqrt(eps_k^2 + g^2 eta^2 sin^2 k) and ground energy -sum_{k>0} Lambda_k.
"""
import logging

import numpy as np
import scipy.integrate
import scipy.stats
from scipy import sparse

from algebra import fock_vacuum, jordan_wigner, sector_indices
from config import get_config
from errors import DimensionError
from linalg import embed_many, hermitian_eig
from models import BogoliubovSolution, Operator, PureState, PurityScan, XYParams
from parallel import map_ordered
from states import PAULIS

logger = logging.getLogger(__name__)

DENSE_MAX_SITES = 12
DEGENERATE_GAP = 1e-10
MIN_FIT_POINTS = 5


def _check_dense(p):
    if p.N > DENSE_MAX_SITES:
        raise DimensionError(f"full-space representation limited to N <= {DENSE_MAX_SITES}, got N={p.N}")


def build_hamiltonian(p):
    """Sparse 2^N x 2^N Hamiltonian in the spin basis"""
    _check_dense(p)
    dims = (2,) * p.N
    sx, sy, sz = PAULIS
    H = sparse.csr_matrix((2 ** p.N, 2 ** p.N), dtype=np.complex128)
    for i in range(p.N):
        j = (i + 1) % p.N
        xx = embed_many({i: sx, j: sx}, dims)
        yy = embed_many({i: sy, j: sy}, dims)
        H = H - (p.g / 4) * ((1 + p.eta) * xx + (1 - p.eta) * yy)
        H = H + 0.5 * embed_many({i: sz}, dims)
    return Operator.symmetrized(H, label=f'H_XY(N={p.N},g={p.g:g},eta={p.eta:g})')


def _sector_spectrum(p, sector):
    """Two lowest eigenpairs of H inside one parity sector (or the whole space)"""
    H = build_hamiltonian(p).matrix
    if sector is None:
        idx = np.arange(2 ** p.N)
    else:
        idx = sector_indices(p.N, sector)
    block = Operator(H[idx][:, idx].toarray(), hermitian=True, label=f'H[{sector or "all"}]')
    spectrum = hermitian_eig(block, subset=(0, min(1, len(idx) - 1)))
    return idx, spectrum


def parity_sector_energies(p):
    """Ground energies of both fermion-parity sectors and their splitting"""
    _, even = _sector_spectrum(p, 'even')
    _, odd = _sector_spectrum(p, 'odd')
    e_even, e_odd = float(even.eigenvalues[0]), float(odd.eigenvalues[0])
    report = {
        'even': e_even,
        'odd': e_odd,
        'splitting': e_odd - e_even,
        'ground_sector': 'even' if e_even <= e_odd else 'odd',
    }
    if e_odd < e_even:
        logger.info(f"N={p.N} g={p.g:g} eta={p.eta:g}: odd sector lies lower by {e_even - e_odd:.3e}")
    return report


def exact_ground_energy(p, sector=None):
    if sector is None:
        report = parity_sector_energies(p)
        return min(report['even'], report['odd'])
    _, spectrum = _sector_spectrum(p, sector)
    return float(spectrum.eigenvalues[0])


def exact_ground(p, sector=None):
    """
    Lowest eigenvector by dense diagonalization, phase-fixed, in the full spin space

    With `sector` unset both parity sectors are solved and the lower one is
    taken. A ground gap below 1e-10 is logged as a degenerate ground space.
    """
    _check_dense(p)
    if sector is None:
        candidates = [(s,) + _sector_spectrum(p, s) for s in ('even', 'odd')]
        levels = sorted((float(e), s) for s, _, spec in candidates for e in spec.eigenvalues)
        chosen = min(candidates, key=lambda c: c[2].eigenvalues[0])
        gap = levels[1][0] - levels[0][0]
        sector_name, idx, spectrum = chosen
    else:
        idx, spectrum = _sector_spectrum(p, sector)
        sector_name = sector
        gap = spectrum.ground_gap

    if gap < DEGENERATE_GAP:
        logger.warning(f"N={p.N} g={p.g:g} eta={p.eta:g}: near-degenerate ground space (gap {gap:.3e})")

    vector = np.zeros(2 ** p.N, dtype=np.complex128)
    vector[idx] = spectrum.eigenvectors[:, 0]
    return PureState.normalized(vector, label=f'ground[{sector_name}](N={p.N},g={p.g:g})', dims=(2,) * p.N)


def momentum_grid(N):
    """Antiperiodic momenta (2m+1) pi / N, ascending, symmetric under k -> -k"""
    return np.pi * (2 * np.arange(-N // 2, N // 2) + 1) / N


def solve_bogoliubov(p):
    """Per-momentum Bogoliubov angles, energies and occupations of the even sector"""
    k = momentum_grid(p.N)
    eps = 1.0 - p.g * np.cos(k)
    delta = p.g * p.eta * np.sin(k)
    lam = np.hypot(eps, delta)
    theta = np.arctan2(delta, eps)
    vk2 = np.sin(theta / 2) ** 2
    return BogoliubovSolution(
        params=p,
        k_grid=k,
        theta_k=theta,
        lambda_k=lam,
        vk2=vk2,
        ground_energy=float(-0.5 * lam.sum()),
    )


def bcs_purity(p_or_solution):
    """u(N) purity of the BCS state, (4/N) sum_k (v_k^2 - 1/2)^2"""
    sol = p_or_solution if isinstance(p_or_solution, BogoliubovSolution) else solve_bogoliubov(p_or_solution)
    return float(4.0 / sol.params.N * np.sum((sol.vk2 - 0.5) ** 2))


def bcs_state(p_or_solution):
    """prod_{k>0} (u_k + v_k c_k^+ c_{-k}^+)|vac> in the 2^N Fock space, u_k = cos(theta/2), v_k = i sin(theta/2)"""
    sol = p_or_solution if isinstance(p_or_solution, BogoliubovSolution) else solve_bogoliubov(p_or_solution)
    N = sol.params.N
    _check_dense(sol.params)
    rep = jordan_wigner(N)
    cdag = [rep.cdag(j).matrix for j in range(N)]
    sites = np.arange(N)

    def mode_creation(k):
        phases = np.exp(1j * k * sites) / np.sqrt(N)
        return sum(ph * m for ph, m in zip(phases, cdag))

    psi = fock_vacuum(N).amplitudes.copy()
    for k, theta in zip(sol.k_grid, sol.theta_k):
        if k <= 0:
            continue
        u, v = np.cos(theta / 2), 1j * np.sin(theta / 2)
        psi = u * psi + v * (mode_creation(k) @ (mode_creation(-k) @ psi))
    return PureState.normalized(psi, label=f'BCS(N={N},g={sol.params.g:g})', dims=(2,) * N)


def thermodynamic_purity(g, eta):
    """N -> infinity purity (1/pi) int_0^pi cos^2 theta_k dk"""
    def integrand(k):
        return np.cos(np.arctan2(g * eta * np.sin(k), 1.0 - g * np.cos(k))) ** 2

    kink = [float(np.arccos(1.0 / g))] if g > 1 else None
    value, _ = scipy.integrate.quad(integrand, 0.0, np.pi, limit=200, points=kink)
    return float(value / np.pi)


def purity_scan(g_grid, eta, N, threads=None):
    """BCS purity and smallest quasiparticle energy on a monotone grid of couplings"""
    g_grid = np.asarray(g_grid, dtype=float)
    if g_grid.size < 2 or np.any(np.diff(g_grid) <= 0):
        raise DimensionError("coupling grid must be strictly increasing with at least two points")

    def point(g):
        sol = solve_bogoliubov(XYParams(N=N, g=float(g), eta=eta))
        return bcs_purity(sol), sol.min_gap

    logger.info(f"Scanning N={N} eta={eta:g} over {g_grid.size} couplings in [{g_grid[0]:g}, {g_grid[-1]:g}]")
    values = map_ordered(point, g_grid.tolist(), threads)
    return PurityScan(
        N=N,
        eta=eta,
        g=g_grid,
        purity=np.array([v[0] for v in values]),
        min_gap=np.array([v[1] for v in values]),
    )


def _derivative_peak(g, purity):
    """Location of the largest |dP/dg|, refined by a parabola through the neighbours"""
    slope = np.abs(np.gradient(purity, g))
    i = int(np.argmax(slope))
    if 0 < i < len(g) - 1:
        y0, y1, y2 = slope[i - 1:i + 2]
        denom = y0 - 2 * y1 + y2
        if denom != 0:
            step = (g[i + 1] - g[i - 1]) / 2
            return float(g[i] + 0.5 * step * (y0 - y2) / denom)
    return float(g[i])


def estimate_critical(scan, window=None, divisors=None, threads=None):
    """
    Critical coupling and exponent from purity scans

    g_c is the peak of |dP/dg| extrapolated linearly in 1/N over the sizes
    N/d, d in `divisors`. nu is the slope of log(P(g) - P(g_c)) against
    log(g_c - g) on the paramagnetic side g < g_c, with g_c - g inside
    `window`; fewer than five points in the window is an error.
    """
    settings = get_config().SCAN_CONFIG
    lo, hi = settings['window'] if window is None else window
    divisors = settings['extrapolation_divisors'] if divisors is None else divisors

    sizes, peaks = [], []
    for d in divisors:
        n = (scan.N // d) // 2 * 2
        if n < 2:
            continue
        sub = scan if d == 1 else purity_scan(scan.g, scan.eta, n, threads)
        sizes.append(n)
        peaks.append(_derivative_peak(sub.g, sub.purity))

    if len(sizes) >= 2 and len(set(sizes)) >= 2:
        fit = scipy.stats.linregress(1.0 / np.array(sizes), peaks)
        g_c = float(fit.intercept)
    else:
        g_c = peaks[0]

    p_c = float(np.interp(g_c, scan.g, scan.purity))
    distance = g_c - scan.g
    mask = (distance >= lo) & (distance <= hi)
    if mask.sum() < MIN_FIT_POINTS:
        raise DimensionError(f"fit window [{lo:g}, {hi:g}] below g_c={g_c:.4g} holds {int(mask.sum())} points, "
                             f"need at least {MIN_FIT_POINTS}")
    excess = scan.purity[mask] - p_c
    if np.any(excess <= 0):
        raise DimensionError("purity does not exceed its critical value inside the fit window")

    fit = scipy.stats.linregress(np.log(distance[mask]), np.log(excess))
    result = {
        'g_c_hat': g_c,
        'nu_hat': float(fit.slope),
        'fit_points': int(mask.sum()),
        'fit_r2': float(fit.rvalue ** 2),
        'peaks': dict(zip(sizes, peaks)),
    }
    logger.info(f"Critical estimate: g_c={g_c:.6g}, nu={result['nu_hat']:.6g} from {result['fit_points']} points")
    return result
