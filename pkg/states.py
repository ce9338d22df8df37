"""
Named states of the multipartite, spin and two-qubit examples plus random sampling

Basis convention, used everywhere (the Jordan-Wigner strings depend on it):
tensor factor 0 is the most significant digit of the basis index, and for a
qubit index 0 is spin up (sigma_z = +1), index 1 spin down. For spin j the
basis runs m = +j, j-1, ..., -j.
"""
import logging

import numpy as np
import scipy.linalg

from errors import DimensionError
from models import DensityMatrix, PureState

logger = logging.getLogger(__name__)

MAX_QUBITS = 12
BLOCH_TOL = 1e-9

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=np.complex128)  # |down><up|
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


def check_qubit_count(N, low=1, high=MAX_QUBITS):
    if not isinstance(N, (int, np.integer)) or not low <= N <= high:
        raise DimensionError(f"number of qubits must be an integer in [{low}, {high}], got {N!r}")


def check_spin(j):
    """Validate a spin quantum number and return its multiplicity 2j+1"""
    twice = 2 * j
    if j <= 0 or abs(twice - round(twice)) > 1e-12:
        raise DimensionError(f"spin must be a positive half-integer, got {j!r}")
    return int(round(twice)) + 1


def spin_matrices(j):
    """(J_x, J_y, J_z) in the basis m = +j ... -j"""
    d = check_spin(j)
    m = j - np.arange(d)
    jz = np.diag(m).astype(np.complex128)
    jplus = np.zeros((d, d), dtype=np.complex128)
    for col in range(1, d):
        # J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits one index up
        jplus[col - 1, col] = np.sqrt(j * (j + 1) - m[col] * (m[col] + 1))
    jminus = jplus.conj().T
    jx = (jplus + jminus) / 2
    jy = (jplus - jminus) / 2j
    return jx, jy, jz


def basis_state(dims, indices, label=''):
    """Product of computational basis vectors, one index per tensor factor"""
    dims = tuple(int(d) for d in dims)
    if len(indices) != len(dims) or any(not 0 <= i < d for i, d in zip(indices, dims)):
        raise DimensionError(f"basis indices {indices} do not fit dims {dims}")
    vector = np.zeros(int(np.prod(dims)), dtype=np.complex128)
    vector[int(np.ravel_multi_index(tuple(indices), dims))] = 1.0
    return PureState(vector, label=label or f'basis{tuple(indices)}', dims=dims)


def all_up(N):
    check_qubit_count(N)
    return basis_state((2,) * N, (0,) * N, label=f'up^{N}')


def all_down(N):
    check_qubit_count(N)
    return basis_state((2,) * N, (1,) * N, label=f'down^{N}')


def ghz(N):
    """2^-1/2 (|up...up> + |down...down>)"""
    check_qubit_count(N, low=2)
    vector = np.zeros(2 ** N, dtype=np.complex128)
    vector[0] = vector[-1] = 2 ** -0.5
    return PureState(vector, label=f'GHZ_{N}', dims=(2,) * N)


def bell():
    return ghz(2)


def w(N):
    """N^-1/2 sum_i |up ... down_i ... up>"""
    check_qubit_count(N, low=2)
    vector = np.zeros(2 ** N, dtype=np.complex128)
    for i in range(N):
        vector[1 << (N - 1 - i)] = N ** -0.5
    return PureState(vector, label=f'W_{N}', dims=(2,) * N)


def qubit_amplitudes(bloch):
    """cos(theta/2)|up> + e^{i phi} sin(theta/2)|down> for a unit Bloch vector"""
    x, y, z = (float(c) for c in bloch)
    length = np.sqrt(x * x + y * y + z * z)
    if abs(length - 1.0) > BLOCH_TOL:
        raise DimensionError(f"Bloch vector {bloch} has length {length!r}, expected 1")
    theta = np.arccos(np.clip(z / length, -1.0, 1.0))
    phi = np.arctan2(y, x)
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)], dtype=np.complex128)


def product_state(bloch_vectors):
    """Product of single-qubit states given by unit Bloch vectors"""
    bloch_vectors = [tuple(b) for b in bloch_vectors]
    check_qubit_count(len(bloch_vectors))
    vector = np.ones(1, dtype=np.complex128)
    for b in bloch_vectors:
        vector = np.kron(vector, qubit_amplitudes(b))
    return PureState.normalized(vector, label='product', dims=(2,) * len(bloch_vectors))


def spin_coherent(j, theta, phi):
    """exp(-i phi J_z) exp(-i theta J_y) |j, m=+j>"""
    d = check_spin(j)
    _, jy, jz = spin_matrices(j)
    top = np.zeros(d, dtype=np.complex128)
    top[0] = 1.0
    vector = scipy.linalg.expm(-1j * phi * jz) @ (scipy.linalg.expm(-1j * theta * jy) @ top)
    return PureState.normalized(vector, label=f'coherent(j={j:g},{theta:.4g},{phi:.4g})')


def spin_basis_state(j, m, copies=1):
    """|j, m> on each of `copies` spins"""
    d = check_spin(j)
    index = j - m
    if abs(index - round(index)) > 1e-12 or not 0 <= round(index) < d:
        raise DimensionError(f"m={m!r} is not a valid projection for spin {j!r}")
    return basis_state((d,) * copies, (int(round(index)),) * copies, label=f'|{j:g},{m:g}>^{copies}')


def haar_random(dim, seed=None, dims=()):
    """Haar-random pure state from a normalized complex Gaussian vector"""
    if dim < 1:
        raise DimensionError(f"dimension must be positive, got {dim}")
    rng = np.random.default_rng(seed)
    vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState.normalized(vector, label='haar', dims=dims)


def haar_random_density(dim, rank, seed=None, dims=()):
    """Random rank-r density matrix: partial trace of a Haar-random purification"""
    if not 1 <= rank <= dim:
        raise DimensionError(f"rank must lie in [1, {dim}], got {rank}")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    return DensityMatrix.from_unnormalized(G @ G.conj().T, label=f'random_rank{rank}', dims=dims)


def mixture(states, weights, label='mixture'):
    """sum_i p_i rho_i of pure states or density matrices"""
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
        raise DimensionError(f"mixture weights must be a probability vector, got {weights}")
    mats = [s.projector().matrix if isinstance(s, PureState) else s.matrix for s in states]
    matrix = sum(p * m for p, m in zip(weights, mats))
    return DensityMatrix(matrix, label=label, dims=states[0].dims)


def werner(p):
    """p |Phi+><Phi+| + (1-p) 1/4 on two qubits"""
    if not 0.0 <= p <= 1.0:
        raise DimensionError(f"Werner weight must lie in [0, 1], got {p}")
    matrix = p * bell().projector().matrix + (1.0 - p) * np.eye(4) / 4
    return DensityMatrix(matrix, label=f'werner({p:g})', dims=(2, 2))
