"""
Domain records: operators, states, algebras, maps and free-fermion solutions

All records are frozen after construction and validate their invariants in
__post_init__, so a value that exists is a value that is consistent.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple

import numpy as np
from scipy import sparse

from errors import CertificateError, DimensionError, NotHermitianError

HERMITIAN_TOL = 1e-12
NORM_TOL = 1e-12
PSD_TOL = 1e-10
CP_TOL = 1e-10


def _as_complex_matrix(matrix):
    if sparse.issparse(matrix):
        return sparse.csr_matrix(matrix, dtype=np.complex128)
    return np.asarray(matrix, dtype=np.complex128)


def hermitian_residual(matrix):
    """Largest entry of |M - M^dagger|"""
    if sparse.issparse(matrix):
        diff = matrix - matrix.conj().T
        return float(abs(diff).max()) if diff.nnz else 0.0
    return float(np.abs(matrix - matrix.conj().T).max())


def _max_abs(matrix):
    if sparse.issparse(matrix):
        return float(abs(matrix).max()) if matrix.nnz else 0.0
    return float(np.abs(matrix).max()) if matrix.size else 0.0


@dataclass(frozen=True, eq=False)
class Operator:
    """Square complex matrix, dense or CSR, with a Hermitian flag"""
    matrix: object
    hermitian: bool = False
    label: str = ''

    def __post_init__(self):
        matrix = _as_complex_matrix(self.matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"operator must be square, got shape {matrix.shape}")
        if matrix.shape[0] < 1:
            raise DimensionError("operator dimension must be at least 1")
        if self.hermitian:
            residual = hermitian_residual(matrix)
            if residual > HERMITIAN_TOL * max(1.0, _max_abs(matrix)):
                raise NotHermitianError(f"operator {self.label!r} flagged Hermitian has residual {residual:.3e}")
        object.__setattr__(self, 'matrix', matrix)

    def __repr__(self):
        kind = 'hermitian' if self.hermitian else 'general'
        store = 'sparse' if self.is_sparse else 'dense'
        return f'<Operator {self.label or "?"} dim={self.dim} {kind} {store}>'

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def is_sparse(self):
        return sparse.issparse(self.matrix)

    def dense(self):
        """Dense ndarray copy of the matrix"""
        if self.is_sparse:
            return self.matrix.toarray()
        return self.matrix

    def adjoint(self):
        return Operator(self.matrix.conj().T, hermitian=self.hermitian, label=f'{self.label}^dag')

    def expectation(self, vector):
        """<v|M|v> for a plain amplitude vector"""
        return complex(np.vdot(vector, self.matrix @ vector))

    @classmethod
    def symmetrized(cls, matrix, label=''):
        """Hermitian operator from a numerically almost-Hermitian matrix"""
        matrix = _as_complex_matrix(matrix)
        return cls((matrix + matrix.conj().T) / 2, hermitian=True, label=label)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Ascending eigenvalues with orthonormal eigenvector columns"""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __repr__(self):
        return f'<Spectrum n={len(self.eigenvalues)} range=[{self.eigenvalues[0]:.6g}, {self.eigenvalues[-1]:.6g}]>'

    @property
    def width(self):
        return float(self.eigenvalues[-1] - self.eigenvalues[0])

    @property
    def ground_gap(self):
        if len(self.eigenvalues) < 2:
            return float('inf')
        return float(self.eigenvalues[1] - self.eigenvalues[0])


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit-norm amplitude vector over a tensor product with the given dims"""
    amplitudes: np.ndarray
    label: str = ''
    dims: Tuple[int, ...] = ()

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1.0) > NORM_TOL:
            raise DimensionError(f"state {self.label!r} has norm {norm!r}, expected 1")
        dims = tuple(int(d) for d in self.dims) or (amplitudes.size,)
        if int(np.prod(dims)) != amplitudes.size:
            raise DimensionError(f"dims {dims} do not match state dimension {amplitudes.size}")
        object.__setattr__(self, 'amplitudes', amplitudes)
        object.__setattr__(self, 'dims', dims)

    def __repr__(self):
        return f'<PureState {self.label or "?"} dim={self.dim}>'

    @property
    def dim(self):
        return self.amplitudes.size

    @classmethod
    def normalized(cls, vector, label='', dims=()):
        vector = np.asarray(vector, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(vector)
        if norm == 0:
            raise DimensionError(f"cannot normalize the zero vector ({label!r})")
        return cls(vector / norm, label=label, dims=dims)

    def projector(self):
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), label=self.label, dims=self.dims)

    def overlap(self, other):
        """|<self|other>|"""
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Positive semidefinite matrix of unit trace (or trace <= 1 when subnormalized)"""
    matrix: np.ndarray
    label: str = ''
    dims: Tuple[int, ...] = ()
    subnormalized: bool = False

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"density matrix must be square, got shape {matrix.shape}")
        residual = hermitian_residual(matrix)
        if residual > 1e-10:
            raise NotHermitianError(f"density matrix {self.label!r} not Hermitian (residual {residual:.3e})")
        matrix = (matrix + matrix.conj().T) / 2
        trace = float(np.trace(matrix).real)
        if self.subnormalized:
            if trace > 1.0 + CP_TOL:
                raise DimensionError(f"subnormalized matrix {self.label!r} has trace {trace!r} > 1")
        elif abs(trace - 1.0) > NORM_TOL:
            raise DimensionError(f"density matrix {self.label!r} has trace {trace!r}, expected 1")
        min_eig = float(np.linalg.eigvalsh(matrix)[0])
        if min_eig < -PSD_TOL:
            raise DimensionError(f"density matrix {self.label!r} is not positive (min eigenvalue {min_eig:.3e})")
        dims = tuple(int(d) for d in self.dims) or (matrix.shape[0],)
        if int(np.prod(dims)) != matrix.shape[0]:
            raise DimensionError(f"dims {dims} do not match matrix dimension {matrix.shape[0]}")
        object.__setattr__(self, 'matrix', matrix)
        object.__setattr__(self, 'dims', dims)

    def __repr__(self):
        return f'<DensityMatrix {self.label or "?"} dim={self.dim} trace={self.trace:.6g}>'

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def trace(self):
        return float(np.trace(self.matrix).real)

    @classmethod
    def from_unnormalized(cls, matrix, label='', dims=()):
        matrix = np.asarray(matrix, dtype=np.complex128)
        matrix = (matrix + matrix.conj().T) / 2
        return cls(matrix / np.trace(matrix).real, label=label, dims=dims)


@dataclass(frozen=True, eq=False)
class ObservableAlgebra:
    """
    Distinguished observables as a trace-orthonormal Hermitian basis

    `K` rescales the squared expectation norm so the reference state has
    purity exactly 1. `summands` groups basis indices by simple summand and
    `summand_support` lists the tensor slots each summand acts on, and
    `lowering_summand` the summand each lowering operator belongs to.
    Built-in reference states are highest-weight vectors of `lowering_ops`,
    i.e. they are annihilated by the adjoints of those operators.
    """
    name: str
    dims: Tuple[int, ...]
    basis: Tuple[Operator, ...]
    K: float
    reference_state: PureState
    lowering_ops: Tuple[Operator, ...] = ()
    lowering_summand: Tuple[int, ...] = ()
    summands: Tuple[Tuple[int, ...], ...] = ()
    summand_support: Tuple[Tuple[int, ...], ...] = ()
    support: Tuple[int, ...] = ()
    irreducible: bool = True

    def __post_init__(self):
        dim = int(np.prod(self.dims))
        for op in self.basis:
            if op.dim != dim:
                raise DimensionError(f"basis element {op.label!r} has dim {op.dim}, algebra dim is {dim}")
        if self.reference_state.dim != dim:
            raise DimensionError("reference state dimension does not match the algebra")
        if self.K <= 0:
            raise CertificateError(f"normalization K must be positive, got {self.K!r}")
        if not self.summands:
            object.__setattr__(self, 'summands', (tuple(range(len(self.basis))),))
        if not self.summand_support:
            object.__setattr__(self, 'summand_support', (tuple(range(len(self.dims))),) * len(self.summands))
        if not self.support:
            slots = sorted({s for group in self.summand_support for s in group})
            object.__setattr__(self, 'support', tuple(slots))
        if self.lowering_ops and not self.lowering_summand:
            object.__setattr__(self, 'lowering_summand', (0,) * len(self.lowering_ops))
        if len(self.lowering_summand) != len(self.lowering_ops):
            raise DimensionError("lowering_summand must name one summand per lowering operator")

    def __repr__(self):
        return f'<ObservableAlgebra {self.name} size={self.size} dim={self.dim}>'

    @property
    def dim(self):
        return int(np.prod(self.dims))

    @property
    def size(self):
        return len(self.basis)

    @cached_property
    def matrices(self):
        return [op.matrix for op in self.basis]


@dataclass(frozen=True, eq=False)
class ReducedState:
    """Expectations of the algebra's orthonormal basis"""
    algebra: ObservableAlgebra
    expectations: np.ndarray

    def __post_init__(self):
        expectations = np.asarray(self.expectations, dtype=float).reshape(-1)
        if expectations.size != self.algebra.size:
            raise DimensionError(f"{expectations.size} expectations for an algebra of size {self.algebra.size}")
        object.__setattr__(self, 'expectations', expectations)

    def __repr__(self):
        return f'<ReducedState {self.algebra.name} purity={self.purity:.6g}>'

    @property
    def purity(self):
        return float(self.algebra.K * np.dot(self.expectations, self.expectations))


@dataclass(frozen=True, eq=False)
class FermionRep:
    """Jordan-Wigner annihilation operators on the 2^N Fock space"""
    N: int
    c: Tuple[Operator, ...]
    parity: Operator

    def __repr__(self):
        return f'<FermionRep N={self.N}>'

    def cdag(self, i):
        return self.c[i].adjoint()

    def number(self, i):
        c = self.c[i].matrix
        return Operator(c.conj().T @ c, hermitian=True, label=f'n_{i}')


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Pure-state decomposition {p_i, psi_i}"""
    weights: np.ndarray
    states: Tuple[PureState, ...]

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if weights.size != len(self.states):
            raise CertificateError(f"{weights.size} weights for {len(self.states)} states")
        if np.any(weights <= 0):
            raise CertificateError("ensemble weights must be strictly positive")
        if abs(weights.sum() - 1.0) > 1e-10:
            raise CertificateError(f"ensemble weights sum to {weights.sum()!r}")
        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, 'states', tuple(self.states))

    def __repr__(self):
        return f'<Ensemble size={len(self.states)}>'

    def __len__(self):
        return len(self.states)

    def density(self):
        vectors = np.array([s.amplitudes for s in self.states])
        return (vectors.T * self.weights) @ vectors.conj()


@dataclass(frozen=True, eq=False)
class RoofResult:
    """Best-found convex-roof value with the ensemble that certifies it"""
    value: float
    ensemble: Ensemble
    baseline: float
    restarts: int = 0
    failed_restarts: int = 0

    def __repr__(self):
        return f'<RoofResult value={self.value:.6g} baseline={self.baseline:.6g} members={len(self.ensemble)}>'


@dataclass(frozen=True, eq=False)
class CPMap:
    """Completely positive map given by its Hellwig-Kraus operators"""
    hk_ops: Tuple[Operator, ...]
    trace_property: str = 'preserving'
    label: str = ''

    def __post_init__(self):
        ops = tuple(self.hk_ops)
        if not ops:
            raise CertificateError("a CP map needs at least one HK operator")
        if self.trace_property not in ('preserving', 'nonincreasing'):
            raise CertificateError(f"unknown trace property {self.trace_property!r}")
        dim = ops[0].dim
        if any(op.dim != dim for op in ops):
            raise DimensionError("HK operators must share one dimension")
        total = sum(op.dense().conj().T @ op.dense() for op in ops)
        top = float(np.linalg.eigvalsh((total + total.conj().T) / 2)[-1])
        if top > 1.0 + CP_TOL:
            raise CertificateError(f"sum of A^dag A has eigenvalue {top:.12g} > 1")
        if self.trace_property == 'preserving':
            deviation = float(np.abs(total - np.eye(dim)).max())
            if deviation > CP_TOL:
                raise CertificateError(f"map flagged trace preserving deviates by {deviation:.3e}")
        object.__setattr__(self, 'hk_ops', ops)

    def __repr__(self):
        return f'<CPMap {self.label or "?"} hk={len(self.hk_ops)} {self.trace_property}>'

    @property
    def dim(self):
        return self.hk_ops[0].dim


@dataclass(frozen=True)
class XYParams:
    """Periodic anisotropic XY chain in a transverse field"""
    N: int
    g: float
    eta: float
    boundary: str = 'periodic'

    def __post_init__(self):
        if self.N < 2 or self.N % 2:
            raise DimensionError(f"N must be an even integer >= 2, got {self.N}")
        if self.g < 0:
            raise DimensionError(f"coupling g must be >= 0, got {self.g}")
        if not 0.0 <= self.eta <= 1.0:
            raise DimensionError(f"anisotropy eta must lie in [0, 1], got {self.eta}")
        if self.boundary != 'periodic':
            raise DimensionError(f"only periodic boundary conditions are supported, got {self.boundary!r}")


@dataclass(frozen=True, eq=False)
class BogoliubovSolution:
    """Per-momentum Bogoliubov data of the even-parity (antiperiodic) sector"""
    params: XYParams
    k_grid: np.ndarray
    theta_k: np.ndarray
    lambda_k: np.ndarray
    vk2: np.ndarray
    ground_energy: float

    def __repr__(self):
        return f'<BogoliubovSolution N={self.params.N} g={self.params.g} E0={self.ground_energy:.12g}>'

    @property
    def uk2(self):
        return 1.0 - self.vk2

    @property
    def min_gap(self):
        return float(self.lambda_k.min())


@dataclass(frozen=True)
class GroundStateReport:
    is_unique_ground: bool
    gap: float
    overlap: float = 0.0


@dataclass(frozen=True, eq=False)
class PurityScan:
    """u(N) purity of the BCS state over a grid of couplings"""
    N: int
    eta: float
    g: np.ndarray
    purity: np.ndarray
    min_gap: np.ndarray = field(default=None)

    def rows(self):
        gaps = self.min_gap if self.min_gap is not None else np.full(len(self.g), np.nan)
        return list(zip(self.g.tolist(), self.purity.tolist(), gaps.tolist()))
