"""
Dense and sparse complex linear algebra used by every other module

Hermitian eigendecomposition with a reproducible phase convention,
trace-inner-product orthonormalization, exponentials of Hermitian generators,
tensor products and partial traces.
"""
import logging
import string

import numpy as np
import scipy.linalg
from scipy import sparse

from errors import ConvergenceError, DimensionError, NotHermitianError
from models import DensityMatrix, Operator, PureState, Spectrum

logger = logging.getLogger(__name__)

DEPENDENT_TOL = 1e-10
PHASE_TOL = 1e-8
JACOBI_MAX_SWEEPS = 50
JACOBI_TOL = 1e-14


def _fix_phases(vectors):
    """Rotate each column so its first non-negligible entry is positive real"""
    vectors = np.array(vectors, dtype=np.complex128)
    for col in range(vectors.shape[1]):
        v = vectors[:, col]
        lead = int(np.argmax(np.abs(v) > PHASE_TOL))
        phase = v[lead] / abs(v[lead])
        vectors[:, col] = v / phase
    return vectors


def _jacobi_eigh(matrix, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi for complex Hermitian matrices; returns unsorted eigenpairs"""
    a = np.array(matrix, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(a) or 1.0

    def off_norm():
        return float(np.sqrt(max(np.linalg.norm(a) ** 2 - np.sum(np.abs(np.diag(a)) ** 2), 0.0)))

    for sweep in range(max_sweeps):
        if off_norm() <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        residual = off_norm()
        if residual > tol * scale:
            raise ConvergenceError(
                f"Jacobi did not converge after {max_sweeps} sweeps (off-diagonal norm {residual:.3e})",
                residual=residual, iterations=max_sweeps)

    return np.diag(a).real.copy(), v


def hermitian_eig(M, method='lapack', subset=None):
    """
    Full (or partial) spectrum of a Hermitian operator

    Eigenvalues ascend; every eigenvector is phase-fixed so that its first
    entry above 1e-8 in modulus is positive real. `subset=(lo, hi)` keeps the
    eigenpairs with ascending indices lo..hi inclusive.
    """
    if not M.hermitian:
        raise NotHermitianError(f"hermitian_eig needs an operator flagged Hermitian, got {M!r}")
    matrix = M.dense()

    if method == 'lapack':
        if subset is not None:
            values, vectors = scipy.linalg.eigh(matrix, subset_by_index=list(subset))
        else:
            values, vectors = scipy.linalg.eigh(matrix)
    elif method == 'jacobi':
        values, vectors = _jacobi_eigh(matrix)
        order = np.argsort(values, kind='stable')
        values, vectors = values[order], vectors[:, order]
        if subset is not None:
            lo, hi = subset
            values, vectors = values[lo:hi + 1], vectors[:, lo:hi + 1]
    else:
        raise ValueError(f"unknown eigensolver method {method!r}")

    return Spectrum(eigenvalues=np.asarray(values, dtype=float), eigenvectors=_fix_phases(vectors))


def trace_inner(a, b):
    """Re tr(a b) for Hermitian a, b (equivalently Re sum a * conj(b))"""
    if sparse.issparse(a) or sparse.issparse(b):
        if not sparse.issparse(a):
            a, b = b, a
        return float(np.real(a.multiply(np.conj(b) if not sparse.issparse(b) else b.conj()).sum()))
    return float(np.real(np.vdot(b, a)))


def trace_orthonormalize(ops, tol=DEPENDENT_TOL):
    """
    Trace-orthonormal basis of the real span of Hermitian operators

    Modified Gram-Schmidt with one re-orthogonalization pass. Inputs whose
    residual norm falls below `tol` (scaled by their own norm when that is
    larger than 1) are dropped as linearly dependent.
    """
    ops = list(ops)
    if not ops:
        raise DimensionError("trace_orthonormalize needs at least one operator")
    dim = ops[0].dim
    for op in ops:
        if op.dim != dim:
            raise DimensionError(f"mixed dimensions {dim} and {op.dim} in basis")
        if not op.hermitian:
            raise NotHermitianError(f"basis element {op!r} is not Hermitian")

    basis = []
    for op in ops:
        residual = op.matrix.copy()
        for _ in range(2):
            for b in basis:
                coef = trace_inner(residual, b.matrix)
                if coef != 0.0:
                    residual = residual - coef * b.matrix
        norm = np.sqrt(max(trace_inner(residual, residual), 0.0))
        scale = max(1.0, np.sqrt(max(trace_inner(op.matrix, op.matrix), 0.0)))
        if norm <= tol * scale:
            logger.debug(f"Dropping dependent operator {op.label!r} (residual {norm:.3e})")
            continue
        basis.append(Operator.symmetrized(residual / norm, label=op.label))

    return basis


def unitary_from_generator(H, t=1.0):
    """exp(i t H) for Hermitian H"""
    if not H.hermitian:
        raise NotHermitianError(f"generator {H!r} must be Hermitian")
    values, vectors = scipy.linalg.eigh(H.dense())
    U = (vectors * np.exp(1j * t * values)) @ vectors.conj().T
    return Operator(U, label=f'exp(i*{t:g}*{H.label})')


def kron(A, B):
    """Tensor product A (x) B; stays sparse when either factor is sparse"""
    if A.is_sparse or B.is_sparse:
        matrix = sparse.kron(A.matrix, B.matrix, format='csr')
    else:
        matrix = np.kron(A.matrix, B.matrix)
    return Operator(matrix, hermitian=A.hermitian and B.hermitian, label=f'{A.label}(x){B.label}')


def embed(local, slot, dims):
    """Sparse operator acting as `local` on tensor slot `slot` and as identity elsewhere"""
    left = int(np.prod(dims[:slot]))
    right = int(np.prod(dims[slot + 1:]))
    local = sparse.csr_matrix(local, dtype=np.complex128)
    return sparse.kron(sparse.kron(sparse.identity(left, format='csr'), local), sparse.identity(right), format='csr')


def embed_many(locals_by_slot, dims):
    """Sparse tensor product of local matrices on several slots (identity elsewhere)"""
    result = sparse.identity(1, dtype=np.complex128, format='csr')
    for slot, d in enumerate(dims):
        factor = locals_by_slot.get(slot)
        factor = sparse.identity(d, format='csr') if factor is None else sparse.csr_matrix(factor, dtype=np.complex128)
        result = sparse.kron(result, factor, format='csr')
    return result


def _check_dims(dim, dims, keep):
    dims = tuple(int(d) for d in dims)
    if int(np.prod(dims)) != dim:
        raise DimensionError(f"dims {dims} do not multiply to {dim}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise DimensionError(f"keep indices {keep} out of range for {len(dims)} factors")
    if len(dims) > len(string.ascii_lowercase):
        raise DimensionError("too many tensor factors")
    return dims, keep


def partial_trace(rho, dims, keep):
    """Reduced density matrix on the tensor factors listed in `keep` (in ascending order)"""
    dims, keep = _check_dims(rho.dim, dims, keep)
    n = len(dims)
    rows = list(string.ascii_lowercase[:n])
    cols = [rows[i] if i not in keep else string.ascii_uppercase[i] for i in range(n)]
    out = ''.join(rows[i] for i in keep) + ''.join(cols[i] for i in keep)
    reduced = np.einsum(f"{''.join(rows)}{''.join(cols)}->{out}", rho.matrix.reshape(dims + dims))
    kept_dim = int(np.prod([dims[i] for i in keep])) if keep else 1
    return DensityMatrix(reduced.reshape(kept_dim, kept_dim), label=f'tr[{rho.label}]',
                         dims=tuple(dims[i] for i in keep) or (1,), subnormalized=rho.subnormalized)


def pure_partial_trace(psi, dims, keep):
    """Reduced density matrix of a pure state without forming |psi><psi|"""
    dims, keep = _check_dims(psi.dim, dims, keep)
    rest = [i for i in range(len(dims)) if i not in keep]
    tensor = psi.amplitudes.reshape(dims).transpose(keep + rest)
    kept_dim = int(np.prod([dims[i] for i in keep])) if keep else 1
    block = tensor.reshape(kept_dim, -1)
    return DensityMatrix(block @ block.conj().T, label=f'tr[{psi.label}]',
                         dims=tuple(dims[i] for i in keep) or (1,))


def density_of(state):
    """Density matrix of a pure state or the density matrix itself"""
    if isinstance(state, PureState):
        return state.projector()
    return state


def commutator_closure_residual(basis):
    """Largest norm of [x_i, x_j]/i outside the real span of the basis"""
    worst = 0.0
    mats = [b.matrix for b in basis]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            comm = (mats[i] @ mats[j] - mats[j] @ mats[i]) * (-1j)
            for b in mats:
                coef = trace_inner(comm, b)
                if coef != 0.0:
                    comm = comm - coef * b
            worst = max(worst, np.sqrt(max(trace_inner(comm, comm), 0.0)))
    return float(worst)
