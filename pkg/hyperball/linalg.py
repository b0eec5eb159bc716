"""
Dense complex linear algebra on C^n used by the rest of the package.

Vectors and matrices are plain complex128 numpy arrays. The inner product is
linear in the first slot and conjugate-linear in the second:
inner(x, y) = sum_i x_i * conj(y_i).
"""
import logging
import typing as t
from dataclasses import dataclass

import numpy as np

from hyperball.exceptions import DimError, NoConvergence, NotHermitian, NotPositive

logger = logging.getLogger(__name__)

ComplexVector = np.ndarray
ComplexMatrix = np.ndarray
Seed = t.Union[int, np.random.Generator, None]

DEFAULT_TOL = 1e-10
UNITARY_TOL = 1e-12
MAX_SWEEPS = 50
DEFAULT_MAXIT = 10000
EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues with unit-norm eigenvectors stored as matrix columns.

    For a defective 2x2 input `values` holds the repeated eigenvalue twice
    while `vectors` has a single column.
    """
    values: np.ndarray
    vectors: np.ndarray
    defective: bool = False

    def __iter__(self):
        return iter((self.values, self.vectors))

    def __repr__(self):
        return '<EigenDecomposition n={} defective={}>'.format(len(self.values), self.defective)


def as_vector(x) -> ComplexVector:
    v = np.asarray(x, dtype=complex)
    if v.ndim != 1 or v.size < 1:
        raise DimError('expected a non-empty vector, got shape %s' % (v.shape,))
    if not np.all(np.isfinite(v)):
        raise ValueError('vector entries must be finite')
    return v


def as_matrix(m, square: bool = False) -> ComplexMatrix:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.size < 1:
        raise DimError('expected a non-empty matrix, got shape %s' % (a.shape,))
    if square and a.shape[0] != a.shape[1]:
        raise DimError('expected a square matrix, got shape %s' % (a.shape,))
    if not np.all(np.isfinite(a)):
        raise ValueError('matrix entries must be finite')
    return a


def inner(x: ComplexVector, y: ComplexVector) -> complex:
    """
    Inner product <x, y>, conjugate-linear in `y`.
    >>> inner([1j, 0], [1, 0])
    1j
    """
    x, y = as_vector(x), as_vector(y)
    if x.shape != y.shape:
        raise DimError('dimension mismatch: %d != %d' % (x.size, y.size))
    return complex(np.vdot(y, x))


def norm(x: ComplexVector) -> float:
    return float(np.linalg.norm(x))


def adjoint(m: ComplexMatrix) -> ComplexMatrix:
    return as_matrix(m).conj().T


def max_abs(m) -> float:
    """Entrywise max norm, 0 for empty input."""
    a = np.asarray(m)
    return float(np.abs(a).max()) if a.size else 0.0


def rank_one_update(c: complex, xi: ComplexVector) -> ComplexMatrix:
    """
    Matrix of x -> x + c <x, xi> xi.
    A zero `xi` (or zero `c`) gives the identity.
    """
    xi = as_vector(xi)
    return np.eye(xi.size, dtype=complex) + c * np.outer(xi, xi.conj())


def extend(m: ComplexMatrix, corner: complex = 1.0) -> ComplexMatrix:
    """Block diagonal [[m, 0], [0, corner]] on C^n + C."""
    m = as_matrix(m, square=True)
    n = m.shape[0]
    out = np.zeros((n + 1, n + 1), dtype=complex)
    out[:n, :n] = m
    out[n, n] = corner
    return out


def unitarity_residual(u: ComplexMatrix) -> float:
    u = as_matrix(u, square=True)
    return max_abs(u.conj().T @ u - np.eye(u.shape[0]))


def is_unitary(u: ComplexMatrix, tol: float = UNITARY_TOL) -> bool:
    return unitarity_residual(u) <= tol


def random_unitary(n: int, seed: Seed = None) -> ComplexMatrix:
    """
    Seeded random unitary: orthonormalize a complex Gaussian matrix by QR and
    rotate column phases so the triangular factor has a positive real diagonal.
    `seed` may be an integer or an existing numpy Generator.
    """
    if n < 1:
        raise DimError('n must be positive, got %d' % n)
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_unit_vector(n: int, seed: Seed = None) -> ComplexVector:
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def _off_norm(a: ComplexMatrix) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a: ComplexMatrix, v: ComplexMatrix, p: int, q: int) -> None:
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag
    tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    if tau == 0.0:
        tan = 1.0
    else:
        tan = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    cos = 1.0 / np.sqrt(1.0 + tan * tan)
    sin = tan * cos
    rot = np.array([[cos, sin * phase],
                    [-sin * np.conj(phase), cos]])
    cols = [p, q]
    a[:, cols] = a[:, cols] @ rot
    a[cols, :] = rot.conj().T @ a[cols, :]
    a[p, q] = a[q, p] = 0.0
    v[:, cols] = v[:, cols] @ rot


def hermitian_eig(m: ComplexMatrix,
                  tol: float = DEFAULT_TOL,
                  max_sweeps: int = MAX_SWEEPS,
                  ) -> EigenDecomposition:
    """
    Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
    Args:
        m: Hermitian matrix, ||m - m*||_max <= tol * ||m||
        tol: relative tolerance for the Hermitian check and the residuals
        max_sweeps: sweep budget before giving up
    Returns:
        `EigenDecomposition` with real eigenvalues in descending order.
    Raises:
        NotHermitian, NoConvergence
    """
    orig = as_matrix(m, square=True)
    a = orig.copy()
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    if max_abs(a - a.conj().T) > tol * scale:
        raise NotHermitian('matrix is not Hermitian within %g' % tol)
    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=complex)
    target = max(0.01 * tol, n * EPS) * scale
    # pivots this small only rotate rounding noise and overflow tau
    negligible = EPS * EPS * scale

    for sweep in range(max_sweeps):
        if _off_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > negligible:
                    _rotate(a, v, p, q)
    else:
        if _off_norm(a) > target:
            raise NoConvergence('Jacobi did not converge in %d sweeps' % max_sweeps)
    logger.debug('Jacobi converged after %d sweeps (n=%d)', sweep, n)

    values = np.diag(a).real
    order = np.argsort(-values, kind='stable')
    values, vectors = values[order], v[:, order]

    residual = max_abs(np.linalg.norm(orig @ vectors - vectors * values, axis=0)) if n else 0.0
    if not residual <= 100 * tol * max(scale, EPS):
        raise NoConvergence('Jacobi residual %g exceeds tolerance' % residual)
    return EigenDecomposition(values.astype(complex), vectors)


def positive_sqrt(m: ComplexMatrix, tol: float = DEFAULT_TOL) -> ComplexMatrix:
    """Positive square root of a positive semidefinite Hermitian matrix."""
    values, vectors = hermitian_eig(m, tol)
    lam = values.real
    if lam.size and lam.min() < -tol * max(1.0, abs(lam).max()):
        raise NotPositive('matrix has a negative eigenvalue %g' % lam.min())
    return (vectors * np.sqrt(np.clip(lam, 0.0, None))) @ vectors.conj().T


def _eigvec_2x2(m: ComplexMatrix, lam: complex) -> ComplexVector:
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if abs(b) >= abs(c) and b != 0:
        vec = np.array([b, lam - a])
    elif c != 0:
        vec = np.array([lam - d, c])
    elif abs(lam - a) <= abs(lam - d):
        vec = np.array([1.0, 0.0])
    else:
        vec = np.array([0.0, 1.0])
    return vec / np.linalg.norm(vec)


def eig_2x2(m: ComplexMatrix, tol: float = 1e-12) -> EigenDecomposition:
    """
    Quadratic-formula eigenpairs of a 2x2 complex matrix, principal square
    root, larger root first. A (numerically) defective input returns its
    repeated eigenvalue with a single eigenvector and `defective` set.
    """
    m = as_matrix(m, square=True)
    if m.shape != (2, 2):
        raise DimError('expected a 2x2 matrix, got shape %s' % (m.shape,))
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    trace = a + d
    disc = trace * trace - 4.0 * (a * d - b * c)
    scale = max(max_abs(m), EPS)

    scalar = b == 0 and c == 0 and a == d
    if scalar:
        return EigenDecomposition(np.array([a, d]), np.eye(2, dtype=complex))

    if abs(disc) <= tol * scale * scale:
        lam = trace / 2.0
        if abs(b) <= tol * scale and abs(c) <= tol * scale:
            return EigenDecomposition(np.array([lam, lam]), np.eye(2, dtype=complex))
        vec = _eigvec_2x2(m, lam)
        return EigenDecomposition(np.array([lam, lam]), vec.reshape(2, 1), defective=True)

    root = np.sqrt(complex(disc))
    values = np.array([(trace + root) / 2.0, (trace - root) / 2.0])
    vectors = np.column_stack([_eigvec_2x2(m, lam) for lam in values])
    return EigenDecomposition(values, vectors)


def power_iteration(m: ComplexMatrix,
                    tol: float = DEFAULT_TOL,
                    maxit: int = DEFAULT_MAXIT,
                    seed: Seed = 0,
                    ) -> t.Tuple[complex, ComplexVector]:
    """
    Dominant eigenpair by power iteration from a seeded random start.
    Raises:
        NoConvergence: the residual ||Mv - lv|| did not drop below tol * ||M||
            within `maxit` steps (no strictly dominant eigenvalue).
    """
    m = as_matrix(m, square=True)
    scale = float(np.linalg.norm(m))
    v = random_unit_vector(m.shape[0], seed)

    for it in range(maxit):
        w = m @ v
        lam = complex(np.vdot(v, w))
        if np.linalg.norm(w - lam * v) <= tol * scale:
            logger.debug('Power iteration converged after %d steps', it)
            return lam, v
        size = np.linalg.norm(w)
        if size == 0.0:
            return 0j, v
        v = w / size

    raise NoConvergence('power iteration did not converge in %d steps' % maxit)
