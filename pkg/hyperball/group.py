"""
The group G of operators on C^n + C preserving the indefinite form
A((x, l), (y, m)) = <x, y> - l conj(m), i.e. M* A' M = A' with A' = diag(I, -1).

Elements are stored in canonical form e^{i theta} [[U A, U xi], [<., xi>, a]]
with a = sqrt(1 + ||xi||^2) and A = I + <., xi> xi / (a + 1), the positive
square root of I + <., xi> xi. The raw matrix is built on demand.
"""
import functools
import logging
import math
import typing as t

import numpy as np

from hyperball import linalg
from hyperball.ball import BallPoint, MobiusMap
from hyperball.exceptions import (DimError, FormViolation, NearSingular, NotUnitary,
                                  OutOfBall, ReconstructionError)
from hyperball.linalg import ComplexMatrix, ComplexVector

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
SINGULAR_TOL = 1e-14


def normalize_angle(theta: float) -> float:
    """
    Reduce an angle to [0, 2 pi).
    >>> normalize_angle(2 * math.pi)
    0.0
    """
    theta = float(theta) % TWO_PI
    return 0.0 if theta >= TWO_PI else theta


class FormMatrix:
    """A raw (n+1)x(n+1) matrix that is meant to preserve the form."""

    def __init__(self, M: ComplexMatrix) -> None:
        M = linalg.as_matrix(M, square=True)
        if M.shape[0] < 2:
            raise DimError('form matrices act on C^n + C with n >= 1')
        self._M = M

    @property
    def M(self) -> ComplexMatrix:
        return self._M

    @property
    def dim(self) -> int:
        return self._M.shape[0] - 1

    def __repr__(self):
        return '<FormMatrix dim={}>'.format(self.dim)


class GElement:
    """
    Canonical element e^{i theta} [[U A, U xi], [<., xi>, a]] of G.
    Use `make`, `from_point` or `from_unitary` to build validated elements.
    """

    def __init__(self, theta: float, U: ComplexMatrix, xi: ComplexVector) -> None:
        self._theta = normalize_angle(theta)
        self._U = U
        self._xi = xi
        self._xi_sq = float(np.vdot(xi, xi).real)
        self._a = math.sqrt(1.0 + self._xi_sq)

    @property
    def theta(self) -> float:
        return self._theta

    @property
    def U(self) -> ComplexMatrix:
        return self._U

    @property
    def xi(self) -> ComplexVector:
        return self._xi

    @property
    def a(self) -> float:
        return self._a

    @property
    def dim(self) -> int:
        return self._xi.size

    @property
    def phase(self) -> complex:
        return complex(np.exp(1j * self._theta))

    @functools.cached_property
    def A(self) -> ComplexMatrix:
        # (a - 1) / ||xi||^2 == 1 / (a + 1)
        return linalg.rank_one_update(1.0 / (self._a + 1.0), self._xi)

    @functools.cached_property
    def A_inv(self) -> ComplexMatrix:
        # (1/a - 1) / ||xi||^2 == -1 / (a (a + 1))
        return linalg.rank_one_update(-1.0 / (self._a * (self._a + 1.0)), self._xi)

    @functools.cached_property
    def matrix(self) -> ComplexMatrix:
        n = self.dim
        m = np.empty((n + 1, n + 1), dtype=complex)
        m[:n, :n] = self._U @ self.A
        m[:n, n] = self._U @ self._xi
        m[n, :n] = self._xi.conj()
        m[n, n] = self._a
        return self.phase * m

    def form_matrix(self) -> FormMatrix:
        return FormMatrix(self.matrix)

    def strip_phase(self) -> 'GElement':
        return GElement(0.0, self._U, self._xi)

    def act(self, x: ComplexVector) -> ComplexVector:
        """(U A x + U xi) / (<x, xi> + a), no ball admission checks."""
        x = np.asarray(x, dtype=complex)
        denom = np.vdot(self._xi, x) + self._a
        if abs(denom) < SINGULAR_TOL:
            raise NearSingular('denominator <x, xi> + a vanishes')
        return self._U @ (self.A @ x + self._xi) / denom

    def __repr__(self):
        return '<GElement dim={} theta={:.6f} |xi|={:.6f}>'.format(
            self.dim, self._theta, math.sqrt(self._xi_sq))


def form_operator(n: int) -> ComplexMatrix:
    """A' = diag(I_n, -1)."""
    return np.diag(np.r_[np.ones(n), -1.0]).astype(complex)


def _matrix_of(M) -> ComplexMatrix:
    if isinstance(M, GElement):
        return M.matrix
    if isinstance(M, FormMatrix):
        return M.M
    return FormMatrix(M).M


def form_residual(M) -> float:
    """||M* A' M - A'||_max."""
    m = _matrix_of(M)
    j = form_operator(m.shape[0] - 1)
    return linalg.max_abs(m.conj().T @ j @ m - j)


def preserves_form(M, tol: float = linalg.DEFAULT_TOL) -> bool:
    return form_residual(M) <= tol


def make(theta: float, U: ComplexMatrix, xi: ComplexVector,
         tol: float = linalg.UNITARY_TOL) -> GElement:
    """
    Canonical element from (theta, U, xi).
    Raises:
        NotUnitary: U is not unitary within `tol`
        DimError: U and xi disagree on the dimension
    """
    U = linalg.as_matrix(U, square=True)
    xi = linalg.as_vector(xi)
    if U.shape[0] != xi.size:
        raise DimError('U is %dx%d but xi has dimension %d' % (U.shape + (xi.size,)))
    if not math.isfinite(theta):
        raise ValueError('theta must be finite')
    residual = linalg.unitarity_residual(U)
    if residual > tol:
        raise NotUnitary('U is not unitary: residual %g > %g' % (residual, tol))
    return GElement(theta, U, xi)


def identity(n: int) -> GElement:
    return GElement(0.0, np.eye(n, dtype=complex), np.zeros(n, dtype=complex))


def center(theta: float, n: int) -> GElement:
    """The central element e^{i theta} I."""
    return GElement(theta, np.eye(n, dtype=complex), np.zeros(n, dtype=complex))


def from_unitary(U: ComplexMatrix, tol: float = linalg.UNITARY_TOL) -> GElement:
    """[[U, 0], [0, 1]]."""
    U = linalg.as_matrix(U, square=True)
    return make(0.0, U, np.zeros(U.shape[0], dtype=complex), tol)


def from_point(x0) -> GElement:
    """
    Preimage of f_x0: theta = 0, U = I, xi = -a x0 with a = 1 / sqrt(1 - ||x0||^2).
    Raises:
        OutOfBall: ||x0|| >= 1
    """
    x0 = x0.v if isinstance(x0, BallPoint) else linalg.as_vector(x0)
    size_sq = float(np.vdot(x0, x0).real)
    if size_sq >= 1.0:
        raise OutOfBall('x0 must lie inside the ball, got norm %r' % math.sqrt(size_sq))
    a = 1.0 / math.sqrt(1.0 - size_sq)
    return GElement(0.0, np.eye(x0.size, dtype=complex), -a * x0)


def canonicalize(M, tol: float = linalg.DEFAULT_TOL) -> GElement:
    """
    Recover (theta, U, xi) from a raw matrix that preserves the form.
    Raises:
        FormViolation: M does not preserve the form within `tol`
        ReconstructionError: the recovered factors do not reproduce M
    """
    m = _matrix_of(M)
    n = m.shape[0] - 1
    residual = form_residual(m)
    if residual > tol:
        raise FormViolation('matrix does not preserve the form: residual %g > %g' % (residual, tol))

    corner = m[n, n]
    if abs(corner) < 1.0 - tol:
        raise FormViolation('bottom-right entry has modulus %g < 1' % abs(corner))
    theta = normalize_angle(np.angle(corner))
    unphase = np.exp(-1j * theta)
    xi = np.conj(unphase * m[n, :n])

    candidate = GElement(theta, np.eye(n, dtype=complex), xi)
    scale = max(1.0, linalg.max_abs(m))
    if abs(candidate.a - abs(corner)) > tol * scale:
        raise ReconstructionError('|a| = %r disagrees with sqrt(1 + ||xi||^2) = %r'
                                  % (abs(corner), candidate.a))

    U = unphase * m[:n, :n] @ candidate.A_inv
    if linalg.unitarity_residual(U) > tol:
        raise ReconstructionError('recovered U is not unitary within %g' % tol)
    if linalg.max_abs(unphase * m[:n, n] - U @ xi) > tol * scale:
        raise ReconstructionError('top-right block is not e^{i theta} U xi')

    result = GElement(theta, U, xi)
    roundtrip = linalg.max_abs(result.matrix - m)
    if roundtrip > 10 * tol * scale:
        raise ReconstructionError('round trip residual %g' % roundtrip)
    logger.debug('Canonicalized %s: form residual %g, round trip %g', result, residual, roundtrip)
    return result


def _check_dims(S: GElement, T: GElement) -> None:
    if S.dim != T.dim:
        raise DimError('dimension mismatch: %d != %d' % (S.dim, T.dim))


def compose(S: GElement, T: GElement, tol: float = linalg.DEFAULT_TOL) -> GElement:
    """
    S T, canonicalized from the exact matrix product. The tolerance is scaled
    by the squared size of the product, since rounding in M* A' M grows with it.
    """
    _check_dims(S, T)
    product = S.matrix @ T.matrix
    scale = max(1.0, linalg.max_abs(product))
    return canonicalize(product, tol * scale * scale)


def inverse(T: GElement) -> GElement:
    """
    Closed form T^{-1} = e^{-i theta} [[(U A)*, -xi], [-<., U xi>, a]],
    which is canonical with (theta, U, xi) -> (-theta, U*, -U xi).
    """
    return GElement(-T.theta, T.U.conj().T, -(T.U @ T.xi))


def adjoint_g(T: GElement) -> FormMatrix:
    """Closed form T* = e^{-i theta} [[(U A)*, xi], [<., U xi>, a]]."""
    n = T.dim
    m = np.empty((n + 1, n + 1), dtype=complex)
    m[:n, :n] = (T.U @ T.A).conj().T
    m[:n, n] = T.xi
    m[n, :n] = (T.U @ T.xi).conj()
    m[n, n] = T.a
    return FormMatrix(np.conj(T.phase) * m)


def to_mobius(T: GElement, tol: float = linalg.DEFAULT_TOL) -> MobiusMap:
    """
    phi(T): the ball automorphism x -> (U A x + U xi) / (<x, xi> + a), which
    is U o f_x0 with x0 = -xi / a. The phase theta is forgotten.
    """
    return MobiusMap(T.U, -T.xi / T.a, tol=tol)


def unitary_selfadjoint_split(T: GElement) -> t.Tuple[GElement, GElement]:
    """
    T = V T1 with V = e^{i theta} [[U, 0], [0, 1]] unitary and
    T1 = [[A, xi], [<., xi>, a]] self adjoint.
    """
    n = T.dim
    V = GElement(T.theta, T.U, np.zeros(n, dtype=complex))
    T1 = GElement(0.0, np.eye(n, dtype=complex), T.xi)
    return V, T1


def transport(x, y) -> GElement:
    """An element whose isometry sends x to y."""
    return compose(inverse(from_point(y)), from_point(x))


def same_isometry(S: GElement, T: GElement, tol: float = linalg.DEFAULT_TOL) -> bool:
    """True iff S and T differ by a central factor, i.e. phi(S) == phi(T)."""
    _check_dims(S, T)
    return (linalg.max_abs(S.U - T.U) <= tol
            and linalg.max_abs(S.xi - T.xi) <= tol)


def constraint_residuals(T: GElement) -> t.Tuple[float, float]:
    """
    Residuals of the defining constraints of G for the blocks B = U A, z = U xi:
    |a^2 - 1 - ||xi||^2| and ||B* B - I - <., B* z> B* z / a^2||_max.
    """
    B = T.U @ T.A
    w = B.conj().T @ (T.U @ T.xi)
    scalar = abs(T.a ** 2 - 1.0 - float(np.vdot(T.xi, T.xi).real))
    block = linalg.max_abs(B.conj().T @ B - np.eye(T.dim) - np.outer(w, w.conj()) / T.a ** 2)
    return scalar, block
