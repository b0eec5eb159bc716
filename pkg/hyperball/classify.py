"""
Structural predicates, closed-form spectra and fixed points, and the
elliptic / hyperbolic / parabolic classification of elements of G.

A point x of the closed ball is fixed by phi(T) iff (x, 1) is an eigenvector
of T, with eigenvalue <x, xi> + a once the phase is stripped. Dynamical type
does not depend on theta, so classification always works on the
phase-stripped element.
"""
import enum
import logging
import math
import typing as t
from dataclasses import dataclass, field

import numpy as np

from hyperball import linalg
from hyperball.ball import BallPoint
from hyperball.decorators import restarting
from hyperball.exceptions import BadBasis, DimError, NoConvergence, NotReducing, NotUnitary
from hyperball.group import GElement, adjoint_g, inverse
from hyperball.linalg import ComplexMatrix, ComplexVector, Seed

logger = logging.getLogger(__name__)

LOCATION_TOL = 1e-8
PARABOLIC_TOL = 1e-9
MATCH_TOL = 1e-6
DEFAULT_ITERATIONS = 100000
DEFAULT_RESTARTS = 3
START_RADIUS = 0.5


class Kind(str, enum.Enum):
    elliptic = 'Elliptic'
    hyperbolic = 'Hyperbolic'
    parabolic = 'Parabolic'
    undetermined = 'Undetermined'


class Location(str, enum.Enum):
    interior = 'Interior'
    boundary = 'Boundary'


class Method(str, enum.Enum):
    closed_form = 'ClosedForm'
    iteration = 'Iteration'


@dataclass(frozen=True)
class SpecialSpectrum:
    """Eigendata of T on the reducing plane <xi> + C when U xi = r xi.

    Eigenvectors are (k_i xi, 1) with eigenvalues lambda_i = k_i ||xi||^2 + a.
    """
    r: complex
    lambda1: complex
    lambda2: complex
    k1: complex
    k2: complex
    discriminant: complex
    double: bool = False


@dataclass(frozen=True)
class FixedPointRecord:
    point: ComplexVector
    location: Location
    eigenvalue: complex

    def __repr__(self):
        return '<FixedPointRecord {} |x|={:.6f}>'.format(self.location.value, linalg.norm(self.point))


@dataclass(frozen=True)
class Classification:
    kind: Kind
    fixed_points: t.Tuple[FixedPointRecord, ...] = ()
    method: Method = Method.closed_form
    spectrum: t.Optional[SpecialSpectrum] = field(default=None)

    def __repr__(self):
        return '<Classification {} via {} fixed_points={}>'.format(
            self.kind.value, self.method.value, len(self.fixed_points))


def _scale(m: ComplexMatrix) -> float:
    return max(1.0, linalg.max_abs(m))


def _near_multiple_of_pi(theta: float, tol: float) -> bool:
    return min(abs(theta), abs(theta - math.pi), abs(theta - 2 * math.pi)) <= tol


def is_unitary_elem(T: GElement, tol: float = linalg.DEFAULT_TOL) -> bool:
    """T is unitary iff xi = 0."""
    return linalg.norm(T.xi) <= tol


def commutator_residual(T: GElement) -> float:
    """||M* M - M M*||_max for the full matrix of T."""
    m = T.matrix
    return linalg.max_abs(m.conj().T @ m - m @ m.conj().T)


def is_normal_elem(T: GElement, tol: float = linalg.DEFAULT_TOL) -> bool:
    """T is normal iff U xi = xi; cross-checked against the commutator."""
    size = linalg.norm(T.xi)
    normal = size == 0.0 or linalg.norm(T.U @ T.xi - T.xi) <= tol * size
    commuting = commutator_residual(T) <= tol * _scale(T.matrix) ** 2
    if normal != commuting:
        logger.warning('Normality test disagrees with the commutator for %s', T)
    return normal


def is_self_adjoint_elem(T: GElement, tol: float = linalg.DEFAULT_TOL) -> bool:
    """
    T = T* entrywise. Self-adjoint elements are +-[[U A, xi], [<., xi>, a]]
    with U an involution, which is checked as well.
    """
    scale = _scale(T.matrix)
    if linalg.max_abs(adjoint_g(T).M - T.matrix) > tol * scale:
        return False
    structured = (linalg.norm(T.U @ T.xi - T.xi) <= tol * scale
                  and linalg.max_abs(T.U @ T.U - np.eye(T.dim)) <= tol * scale
                  and _near_multiple_of_pi(T.theta, tol * scale))
    if not structured:
        logger.warning('%s equals its adjoint but lacks the self-adjoint structure', T)
    return structured


def is_involutory_elem(T: GElement, tol: float = linalg.DEFAULT_TOL) -> bool:
    """
    T^2 = I. Involutions are +-[[U A, -xi], [<., xi>, a]] with U an involution,
    which is checked as well.
    """
    m = T.matrix
    scale = _scale(m)
    if linalg.max_abs(m @ m - np.eye(T.dim + 1)) > tol * scale * scale:
        return False
    structured = (linalg.norm(T.U @ T.xi + T.xi) <= tol * scale
                  and linalg.max_abs(T.U @ T.U - np.eye(T.dim)) <= tol * scale)
    if not structured:
        logger.warning('%s squares to I but lacks the involutory structure', T)
    return structured


def reducing_ratio(T: GElement) -> t.Tuple[complex, float]:
    """
    r = <U xi, xi> / ||xi||^2 and the relative residual ||U xi - r xi|| / ||xi||.
    Raises:
        NotReducing: xi = 0
    """
    size_sq = float(np.vdot(T.xi, T.xi).real)
    if size_sq == 0.0:
        raise NotReducing('xi = 0 spans no reducing line')
    image = T.U @ T.xi
    r = complex(np.vdot(T.xi, image)) / size_sq
    return r, linalg.norm(image - r * T.xi) / math.sqrt(size_sq)


def reducing_spectrum(T: GElement, tol: float = linalg.DEFAULT_TOL) -> SpecialSpectrum:
    """
    Closed-form eigendata on <xi> + C for U xi = r xi (phase stripped):
        lambda = (a (r + 1) +- sqrt(a^2 (r + 1)^2 - 4 r)) / 2
        k = (a (r - 1) +- sqrt(a^2 (r + 1)^2 - 4 r)) / (2 ||xi||^2)
    with the principal root and the same sign in both. A discriminant below
    1e-9 a^2 is treated as zero, giving the exact double root.
    Raises:
        NotReducing: xi = 0 or U does not keep <xi> invariant within tol
    """
    r, residual = reducing_ratio(T)
    if residual > tol:
        raise NotReducing('U does not keep <xi> invariant: residual %g' % residual)
    r = r / abs(r)
    a = T.a
    size_sq = float(np.vdot(T.xi, T.xi).real)

    disc = a * a * (r + 1) ** 2 - 4 * r
    double = abs(disc) <= PARABOLIC_TOL * a * a
    root = 0j if double else complex(np.sqrt(disc))
    return SpecialSpectrum(
        r=r,
        lambda1=(a * (r + 1) + root) / 2,
        lambda2=(a * (r + 1) - root) / 2,
        k1=(a * (r - 1) + root) / (2 * size_sq),
        k2=(a * (r - 1) - root) / (2 * size_sq),
        discriminant=disc,
        double=double,
    )


def _locate(point: ComplexVector) -> t.Optional[Location]:
    size = linalg.norm(point)
    if size < 1.0 - LOCATION_TOL:
        return Location.interior
    if size <= 1.0 + LOCATION_TOL:
        return Location.boundary
    return None


def _record(T: GElement, point: ComplexVector, location: Location) -> FixedPointRecord:
    return FixedPointRecord(point, location, complex(np.vdot(T.xi, point)) + T.a)


def _closed_form(T: GElement, tol: float) -> t.Optional[Classification]:
    if is_unitary_elem(T, tol):
        origin = _record(T, np.zeros(T.dim, dtype=complex), Location.interior)
        return Classification(Kind.elliptic, (origin,), Method.closed_form)
    try:
        spectrum = reducing_spectrum(T, tol)
    except NotReducing:
        return None

    pairs = [(spectrum.k1, spectrum.lambda1)]
    if not spectrum.double:
        pairs.append((spectrum.k2, spectrum.lambda2))
    records = []
    for k, lam in pairs:
        point = k * T.xi
        location = _locate(point)
        if location is not None:
            records.append(FixedPointRecord(point, location, lam))

    boundary = [rec for rec in records if rec.location is Location.boundary]
    if len(boundary) < len(records):
        kind = Kind.elliptic
    elif spectrum.double and len(boundary) == 1:
        kind = Kind.parabolic
    elif len(boundary) == 2:
        kind = Kind.hyperbolic
    else:
        kind = Kind.undetermined
    return Classification(kind, tuple(records), Method.closed_form, spectrum)


def iterate_to_fixed_point(T: GElement,
                           start,
                           tol: float = linalg.DEFAULT_TOL,
                           maxit: int = DEFAULT_ITERATIONS,
                           ) -> FixedPointRecord:
    """
    Iterate x <- phi(T)(x) from `start`.
    Interior convergence is judged in the invariant metric (the Euclidean step
    scaled by 1 - ||x||^2), since an isometry moves every non-fixed point by the
    same hyperbolic amount. Boundary convergence needs ||x|| within 10 tol of 1
    and a Euclidean step below tol.
    Raises:
        NoConvergence: maxit reached, or a period-2 orbit was detected
    """
    x = start.v if isinstance(start, BallPoint) else linalg.as_vector(start)
    previous = None
    for it in range(maxit):
        following = T.act(x)
        step = linalg.norm(following - x)
        size = linalg.norm(following)
        if size < 1.0 - 10 * tol and step <= tol * (1.0 - size * size):
            return _record(T, following, Location.interior)
        if abs(size - 1.0) <= 10 * tol and step <= tol:
            logger.debug('Orbit reached the boundary after %d steps', it)
            return _record(T, following / size, Location.boundary)
        if previous is not None and step > tol and linalg.norm(following - previous) <= tol:
            raise NoConvergence('orbit has period 2')
        previous, x = x, following
    raise NoConvergence('orbit did not settle in %d steps' % maxit)


def _attracting_point(T: GElement, tol: float, maxit: int, restarts: int, seed: Seed) -> FixedPointRecord:
    n = T.dim
    try:
        lam, v = linalg.power_iteration(T.matrix, tol, min(maxit, linalg.DEFAULT_MAXIT), seed)
        if abs(lam) > 1.0 + MATCH_TOL and abs(v[n]) > 0.0:
            point = v[:n] / v[n]
            if _locate(point) is Location.boundary:
                return _record(T, point / linalg.norm(point), Location.boundary)
    except NoConvergence:
        logger.debug('No dominant eigenvalue for %s, iterating orbits', T)

    rng = np.random.default_rng(seed)
    starts = iter([np.zeros(n, dtype=complex)]
                  + [START_RADIUS * rng.uniform() * linalg.random_unit_vector(n, rng)
                     for _ in range(restarts - 1)])

    @restarting(restarts)
    def search():
        return iterate_to_fixed_point(T, next(starts), tol, maxit)

    return search()


def _by_iteration(T: GElement, tol: float, maxit: int, restarts: int, seed: Seed) -> Classification:
    try:
        forward = _attracting_point(T, tol, maxit, restarts, seed)
    except NoConvergence:
        return Classification(Kind.undetermined, (), Method.iteration)
    if forward.location is Location.interior:
        return Classification(Kind.elliptic, (forward,), Method.iteration)

    try:
        repelling = _attracting_point(inverse(T), tol, maxit, restarts, seed)
    except NoConvergence:
        return Classification(Kind.undetermined, (forward,), Method.iteration)
    backward = _record(T, repelling.point, repelling.location)
    if backward.location is Location.interior:
        return Classification(Kind.elliptic, (backward, forward), Method.iteration)
    if linalg.norm(forward.point - backward.point) <= MATCH_TOL:
        return Classification(Kind.parabolic, (forward,), Method.iteration)
    return Classification(Kind.hyperbolic, (forward, backward), Method.iteration)


def dynamical_type(T: GElement,
                   tol: float = linalg.DEFAULT_TOL,
                   force_iteration: bool = False,
                   maxit: int = DEFAULT_ITERATIONS,
                   restarts: int = DEFAULT_RESTARTS,
                   seed: Seed = 0,
                   ) -> Classification:
    """
    Classify phi(T) as elliptic, hyperbolic or parabolic.
    Unitary elements and elements with U xi = r xi use closed forms; everything
    else (or everything, with `force_iteration`) goes through power iteration and
    orbit iteration of T and T^{-1}. Non-convergence gives `Kind.undetermined`.
    """
    stripped = T.strip_phase()
    if not force_iteration:
        result = _closed_form(stripped, tol)
        if result is not None:
            return result
    return _by_iteration(stripped, tol, maxit, restarts, seed)


def fixed_points(T: GElement, tol: float = linalg.DEFAULT_TOL, **kwargs) -> t.List[FixedPointRecord]:
    return list(dynamical_type(T, tol, **kwargs).fixed_points)


def reduces(T: GElement, K_basis: t.Sequence[ComplexVector], tol: float = linalg.DEFAULT_TOL) -> bool:
    """
    True iff T maps K + C into itself and its orthogonal complement into itself.
    Raises:
        BadBasis: `K_basis` is not orthonormal within tol
    """
    n = T.dim
    if len(K_basis):
        Q = np.column_stack([linalg.as_vector(b) for b in K_basis])
    else:
        Q = np.zeros((n, 0), dtype=complex)
    if Q.shape[0] != n:
        raise DimError('basis vectors must lie in C^%d' % n)
    if linalg.max_abs(Q.conj().T @ Q - np.eye(Q.shape[1])) > tol:
        raise BadBasis('basis is not orthonormal within %g' % tol)

    P = linalg.extend(Q @ Q.conj().T, 1.0)
    complement = np.eye(n + 1) - P
    m = T.matrix
    scale = _scale(m)
    return (linalg.max_abs(complement @ m @ P) <= tol * scale
            and linalg.max_abs(P @ m @ complement) <= tol * scale)


def check_unitary_equiv_inverse(T: GElement, V: ComplexMatrix, tol: float = linalg.DEFAULT_TOL) -> bool:
    """
    Verify that V conjugates T to its inverse:
    (U A)* = V^{-1} U A V, V xi = V^{-1} xi = -U xi and theta = n pi.
    The conditions are cross-checked by conjugating the full matrix.
    Raises:
        NotUnitary: V is not unitary within tol
    """
    V = linalg.as_matrix(V, square=True)
    if V.shape[0] != T.dim:
        raise DimError('V must act on C^%d' % T.dim)
    if not linalg.is_unitary(V, tol):
        raise NotUnitary('conjugating operator is not unitary within %g' % tol)
    Vinv = V.conj().T
    B = T.U @ T.A
    Uxi = T.U @ T.xi
    scale = _scale(T.matrix)

    conditions = (linalg.max_abs(B.conj().T - Vinv @ B @ V) <= tol * scale
                  and linalg.norm(V @ T.xi + Uxi) <= tol * scale
                  and linalg.norm(Vinv @ T.xi + Uxi) <= tol * scale
                  and _near_multiple_of_pi(T.theta, tol))

    conjugated = linalg.extend(Vinv) @ T.matrix @ linalg.extend(V)
    direct = linalg.max_abs(conjugated - inverse(T).matrix) <= 10 * tol * scale
    if conditions != direct:
        logger.warning('Equivalence conditions and direct conjugation disagree for %s', T)
    return conditions and direct
