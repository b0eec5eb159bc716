"""
The unit ball B of C^n: points, the Moebius maps f_x0 and their unitary
compositions, the Poincare distance on the disk and the Caratheodory distance
on B.

Poincare distance uses the curvature -4 normalization
rho(z, w) = atanh |(z - w) / (1 - z conj(w))|, which makes the Caratheodory
distance of the disk coincide with rho.
"""
import logging
import math
import typing as t

import numpy as np

from hyperball import linalg
from hyperball.exceptions import DimError, NearSingular, NotUnitary, OutOfBall
from hyperball.linalg import ComplexMatrix, ComplexVector, Seed

logger = logging.getLogger(__name__)

BOUNDARY_EPS = 1e-12
SINGULAR_TOL = 1e-14
BOUNDARY_SINGULAR_TOL = 1e-12
UNIT_TOL = 1e-10


class BallPoint:
    """A point strictly inside the unit ball, ||v|| < 1 - eps."""

    def __init__(self, v, eps: float = BOUNDARY_EPS) -> None:
        v = np.array(linalg.as_vector(v))
        size = linalg.norm(v)
        if size >= 1.0 - eps:
            raise OutOfBall('point of norm %r is not inside the ball' % size)
        v.setflags(write=False)
        self._v = v

    @property
    def v(self) -> ComplexVector:
        return self._v

    @property
    def dim(self) -> int:
        return self._v.size

    @property
    def norm(self) -> float:
        return linalg.norm(self._v)

    @classmethod
    def origin(cls, n: int) -> 'BallPoint':
        return cls(np.zeros(n, dtype=complex))

    def __eq__(self, other):
        return isinstance(other, BallPoint) and np.array_equal(self._v, other._v)

    def __hash__(self):
        return hash(self._v.tobytes())

    def __repr__(self):
        return '<BallPoint dim={} norm={:.6f}>'.format(self.dim, self.norm)


def _vector_of(x) -> ComplexVector:
    return x.v if isinstance(x, BallPoint) else linalg.as_vector(x)


def t_operator(x0) -> ComplexMatrix:
    """
    Matrix of T_x0(x) = <x, x0> / (1 + s) x0 + s x, s = sqrt(1 - ||x0||^2).
    Raises:
        OutOfBall: ||x0|| >= 1
    """
    x0 = _vector_of(x0)
    size = linalg.norm(x0)
    if size >= 1.0:
        raise OutOfBall('T_x0 needs ||x0|| < 1, got %r' % size)
    s = math.sqrt(1.0 - size * size)
    return s * np.eye(x0.size, dtype=complex) + np.outer(x0, x0.conj()) / (1.0 + s)


class MobiusMap:
    """The automorphism U o f_x0 of the ball."""

    def __init__(self, U: ComplexMatrix, x0, tol: float = linalg.UNITARY_TOL) -> None:
        U = linalg.as_matrix(U, square=True)
        x0 = _vector_of(x0)
        if U.shape[0] != x0.size:
            raise DimError('U is %dx%d but x0 has dimension %d' % (U.shape + (x0.size,)))
        if not linalg.is_unitary(U, tol):
            raise NotUnitary('U is not unitary within %g' % tol)
        self._U = U
        self._x0 = x0
        self._t = t_operator(x0)

    @classmethod
    def identity(cls, n: int) -> 'MobiusMap':
        return cls(np.eye(n, dtype=complex), np.zeros(n, dtype=complex))

    @classmethod
    def from_point(cls, x0) -> 'MobiusMap':
        """f_x0 on its own, the map sending x0 to the origin."""
        x0 = _vector_of(x0)
        return cls(np.eye(x0.size, dtype=complex), x0)

    @property
    def U(self) -> ComplexMatrix:
        return self._U

    @property
    def x0(self) -> ComplexVector:
        return self._x0

    @property
    def dim(self) -> int:
        return self._x0.size

    @property
    def domain_radius(self) -> float:
        """Radius of the ball on which f_x0 is holomorphic, 1 / ||x0||."""
        size = linalg.norm(self._x0)
        return math.inf if size == 0.0 else 1.0 / size

    def evaluate(self, x: ComplexVector, singular_tol: float = SINGULAR_TOL) -> ComplexVector:
        """Evaluate without ball admission checks on input or output."""
        x = linalg.as_vector(x)
        if x.size != self.dim:
            raise DimError('map acts on C^%d, got a point of C^%d' % (self.dim, x.size))
        denom = 1.0 - np.vdot(self._x0, x)
        if abs(denom) < singular_tol:
            raise NearSingular('|1 - <x, x0>| = %g is too small' % abs(denom))
        return self._U @ (self._t @ ((x - self._x0) / denom))

    def __call__(self, x) -> 'BallPoint':
        return mobius_apply(self, x)

    def __repr__(self):
        return '<MobiusMap dim={} |x0|={:.6f}>'.format(self.dim, linalg.norm(self._x0))


def mobius_apply(m: MobiusMap, x) -> BallPoint:
    """U f_x0(x) for a point strictly inside the ball.
    The image is admitted whenever ||image|| < 1; a map moving points towards
    the sphere can carry an admitted point into the admission margin.
    """
    x = x if isinstance(x, BallPoint) else BallPoint(x)
    return BallPoint(m.evaluate(x.v), eps=0.0)


def mobius_boundary_apply(m: MobiusMap, x: ComplexVector) -> ComplexVector:
    """
    U f_x0(x) for a unit vector x on the sphere; the image is again a unit vector.
    Raises:
        OutOfBall: x is not a unit vector within 1e-10
        NearSingular: |1 - <x, x0>| < 1e-12
    """
    x = linalg.as_vector(x)
    size = linalg.norm(x)
    if abs(size - 1.0) > UNIT_TOL:
        raise OutOfBall('boundary evaluation needs a unit vector, got norm %r' % size)
    if size >= m.domain_radius:
        raise NearSingular('x lies outside the domain of f_x0')
    return m.evaluate(x, singular_tol=BOUNDARY_SINGULAR_TOL)


def poincare_distance(z: complex, w: complex) -> float:
    """
    Poincare distance on the unit disk.
    >>> poincare_distance(0, 0)
    0.0
    """
    z, w = complex(z), complex(w)
    if abs(z) >= 1.0 or abs(w) >= 1.0:
        raise OutOfBall('Poincare distance needs |z|, |w| < 1')
    return float(np.arctanh(abs((z - w) / (1.0 - z * w.conjugate()))))


def caratheodory_distance(x, y) -> float:
    """C(x, y) = atanh ||f_x(y)||."""
    x = x if isinstance(x, BallPoint) else BallPoint(x)
    y = y if isinstance(y, BallPoint) else BallPoint(y)
    if x.dim != y.dim:
        raise DimError('dimension mismatch: %d != %d' % (x.dim, y.dim))
    image = MobiusMap.from_point(x).evaluate(y.v)
    return float(np.arctanh(linalg.norm(image)))


def caratheodory_lower_bound(x, y, trials: int = 64, seed: Seed = 0) -> float:
    """
    Estimate C(x, y) = sup_f rho(f(x), f(y)) from below over the holomorphic
    functionals z -> <f_x(z), u> for random unit vectors u, plus the optimal
    direction u = f_x(y) / ||f_x(y)||.
    """
    x = x if isinstance(x, BallPoint) else BallPoint(x)
    y = y if isinstance(y, BallPoint) else BallPoint(y)
    if x.dim != y.dim:
        raise DimError('dimension mismatch: %d != %d' % (x.dim, y.dim))
    rng = np.random.default_rng(seed)
    f = MobiusMap.from_point(x)
    fx, fy = f.evaluate(x.v), f.evaluate(y.v)

    directions: t.List[ComplexVector] = [linalg.random_unit_vector(x.dim, rng) for _ in range(trials)]
    size = linalg.norm(fy)
    if size > 0.0:
        directions.append(fy / size)

    best = 0.0
    for u in directions:
        best = max(best, poincare_distance(np.vdot(u, fx), np.vdot(u, fy)))
    return best
