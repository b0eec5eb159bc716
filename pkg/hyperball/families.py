import enum
import logging
import math
import typing as t

import inflection
import numpy as np

from hyperball import classify, linalg
from hyperball.exceptions import UsageError
from hyperball.group import GElement, make

logger = logging.getLogger(__name__)

XI_RANGE = (0.1, 2.0)
UNIFORM_RADIUS = 0.9


class Family(str, enum.Enum):
    """Named families of test elements
    Each family is defined by a structural condition on (theta, U, xi):
    the reducing ones keep the line <xi> invariant under U.
    """
    uniform = 'uniform'
    normal = 'normal'
    selfadjoint = 'selfadjoint'
    involutory = 'involutory'
    reducing = 'reducing'
    parabolic = 'parabolic'
    unitary = 'unitary'


def normalize_family(name: str) -> Family:
    """Look up a family by name, ignoring case and word separators
    >>> normalize_family('self-adjoint').value
    'selfadjoint'
    >>> normalize_family('selfAdjoint').value
    'selfadjoint'

    Unknown names raise a usage error:
    >>> normalize_family('loxodromic')
    Traceback (most recent call last):
        ...
    hyperball.exceptions.UsageError: loxodromic is not a known family
    """
    if isinstance(name, Family):
        return name
    key = inflection.underscore(str(name)).replace('_', '')
    try:
        return Family(key)
    except ValueError:
        raise UsageError(f"{name} is not a known family") from None


def _random_xi(n: int, rng: np.random.Generator) -> linalg.ComplexVector:
    return rng.uniform(*XI_RANGE) * linalg.random_unit_vector(n, rng)


def _random_phase_angle(rng: np.random.Generator) -> float:
    return float(rng.uniform(0.0, 2.0 * math.pi))


def _real_phase_angle(rng: np.random.Generator) -> float:
    return float(rng.choice([0.0, math.pi]))


def _random_involution(n: int, rng: np.random.Generator) -> linalg.ComplexMatrix:
    """W = Q diag(+-1) Q* with a random unitary Q."""
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    q = linalg.random_unitary(n, rng)
    signs = rng.choice([-1.0, 1.0], size=n)
    return (q * signs) @ q.conj().T


def complement_basis(xi: linalg.ComplexVector, rng: np.random.Generator) -> linalg.ComplexMatrix:
    """Orthonormal basis of the orthogonal complement of <xi>, as columns."""
    n = xi.size
    filler = rng.standard_normal((n, n - 1)) + 1j * rng.standard_normal((n, n - 1))
    q, _ = np.linalg.qr(np.column_stack([xi / linalg.norm(xi), filler]))
    return q[:, 1:]


def unitary_with_axis(xi: linalg.ComplexVector,
                      r: complex,
                      W: linalg.ComplexMatrix,
                      rng: np.random.Generator,
                      ) -> linalg.ComplexMatrix:
    """
    Unitary U with U xi = r xi that acts as W on a random orthonormal basis
    of the complement of <xi>.
    """
    unit = xi / linalg.norm(xi)
    q = complement_basis(xi, rng)
    return r * np.outer(unit, unit.conj()) + q @ W @ q.conj().T


def _uniform(n, rng) -> GElement:
    x0 = rng.uniform(0.0, UNIFORM_RADIUS) * linalg.random_unit_vector(n, rng)
    a = 1.0 / math.sqrt(1.0 - linalg.norm(x0) ** 2)
    return make(_random_phase_angle(rng), linalg.random_unitary(n, rng), -a * x0)


def _normal(n, rng) -> GElement:
    xi = _random_xi(n, rng)
    U = unitary_with_axis(xi, 1.0, linalg.random_unitary(n - 1, rng) if n > 1 else np.zeros((0, 0)), rng)
    return make(_random_phase_angle(rng), U, xi)


def _selfadjoint(n, rng) -> GElement:
    xi = _random_xi(n, rng)
    U = unitary_with_axis(xi, 1.0, _random_involution(n - 1, rng), rng)
    return make(_real_phase_angle(rng), U, xi)


def _involutory(n, rng) -> GElement:
    xi = _random_xi(n, rng)
    U = unitary_with_axis(xi, -1.0, _random_involution(n - 1, rng), rng)
    return make(_real_phase_angle(rng), U, xi)


def _reducing(n, rng) -> GElement:
    xi = _random_xi(n, rng)
    r = np.exp(1j * _random_phase_angle(rng))
    U = unitary_with_axis(xi, r, linalg.random_unitary(n - 1, rng) if n > 1 else np.zeros((0, 0)), rng)
    return make(_random_phase_angle(rng), U, xi)


def parabolic_element(n: int, a: float, sign: int, rng: np.random.Generator, theta: float = 0.0) -> GElement:
    """
    Reducing element with U xi = e^{i phi} xi, cos phi = 2 / a^2 - 1, which
    makes the discriminant a^2 (r + 1)^2 - 4 r vanish.
    """
    if a <= 1.0:
        raise ValueError('a must exceed 1, got %r' % a)
    xi = math.sqrt(a * a - 1.0) * linalg.random_unit_vector(n, rng)
    phi = sign * math.acos(2.0 / (a * a) - 1.0)
    W = linalg.random_unitary(n - 1, rng) if n > 1 else np.zeros((0, 0))
    U = unitary_with_axis(xi, complex(math.cos(phi), math.sin(phi)), W, rng)
    return make(theta, U, xi)


def _parabolic(n, rng) -> GElement:
    a = float(rng.uniform(1.05, 2.0))
    sign = int(rng.choice([-1, 1]))
    return parabolic_element(n, a, sign, rng, _random_phase_angle(rng))


def _unitary(n, rng) -> GElement:
    return make(_random_phase_angle(rng), linalg.random_unitary(n, rng), np.zeros(n, dtype=complex))


_GENERATORS: t.Dict[Family, t.Callable[[int, np.random.Generator], GElement]] = {
    Family.uniform: _uniform,
    Family.normal: _normal,
    Family.selfadjoint: _selfadjoint,
    Family.involutory: _involutory,
    Family.reducing: _reducing,
    Family.parabolic: _parabolic,
    Family.unitary: _unitary,
}


def generate(family, dim: int, rng: np.random.Generator) -> GElement:
    """Draw one element of `family` in dimension `dim` from `rng`."""
    family = normalize_family(family)
    if dim < 1:
        raise UsageError('dim must be positive, got %d' % dim)
    return _GENERATORS[family](dim, rng)


def family_predicate(family, T: GElement, tol: float = linalg.DEFAULT_TOL) -> bool:
    """The structural condition every member of `family` satisfies."""
    family = normalize_family(family)
    if family is Family.uniform:
        return True
    if family is Family.normal:
        return classify.is_normal_elem(T, tol)
    if family is Family.selfadjoint:
        return classify.is_self_adjoint_elem(T, tol)
    if family is Family.involutory:
        return classify.is_involutory_elem(T, tol)
    if family is Family.unitary:
        return classify.is_unitary_elem(T, tol)
    if linalg.norm(T.xi) == 0.0:
        return False
    if family is Family.reducing:
        return classify.reducing_ratio(T)[1] <= tol
    return classify.dynamical_type(T, tol).kind is classify.Kind.parabolic
