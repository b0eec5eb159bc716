"""
Property catalog run by `hyperball verify`.

Every suite draws its instances from its own generator, seeded from the run
seed and the suite's position in the catalog, so suites can run on a thread
pool and still produce the same report. Thresholds are multiples of the
configured tolerance; a tolerance sharper than double precision makes the
suites report failures rather than crash.
"""
import logging
import math
import time
import typing as t
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from hyperball import classify, families, group, linalg, models
from hyperball.ball import (BallPoint, caratheodory_distance, caratheodory_lower_bound, mobius_apply,
                            mobius_boundary_apply, poincare_distance)
from hyperball.exceptions import MathError
from hyperball.families import Family
from hyperball.models import Failure, SuiteResult, VerifyReport
from hyperball.utils import digest

logger = logging.getLogger(__name__)

DIMS = (2, 8, 32)
DEFAULT_CASES = 350
PROBES = 20
MAX_PAIRS = 200
PROBE_RADIUS = 0.8
EDGE_RADIUS = 0.999
LOCATION_MATCH = 1e-8
BOUNDARY_MATCH = 1e-7
ITERATION_MATCH = 1e-6
VERIFY_MAXIT = 2000
FORCED_CASES = 10


class Tally:
    """Collects residuals for one suite."""

    def __init__(self, name: str) -> None:
        self.name = name
        self.cases = 0
        self.max_residual = 0.0
        self.failures: t.List[Failure] = []

    def check(self, residual: float, threshold: float, case: str, subject: t.Any = None) -> bool:
        """NaN residuals fail and are reported as inf."""
        self.cases += 1
        if math.isnan(residual):
            residual = math.inf
        else:
            self.max_residual = max(self.max_residual, residual)
        if residual <= threshold:
            return True
        document = models.encode_element(subject) if isinstance(subject, group.GElement) else subject
        self.failures.append(Failure(digest(document), residual, threshold, case))
        return False

    def finite(self, case: str, *arrays, subject: t.Any = None) -> bool:
        return self.expect(all(np.all(np.isfinite(a)) for a in arrays), '%s is finite' % case, subject)

    def expect(self, condition: bool, case: str, subject: t.Any = None) -> bool:
        """Boolean checks count as residual 0 (holds) or 1 (fails)."""
        return self.check(0.0 if condition else 1.0, 0.5, case, subject)

    def error(self, exc: Exception, case: str, subject: t.Any = None) -> None:
        logger.debug('%s: %s raised %r', self.name, case, exc)
        self.check(math.inf, 0.0, '%s (%s)' % (case, type(exc).__name__), subject)

    def result(self) -> SuiteResult:
        return SuiteResult(self.name, self.cases, self.max_residual, self.failures)


def _probe(n: int, rng: np.random.Generator, radius: float = PROBE_RADIUS) -> linalg.ComplexVector:
    return rng.uniform(0.0, radius) * linalg.random_unit_vector(n, rng)


def _scale(T: group.GElement) -> float:
    return max(1.0, linalg.max_abs(T.matrix))


def ball_preservation(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('ball_preservation')
    for n in dims:
        for _ in range(cases):
            T = families.generate(Family.uniform, n, rng)
            F = group.to_mobius(T)
            for _ in range(PROBES):
                try:
                    image = mobius_apply(F, _probe(n, rng, EDGE_RADIUS))
                except MathError as exc:
                    tally.error(exc, 'interior image n=%d' % n, T)
                    continue
                tally.expect(image.norm < 1.0, 'interior image n=%d' % n, T)
            try:
                image = mobius_boundary_apply(F, linalg.random_unit_vector(n, rng))
            except MathError as exc:
                tally.error(exc, 'sphere image n=%d' % n, T)
                continue
            tally.check(abs(linalg.norm(image) - 1.0), 10 * tol, 'sphere image n=%d' % n, T)
    return tally.result()


def form_invariance(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('form_invariance')
    for n in dims:
        for i in range(cases):
            family = list(Family)[i % len(Family)]
            T = families.generate(family, n, rng)
            tally.check(group.form_residual(T), tol, '%s n=%d' % (family.value, n), T)
    return tally.result()


def constraint_pair(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('constraint_pair')
    for n in dims:
        for _ in range(cases):
            T = families.generate(Family.uniform, n, rng)
            scalar, block = group.constraint_residuals(T)
            tally.check(scalar, tol, 'a^2 = 1 + |xi|^2 n=%d' % n, T)
            tally.check(block, tol, 'A*A identity n=%d' % n, T)
    return tally.result()


def homomorphism(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('homomorphism')
    for n in dims:
        for _ in range(min(cases, MAX_PAIRS)):
            S = families.generate(Family.uniform, n, rng)
            T = families.generate(Family.uniform, n, rng)
            alpha = rng.uniform(0.0, 2.0 * math.pi)
            try:
                ST = group.compose(S, T, tol)
                rotated = group.compose(group.center(alpha, n), T, tol)
                phi_s, phi_t = group.to_mobius(S), group.to_mobius(T)
                phi_st, phi_rot = group.to_mobius(ST), group.to_mobius(rotated)
            except MathError as exc:
                tally.error(exc, 'compose n=%d' % n, S)
                continue
            worst = kernel = 0.0
            for _ in range(PROBES):
                x = _probe(n, rng)
                direct = phi_st.evaluate(x)
                worst = max(worst, linalg.norm(direct - phi_s.evaluate(phi_t.evaluate(x))))
                kernel = max(kernel, linalg.norm(phi_rot.evaluate(x) - phi_t.evaluate(x)))
            tally.check(worst, 10 * tol, 'phi(ST) = phi(S) phi(T) n=%d' % n, S)
            tally.check(kernel, tol, 'central factor n=%d' % n, T)
    return tally.result()


def inverse_adjoint(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('inverse_adjoint')
    for n in dims:
        for _ in range(cases):
            T = families.generate(Family.uniform, n, rng)
            product = T.matrix @ group.inverse(T).matrix
            tally.check(linalg.max_abs(product - np.eye(n + 1)), 0.1 * tol, 'T T^-1 = I n=%d' % n, T)
            residual = linalg.max_abs(group.adjoint_g(T).M - T.matrix.conj().T)
            tally.check(residual, 0.01 * tol, 'closed-form adjoint n=%d' % n, T)
    return tally.result()


def _compressed(T: group.GElement, r: complex) -> linalg.ComplexMatrix:
    """Phase-stripped T on the orthonormal pair (xi / |xi|, e_{n+1})."""
    size = linalg.norm(T.xi)
    return np.array([[r * T.a, r * size], [size, T.a]], dtype=complex)


def reducing_spectra(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('reducing_spectra')
    for n in dims:
        for _ in range(cases):
            T = families.generate(Family.reducing, n, rng)
            try:
                spectrum = classify.reducing_spectrum(T, tol)
            except MathError as exc:
                tally.error(exc, 'reducing_spectrum n=%d' % n, T)
                continue
            size = linalg.norm(T.xi)
            values, vectors = linalg.eig_2x2(_compressed(T, spectrum.r))
            closed = (spectrum.lambda1, spectrum.lambda2)
            tally.check(max(abs(values[i] - closed[i]) for i in range(2)), 0.1 * tol,
                        'eigenvalues vs quadratic n=%d' % n, T)
            if vectors.shape[1] == 2:
                oracle = vectors[0] / (vectors[1] * size)
                points = max(abs(oracle[i] - k) * size / max(1.0, abs(k) * size)
                             for i, k in enumerate((spectrum.k1, spectrum.k2)))
                tally.check(points, tol, 'eigenvectors vs quadratic n=%d' % n, T)

            tally.check(abs(spectrum.lambda1 * spectrum.lambda2 - spectrum.r), tol, 'lambda1 lambda2 = r n=%d' % n, T)
            tally.check(abs(abs(spectrum.k1 * size) * abs(spectrum.k2 * size) - 1.0), tol,
                        '|k1 xi| |k2 xi| = 1 n=%d' % n, T)
            stripped = T.strip_phase().matrix
            for k, lam in ((spectrum.k1, spectrum.lambda1), (spectrum.k2, spectrum.lambda2)):
                v = np.r_[k * T.xi, 1.0]
                v = v / linalg.norm(v)
                tally.check(linalg.norm(stripped @ v - lam * v), tol * _scale(T), 'eigen residual n=%d' % n, T)
    return tally.result()


def _fixed_point_residual(T: group.GElement, record: classify.FixedPointRecord) -> float:
    if record.location is classify.Location.interior:
        return linalg.norm(T.act(record.point) - record.point)
    u = record.point / linalg.norm(record.point)
    return linalg.norm(mobius_boundary_apply(group.to_mobius(T), u) - u)


def fixed_point_residuals(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('fixed_points')
    for n in dims:
        for i in range(cases):
            for family in Family:
                # generic elements go through iteration
                if family is Family.uniform and i >= FORCED_CASES:
                    continue
                T = families.generate(family, n, rng)
                case = '%s n=%d' % (family.value, n)
                try:
                    records = classify.fixed_points(T, tol, maxit=VERIFY_MAXIT, restarts=2)
                    residuals = [(rec.location, _fixed_point_residual(T, rec)) for rec in records]
                except MathError as exc:
                    tally.error(exc, case, T)
                    continue
                for location, residual in residuals:
                    threshold = LOCATION_MATCH if location is classify.Location.interior else BOUNDARY_MATCH
                    tally.check(residual, threshold, '%s %s fixed point' % (case, location.value), T)
    return tally.result()


def _classify_check(tally: Tally, T, expected_kind, expected_points, tol, case, **kwargs) -> None:
    try:
        result = classify.dynamical_type(T, tol, **kwargs)
    except MathError as exc:
        tally.error(exc, case, T)
        return
    if not tally.expect(result.kind is expected_kind, '%s is %s' % (case, expected_kind.value), T):
        return
    found = [rec.point for rec in result.fixed_points]
    match = LOCATION_MATCH if not kwargs.get('force_iteration') else ITERATION_MATCH
    for point in expected_points:
        gap = min(linalg.norm(point - other) for other in found) if found else math.inf
        tally.check(gap, match, '%s fixed point' % case, T)


def special_classes(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('special_classes')
    for n in dims:
        for i in range(cases):
            T = families.generate(Family.normal, n, rng)
            scale = _scale(T)
            tally.expect(classify.is_normal_elem(T, tol), 'normal predicate n=%d' % n, T)
            tally.check(classify.commutator_residual(T), tol * scale * scale, 'normal commutator n=%d' % n, T)
            size = linalg.norm(T.xi)
            unit = T.xi / size
            try:
                spectrum = classify.reducing_spectrum(T, tol)
            except MathError as exc:
                tally.error(exc, 'normal spectrum n=%d' % n, T)
            else:
                tally.check(abs(spectrum.lambda1 - (T.a + size)) + abs(spectrum.lambda2 - (T.a - size)), tol,
                            'normal spectrum a +- |xi| n=%d' % n, T)
                tally.check(abs(spectrum.lambda1 * spectrum.lambda2 - 1.0), tol,
                            'normal spectrum product n=%d' % n, T)
            _classify_check(tally, T, classify.Kind.hyperbolic, (unit, -unit), tol, 'normal n=%d' % n)
            if i < FORCED_CASES:
                _classify_check(tally, T, classify.Kind.hyperbolic, (unit, -unit), tol,
                                'normal by iteration n=%d' % n, force_iteration=True, maxit=VERIFY_MAXIT)

            T = families.generate(Family.uniform, n, rng)
            commuting = classify.commutator_residual(T) <= tol * _scale(T) ** 2
            tally.expect(classify.is_normal_elem(T, tol) == commuting, 'predicate vs commutator n=%d' % n, T)

            T = families.generate(Family.involutory, n, rng)
            tally.expect(classify.is_involutory_elem(T, tol), 'involutory predicate n=%d' % n, T)
            size = linalg.norm(T.xi)
            point = (1.0 - T.a) / size ** 2 * T.xi
            _classify_check(tally, T, classify.Kind.elliptic, (point,), tol, 'involutory n=%d' % n)

            T = families.generate(Family.selfadjoint, n, rng)
            tally.expect(classify.is_self_adjoint_elem(T, tol), 'self-adjoint predicate n=%d' % n, T)
            T = families.generate(Family.unitary, n, rng)
            _classify_check(tally, T, classify.Kind.elliptic, (np.zeros(n),), tol, 'unitary n=%d' % n)
    return tally.result()


def parabolic_family(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('parabolic_family')
    for n in dims:
        T = families.parabolic_element(n, 1.25, 1, rng)
        try:
            spectrum = classify.reducing_spectrum(T, tol)
        except MathError as exc:
            tally.error(exc, 'double root at a = 1.25 n=%d' % n, T)
        else:
            tally.check(abs(spectrum.k1 - complex(-0.8, 16.0 / 15.0)), tol, 'double root at a = 1.25 n=%d' % n, T)
        for _ in range(cases):
            T = families.generate(Family.parabolic, n, rng)
            try:
                spectrum = classify.reducing_spectrum(T, tol)
                result = classify.dynamical_type(T, tol)
            except MathError as exc:
                tally.error(exc, 'parabolic n=%d' % n, T)
                continue
            tally.check(abs(spectrum.discriminant), 0.01 * tol, 'vanishing discriminant n=%d' % n, T)
            tally.check(abs(linalg.norm(spectrum.k1 * T.xi) - 1.0), tol, '|k xi| = 1 n=%d' % n, T)
            tally.expect(result.kind is classify.Kind.parabolic and len(result.fixed_points) == 1,
                         'classified parabolic n=%d' % n, T)
    return tally.result()


def metric(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('metric')
    origin = BallPoint.origin(2)
    tally.check(abs(caratheodory_distance(origin, BallPoint([0.6, 0.0])) - math.log(2.0)), 0.01 * tol, 'ln 2')
    for n in dims:
        for _ in range(cases):
            y = BallPoint(_probe(n, rng, 0.95))
            tally.check(abs(caratheodory_distance(BallPoint.origin(n), y) - math.atanh(y.norm)), 0.01 * tol,
                        'C(0, y) = atanh |y| n=%d' % n)

            x, y = BallPoint(_probe(n, rng)), BallPoint(_probe(n, rng))
            T = families.generate(Family.uniform, n, rng)
            F = group.to_mobius(T)
            try:
                before = caratheodory_distance(x, y)
                after = caratheodory_distance(F(x), F(y))
                bound = caratheodory_lower_bound(x, y, trials=8, seed=rng)
            except MathError as exc:
                tally.error(exc, 'isometry invariance n=%d' % n, T)
                continue
            tally.check(abs(after - before), 10 * tol, 'isometry invariance n=%d' % n, T)
            tally.check(abs(bound - before), 10 * tol, 'supremum oracle n=%d' % n, T)
            tally.check(bound - before, 10 * tol, 'supremum never exceeds n=%d' % n, T)

            z = BallPoint(_probe(n, rng))
            detour = caratheodory_distance(x, z) + caratheodory_distance(z, y)
            tally.check(before - detour, 10 * tol, 'triangle inequality n=%d' % n)
    z, w = complex(*rng.uniform(-0.6, 0.6, 2)), complex(*rng.uniform(-0.6, 0.6, 2))
    disk = abs(poincare_distance(z, w) - caratheodory_distance(BallPoint([z]), BallPoint([w])))
    tally.check(disk, 0.01 * tol, 'disk distance agrees')
    return tally.result()


def predicate_exclusivity(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('predicate_exclusivity')
    for n in dims:
        for i in range(cases):
            family = list(Family)[i % len(Family)]
            T = families.generate(family, n, rng)
            normal = classify.is_normal_elem(T, tol)
            tally.expect(normal or not classify.is_unitary_elem(T, tol), 'unitary => normal n=%d' % n, T)
            tally.expect(normal or not classify.is_self_adjoint_elem(T, tol), 'self-adjoint => normal n=%d' % n, T)
            if linalg.norm(T.xi) > tol:
                tally.expect(not (normal and classify.is_involutory_elem(T, tol)),
                             'involutory => not normal n=%d' % n, T)
    return tally.result()


def unitary_equivalence(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('unitary_equivalence')
    for n in dims:
        V = -np.eye(n, dtype=complex)
        for _ in range(cases):
            xi = rng.uniform(*families.XI_RANGE) * linalg.random_unit_vector(n, rng)
            T = group.make(0.0, np.eye(n), xi)
            conjugated = linalg.extend(V) @ T.matrix @ linalg.extend(V)
            tally.check(linalg.max_abs(conjugated - group.inverse(T).matrix), 0.01 * tol,
                        'V = -I conjugation n=%d' % n, T)
            tally.expect(classify.check_unitary_equiv_inverse(T, V, tol), 'V = -I verifies n=%d' % n, T)
            rotated = group.make(math.pi / 2, np.eye(n), xi)
            tally.expect(not classify.check_unitary_equiv_inverse(rotated, V, tol), 'phase breaks it n=%d' % n, rotated)
    return tally.result()


def _reduces(tally: Tally, T, basis, tol, case) -> t.Optional[bool]:
    try:
        return classify.reduces(T, basis, tol)
    except MathError as exc:
        tally.error(exc, case, T)
        return None


def reduction(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('reduction')
    for n in dims:
        for _ in range(cases):
            T = families.generate(Family.reducing, n, rng)
            case = 'reducing line n=%d' % n
            reduces = _reduces(tally, T, [T.xi / linalg.norm(T.xi)], tol, case)
            if reduces is not None:
                tally.expect(reduces, case, T)

            T = families.generate(Family.uniform, n, rng)
            case = 'reduces iff U xi = r xi n=%d' % n
            _, residual = classify.reducing_ratio(T)
            reduces = _reduces(tally, T, [T.xi / linalg.norm(T.xi)], tol, case)
            if reduces is not None:
                tally.expect(reduces == (residual <= tol), case, T)

            # K = <xi> + a W-invariant block of the complement
            xi = rng.uniform(*families.XI_RANGE) * linalg.random_unit_vector(n, rng)
            m = int(rng.integers(0, n))
            q = np.column_stack([xi / linalg.norm(xi), families.complement_basis(xi, rng)])
            blocks = np.zeros((n, n), dtype=complex)
            blocks[0, 0] = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
            if m:
                blocks[1:m + 1, 1:m + 1] = linalg.random_unitary(m, rng)
            if n - 1 - m:
                blocks[m + 1:, m + 1:] = linalg.random_unitary(n - 1 - m, rng)
            T = group.make(rng.uniform(0.0, 2.0 * math.pi), q @ blocks @ q.conj().T, xi)
            case = 'invariant K + C n=%d m=%d' % (n, m)
            reduces = _reduces(tally, T, list(q[:, :m + 1].T), tol, case)
            if reduces is not None:
                tally.expect(reduces, case, T)
    return tally.result()


def linalg_invariants(rng, dims, cases, tol) -> SuiteResult:
    tally = Tally('linalg')
    for n in dims:
        # Jacobi sweeps cost O(n^3); large dimensions get a smaller share
        eig_cases = cases if n <= 8 else max(1, cases // 50)
        for _ in range(eig_cases):
            z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            h = (z + z.conj().T) / 2.0
            scale = float(np.linalg.norm(h))
            try:
                values, vectors = linalg.hermitian_eig(h, tol)
            except (MathError, ValueError) as exc:
                tally.error(exc, 'hermitian_eig n=%d' % n, {'n': n})
                continue
            if not tally.finite('Jacobi eigenpairs n=%d' % n, values, vectors, subject={'n': n}):
                continue
            tally.check(linalg.max_abs(h @ vectors - vectors * values), tol * scale, 'Jacobi residual n=%d' % n)
            tally.check(linalg.unitarity_residual(vectors), tol, 'Jacobi orthonormal n=%d' % n)
            tally.expect(bool(np.all(np.diff(values.real) <= 0)), 'descending order n=%d' % n)

        for _ in range(eig_cases):
            xi = rng.uniform(*families.XI_RANGE) * linalg.random_unit_vector(n, rng)
            S = linalg.rank_one_update(1.0, xi)
            closed = group.make(0.0, np.eye(n), xi)
            try:
                values, _ = linalg.hermitian_eig(S, tol)
                root = linalg.positive_sqrt(S, tol)
            except (MathError, ValueError) as exc:
                tally.error(exc, 'I + <., xi> xi n=%d' % n, closed)
                continue
            expected = np.r_[closed.a ** 2, np.ones(n - 1)]
            tally.check(linalg.max_abs(values - expected), tol * closed.a ** 2,
                        'spectrum of I + <., xi> xi is a^2, 1, ..., 1 n=%d' % n, closed)
            tally.check(linalg.max_abs(root - closed.A), tol * closed.a, 'Jacobi square root vs A n=%d' % n, closed)

        for _ in range(cases):
            U = linalg.random_unitary(n, rng)
            tally.check(linalg.unitarity_residual(U), 0.01 * tol, 'random unitary n=%d' % n)
            xi = rng.uniform(*families.XI_RANGE) * linalg.random_unit_vector(n, rng)
            closed = group.make(0.0, np.eye(n), xi).A
            tally.check(linalg.max_abs(closed @ closed - linalg.rank_one_update(1.0, xi)), tol,
                        'A^2 = I + <., xi> xi n=%d' % n)
        tally.expect(np.array_equal(linalg.rank_one_update(2.0, np.zeros(n)), np.eye(n)), 'zero xi gives I n=%d' % n)
    return tally.result()


SUITES: t.List[t.Tuple[str, t.Callable[..., SuiteResult]]] = [
    ('ball_preservation', ball_preservation),
    ('constraint_pair', constraint_pair),
    ('fixed_points', fixed_point_residuals),
    ('form_invariance', form_invariance),
    ('homomorphism', homomorphism),
    ('inverse_adjoint', inverse_adjoint),
    ('linalg', linalg_invariants),
    ('metric', metric),
    ('parabolic_family', parabolic_family),
    ('predicate_exclusivity', predicate_exclusivity),
    ('reducing_spectra', reducing_spectra),
    ('reduction', reduction),
    ('special_classes', special_classes),
    ('unitary_equivalence', unitary_equivalence),
]


def _run_suite(index: int, name: str, func, seed: int, dims, cases: int, tol: float) -> SuiteResult:
    """A suite that raises is reported as a single failed case."""
    rng = np.random.default_rng([seed, index])
    start = time.perf_counter()
    try:
        result = func(rng, dims, cases, tol)
    except (MathError, ValueError, ArithmeticError) as exc:
        logger.warning('Suite %s aborted: %r', name, exc)
        tally = Tally(name)
        tally.error(exc, 'suite aborted', {'seed': seed, 'suite': name})
        return tally.result()
    logger.debug('Suite %s finished in %.2fs', result.name, time.perf_counter() - start)
    return result


def run_catalog(seed: int = 42,
                tol: float = linalg.DEFAULT_TOL,
                cases: int = DEFAULT_CASES,
                dims: t.Sequence[int] = DIMS,
                suites: t.Optional[t.Sequence[str]] = None,
                workers: t.Optional[int] = None,
                ) -> VerifyReport:
    """
    Run the catalog (or the named `suites`) with `cases` instances per
    dimension and merge the results by suite name.
    """
    selected = [(i, name, func) for i, (name, func) in enumerate(SUITES)
                if suites is None or name in suites]
    start = time.perf_counter()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_suite, i, name, func, seed, tuple(dims), cases, tol)
                   for i, name, func in selected]
        results = [future.result() for future in futures]
    report = VerifyReport(results, wall_time=time.perf_counter() - start)
    logger.info('Verification finished: %s', report)
    return report
