"""
Documents that carry vectors, matrices, points, maps and group elements
in and out of JSON, plus the run configuration and the report wrappers
printed by the command line.

Complex scalars are [re, im] pairs; vectors are {"dim": n, "data": [...]}
and matrices {"rows": r, "cols": c, "data": [...]} in row-major order.
"""
import math
import typing as t

import inflection
import numpy as np
from schematics.exceptions import DataError, ValidationError
from schematics.models import Model
from schematics.types import FloatType, IntType, StringType
from schematics.types.compound import ListType, ModelType

from hyperball import linalg
from hyperball.ball import BallPoint, MobiusMap
from hyperball.decorators import parses_document
from hyperball.exceptions import UsageError
from hyperball.families import normalize_family
from hyperball.group import FormMatrix, GElement, make
from hyperball.utils import flatten

MAX_SEED = 2 ** 64 - 1
SIGNIFICANT_DIGITS = 12


class BaseModel(Model):
    @classmethod
    def errors(cls, dict_):
        """
        Wraps `schematics` validate method to return an error list instead of
        having to catch an exception in the caller.
        Returns:
            list of validation errors, or None.
        """
        try:
            cls(dict_).validate()
            return None
        except (DataError, ValidationError) as err:
            return err.messages

    @classmethod
    def is_valid(cls, dict_):
        return not cls.errors(dict_)

    @classmethod
    def load(cls, dict_):
        """Build and validate in one go; raises schematics errors."""
        doc = cls(dict_)
        doc.validate()
        return doc


def complex_pairs(**kwargs) -> ListType:
    """A list of [re, im] pairs."""
    return ListType(ListType(FloatType(required=True), min_size=2, max_size=2), **kwargs)


class VectorDoc(BaseModel):
    dim = IntType(required=True, min_value=1)
    data = complex_pairs(required=True)

    def validate_data(self, data, value):
        if value is not None and len(value) != data['dim']:
            raise ValidationError('data has %d entries, expected %s' % (len(value), data['dim']))
        return value


class MatrixDoc(BaseModel):
    rows = IntType(required=True, min_value=1)
    cols = IntType(required=True, min_value=1)
    data = complex_pairs(required=True)

    def validate_data(self, data, value):
        expected = (data['rows'] or 0) * (data['cols'] or 0)
        if value is not None and len(value) != expected:
            raise ValidationError('data has %d entries, expected %d' % (len(value), expected))
        return value


class BallPointDoc(BaseModel):
    v = ModelType(VectorDoc, required=True)


class MobiusMapDoc(BaseModel):
    U = ModelType(MatrixDoc, required=True)
    x0 = ModelType(VectorDoc, required=True)


class GElementDoc(BaseModel):
    theta = FloatType(required=True)
    U = ModelType(MatrixDoc, required=True)
    xi = ModelType(VectorDoc, required=True)


class FormMatrixDoc(BaseModel):
    M = ModelType(MatrixDoc, required=True)


class RunConfig(BaseModel):
    """Settings shared by every command."""
    dim = IntType(default=8, min_value=2)
    seed = IntType(default=42, min_value=0, max_value=MAX_SEED)
    tol = FloatType(default=linalg.DEFAULT_TOL)
    count = IntType(default=100, min_value=1)
    family = StringType(default='uniform')
    out = StringType(default='.')

    def validate_tol(self, data, value):
        if value is not None and not (math.isfinite(value) and value > 0):
            raise ValidationError('tol must be a positive number')
        return value

    def validate_family(self, data, value):
        if value is not None:
            try:
                normalize_family(value)
            except UsageError as exc:
                raise ValidationError(str(exc))
        return value

    def __repr__(self):
        return '<RunConfig dim={} seed={} tol={} count={} family={}>'.format(
            self.dim, self.seed, self.tol, self.count, self.family)


# Decoding

def _complex_array(pairs) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=complex)


@parses_document
def decode_vector(dict_) -> linalg.ComplexVector:
    doc = VectorDoc.load(dict_)
    return linalg.as_vector(_complex_array(doc.data))


@parses_document
def decode_matrix(dict_) -> linalg.ComplexMatrix:
    doc = MatrixDoc.load(dict_)
    return linalg.as_matrix(_complex_array(doc.data).reshape(doc.rows, doc.cols))


@parses_document
def decode_complex(pair) -> complex:
    re, im = pair
    return complex(float(re), float(im))


@parses_document
def decode_ball_point(dict_) -> BallPoint:
    BallPointDoc.load(dict_)
    return BallPoint(decode_vector(dict_['v']))


@parses_document
def decode_mobius_map(dict_) -> MobiusMap:
    MobiusMapDoc.load(dict_)
    return MobiusMap(decode_matrix(dict_['U']), decode_vector(dict_['x0']))


@parses_document
def decode_element(dict_) -> GElement:
    """theta, U and xi are taken as given: no re-canonicalization."""
    doc = GElementDoc.load(dict_)
    return make(doc.theta, decode_matrix(dict_['U']), decode_vector(dict_['xi']))


@parses_document
def decode_form_matrix(dict_) -> FormMatrix:
    FormMatrixDoc.load(dict_)
    return FormMatrix(decode_matrix(dict_['M']))


# Encoding. Element files keep full float precision so they read back
# bit for bit; reports are rounded with `rounded`.

def rounded(x: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    """
    Round to `digits` significant digits, without negative zero.
    >>> rounded(2 / 3)
    0.666666666667
    >>> rounded(-0.0)
    0.0
    """
    return float('%.*g' % (digits, x)) + 0.0


def encode_complex(z: complex, digits: t.Optional[int] = None) -> t.List[float]:
    z = complex(z)
    if digits is None:
        return [z.real, z.imag]
    return [rounded(z.real, digits), rounded(z.imag, digits)]


def encode_vector(v, digits: t.Optional[int] = None) -> t.Dict[str, t.Any]:
    v = np.asarray(v, dtype=complex)
    return {'dim': int(v.size), 'data': [encode_complex(z, digits) for z in v]}


def encode_matrix(m, digits: t.Optional[int] = None) -> t.Dict[str, t.Any]:
    m = np.asarray(m, dtype=complex)
    rows, cols = m.shape
    return {'rows': int(rows), 'cols': int(cols),
            'data': [encode_complex(z, digits) for z in m.reshape(-1)]}


def encode_ball_point(x: BallPoint) -> t.Dict[str, t.Any]:
    return {'v': encode_vector(x.v)}


def encode_mobius_map(m: MobiusMap) -> t.Dict[str, t.Any]:
    return {'U': encode_matrix(m.U), 'x0': encode_vector(m.x0)}


def encode_element(T: GElement) -> t.Dict[str, t.Any]:
    return {'theta': T.theta, 'U': encode_matrix(T.U), 'xi': encode_vector(T.xi)}


def encode_form_matrix(M: FormMatrix) -> t.Dict[str, t.Any]:
    return {'M': encode_matrix(M.M)}


def encode_classification(result) -> t.Dict[str, t.Any]:
    """Report for a `classify.Classification`, 12 significant digits throughout."""
    digits = SIGNIFICANT_DIGITS
    report: t.Dict[str, t.Any] = {
        'kind': result.kind.value,
        'method': result.method.value,
        'fixed_points': [
            {'point': encode_vector(rec.point, digits),
             'location': rec.location.value,
             'eigenvalue': encode_complex(rec.eigenvalue, digits)}
            for rec in result.fixed_points
        ],
        'spectrum': None,
    }
    spectrum = result.spectrum
    if spectrum is not None:
        report['spectrum'] = {
            'r': encode_complex(spectrum.r, digits),
            'lambda1': encode_complex(spectrum.lambda1, digits),
            'lambda2': encode_complex(spectrum.lambda2, digits),
            'k1': encode_complex(spectrum.k1, digits),
            'k2': encode_complex(spectrum.k2, digits),
            'discriminant': encode_complex(spectrum.discriminant, digits),
        }
    return report


'''
Report wrappers
'''


class Failure:
    def __init__(self, digest: str, residual: float, threshold: float, case: str = '') -> None:
        self.digest = digest
        self.residual = residual
        self.threshold = threshold
        self.case = case

    def to_primitive(self) -> t.Dict[str, t.Any]:
        return {'digest': self.digest, 'case': self.case,
                'residual': rounded(self.residual), 'threshold': rounded(self.threshold)}

    def __repr__(self):
        return '<Failure {} {} residual={:.3e} threshold={:.3e}>'.format(
            self.case, self.digest, self.residual, self.threshold)


class SuiteResult:
    def __init__(self, name: str, cases: int, max_residual: float, failures: t.List[Failure]) -> None:
        self.name = name
        self.cases = cases
        self.max_residual = max_residual
        self.failures = failures

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_primitive(self) -> t.Dict[str, t.Any]:
        return {'suite': self.name, 'cases': self.cases, 'passed': self.passed,
                'max_residual': rounded(self.max_residual),
                'failures': [f.to_primitive() for f in self.failures]}

    def __repr__(self):
        return '<SuiteResult {}: {} cases={} max_residual={:.3e}>'.format(
            inflection.humanize(self.name), 'PASS' if self.passed else 'FAIL', self.cases, self.max_residual)


class VerifyReport:
    def __init__(self, suites: t.List[SuiteResult], wall_time: float = 0.0) -> None:
        self._suites = sorted(suites, key=lambda s: s.name)
        self.wall_time = wall_time

    @property
    def suites(self) -> t.List[SuiteResult]:
        return list(self._suites)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self._suites)

    @property
    def failures(self) -> t.List[Failure]:
        return flatten(s.failures for s in self._suites)

    def to_primitive(self) -> t.Dict[str, t.Any]:
        """Deterministic content only; the wall time is left out."""
        return {'passed': self.passed, 'suites': [s.to_primitive() for s in self._suites]}

    def __repr__(self):
        return '<VerifyReport: suites=%d failures=%d>' % (len(self._suites), len(self.failures))

    def pretty_print(self, show_failures: int = 5):
        print(self)
        for suite in self._suites:
            print('\t%s' % suite)
            for failure in suite.failures[:show_failures]:
                print('\t\t%s' % failure)
