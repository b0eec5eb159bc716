"""
File-level entry points: read and write the JSON documents the command
line works with.
"""
import json
import logging
import typing as t
from pathlib import Path

from hyperball import models
from hyperball.ball import BallPoint
from hyperball.decorators import wrap_exception_in
from hyperball.exceptions import ParseError
from hyperball.group import GElement, canonicalize
from hyperball.linalg import DEFAULT_TOL
from hyperball.utils import dumps

logger = logging.getLogger(__name__)

PathLike = t.Union[str, Path]


@wrap_exception_in(ParseError, catch=ValueError)
def read_document(path: PathLike) -> t.Any:
    with open(path, 'r') as f:
        return json.load(f)


def write_document(document: t.Any, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(document))
    logger.debug('Wrote %s', path)
    return path


def element_from_document(document: t.Any, tol: float = DEFAULT_TOL) -> GElement:
    """
    Accepts either a canonical element {"theta", "U", "xi"} or a raw
    form-preserving matrix {"M"}, which is canonicalized.
    """
    if isinstance(document, dict) and 'M' in document:
        return canonicalize(models.decode_form_matrix(document), tol)
    return models.decode_element(document)


def load_element(path: PathLike, tol: float = DEFAULT_TOL) -> GElement:
    return element_from_document(read_document(path), tol)


def save_element(T: GElement, path: PathLike) -> Path:
    return write_document(models.encode_element(T), path)


def load_point(path: PathLike) -> BallPoint:
    return models.decode_ball_point(read_document(path))


def save_point(x: BallPoint, path: PathLike) -> Path:
    return write_document(models.encode_ball_point(x), path)
