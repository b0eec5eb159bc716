import logging
import os
import typing as t

from schematics.exceptions import DataError

from hyperball.exceptions import UsageError
from hyperball.models import RunConfig

logger = logging.getLogger(__name__)

TOL_ENV = 'HYPERBALL_TOL'


def resolve_config(dim: t.Optional[int] = None,
                   seed: t.Optional[int] = None,
                   tol: t.Optional[float] = None,
                   count: t.Optional[int] = None,
                   family: t.Optional[str] = None,
                   out: t.Optional[str] = None,
                   ) -> RunConfig:
    """
    Build a validated RunConfig. Explicit arguments win, then the
    HYPERBALL_TOL environment variable for the tolerance, then the defaults.
    Raises:
        UsageError: any setting is out of range
    """
    if tol is None and os.getenv(TOL_ENV):
        try:
            tol = float(os.environ[TOL_ENV])
        except ValueError:
            raise UsageError(
                "%s must be a number, got %r" % (TOL_ENV, os.environ[TOL_ENV])
            ) from None
        logger.debug('Tolerance %g taken from %s', tol, TOL_ENV)

    given = {'dim': dim, 'seed': seed, 'tol': tol, 'count': count,
             'family': family, 'out': out}
    try:
        config = RunConfig({k: v for k, v in given.items() if v is not None})
        config.validate()
    except DataError as err:
        raise UsageError('invalid configuration: %s' % err.messages) from err
    return config
