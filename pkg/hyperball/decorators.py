import functools
import logging

import retrying
from schematics.exceptions import BaseError

from hyperball.exceptions import NoConvergence, ParseError

logger = logging.getLogger(__name__)


def wrap_exception_in(exc_type, catch=Exception):
    """
    Wraps raised exception in another exception type, and only includes
    the original exception type name and message in the new exception message.
    Args:
        exc_type: Exception type
        catch: optional, Exception type (or tuple of types) to catch
    """

    def wrapper(func):
        @functools.wraps(func)
        def inner(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except catch as exc:
                logger.error('Wrapped error: %s', str(exc))
                message = type(exc).__name__
                if str(exc):
                    message += f': {exc}'
                raise exc_type(message) from exc

        return inner

    return wrapper


# Everything that can go wrong while turning a JSON document into numbers.
parse_errors = (ValueError, KeyError, TypeError, IndexError, BaseError)


def parses_document(func):
    """
    Exposes a single decorator for document decoders: any low-level decoding
    failure surfaces as `ParseError`.
    """

    @functools.wraps(func)
    @wrap_exception_in(ParseError, catch=parse_errors)
    def inner(*args, **kwargs):
        return func(*args, **kwargs)

    return inner


def restarting(attempts: int):
    """
    Re-runs the wrapped search when it raises `NoConvergence`, up to
    `attempts` calls in total. The wrapped callable is expected to draw a
    fresh starting point on each call; the last `NoConvergence` propagates.
    """
    if attempts < 1:
        raise ValueError('attempts must be positive, got %s' % attempts)

    def log_and_check(exc):
        if isinstance(exc, NoConvergence):
            logger.debug('Restarting search after: %s', exc)
            return True
        return False

    return retrying.retry(
        retry_on_exception=log_and_check,
        stop_max_attempt_number=attempts,
        wrap_exception=False)
