import logging
import os

logger = logging.getLogger(__name__)

LOG_LEVEL_ENV = 'HYPERBALL_LOG_LEVEL'


def setupLogger(logger):
    logger.setLevel(os.getenv(LOG_LEVEL_ENV, 'WARNING').upper())
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s: %(message)s')
    handler = logging.StreamHandler()
    handler.setFormatter(formatter)
    logger.addHandler(handler)


setupLogger(logger)


from .api import (load_element, save_element, load_point, save_point)
from .ball import (BallPoint, MobiusMap, caratheodory_distance, poincare_distance)
from .classify import (Kind, dynamical_type, fixed_points)
from .group import (GElement, canonicalize, compose, from_point, from_unitary, inverse, make)

name = 'hyperball'
