""" Utility functions for testing, _not_ tests for utilities"""
from contextlib import contextmanager, redirect_stdout
import io
import os
import tempfile

import numpy as np

from hyperball import cli, families


def random_element(family='uniform', dim=3, seed=0):
    """One seeded element of a named family."""
    return families.generate(family, dim, np.random.default_rng(seed))


def random_ball_vector(dim, seed=0, radius=0.8):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return rng.uniform(0.0, radius) * v / np.linalg.norm(v)


@contextmanager
def working_directory():
    """Run inside a fresh temporary directory"""
    previous = os.getcwd()
    with tempfile.TemporaryDirectory() as tmp:
        os.chdir(tmp)
        try:
            yield tmp
        finally:
            os.chdir(previous)


def run_cli(*argv):
    """Run the command line in-process, returning (exit code, standard output)"""
    out = io.StringIO()
    with redirect_stdout(out):
        code = cli.main([str(arg) for arg in argv])
    return code, out.getvalue()
