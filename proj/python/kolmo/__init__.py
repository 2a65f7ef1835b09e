"""Python front end to the kolmo pseudo-spectral solver."""

import json

from . import _kolmo
from ._kolmo import KolmoError, __version__, jacobian, norms

__all__ = [
    "KolmoError",
    "__version__",
    "cli",
    "counterexample",
    "exact_field",
    "exact_grid",
    "jacobian",
    "norms",
    "verify_exact",
]


def exact_field(spec, t, nx=0, ny=0):
    """Vorticity of an exact solution on its collocation grid, shape (nx, ny)."""
    return _kolmo.exact_field(json.dumps(spec), t, nx, ny)


def exact_grid(spec, nx=0, ny=0):
    return _kolmo.exact_grid(json.dumps(spec), nx, ny)


def verify_exact(spec, t_end, dt=0.01, nx=0, ny=0):
    """Largest relative L2 error of the solver against the closed form over [0, t_end]."""
    return _kolmo.verify_exact(json.dumps(spec), t_end, dt, nx, ny)


def counterexample(d=1.0, alpha=2.0, tau=1.0, nu=0.01, nx=32, ny=32, dt=0.01):
    return json.loads(_kolmo.counterexample(d, alpha, tau, nu, nx, ny, dt))


def cli(*args):
    """Runs the command-line tool in-process and returns its exit code."""
    return _kolmo.cli([str(a) for a in args])
