"""Lie algebra cocycles, their integrability to group cocycles, and affine coadjoint orbits."""

import json as _json

from ._core import (
    LieAlgebra,
    LiesympError,
    Model,
    cocycle_residual,
    endpoint,
    get_model,
    holonomy,
    import_model,
    list_models,
    theta,
)
from ._core import run as _run

__all__ = [
    "LieAlgebra",
    "LiesympError",
    "Model",
    "cocycle_residual",
    "endpoint",
    "get_model",
    "holonomy",
    "import_model",
    "list_models",
    "run",
    "theta",
]


def run(verb, model, cocycle="", alpha=None, eta=None, seed=0):
    """Run a CLI verb in-process. Returns (report body dict, exit code)."""
    if alpha is not None:
        alpha = [str(a) for a in alpha]
    if eta is not None:
        eta = str(eta)
    body, code = _run(verb, model, cocycle, alpha, eta, seed)
    return _json.loads(body), code
