"""Python bindings for the tropdyn library.

Polynomials, fans and weighted complexes use the same JSON layout as the
command-line tool, passed here as plain dicts and lists.
"""

import json

from . import _tropdyn
from ._tropdyn import (
    DomainError,
    JsonError,
    dequantized_sum,
    hausdorff,
    mth_roots,
    polynomial_roots,
    star_discrepancy,
)

__all__ = [
    "DomainError",
    "JsonError",
    "add_cycles",
    "bergman_fan",
    "check_balancing",
    "convergence_report",
    "dequantized_sum",
    "hausdorff",
    "hypersurface",
    "mth_roots",
    "orbits",
    "polynomial_roots",
    "refine",
    "run",
    "star_discrepancy",
    "tropicalize",
    "weyl_sum",
]


def _call(fn, *docs):
    return json.loads(fn(*(json.dumps(d) for d in docs)))


def tropicalize(poly):
    return _call(_tropdyn.tropicalize_json, poly)


def hypersurface(poly):
    """Tropical hypersurface of a complex or tropical polynomial."""
    return _call(_tropdyn.hypersurface_json, poly)


def check_balancing(complex_):
    return _call(_tropdyn.balance_json, complex_)


def bergman_fan(p, n):
    return json.loads(_tropdyn.bergman_json(p, n))


def orbits(fan):
    return _call(_tropdyn.orbits_json, fan)


def add_cycles(a, b):
    return _call(_tropdyn.add_json, a, b)


def refine(complex_, fan):
    return _call(_tropdyn.refine_json, complex_, fan)


def weyl_sum(m, nu):
    return int(_tropdyn.weyl_sum(m, list(nu)))


def convergence_report(metric, ms, poly=None, box=(-3.0, 3.0), dim=2, resolution=None,
                       delta=0.2, density=50.0, phases=64, seed=0):
    if resolution is None:
        resolution = 61 if metric == "dequantization" else 301
    lo = [float(box[0])] * dim
    hi = [float(box[1])] * dim
    text = _tropdyn.converge_json(metric, list(ms), None if poly is None else json.dumps(poly),
                                  lo, hi, resolution, delta, density, phases, seed)
    return json.loads(text)


def run(*args):
    """Runs the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _tropdyn.run([str(a) for a in args])
