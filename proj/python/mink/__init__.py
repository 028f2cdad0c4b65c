"""Tube volumes, box dimensions and Minkowski contents of sets under embedding.

Report-producing functions return plain dicts parsed from the same JSON the
command-line tool prints.
"""

import json

from . import _core
from ._core import (
    ConfigError,
    ConvergenceError,
    DataError,
    DomainError,
    MinkError,
    ResolutionError,
    Tube,
    UnsupportedError,
    gamma_ball,
    gamma_ratio,
    grid_tube_measure,
    lift,
    mc_tube_measure,
    power_lift_integral,
    product_with_unit_interval,
    realize_tube,
    run_command,
)


def _spec_text(spec):
    # Accept a dict like {"kind": "a_string", "a": 1, "n_terms": 1000} or YAML text.
    return spec if isinstance(spec, str) else json.dumps(spec)


def tube(spec, tol=1e-10):
    return realize_tube(_spec_text(spec), tol)


def box_dimension_fit(f, eps_max, eps_min, points_per_decade=8):
    return json.loads(_core.box_dimension_fit(f, eps_max, eps_min, points_per_decade))


def content_estimate(f, s, eps_max, eps_min, points_per_decade=8, window_decades=2.0, rel_tol=None):
    return json.loads(
        _core.content_estimate(f, s, eps_max, eps_min, points_per_decade, window_decades, rel_tol)
    )


def embedding_report(spec, s, eps_max, eps_min, points_per_decade=8):
    return json.loads(_core.embedding_report(_spec_text(spec), s, eps_max, eps_min, points_per_decade))


def sandwich_check(spec, s, eps_max, eps_min, points_per_decade=8):
    return json.loads(_core.sandwich_check(_spec_text(spec), s, eps_max, eps_min, points_per_decade))
