"""Python access to the grouplab core."""

import json

from ._core import (
    CapExceeded,
    InputError,
    OverflowError,
    __version__,
    dependency_set,
    lcs_weight,
    render_presentation,
    run_cli,
    zone,
)
from . import _core

__all__ = [
    "CapExceeded",
    "InputError",
    "OverflowError",
    "__version__",
    "braid_torsion",
    "dependency_set",
    "is_primitive_link",
    "is_primitive_relator",
    "lcs_weight",
    "nq",
    "render_presentation",
    "report",
    "run_cli",
    "zone",
]


def is_primitive_relator(presentation, cap=10):
    verdict, weight, gcd = _core.primitive_relator(presentation, cap)
    return {"primitive": verdict, "weight": weight, "coefficient_gcd": gcd}


def nq(presentation, c, class_cap=6, generator_cap=64):
    pc, layers = _core.nq_json(presentation, c, class_cap, generator_cap)
    return {"pc": json.loads(pc), "layer_invariants": json.loads(layers)}


def is_primitive_link(diagram):
    if not isinstance(diagram, str):
        diagram = json.dumps(diagram)
    return json.loads(_core.link_primitive_json(diagram))


def braid_torsion(n, big_n, search_bound=65536):
    return json.loads(_core.braid_torsion_json(n, big_n, search_bound))


def report(*args):
    """Runs a CLI subcommand with --json; returns (exit code, report or None)."""
    code, out, err = run_cli([*args, "--json"])
    return code, (json.loads(out) if out else None)
