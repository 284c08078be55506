"""Poly-tree structure recovery: skeletons, collider orientation and CPT fitting."""

import json

from ._core import (
    ConfigError,
    DegeneracyError,
    InputError,
    InternalError,
    ParseError,
    Polytree,
    PolytreeError,
    Source,
    check_nondegeneracy,
    closeness,
    compute_weights,
    conditional_mutual_information,
    marginal,
    mutual_information,
    mwst,
    random_polytree,
    sample,
)
from . import _core

__all__ = [
    "ConfigError",
    "DegeneracyError",
    "InputError",
    "InternalError",
    "ParseError",
    "Polytree",
    "PolytreeError",
    "Source",
    "check_nondegeneracy",
    "closeness",
    "compute_weights",
    "conditional_mutual_information",
    "evaluate",
    "learn",
    "marginal",
    "mi",
    "mutual_information",
    "mwst",
    "random_polytree",
    "sample",
    "to_dot",
]


def _index(source, name):
    if isinstance(name, int):
        return name
    idx = source.index_of(name)
    if idx is None:
        raise InputError(f"unknown variable '{name}'")
    return idx


def mi(source, a, b, given=None):
    """I(a; b) or I(a; b | given) in bits; variables by name or index."""
    i, j = _index(source, a), _index(source, b)
    if given is None:
        return mutual_information(source, i, j)
    return conditional_mutual_information(source, i, j, _index(source, given))


def learn(source, oracle="", *, epsilon=None, tau=None, alpha=None, tie_tolerance=None,
          degenerate=False, fit=False, smoothing=0.0, orient=()):
    """Run the full recovery and return the result document as a dict.

    ``orient`` lists (from, to) name pairs for undetermined edges and needs
    ``fit=True``.
    """
    text = _core.learn_json(source, oracle, epsilon, tau, alpha, tie_tolerance, degenerate,
                            fit, smoothing, [tuple(o) for o in orient])
    return json.loads(text)


def evaluate(result, truth):
    """Score a result dict against a ground-truth Polytree."""
    return json.loads(_core.evaluate_json(json.dumps(result), truth))


def to_dot(result):
    """Graphviz rendering of a result dict."""
    return _core.to_dot(json.dumps(result))
