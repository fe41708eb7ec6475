"""Facing analysis of equivariant tree morphisms.

Thin wrapper over the C++ core. Structured results come back as dicts.
"""

import json

from . import _core
from ._core import Error, Ptp, corpus_names, faced, lift_count, q_fiber_singleton, unfaced_cone_count

__version__ = _core.__version__

__all__ = [
    "Error",
    "Ptp",
    "analyze",
    "corpus_names",
    "example",
    "faced",
    "lift_count",
    "load",
    "oracle",
    "q_fiber_singleton",
    "unfaced_cone_count",
    "validate",
    "witness",
]


def load(text):
    """Parse and validate a document; raises Error on invalid input."""
    return Ptp.parse(text)


def example(name):
    """A built-in corpus entry as a Ptp."""
    return Ptp.parse(_core.example_document(name))


def validate(text):
    return json.loads(_core.validate(text))


def analyze(ptp, input="", assume_fn_stabilizers=False):
    """The report the CLI prints for `analyze --json`."""
    return json.loads(_core.report(ptp, input, assume_fn_stabilizers))


def oracle(ptp, depth=4, omega_cap=4):
    return json.loads(_core.oracle(ptp, depth, omega_cap))


def witness(ptp, end, lag=1, depth=10, omega_cap=4):
    return json.loads(_core.witness(ptp, end, lag, depth, omega_cap))
