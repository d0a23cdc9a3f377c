"""Exact irrationality measure functions, order vectors and the triangular permutation."""
import json

from . import _psiorder
from ._psiorder import (
    Error,
    __version__,
    apply_pi,
    denominators,
    expand,
    order_vector,
    pi_cycles,
    pi_order,
    psi,
    staircase_csv,
)

__all__ = [
    "Error",
    "__version__",
    "apply_pi",
    "denominators",
    "expand",
    "order_vector",
    "pi_cycles",
    "pi_order",
    "psi",
    "staircase_csv",
    "trace",
    "trace_text",
    "verify",
    "synthesize",
]


def trace_text(sources, t0, count=20, **kwargs):
    """Change trace as the deterministic JSON text the CLI writes."""
    return _psiorder.trace(list(sources), t0, count, **kwargs)


def trace(sources, t0, count=20, **kwargs):
    return json.loads(trace_text(sources, t0, count, **kwargs))


def verify(trace, k):
    text = trace if isinstance(trace, str) else json.dumps(trace)
    return json.loads(_psiorder.verify(text, k))


def synthesize(schedule, seed=0, **kwargs):
    text = schedule if isinstance(schedule, str) else json.dumps(schedule)
    return json.loads(_psiorder.synthesize(text, seed, **kwargs))
