"""Python bindings for semi-parametric expert Bayesian network learning."""

import json
import os

from . import _sebn
from ._sebn import (
    ContractViolation,
    FormatError,
    NumericalError,
    gp_marginal_loglik,
    hs_log_prior,
    hs_log_prior_grad,
    se_kernel_matrix,
)

__all__ = [
    "ContractViolation",
    "FormatError",
    "NumericalError",
    "five_node_example",
    "generate",
    "gp_marginal_loglik",
    "hs_log_prior",
    "hs_log_prior_grad",
    "learn",
    "se_kernel_matrix",
    "shd",
    "sweep",
    "to_dot",
]


def _graph_text(graph):
    if isinstance(graph, (str, os.PathLike)) and os.path.exists(graph):
        with open(graph, encoding="utf-8") as f:
            return f.read()
    if isinstance(graph, dict):
        return json.dumps(graph)
    return graph


def generate(out, mode="id", nodes=6, seed=1, train=500, val=100, test=100):
    """Write train/val/test CSVs and truth.json for one seed into `out`."""
    _sebn.generate(mode, nodes, seed, os.fspath(out), train, val, test)


def learn(data, spec=None, seed=0, expert=None, truth=None, noise_variance=None, workers=1):
    """Learn GP additions on a dataset directory.

    `spec` is a model-grid cell, e.g. {"mode": "one-step", "hs": {"tau": 5}}.
    Returns (metrics row, learned document) as dicts.
    """
    row, doc = _sebn.learn(
        os.fspath(data),
        json.dumps(spec or {}),
        seed,
        os.fspath(expert) if expert else "",
        os.fspath(truth) if truth else "",
        noise_variance,
        workers,
    )
    return json.loads(row), json.loads(doc)


def sweep(config):
    """Run an experiment config (dict). Returns a list of (label, row) pairs."""
    labels, rows = _sebn.sweep(json.dumps(config))
    return [(label, json.loads(row)) for label, row in zip(labels, rows)]


def shd(a, b):
    """Structural Hamming distance between two graph documents, dicts or paths."""
    return _sebn.shd(_graph_text(a), _graph_text(b))


def to_dot(graph):
    """Graphviz DOT text for a graph document, dict or path."""
    return _sebn.to_dot(_graph_text(graph))


def five_node_example():
    """Graph document of the five-node worked example."""
    return json.loads(_sebn.five_node_example())
