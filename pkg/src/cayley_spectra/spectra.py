"""Eigendecomposition of normalised adjacency operators.

The adjacency spectrum is kept in descending order ``t_1 >= ... >= t_n`` and
the Laplacian view ``lambda_i = 1 - t_i`` in ascending order, index-aligned.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import Disconnected, NoConvergence, NotSymmetric, TooSmall
from .graphs import CountGraph, NormalizedOperator, normalized

DEFAULT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Spectrum:
    adjacency_eigs: np.ndarray
    vectors: np.ndarray = field(repr=False)
    tol: float = DEFAULT_TOL
    residual: float = 0.0

    @property
    def n(self) -> int:
        return len(self.adjacency_eigs)

    @property
    def laplacian_eigs(self) -> np.ndarray:
        return 1.0 - self.adjacency_eigs


def eig_symmetric(op, tol: float = DEFAULT_TOL) -> Spectrum:
    """Full spectrum of a symmetric operator.

    ``op`` may be a :class:`NormalizedOperator`, a :class:`CountGraph` or a
    plain square array.  ``Spectrum.residual`` records ``max|MQ - Q diag(t)|``.
    """
    if isinstance(op, CountGraph):
        op = normalized(op)
    m = np.asarray(op.entries if isinstance(op, NormalizedOperator) else op, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"operator must be square, got shape {m.shape}")
    asym = np.abs(m - m.T)
    if asym.size and asym.max() > tol:
        i, j = map(int, np.unravel_index(np.argmax(asym), asym.shape))
        raise NotSymmetric(f"operator is not symmetric at ({i}, {j})", witness=(i, j))
    try:
        w, q = np.linalg.eigh((m + m.T) / 2)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    order = np.argsort(-w, kind="stable")
    w, q = w[order], q[:, order]
    residual = float(np.abs(m @ q - q * w).max()) if m.size else 0.0
    w.setflags(write=False)
    q.setflags(write=False)
    return Spectrum(w, q, tol, residual)


def second_largest(spec: Spectrum) -> float:
    if spec.n < 2:
        raise TooSmall("t_2 needs at least two vertices")
    return float(spec.adjacency_eigs[1])


def smallest(spec: Spectrum) -> float:
    return float(spec.adjacency_eigs[-1])


def laplacian_largest(spec: Spectrum) -> float:
    return 1.0 - smallest(spec)


def laplacian_second(spec: Spectrum) -> float:
    return 1.0 - second_largest(spec)


def is_connected_spectral(spec: Spectrum, tol: float | None = None) -> bool:
    tol = spec.tol if tol is None else tol
    return spec.n < 2 or spec.adjacency_eigs[1] < 1.0 - tol


def is_bipartite_spectral(spec: Spectrum, tol: float | None = None) -> bool:
    tol = spec.tol if tol is None else tol
    if not is_connected_spectral(spec, tol):
        raise Disconnected("bipartiteness test needs a connected graph")
    if spec.n < 2:
        return False
    return bool(spec.adjacency_eigs[-1] <= -1.0 + tol)


def fiedler_vector(spec: Spectrum) -> np.ndarray:
    """Eigenvector belonging to ``t_2``."""
    if spec.n < 2:
        raise TooSmall("no Fiedler vector for a single vertex")
    return np.array(spec.vectors[:, 1])


def trace_identity_error(graph: CountGraph, spec: Spectrum) -> float:
    """``|sum t_i - trace(T)|``."""
    trace = np.trace(normalized(graph).entries)
    return abs(float(spec.adjacency_eigs.sum()) - float(trace))


def frobenius_identity_error(graph: CountGraph, spec: Spectrum) -> float:
    """``|sum t_i^2 - ||T||_F^2|``."""
    fro = float((normalized(graph).entries ** 2).sum())
    return abs(float((spec.adjacency_eigs ** 2).sum()) - fro)
