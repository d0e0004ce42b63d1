"""Reflection counterexamples for graphs that are not (r+1)-connected.

If removing at most r nodes splits the graph, reflecting one side across a
hyperplane through the removed nodes' points keeps every bar length but
changes some distance between the two sides.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometry, NoCounterexample
from .gale import Configuration
from .graph import Graph, min_separator, vertex_connectivity
from .numeric import make_rng, null_space_basis, orthonormal_span

VERSION = "1"


@dataclass
class ReflectionWitness:
    separator: tuple[int, ...]
    part1: tuple[int, ...]
    part2: tuple[int, ...]
    normal: np.ndarray
    offset: float
    p_prime: np.ndarray
    max_edge_length_error: float
    congruence_gap: float
    gap_pair: tuple[int, int]
    completed: bool  # hyperplane needed directions beyond the separator's affine hull

    def to_dict(self) -> dict:
        P = np.asarray(self.p_prime, dtype=float)
        return {
            "version": VERSION,
            "separator": list(self.separator),
            "parts": [list(self.part1), list(self.part2)],
            "hyperplane": {"normal": [float(x) for x in self.normal], "offset": float(self.offset)},
            "p_prime": {"rows": P.shape[0], "cols": P.shape[1], "data": [float(x) for x in P.ravel()]},
            "max_edge_length_error": float(self.max_edge_length_error),
            "congruence_gap": float(self.congruence_gap),
            "gap_pair": list(self.gap_pair),
            "completed_hyperplane": self.completed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"


def _points(p) -> np.ndarray:
    return np.asarray(p.P if isinstance(p, Configuration) else p, dtype=float)


def _sq_dists(P: np.ndarray) -> np.ndarray:
    diff = P[:, None, :] - P[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def random_configuration(n: int, r: int, seed: int = 0) -> np.ndarray:
    """Gaussian points in R^r; in general position with probability one."""
    return make_rng(seed, stream=3).standard_normal((n, r))


def separating_hyperplane(P: np.ndarray, sep) -> tuple[np.ndarray, float, bool]:
    """Unit normal ``u`` and offset ``c`` of a hyperplane ``{x : u.x = c}`` through the
    points of ``sep``.

    When the separator spans less than a hyperplane, the remaining directions are
    the configuration's principal axes, taken in order of decreasing variance.
    """
    n, r = P.shape
    idx = [i - 1 for i in sep]
    anchor = P[idx[0]] if idx else P.mean(axis=0)
    dirs = [P[i] - anchor for i in idx[1:]]
    span = orthonormal_span(np.array(dirs).T) if dirs else np.zeros((r, 0))
    if span.shape[1] != len(dirs):
        raise DegenerateGeometry(f"separator points {list(sep)} are affinely dependent")
    completed = span.shape[1] < r - 1
    if completed:
        _, _, vh = np.linalg.svd(P - P.mean(axis=0), full_matrices=True)
        for axis in vh:
            if span.shape[1] == r - 1:
                break
            resid = axis - span @ (span.T @ axis)
            if np.linalg.norm(resid) > 1e-8:
                span = np.hstack([span, (resid / np.linalg.norm(resid))[:, None]])
    normal = null_space_basis(span.T)[:, 0] if span.shape[1] else np.eye(r)[:, 0]
    return normal, float(normal @ anchor), completed


def reflect(P: np.ndarray, nodes, normal: np.ndarray, offset: float) -> np.ndarray:
    Q = np.array(P, dtype=float, copy=True)
    for i in nodes:
        q = Q[i - 1]
        Q[i - 1] = q - 2.0 * (normal @ q - offset) * normal
    return Q


def equivalence_and_congruence(g: Graph, p, p_prime, tol: float = 1e-9) -> tuple[bool, bool]:
    """Equal squared lengths on edges (equivalence) and on all pairs (congruence),
    each relative to the largest corresponding squared length of ``p``."""
    P, Q = _points(p), _points(p_prime)
    if P.shape != Q.shape:
        raise ValueError(f"shape mismatch {P.shape} vs {Q.shape}")
    dp, dq = _sq_dists(P), _sq_dists(Q)
    gap = np.abs(dp - dq)
    edges = g.sorted_edges()
    if edges:
        ei = np.array(edges) - 1
        edge_scale = float(np.max(dp[ei[:, 0], ei[:, 1]])) or 1.0
        equivalent = bool(np.max(gap[ei[:, 0], ei[:, 1]]) <= tol * edge_scale)
    else:
        equivalent = True
    congruent = bool(np.max(gap) <= tol * (float(np.max(dp)) or 1.0))
    return equivalent, congruent


def reflection_counterexample(g: Graph, p, r: int, tol: float = 1e-9) -> ReflectionWitness:
    P = _points(p)
    if P.shape != (g.n, r):
        raise ValueError(f"configuration has shape {P.shape}, expected {(g.n, r)}")
    if g.n < r + 2:
        raise ValueError(f"need n >= r + 2, got n = {g.n}, r = {r}")
    kappa = vertex_connectivity(g)
    if kappa >= r + 1:
        raise NoCounterexample(
            f"graph is {kappa}-connected >= r + 1 = {r + 1}; no separator of size <= {r}"
        )
    sep = min_separator(g)
    normal, offset, completed = separating_hyperplane(P, sep.nodes)
    Q = reflect(P, sep.part2, normal, offset)

    dp, dq = _sq_dists(P), _sq_dists(Q)
    gap = np.abs(dp - dq)
    edges = g.sorted_edges()
    if edges:
        ei = np.array(edges) - 1
        edge_scale = float(np.max(dp[ei[:, 0], ei[:, 1]])) or 1.0
        edge_err = float(np.max(gap[ei[:, 0], ei[:, 1]])) / edge_scale
    else:
        edge_err = 0.0
    pair_scale = float(np.max(dp)) or 1.0
    best, pair = 0.0, (0, 0)
    for i, j in g.non_edges():
        if gap[i - 1, j - 1] > best:
            best, pair = float(gap[i - 1, j - 1]), (i, j)
    witness = ReflectionWitness(
        separator=sep.nodes,
        part1=sep.part1,
        part2=sep.part2,
        normal=normal,
        offset=offset,
        p_prime=Q,
        max_edge_length_error=edge_err,
        congruence_gap=best / pair_scale,
        gap_pair=pair,
        completed=completed,
    )
    if witness.max_edge_length_error > tol or witness.congruence_gap <= tol:
        raise DegenerateGeometry(
            f"reflection did not separate the frameworks (edge error "
            f"{witness.max_edge_length_error:.3g}, gap {witness.congruence_gap:.3g})"
        )
    return witness
