"""Brute-force geodesic oracles, used only to check the solver.

Two deliberately different routes to a reference distance:

* :func:`oracle_energy_minimize` descends the discrete curve energy of a
  polyline (finite-difference gradients, backtracking line search, a
  coarse-to-fine waypoint schedule so the long bending modes are not
  throttled by the fine-grid conditioning).
* :func:`oracle_graph_distance` runs a shortest path over a sampled graph
  whose edge weights are segment lengths under the midpoint metric.

The first can stall in a local valley, the second overestimates by the
discretization; they fail differently, which is the point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra
from scipy.spatial import cKDTree


class DisconnectedGraphError(RuntimeError):
    """Raised when the sampled graph has no path between the endpoints."""


def _quadratic_forms(metric, points, vecs):
    """v' M(p) v for each row pair, batched where the metric allows."""
    if metric.is_diagonal:
        mdiag = metric.diag_batch(points)
        return np.sum(mdiag * vecs * vecs, axis=1)
    return np.array([v @ metric.metric_at(p) @ v for p, v in zip(points, vecs)])


def polyline_length(metric, waypoints):
    """Midpoint-rule length of a polyline: sum of segment lengths under the
    metric at each segment midpoint."""
    waypoints = np.atleast_2d(np.asarray(waypoints, dtype=float))
    deltas = np.diff(waypoints, axis=0)
    mids = 0.5 * (waypoints[:-1] + waypoints[1:])
    return float(np.sum(np.sqrt(_quadratic_forms(metric, mids, deltas))))


def _energy(metric, waypoints):
    """Discrete curve energy: sum of delta' M(mid) delta over uniform dt."""
    deltas = np.diff(waypoints, axis=0)
    mids = 0.5 * (waypoints[:-1] + waypoints[1:])
    q = _quadratic_forms(metric, mids, deltas)
    return float(np.sum(q)) * (waypoints.shape[0] - 1)


@dataclass
class DiscreteCurve:
    """Polyline with pinned endpoints and its discrete energy.

    ``energy_history`` holds one list of accepted energies per resolution
    level of the optimization; each list is non-increasing by construction
    (re-gridding between levels legitimately changes the discrete energy).
    """

    waypoints: np.ndarray
    energy: float
    energy_history: list

    def as_polyline(self):
        return self.waypoints.copy()


def _fd_gradient(metric, poly, h):
    """Energy gradient over interior waypoints by central differences.

    Moving one waypoint only touches its two adjacent segments, so each
    probe re-evaluates just those; all probes go through the metric in one
    batch.
    """
    p, d = poly.shape
    inner = poly[1:-1]
    left = poly[:-2]
    right = poly[2:]
    eye = np.eye(d) * h
    plus = inner[:, None, :] + eye[None]        # (p-2, d, d) probe points
    minus = inner[:, None, :] - eye[None]

    def local_q(probe):
        dl = probe - left[:, None, :]
        ml = 0.5 * (probe + left[:, None, :])
        dr = right[:, None, :] - probe
        mr = 0.5 * (right[:, None, :] + probe)
        mids = np.concatenate([ml.reshape(-1, d), mr.reshape(-1, d)])
        deltas = np.concatenate([dl.reshape(-1, d), dr.reshape(-1, d)])
        q = _quadratic_forms(metric, mids, deltas)
        return q[: (p - 2) * d] + q[(p - 2) * d:]

    e_plus = local_q(plus)
    e_minus = local_q(minus)
    grad = np.zeros_like(poly)
    grad[1:-1] = ((e_plus - e_minus) / (2.0 * h) * (p - 1)).reshape(p - 2, d)
    return grad


def _descend(metric, poly, iters):
    """Backtracking gradient descent on interior waypoints.

    Returns the improved polyline and the list of accepted energies.
    The step size is capped so one step never moves the polyline by more
    than one data unit in aggregate, then backtracks by halving.
    """
    energy = _energy(metric, poly)
    history = [energy]
    alpha = 1.0
    for _ in range(iters):
        grad = _fd_gradient(metric, poly, 1e-6)
        gnorm = float(np.sqrt(np.sum(grad * grad)))
        if gnorm == 0.0:
            break
        alpha = min(alpha * 2.0, 1.0 / gnorm)
        accepted = False
        for _ in range(60):
            cand = poly - alpha * grad
            cand[0] = poly[0]
            cand[-1] = poly[-1]
            cand_energy = _energy(metric, cand)
            if cand_energy < energy:
                accepted = True
                break
            alpha *= 0.5
        if not accepted:
            break
        poly = cand
        energy = cand_energy
        history.append(energy)
        if history[-2] - history[-1] < 1e-12 * abs(history[-2]):
            break
    return poly, history


def _upsample(poly, target):
    """Linear resample of a polyline to ``target`` waypoints."""
    ts = np.linspace(0.0, 1.0, poly.shape[0])
    tt = np.linspace(0.0, 1.0, target)
    return np.column_stack(
        [np.interp(tt, ts, poly[:, d]) for d in range(poly.shape[1])]
    )


def oracle_energy_minimize(metric, x, y, waypoints=64, iters=400):
    """Reference geodesic by discrete energy descent.

    Starts from the straight polyline at a coarse waypoint count, descends,
    then repeatedly doubles the resolution (reusing the coarse solution)
    until ``waypoints`` is reached, descending ``iters`` iterations at each
    level.  Endpoints never move.

    Returns
    -------
    (DiscreteCurve, length)
        The optimized polyline and its midpoint-rule length.
    """
    if waypoints < 3:
        raise ValueError("waypoints must be at least 3")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)

    levels = [int(waypoints)]
    while levels[-1] > 6:
        levels.append(levels[-1] // 2 + 1)
    levels.reverse()

    histories = []
    poly = np.linspace(0.0, 1.0, levels[0])[:, None] * (y - x) + x
    for level in levels:
        if poly.shape[0] != level:
            poly = _upsample(poly, level)
            poly[0] = x
            poly[-1] = y
        poly, history = _descend(metric, poly, iters)
        histories.append(history)

    curve = DiscreteCurve(
        waypoints=poly, energy=histories[-1][-1], energy_history=histories
    )
    return curve, polyline_length(metric, poly)


@dataclass(frozen=True)
class GraphSpec:
    """Sampling plan for the shortest-path oracle.

    ``resolution`` grid points per axis over the box [lo, hi].  Radius
    connectivity (the default) links every pair closer than ``radius``
    (default 1.5 grid spacings: axis neighbors and diagonals).  Refining a
    grid from resolution r to 2r-1 keeps all old nodes, so with a fixed
    explicit radius the shortest path can only get shorter.  ``knn``
    connectivity links each node to its k nearest.
    """

    lo: tuple
    hi: tuple
    resolution: int = 31
    connectivity: str = "radius"
    radius: float | None = None
    k: int = 8

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")
        if self.connectivity not in ("radius", "knn"):
            raise ValueError("connectivity must be 'radius' or 'knn'")
        if len(self.lo) != len(self.hi):
            raise ValueError("lo and hi must have the same dimension")
        if any(l >= h for l, h in zip(self.lo, self.hi)):
            raise ValueError("each lo must be below the matching hi")

    @classmethod
    def around(cls, points, margin=0.3, **kwargs):
        """Box covering a point cloud with a margin on every side."""
        points = np.atleast_2d(points)
        return cls(
            lo=tuple(points.min(axis=0) - margin),
            hi=tuple(points.max(axis=0) + margin),
            **kwargs,
        )

    def nodes(self):
        axes = [
            np.linspace(l, h, self.resolution) for l, h in zip(self.lo, self.hi)
        ]
        grids = np.meshgrid(*axes, indexing="ij")
        return np.column_stack([g.ravel() for g in grids])

    def effective_radius(self):
        spacings = [
            (h - l) / (self.resolution - 1) for l, h in zip(self.lo, self.hi)
        ]
        return self.radius if self.radius is not None else 1.5 * max(spacings)


def oracle_graph_distance(metric, x, y, grid):
    """Shortest-path distance over the sampled graph.

    Nodes are the grid samples plus the two endpoints; edge weights are
    straight-segment lengths under the metric at the segment midpoint.
    The result upper-bounds the true geodesic distance up to the metric's
    variation along edges.

    Raises
    ------
    DisconnectedGraphError
        If no path exists; names an isolated endpoint when that is why.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    box = np.array(grid.lo), np.array(grid.hi)
    for label, pt in (("x", x), ("y", y)):
        if np.any(pt < box[0]) or np.any(pt > box[1]):
            raise ValueError(f"grid box does not contain endpoint {label}={pt}")

    nodes = np.vstack([grid.nodes(), x, y])
    ix, iy = nodes.shape[0] - 2, nodes.shape[0] - 1
    tree = cKDTree(nodes)
    if grid.connectivity == "radius":
        pairs = tree.query_pairs(r=grid.effective_radius(), output_type="ndarray")
    else:
        _, nbrs = tree.query(nodes, k=grid.k + 1)
        src = np.repeat(np.arange(nodes.shape[0]), grid.k)
        dst = nbrs[:, 1:].ravel()
        lo = np.minimum(src, dst)
        hi = np.maximum(src, dst)
        pairs = np.unique(np.column_stack([lo, hi]), axis=0)
    if pairs.size == 0:
        raise DisconnectedGraphError("graph has no edges at all")

    degree = np.zeros(nodes.shape[0], dtype=int)
    np.add.at(degree, pairs.ravel(), 1)
    for label, idx in (("x", ix), ("y", iy)):
        if degree[idx] == 0:
            raise DisconnectedGraphError(
                f"endpoint {label}={nodes[idx]} is isolated "
                "(no graph node within reach)"
            )

    deltas = nodes[pairs[:, 1]] - nodes[pairs[:, 0]]
    mids = 0.5 * (nodes[pairs[:, 0]] + nodes[pairs[:, 1]])
    weights = np.sqrt(_quadratic_forms(metric, mids, deltas))
    graph = csr_matrix(
        (weights, (pairs[:, 0], pairs[:, 1])), shape=(nodes.shape[0],) * 2
    )
    dist = dijkstra(graph, directed=False, indices=ix)
    if not np.isfinite(dist[iy]):
        raise DisconnectedGraphError(
            f"no path between x and y ({int(np.isfinite(dist).sum())} of "
            f"{nodes.shape[0]} nodes reachable from x)"
        )
    return float(dist[iy])


__all__ = [
    "DiscreteCurve",
    "GraphSpec",
    "DisconnectedGraphError",
    "oracle_energy_minimize",
    "oracle_graph_distance",
    "polyline_length",
]
