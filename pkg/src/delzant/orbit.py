"""Orbit exploration: closing a fibre under probe-partner moves.

The explorer performs a breadth-first closure of a base point under all
partner moves of probes up to a direction cap.  Points are deduplicated
by their exact coordinates, so the search is sound; window and size caps
make it finite, and `truncated` records whether any cap was hit.  Points
one step outside the window are still expanded (a single shell), since
orbits can re-enter the window from outside.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from . import probe as probe_mod
from .errors import DimensionMismatch, NotInterior
from .lattice import ExactScalar
from .polytope import DelzantPolytope, as_point, point_str


@dataclass(frozen=True)
class OrbitParams:
    max_norm: int
    max_points: int = 500
    max_depth: int = 32
    window: Optional[tuple] = None  # per-coordinate (lo, hi) scalar bounds

    def __post_init__(self):
        if self.max_norm < 1 or self.max_points < 1 or self.max_depth < 1:
            raise ValueError("all caps must be >= 1")

    def in_window(self, x) -> bool:
        if self.window is None:
            return True
        for c, (lo, hi) in zip(x, self.window):
            if lo is not None and c < ExactScalar.of(lo):
                return False
            if hi is not None and c > ExactScalar.of(hi):
                return False
        return True


@dataclass(frozen=True)
class ProbeMove:
    probe: probe_mod.SymmetricProbe
    source: tuple
    target: tuple
    transport: tuple  # the involution matrix on H_1

    def reversed(self):
        # Partner moves are involutions, so the reverse move reuses the probe.
        return ProbeMove(self.probe, self.target, self.source, self.transport)

    def to_json(self):
        return {
            "probe": self.probe.to_json(),
            "source": [str(c) for c in self.source],
            "target": [str(c) for c in self.target],
            "transport": [list(r) for r in self.transport],
        }


@dataclass
class OrbitGraph:
    root: tuple
    nodes: list
    edges: list
    truncated: bool
    parents: dict = field(repr=False, default_factory=dict)

    def path_to(self, target) -> list:
        """The recorded move path root -> target (may pass outside the window)."""
        target = as_point(target)
        if target not in self.parents and target != self.root:
            raise KeyError(f"{point_str(target)} was not reached")
        path = []
        cur = target
        while cur != self.root:
            parent, move = self.parents[cur]
            path.append(move)
            cur = parent
        path.reverse()
        return path

    def to_json(self):
        return {
            "root": [str(c) for c in self.root],
            "nodes": [[str(c) for c in p] for p in self.nodes],
            "edges": [e.to_json() for e in self.edges],
            "truncated": self.truncated,
        }


def explore(poly: DelzantPolytope, x, params: OrbitParams) -> OrbitGraph:
    """BFS closure of x under partner moves of probes up to max_norm.

    Deterministic: probes are generated in canonical direction order and
    the frontier is FIFO.  Nodes are the stored (in-window) points; edges
    connect stored points only, but parent chains may run through the
    one-shell frontier outside the window.
    """
    root = poly._require_interior(x)
    if not params.in_window(root):
        raise NotInterior(f"root {point_str(root)} lies outside the window")
    nodes = [root]
    edges = []
    edge_keys = set()
    parents = {}
    in_window = {root: True}
    depth = {root: 0}
    queued = {root}
    truncated = False
    queue = deque([root])
    while queue:
        u = queue.popleft()
        if depth[u] >= params.max_depth:
            truncated = True
            continue
        for sigma in probe_mod.enumerate_probes(poly, u, params.max_norm):
            v = probe_mod.partner(sigma, u)
            move = ProbeMove(sigma, u, v, probe_mod.involution(sigma))
            if v not in in_window:
                inside = params.in_window(v)
                if inside and len(nodes) >= params.max_points:
                    truncated = True
                    continue
                in_window[v] = inside
                depth[v] = depth[u] + 1
                parents[v] = (u, move)
                if inside:
                    nodes.append(v)
                    queue.append(v)
                    queued.add(v)
                else:
                    truncated = True
            if (
                not in_window[v]
                and in_window[u]
                and v not in queued
            ):
                # one shell only: expand out-of-window points once they are
                # reached from inside, never chains of them
                queue.append(v)
                queued.add(v)
            if in_window[u] and in_window[v]:
                a, b = sorted([u, v])
                key = (a, b, sigma.direction, sigma.entry_facet, sigma.exit_facet)
                if key not in edge_keys:
                    edge_keys.add(key)
                    edges.append(move)
    return OrbitGraph(root, nodes, edges, truncated, parents)


def replay_path(x, path) -> tuple:
    """Re-run a move path from x with probe.partner, returning the endpoint."""
    cur = as_point(x)
    for move in path:
        if cur != move.source:
            raise ValueError(
                f"path breaks at {point_str(cur)}: move starts at "
                f"{point_str(move.source)}"
            )
        cur = probe_mod.partner(move.probe, cur)
        if cur != move.target:
            raise ValueError("recorded move target disagrees with partner()")
    return cur


@dataclass(frozen=True)
class Verdict:
    kind: str  # "equivalent" | "distinct" | "unknown"
    path: Optional[tuple] = None
    reason: Optional[str] = None
    certificate: object = None

    @property
    def equivalent(self):
        return self.kind == "equivalent"

    def to_json(self):
        out = {"verdict": self.kind}
        if self.path is not None:
            out["path"] = [m.to_json() for m in self.path]
        if self.reason is not None:
            out["reason"] = self.reason
        if self.certificate is not None:
            cert = self.certificate
            out["certificate"] = cert.to_json() if hasattr(cert, "to_json") else cert
        return out


def decide(poly: DelzantPolytope, x, y, params: OrbitParams) -> Verdict:
    """Equivalence decision combining obstruction and construction.

    Unequal invariants give Distinct (flagged as heuristic when the
    normals do not span, since the invariants are only proven obstructions
    for polytopes that lift to an orthant).  A connecting probe path gives Equivalent.  Otherwise the
    ambient integer solver may certify Distinct; absence of a path within
    the caps is never conclusive, hence Unknown.
    """
    x = poly._require_interior(x)
    y = poly._require_interior(y)
    if len(x) != len(y):
        raise DimensionMismatch("points of different dimensions")
    if x == y:
        return Verdict("equivalent", path=())
    reduction_type = poly.normals_span()
    inv_x = poly.invariants(x)
    inv_y = poly.invariants(y)
    # only (d, #_d, Gamma) obstruct; the reduced vector is normal-form data
    if (inv_x.d, inv_x.count, inv_x.gamma) != (inv_y.d, inv_y.count, inv_y.gamma):
        parts = []
        if inv_x.d != inv_y.d:
            parts.append("d")
        if inv_x.count != inv_y.count:
            parts.append("#_d")
        if inv_x.gamma != inv_y.gamma:
            parts.append("Gamma")
        note = "" if reduction_type else (
            " (normals do not span R^n: the invariants are not a proven"
            " obstruction for this polytope)"
        )
        return Verdict(
            "distinct",
            reason=f"Chekanov invariants differ in {', '.join(parts)}{note}",
            certificate={
                "x": inv_x.to_json(),
                "y": inv_y.to_json(),
                "reduction_type": reduction_type,
            },
        )
    graph_x = explore(poly, x, params)
    if y in graph_x.parents or y == graph_x.root:
        return Verdict("equivalent", path=tuple(graph_x.path_to(y)))
    graph_y = explore(poly, y, params)
    if x in graph_y.parents:
        backward = [m.reversed() for m in reversed(graph_y.path_to(x))]
        return Verdict("equivalent", path=tuple(backward))
    meet = None
    for p in graph_x.parents:
        if p in graph_y.parents or p == graph_y.root:
            meet = p
            break
    if meet is not None:
        forward = graph_x.path_to(meet)
        backward = [m.reversed() for m in reversed(graph_y.path_to(meet))]
        return Verdict("equivalent", path=tuple(forward + backward))
    if reduction_type:
        from . import monodromy

        outcome = monodromy.solve_ambient(poly, x, y, bound=3)
        if outcome.kind == "infeasible":
            return Verdict(
                "distinct",
                reason="ambient monodromy constraints are integer-infeasible",
                certificate=outcome,
            )
        return Verdict(
            "unknown",
            reason="no probe path within caps; ambient constraints are solvable",
        )
    return Verdict(
        "unknown",
        reason=(
            "no probe path within caps; ambient solver unavailable"
            " (normals do not span R^n)"
        ),
    )
