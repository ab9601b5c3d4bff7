"""Finite-graph Menger solver.

menger_solve returns a maximum set of fully vertex-disjoint A-B paths
(disjoint including endpoints; inner vertices outside A+B) together with a
minimum A-B separator of equal size, computed by unit-capacity max flow on
the vertex-split graph.  brute_force_menger is the independent testing
oracle: exhaustive enumeration on graphs with at most 12 vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PreconditionViolated, TooLarge
from .graphs import FiniteGraph


@dataclass(frozen=True)
class MengerSolution:
    paths: tuple[tuple[int, ...], ...]
    separator: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.paths)


def _check_sides(g: FiniteGraph, a_side: frozenset[int], b_side: frozenset[int]) -> None:
    if not a_side or not b_side:
        raise PreconditionViolated("A and B must be nonempty")
    if a_side & b_side:
        raise PreconditionViolated("A and B must be disjoint")
    if not a_side <= g.vertices or not b_side <= g.vertices:
        raise PreconditionViolated("A and B must be subsets of the vertex set")


class _SplitFlow:
    """Unit vertex capacities via in/out splitting; connection edges have
    effectively infinite capacity.  Deterministic smallest-id search order."""

    INF = 1 << 30

    def __init__(self, g: FiniteGraph, a_side: frozenset[int], b_side: frozenset[int]) -> None:
        ids = sorted(g.vertices)
        self.node_in = {v: 2 * i for i, v in enumerate(ids)}
        self.node_out = {v: 2 * i + 1 for i, v in enumerate(ids)}
        self.source = 2 * len(ids)
        self.sink = 2 * len(ids) + 1
        n = 2 * len(ids) + 2
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []
        for v in ids:
            self._add(self.node_in[v], self.node_out[v], 1)
        arcs = set()
        for u, v in sorted(g.edges):
            arcs.add((u, v))
            if g.kind == "U":
                arcs.add((v, u))
        for u, v in sorted(arcs):
            self._add(self.node_out[u], self.node_in[v], self.INF)
        for a in sorted(a_side):
            self._add(self.source, self.node_in[a], self.INF)
        for b in sorted(b_side):
            self._add(self.node_out[b], self.sink, self.INF)

    def _add(self, u: int, v: int, c: int) -> None:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self) -> int:
        flow = 0
        while True:
            parent_arc = self._bfs()
            if parent_arc is None:
                return flow
            # unit augmentation along the BFS path
            v = self.sink
            while v != self.source:
                arc = parent_arc[v]
                self.cap[arc] -= 1
                self.cap[arc ^ 1] += 1
                v = self.to[arc ^ 1]
            flow += 1

    def _bfs(self) -> list[int] | None:
        parent_arc: list[int] = [-1] * len(self.adj)
        seen = [False] * len(self.adj)
        seen[self.source] = True
        queue = [self.source]
        while queue:
            nxt: list[int] = []
            for u in queue:
                for arc in self.adj[u]:
                    v = self.to[arc]
                    if self.cap[arc] > 0 and not seen[v]:
                        seen[v] = True
                        parent_arc[v] = arc
                        if v == self.sink:
                            return parent_arc
                        nxt.append(v)
            queue = nxt
        return None

    def reachable(self) -> set[int]:
        seen = {self.source}
        queue = [self.source]
        while queue:
            u = queue.pop()
            for arc in self.adj[u]:
                v = self.to[arc]
                if self.cap[arc] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen

    def flow_on(self, u_out: int, v_in: int) -> bool:
        for arc in self.adj[u_out]:
            if self.to[arc] == v_in and self.cap[arc ^ 1] > 0 and self.cap[arc] < self.INF:
                # arc with positive sent flow (residual on reverse side)
                if self.cap[arc] != self.INF:
                    return True
        return False


def menger_solve(g: FiniteGraph, a_side: Iterable[int], b_side: Iterable[int]) -> MengerSolution:
    """Maximum fully-disjoint A-B path family and a matching minimum separator."""
    a_set = frozenset(int(v) for v in a_side)
    b_set = frozenset(int(v) for v in b_side)
    _check_sides(g, a_set, b_set)

    net = _SplitFlow(g, a_set, b_set)
    value = net.max_flow()

    reach = net.reachable()
    separator = frozenset(
        v for v in g.vertices
        if net.node_in[v] in reach and net.node_out[v] not in reach
    )

    paths = _extract_paths(g, net, a_set, b_set)
    assert len(paths) == value == len(separator), \
        f"duality bookkeeping broke: {len(paths)} paths, cut {len(separator)}, flow {value}"
    return MengerSolution(tuple(paths), separator)


def _extract_paths(g: FiniteGraph, net: _SplitFlow, a_set: frozenset[int],
                   b_set: frozenset[int]) -> list[tuple[int, ...]]:
    # consume one unit of flow per walk; vertex capacities make walks disjoint
    used_arc = [False] * len(net.to)

    def flow_arcs(u: int) -> list[int]:
        out = []
        for arc in net.adj[u]:
            if arc % 2 == 0 and not used_arc[arc] and net.cap[arc ^ 1] > 0:
                out.append(arc)
        return out

    paths = []
    for a in sorted(a_set):
        # one path per unit leaving the source towards a
        start_arcs = [arc for arc in net.adj[net.source]
                      if arc % 2 == 0 and net.to[arc] == net.node_in[a]
                      and net.cap[arc ^ 1] > 0 and not used_arc[arc]]
        for s_arc in start_arcs:
            used_arc[s_arc] = True
            walk = [a]
            node = net.node_in[a]
            while True:
                arcs = flow_arcs(node)
                if not arcs:
                    break
                arc = arcs[0]
                used_arc[arc] = True
                node = net.to[arc]
                if node == net.sink:
                    break
                if node % 2 == 0:  # an in-node: record the graph vertex
                    vid = _vertex_of(net, node)
                    walk.append(vid)
            if len(walk) >= 1 and walk[-1] in b_set:
                paths.append(_truncate(walk, a_set, b_set))
    return paths


def _vertex_of(net: _SplitFlow, in_node: int) -> int:
    # node_in ids were assigned in sorted(vertex) order: invert arithmetically
    for v, nid in net.node_in.items():
        if nid == in_node:
            return v
    raise AssertionError("unknown flow node")


def _truncate(walk: list[int], a_set: frozenset[int], b_set: frozenset[int]) -> tuple[int, ...]:
    last_a = max(i for i, v in enumerate(walk) if v in a_set)
    walk = walk[last_a:]
    first_b = min(i for i, v in enumerate(walk) if v in b_set)
    return tuple(walk[:first_b + 1])


# --------------------------------------------------------------------------
# brute force oracle

_BRUTE_LIMIT = 12


def _all_ab_paths(g: FiniteGraph, a_set: frozenset[int], b_set: frozenset[int]) -> list[tuple[int, ...]]:
    """Every simple path starting in A, ending in B, inner vertices outside A+B."""
    sides = a_set | b_set
    out: list[tuple[int, ...]] = []

    def extend(path: list[int]) -> None:
        v = path[-1]
        if v in b_set:
            out.append(tuple(path))
            return
        for w in g.out_neighbors(v) if g.kind == "D" else g.neighbors(v):
            if w in path or w in a_set:
                continue
            path.append(w)
            extend(path)
            path.pop()

    for a in sorted(a_set):
        for w in (g.out_neighbors(a) if g.kind == "D" else g.neighbors(a)):
            if w in a_set:
                continue
            if w in b_set:
                out.append((a, w))
                continue
            extend([a, w])
    return out


def brute_force_menger(g: FiniteGraph, a_side: Iterable[int],
                       b_side: Iterable[int]) -> tuple[int, int]:
    """(max disjoint A-B paths, min separator size) by exhaustive enumeration."""
    a_set = frozenset(int(v) for v in a_side)
    b_set = frozenset(int(v) for v in b_side)
    _check_sides(g, a_set, b_set)
    if len(g.vertices) > _BRUTE_LIMIT:
        raise TooLarge(f"brute force limited to {_BRUTE_LIMIT} vertices")

    paths = _all_ab_paths(g, a_set, b_set)

    best = [0]

    def grow(start: int, used: frozenset[int], count: int) -> None:
        best[0] = max(best[0], count)
        for idx in range(start, len(paths)):
            p = paths[idx]
            if used & set(p):
                continue
            grow(idx + 1, used | set(p), count + 1)

    grow(0, frozenset(), 0)
    max_paths = best[0]

    if not paths:
        return (0, 0)

    verts = sorted(g.vertices)
    path_sets = [set(p) for p in paths]
    min_sep = len(verts)
    import itertools
    for size in range(0, len(verts) + 1):
        found = False
        for combo in itertools.combinations(verts, size):
            cs = set(combo)
            if all(ps & cs for ps in path_sets):
                found = True
                break
        if found:
            min_sep = size
            break
    return (max_paths, min_sep)
