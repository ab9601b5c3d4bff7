"""Finite and lazily-presented graphs.

Vertices are non-negative integer ids throughout.  Structured tags (strings,
tuples) live in a LabelMap kept next to the graph; algorithms never look at
labels, only generators and exporters do.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .errors import BadConfig, PreconditionViolated

Edge = tuple[int, int]


def canon_edge(kind: str, u: int, v: int) -> Edge:
    """Canonical stored form: undirected edges ordered smaller id first."""
    if u == v:
        raise PreconditionViolated(f"self-loop at {u}")
    if kind == "U" and u > v:
        return (v, u)
    return (u, v)


class LabelMap:
    """Injective two-way map between vertex ids and structured labels."""

    def __init__(self) -> None:
        self._by_id: dict[int, object] = {}
        self._by_label: dict[object, int] = {}
        self._next = 0

    def intern(self, label: object) -> int:
        """Return the id for label, allocating the next free id if new."""
        got = self._by_label.get(label)
        if got is not None:
            return got
        vid = self._next
        self._next += 1
        self._by_label[label] = vid
        self._by_id[vid] = label
        return vid

    def id_of(self, label: object) -> Optional[int]:
        return self._by_label.get(label)

    def label_of(self, vid: int) -> Optional[object]:
        return self._by_id.get(vid)

    def __len__(self) -> int:
        return len(self._by_id)


@dataclass(frozen=True)
class FiniteGraph:
    """Explicit vertex/edge sets, kind 'U' (undirected) or 'D' (directed)."""

    kind: str
    vertices: frozenset[int]
    edges: frozenset[Edge]
    labels: Optional[LabelMap] = field(default=None, compare=False)

    @staticmethod
    def build(kind: str, vertices: Iterable[int], edges: Iterable[Edge],
              labels: Optional[LabelMap] = None) -> "FiniteGraph":
        if kind not in ("U", "D"):
            raise BadConfig(f"graph kind must be 'U' or 'D', got {kind!r}")
        vs = frozenset(int(v) for v in vertices)
        es = frozenset(canon_edge(kind, int(u), int(v)) for u, v in edges)
        for u, v in es:
            if u not in vs or v not in vs:
                raise PreconditionViolated(f"edge ({u},{v}) references missing vertex")
        return FiniteGraph(kind, vs, es, labels)

    def has_edge(self, u: int, v: int) -> bool:
        if self.kind == "U":
            return canon_edge("U", u, v) in self.edges if u != v else False
        return (u, v) in self.edges

    def neighbors(self, v: int) -> list[int]:
        """Sorted neighbor list; for D-graphs, out- and in-neighbors merged."""
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return sorted(out)

    def out_neighbors(self, v: int) -> list[int]:
        if self.kind == "U":
            return self.neighbors(v)
        return sorted(b for a, b in self.edges if a == v)

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": sorted(self.vertices),
            "edges": sorted([list(e) for e in self.edges]),
        }

    @staticmethod
    def from_json(data: dict) -> "FiniteGraph":
        try:
            return FiniteGraph.build(data["kind"], data["vertices"],
                                     [tuple(e) for e in data["edges"]])
        except (KeyError, TypeError) as exc:
            raise BadConfig(f"bad finite-graph JSON: {exc}") from exc


@dataclass(frozen=True)
class LazyGraph:
    """Graph presented by a total adjacency test plus an optional exhaustive
    neighbor enumerator.  locally_finite=True requires the enumerator."""

    kind: str
    adjacent: Callable[[int, int], bool] = field(compare=False)
    neighbors: Optional[Callable[[int], list[int]]] = field(default=None, compare=False)
    locally_finite: bool = False
    labels: Optional[LabelMap] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.kind not in ("U", "D"):
            raise BadConfig(f"graph kind must be 'U' or 'D', got {self.kind!r}")
        if self.locally_finite and self.neighbors is None:
            raise BadConfig("locally_finite lazy graph requires a neighbor enumerator")

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        if self.kind == "U":
            return self.adjacent(u, v) or self.adjacent(v, u)
        return self.adjacent(u, v)

    def neighbor_list(self, v: int) -> list[int]:
        if self.neighbors is None:
            raise BadConfig("lazy graph has no neighbor enumerator")
        return sorted(self.neighbors(v))
