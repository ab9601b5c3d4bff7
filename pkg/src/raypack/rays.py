"""Rays, double rays and their meet certificates.

An infinite ray is only ever handled in closed form: a finite prefix path
followed by a tail of a registered base ray (registry index + offset).  All
intersection questions about tails are answered by an IntersectionOracle in
base-ray coordinates; everything else is decided by finite scans and
membership probes, so every operation here is total.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import (
    EdgeNotOnRay,
    NotAdjacent,
    OracleInconsistent,
    PreconditionViolated,
    VertexRepetition,
)

DEFAULT_HORIZON = 1024

# window used for cheap spot checks of oracle certificates
_CONSISTENCY_WINDOW = 12

Path = tuple[int, ...]


def as_path(vertices: Iterable[int]) -> Path:
    p = tuple(int(v) for v in vertices)
    if len(set(p)) != len(p):
        raise VertexRepetition(f"path repeats a vertex: {p}")
    return p


# --------------------------------------------------------------------------
# base rays and the registry


class AffineRay:
    """Base ray n -> start + step*n (step != 0)."""

    __slots__ = ("start", "step")

    def __init__(self, start: int, step: int) -> None:
        if step == 0:
            raise PreconditionViolated("affine ray needs a nonzero step")
        self.start = start
        self.step = step

    def vertex_at(self, n: int) -> int:
        return self.start + self.step * n

    def membership(self, v: int) -> Optional[int]:
        q, r = divmod(v - self.start, self.step)
        return q if r == 0 and q >= 0 else None


class FuncRay:
    """Base ray from an explicit enumeration and a total inverse."""

    __slots__ = ("_fn", "_inv")

    def __init__(self, fn: Callable[[int], int], inv: Callable[[int], Optional[int]]) -> None:
        self._fn = fn
        self._inv = inv

    def vertex_at(self, n: int) -> int:
        return self._fn(n)

    def membership(self, v: int) -> Optional[int]:
        return self._inv(v)


class MemoRay:
    """Base ray computed by a recursion; memoizes the enumeration and answers
    membership through a caller-supplied exact position finder."""

    def __init__(self, step_fn: Callable[[int, list[int]], int],
                 position_of: Callable[["MemoRay", int], Optional[int]]) -> None:
        self._step = step_fn
        self._cache: list[int] = []
        self._position_of = position_of

    def vertex_at(self, n: int) -> int:
        while len(self._cache) <= n:
            self._cache.append(self._step(len(self._cache), self._cache))
        return self._cache[n]

    def membership(self, v: int) -> Optional[int]:
        return self._position_of(self, v)


class Registry:
    """Append-only collection of base rays shared by all descriptors of an
    instance.  Entries are immutable once added."""

    def __init__(self) -> None:
        self._entries: list[object] = []
        self._names: list[str] = []
        self.orientation: list[int] = []

    def add(self, entry: object, name: str = "", orientation: int = 1) -> int:
        self._entries.append(entry)
        self._names.append(name)
        self.orientation.append(orientation)
        return len(self._entries) - 1

    def __len__(self) -> int:
        return len(self._entries)

    def entry(self, idx: int) -> object:
        return self._entries[idx]

    def name(self, idx: int) -> str:
        return self._names[idx]

    def vertex_at(self, idx: int, n: int) -> int:
        return self._entries[idx].vertex_at(n)  # type: ignore[attr-defined]

    def membership(self, idx: int, v: int) -> Optional[int]:
        return self._entries[idx].membership(v)  # type: ignore[attr-defined]


# --------------------------------------------------------------------------
# meet certificates


@dataclass(frozen=True)
class MeetResult:
    """Exact intersection structure of two (base or descriptor) rays.

    kind 'finite': pairs is the exhaustive meet list sorted by first-ray
    position.  kind 'shared_tail': alignment is the earliest (p1, p2) from
    which the two enumerations coincide pointwise forever.
    """

    kind: str  # "disjoint" | "finite" | "shared_tail"
    pairs: tuple[tuple[int, int], ...] = ()
    alignment: Optional[tuple[int, int]] = None

    @staticmethod
    def disjoint() -> "MeetResult":
        return MeetResult("disjoint")

    @staticmethod
    def finite(pairs: Iterable[tuple[int, int]]) -> "MeetResult":
        return MeetResult("finite", tuple(sorted(set(pairs))))

    @staticmethod
    def shared(p1: int, p2: int) -> "MeetResult":
        return MeetResult("shared_tail", alignment=(p1, p2))

    @property
    def is_disjoint(self) -> bool:
        return self.kind == "disjoint"

    def swapped(self) -> "MeetResult":
        if self.kind == "finite":
            return MeetResult.finite((b, a) for a, b in self.pairs)
        if self.kind == "shared_tail":
            assert self.alignment is not None
            return MeetResult.shared(self.alignment[1], self.alignment[0])
        return self


class IntersectionOracle:
    """Answers tail-vs-tail intersection questions in base coordinates.

    meet_bases(i, j) must be symmetric up to swapping position pairs and
    consistent with membership probes on any finite window.
    """

    def meet_bases(self, i: int, j: int) -> MeetResult:
        raise NotImplementedError

    def for_pair(self, i: int, j: int) -> MeetResult:
        if i == j:
            return MeetResult.shared(0, 0)
        return self.meet_bases(i, j)


class TableOracle(IntersectionOracle):
    """User-declared certificate table; missing pairs default to disjoint
    unless strict."""

    def __init__(self, table: dict[tuple[int, int], MeetResult], strict: bool = False) -> None:
        self._table = dict(table)
        self._strict = strict

    def meet_bases(self, i: int, j: int) -> MeetResult:
        if (i, j) in self._table:
            return self._table[(i, j)]
        if (j, i) in self._table:
            return self._table[(j, i)].swapped()
        if self._strict:
            raise OracleInconsistent(f"no certificate declared for base pair ({i},{j})")
        return MeetResult.disjoint()


class CallableOracle(IntersectionOracle):
    def __init__(self, fn: Callable[[int, int], MeetResult]) -> None:
        self._fn = fn

    def meet_bases(self, i: int, j: int) -> MeetResult:
        return self._fn(i, j)


class ForestBranchOracle(IntersectionOracle):
    """Built-in oracle for registries whose bases are tree branches.

    Branches of different trees are disjoint; two branches of the same tree
    meet exactly on their common root path, which is computed by comparing
    enumerations up to one step past the shorter declared stem.
    """

    def __init__(self, registry: Registry, tree_of: dict[int, int],
                 stem_len: dict[int, int]) -> None:
        self._reg = registry
        self._tree_of = tree_of
        self._stem_len = stem_len

    def meet_bases(self, i: int, j: int) -> MeetResult:
        if self._tree_of.get(i) != self._tree_of.get(j):
            return MeetResult.disjoint()
        bound = max(self._stem_len.get(i, 0), self._stem_len.get(j, 0)) + 2
        k = 0
        while k < bound and self._reg.vertex_at(i, k) == self._reg.vertex_at(j, k):
            k += 1
        if k >= bound:
            return MeetResult.shared(0, 0)
        if k == 0:
            return MeetResult.disjoint()
        return MeetResult.finite((p, p) for p in range(k))


# --------------------------------------------------------------------------
# single-ray descriptors


@dataclass(frozen=True)
class RayDescriptor:
    """A ray in closed form: finite prefix, then the tail of a base ray."""

    prefix: Path
    base: int
    offset: int
    registry: Registry = field(compare=False)

    def __post_init__(self) -> None:
        if self.offset < 0:
            raise PreconditionViolated("tail offset must be non-negative")

    def vertex_at(self, n: int) -> int:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.registry.vertex_at(self.base, self.offset + n - len(self.prefix))

    def membership(self, v: int) -> Optional[int]:
        try:
            return self.prefix.index(v)
        except ValueError:
            pass
        pos = self.registry.membership(self.base, v)
        if pos is not None and pos >= self.offset:
            return len(self.prefix) + pos - self.offset
        return None

    def start(self) -> int:
        return self.vertex_at(0)

    def enumerate(self, horizon: int) -> list[int]:
        return [self.vertex_at(n) for n in range(horizon)]

    def describe(self) -> dict:
        return {"prefix": list(self.prefix), "base": self.base, "offset": self.offset}


def ray_vertex_at(r: RayDescriptor, n: int) -> int:
    return r.vertex_at(n)


def ray_membership(r: RayDescriptor, v: int) -> Optional[int]:
    return r.membership(v)


def tail_of(r: RayDescriptor, n: int) -> RayDescriptor:
    """Descriptor for the final segment starting at position n, normalized so
    the prefix shrinks before the offset grows."""
    if n <= 0:
        return r
    if n < len(r.prefix):
        return RayDescriptor(r.prefix[n:], r.base, r.offset, r.registry)
    return RayDescriptor((), r.base, r.offset + n - len(r.prefix), r.registry)


def concat_path_ray(p: Sequence[int], r: RayDescriptor,
                    edge_ok: Optional[Callable[[int, int], bool]] = None) -> RayDescriptor:
    """Prepend the path p to the ray r.  p's vertices must not occur in r; if
    an adjacency test is supplied the junction edge is checked."""
    p = tuple(p)
    if not p:
        return r
    if len(set(p)) != len(p):
        raise VertexRepetition("prefix path repeats a vertex")
    for v in p:
        if r.membership(v) is not None:
            raise VertexRepetition(f"path vertex {v} reappears in the ray")
    if edge_ok is not None and not edge_ok(p[-1], r.vertex_at(0)):
        raise NotAdjacent(f"{p[-1]} is not adjacent to ray head {r.vertex_at(0)}")
    return RayDescriptor(p + r.prefix, r.base, r.offset, r.registry)


def rays_meet(r1: RayDescriptor, r2: RayDescriptor, oracle: IntersectionOracle) -> MeetResult:
    """Exact meet structure of two descriptors over the same registry."""
    l1, l2 = len(r1.prefix), len(r2.prefix)
    pairs: set[tuple[int, int]] = set()

    pos2 = {v: j for j, v in enumerate(r2.prefix)}
    for i, v in enumerate(r1.prefix):
        j = pos2.get(v)
        if j is not None:
            pairs.add((i, j))
        q = r2.registry.membership(r2.base, v)
        if q is not None and q >= r2.offset:
            pairs.add((i, l2 + q - r2.offset))
    for j, v in enumerate(r2.prefix):
        q = r1.registry.membership(r1.base, v)
        if q is not None and q >= r1.offset:
            pairs.add((l1 + q - r1.offset, j))

    cert = oracle.for_pair(r1.base, r2.base)
    _spot_check_base_cert(r1, r2, cert)

    if cert.kind == "shared_tail":
        a1, a2 = cert.alignment  # type: ignore[misc]
        d = a2 - a1
        q1 = max(a1, r1.offset, r2.offset - d)
        p1 = l1 + q1 - r1.offset
        p2 = l2 + q1 + d - r2.offset
        # pull the alignment back through matching prefixes / earlier tail
        while p1 > 0 and p2 > 0 and r1.vertex_at(p1 - 1) == r2.vertex_at(p2 - 1):
            p1 -= 1
            p2 -= 1
        return MeetResult.shared(p1, p2)

    if cert.kind == "finite":
        for q1, q2 in cert.pairs:
            if q1 >= r1.offset and q2 >= r2.offset:
                pairs.add((l1 + q1 - r1.offset, l2 + q2 - r2.offset))

    if pairs:
        return MeetResult.finite(pairs)
    return MeetResult.disjoint()


def _spot_check_base_cert(r1: RayDescriptor, r2: RayDescriptor, cert: MeetResult) -> None:
    reg1, reg2 = r1.registry, r2.registry
    if cert.kind == "finite":
        for q1, q2 in cert.pairs:
            if reg1.vertex_at(r1.base, q1) != reg2.vertex_at(r2.base, q2):
                raise OracleInconsistent(
                    f"certificate claims bases {r1.base},{r2.base} meet at ({q1},{q2})"
                    " but vertices differ")
    elif cert.kind == "shared_tail":
        a1, a2 = cert.alignment  # type: ignore[misc]
        for k in range(_CONSISTENCY_WINDOW):
            if reg1.vertex_at(r1.base, a1 + k) != reg2.vertex_at(r2.base, a2 + k):
                raise OracleInconsistent(
                    f"shared-tail alignment ({a1},{a2}) of bases {r1.base},{r2.base}"
                    f" breaks at step {k}")
    elif cert.kind == "disjoint" and r1.base != r2.base:
        for k in range(_CONSISTENCY_WINDOW):
            v = reg1.vertex_at(r1.base, r1.offset + k)
            if reg2.membership(r2.base, v) is not None:
                raise OracleInconsistent(
                    f"bases {r1.base},{r2.base} certified disjoint but share vertex {v}")


def first_meet(r1: RayDescriptor, r2: RayDescriptor,
               oracle: IntersectionOracle) -> Optional[tuple[int, int]]:
    """Earliest (p1, p2) with r1[p1] == r2[p2], or None.  Exact: shared-tail
    certificates bound the scan."""
    mr = rays_meet(r1, r2, oracle)
    if mr.kind == "disjoint":
        return None
    if mr.kind == "finite":
        return mr.pairs[0]
    a1, _ = mr.alignment  # type: ignore[misc]
    for p in range(a1 + 1):
        q = r2.membership(r1.vertex_at(p))
        if q is not None:
            return (p, q)
    raise AssertionError("unreachable: alignment position must be a meet")


# --------------------------------------------------------------------------
# double-ray descriptors


@dataclass(frozen=True)
class TailRef:
    """Reference to a base-ray tail; direction records the physical
    orientation the base entry was registered with (provenance metadata)."""

    base: int
    offset: int
    direction: int = 1


@dataclass(frozen=True)
class DoubleRayDescriptor:
    """Two-way infinite ray: left tail (walked outward at negative positions),
    center path at positions 0..len(center)-1, right tail beyond."""

    left: TailRef
    center: Path
    right: TailRef
    registry: Registry = field(compare=False)

    def vertex_at(self, z: int) -> int:
        c = len(self.center)
        if 0 <= z < c:
            return self.center[z]
        if z >= c:
            return self.registry.vertex_at(self.right.base, self.right.offset + z - c)
        return self.registry.vertex_at(self.left.base, self.left.offset + (-1 - z))

    def membership(self, v: int) -> Optional[int]:
        try:
            return self.center.index(v)
        except ValueError:
            pass
        q = self.registry.membership(self.right.base, v)
        if q is not None and q >= self.right.offset:
            return len(self.center) + q - self.right.offset
        q = self.registry.membership(self.left.base, v)
        if q is not None and q >= self.left.offset:
            return -1 - (q - self.left.offset)
        return None

    def window(self, lo: int, hi: int) -> list[int]:
        return [self.vertex_at(z) for z in range(lo, hi)]

    def subpath(self, lo: int, hi: int) -> Path:
        """Vertices at positions lo..hi inclusive."""
        return tuple(self.vertex_at(z) for z in range(lo, hi + 1))

    def describe(self) -> dict:
        return {
            "left": [self.left.base, self.left.offset, self.left.direction],
            "center": list(self.center),
            "right": [self.right.base, self.right.offset, self.right.direction],
        }


def zigzag_positions() -> Iterator[int]:
    """Canonical enumeration order of double-ray positions: 0, 1, -1, 2, -2…"""
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def split_double(d: DoubleRayDescriptor, edge: tuple[int, int],
                 directed: bool = False) -> tuple[RayDescriptor, RayDescriptor]:
    """Split at an edge occurring at consecutive positions (z, z+1).

    Returns (forward, backward): forward starts at the later endpoint and
    follows d's order; backward starts at the earlier endpoint in reversed
    order.  Their vertex sets partition d's vertices.
    """
    u, v = edge
    zu, zv = d.membership(u), d.membership(v)
    if zu is not None and zv == zu + 1:
        z = zu
    elif not directed and zv is not None and zu == zv + 1:
        z = zv
    else:
        raise EdgeNotOnRay(f"edge {edge} does not occur on the double ray")
    return (_forward_half(d, z + 1), _backward_half(d, z))


def _forward_half(d: DoubleRayDescriptor, c: int) -> RayDescriptor:
    length = len(d.center)
    if c >= length:
        return RayDescriptor((), d.right.base, d.right.offset + c - length, d.registry)
    return RayDescriptor(tuple(d.vertex_at(z) for z in range(c, length)),
                         d.right.base, d.right.offset, d.registry)


def _backward_half(d: DoubleRayDescriptor, b: int) -> RayDescriptor:
    if b < 0:
        return RayDescriptor((), d.left.base, d.left.offset + (-1 - b), d.registry)
    return RayDescriptor(tuple(d.vertex_at(z) for z in range(b, -1, -1)),
                         d.left.base, d.left.offset, d.registry)


def make_double(back: RayDescriptor, middle: Sequence[int], fwd: RayDescriptor,
                left_dir: int = -1, right_dir: int = 1) -> DoubleRayDescriptor:
    """Assemble reverse(back) + middle + fwd into a double-ray descriptor.

    back and fwd contribute their prefixes to the center; their tails become
    the two tail references.  Returns the descriptor together with nothing:
    position 0 is the first vertex of reverse(back)'s prefix contribution (or
    the middle if back has an empty prefix).
    """
    center = tuple(reversed(back.prefix)) + tuple(middle) + fwd.prefix
    return DoubleRayDescriptor(
        TailRef(back.base, back.offset, left_dir),
        center,
        TailRef(fwd.base, fwd.offset, right_dir),
        back.registry,
    )


def doubles_meet_positions(d0: DoubleRayDescriptor, d1: DoubleRayDescriptor,
                           oracle: IntersectionOracle,
                           probe_window: int = DEFAULT_HORIZON) -> tuple[str, list[tuple[int, int]]]:
    """Meet structure of two double rays as ("finite", pairs) in d-coordinates,
    or ("shared", pairs-so-far) when a tail certificate says they eventually
    coincide.  Pairs are found by meeting each of the four tail pairs plus the
    centers; exact since each single-single meet is exact."""
    halves0 = (_forward_half(d0, 0), _backward_half(d0, -1))
    sign0 = (1, -1)
    base_shift0 = (0, 0)
    halves1 = (_forward_half(d1, 0), _backward_half(d1, -1))
    sign1 = (1, -1)

    shared = False
    pairs: set[tuple[int, int]] = set()

    def to_d0(idx: int, p: int) -> int:
        return p if sign0[idx] == 1 else -1 - p

    def to_d1(idx: int, p: int) -> int:
        return p if sign1[idx] == 1 else -1 - p

    for i0, h0 in enumerate(halves0):
        for i1, h1 in enumerate(halves1):
            mr = rays_meet(h0, h1, oracle)
            if mr.kind == "shared_tail":
                shared = True
                a1, a2 = mr.alignment  # type: ignore[misc]
                for k in range(probe_window):
                    pairs.add((to_d0(i0, a1 + k), to_d1(i1, a2 + k)))
                # also collect pre-alignment sporadic meets
                for p in range(a1):
                    q = h1.membership(h0.vertex_at(p))
                    if q is not None:
                        pairs.add((to_d0(i0, p), to_d1(i1, q)))
            elif mr.kind == "finite":
                for p, q in mr.pairs:
                    pairs.add((to_d0(i0, p), to_d1(i1, q)))

    kind = "shared" if shared else "finite"
    return kind, sorted(pairs)


# --------------------------------------------------------------------------
# structural validation helpers


def check_injective(vertices: Sequence[int], what: str = "ray") -> None:
    if len(set(vertices)) != len(vertices):
        seen: set[int] = set()
        for v in vertices:
            if v in seen:
                raise VertexRepetition(f"{what} repeats vertex {v}")
            seen.add(v)


def ray_is_valid(r: RayDescriptor, horizon: int,
                 edge_ok: Optional[Callable[[int, int], bool]] = None) -> bool:
    """Injectivity (and adjacency, if a test is supplied) to the horizon."""
    vs = r.enumerate(horizon)
    if len(set(vs)) != len(vs):
        return False
    if edge_ok is not None:
        for a, b in zip(vs, vs[1:]):
            if not edge_ok(a, b):
                return False
    return True


def double_is_valid(d: DoubleRayDescriptor, horizon: int,
                    edge_ok: Optional[Callable[[int, int], bool]] = None) -> bool:
    vs = d.window(-horizon, horizon)
    if len(set(vs)) != len(vs):
        return False
    if edge_ok is not None:
        for a, b in zip(vs, vs[1:]):
            if not edge_ok(a, b):
                return False
    return True
