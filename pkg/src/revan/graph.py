"""Simple undirected graphs, degree profiles and the Revan degree transform.

Graphs are immutable: the edge array is normalised (``u < v``, lexicographic
order) and validated once at construction, and the degree sequence is cached.
The Revan degree of vertex ``u`` is ``r_u = Delta + delta - d_u``, with
``Delta`` and ``delta`` the maximum and minimum degree of the graph.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from typing import Iterable, TextIO, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import FormatError, GraphError

__all__ = [
    "Graph",
    "DegreeProfile",
    "degree_profile",
    "revan_involution_check",
    "read_edge_list",
    "write_edge_list",
    "parse_edge_list",
    "format_edge_list",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "star_graph",
    "empty_graph",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices ``0 .. n-1``.

    ``edges`` may be any ``(m, 2)`` integer array-like. Each pair is stored
    as ``(min, max)`` and the rows are sorted lexicographically; self-loops,
    repeated pairs and out-of-range endpoints raise :class:`GraphError`.
    Connectivity is not required.
    """

    n: int
    edges: np.ndarray = field(default_factory=lambda: np.empty((0, 2), dtype=np.int64))
    degrees: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise GraphError(f"vertex count must be >= 1, got {self.n}")
        e = np.asarray(self.edges, dtype=np.int64)
        if e.size == 0:
            e = np.empty((0, 2), dtype=np.int64)
        if e.ndim != 2 or e.shape[1] != 2:
            raise GraphError(f"edges must have shape (m, 2), got {e.shape}")
        if e.size and (e.min() < 0 or e.max() >= n):
            raise GraphError(f"edge endpoint outside 0..{n - 1}")
        u = np.minimum(e[:, 0], e[:, 1])
        v = np.maximum(e[:, 0], e[:, 1])
        loops = np.flatnonzero(u == v)
        if loops.size:
            raise GraphError(f"self-loop at vertex {int(u[loops[0]])}")
        key = u * n + v
        # generators emit pairs already in order; only sort when needed
        if key.size > 1 and not np.all(key[1:] > key[:-1]):
            order = np.argsort(key, kind="stable")
            u, v, key = u[order], v[order], key[order]
            dup = np.flatnonzero(key[1:] == key[:-1])
            if dup.size:
                i = dup[0]
                raise GraphError(f"duplicate edge ({int(u[i])}, {int(v[i])})")
        edges = np.column_stack((u, v)) if key.size else np.empty((0, 2), dtype=np.int64)
        degrees = np.bincount(edges.ravel(), minlength=n).astype(np.int64)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", _frozen(np.ascontiguousarray(edges)))
        object.__setattr__(self, "degrees", _frozen(degrees))

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @property
    def u(self) -> np.ndarray:
        return self.edges[:, 0]

    @property
    def v(self) -> np.ndarray:
        return self.edges[:, 1]

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in self.edges]

    def is_connected(self) -> bool:
        """Connectivity flag; ensemble code never filters on it."""
        if self.n == 1:
            return True
        if self.m < self.n - 1:
            return False
        ones = np.ones(self.m, dtype=np.int8)
        adj = coo_matrix((ones, (self.u, self.v)), shape=(self.n, self.n))
        ncomp, _ = connected_components(adj, directed=False)
        return ncomp == 1

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))


@dataclass(frozen=True, eq=False)
class DegreeProfile:
    degrees: np.ndarray
    delta_max: int
    delta_min: int
    revan: np.ndarray

    @property
    def n(self) -> int:
        return int(self.degrees.shape[0])

    @property
    def span(self) -> int:
        """``Delta + delta``, the reflection constant of the Revan map."""
        return self.delta_max + self.delta_min

    def mean_degree(self) -> float:
        return float(self.degrees.sum()) / self.n

    def mean_revan(self) -> float:
        return float(self.revan.sum()) / self.n


def degree_profile(g: Graph) -> DegreeProfile:
    """Degrees, ``Delta``, ``delta`` and Revan degrees of ``g``.

    >>> p = degree_profile(path_graph(4))
    >>> p.delta_max, p.delta_min, p.revan.tolist()
    (2, 1, [2, 1, 1, 2])
    """
    d = g.degrees
    big, small = int(d.max()), int(d.min())
    revan = _frozen((big + small) - d)
    return DegreeProfile(degrees=d, delta_max=big, delta_min=small, revan=revan)


def revan_involution_check(p: DegreeProfile) -> bool:
    """True iff reflecting the Revan degrees about ``Delta + delta`` gives back the degrees."""
    return bool(np.array_equal(p.span - p.revan, p.degrees))


# --- canonical small graphs -------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    iu, iv = np.triu_indices(n, 1)
    return Graph(n, np.column_stack((iu, iv)))


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with the centre at vertex 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# --- edge-list text format ---------------------------------------------------
#
#   n m
#   u v        (m lines, 0 <= u < v < n)

PathLike = Union[str, os.PathLike]


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{a} {b}" for a, b in g.edges.tolist())
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, dest: Union[PathLike, TextIO]) -> None:
    text = format_edge_list(g)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _ints(line: str, lineno: int, what: str) -> tuple[int, int]:
    parts = line.split(" ")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise FormatError(f"expected two non-negative decimal integers ({what}), got {line!r}", lineno)
    return int(parts[0]), int(parts[1])


def parse_edge_list(lines: Iterable[str]) -> Graph:
    """Parse the edge-list format; errors name the offending line (1-based)."""
    it = iter(lines)
    try:
        header = next(it)
    except StopIteration:
        raise FormatError("empty input", 1) from None
    n, m = _ints(header.rstrip("\n"), 1, "n m")
    if n < 1:
        raise FormatError(f"vertex count must be >= 1, got {n}", 1)
    edges = []
    seen = set()
    lineno = 1
    for lineno, raw in enumerate(it, start=2):
        line = raw.rstrip("\n")
        if len(edges) == m:
            if line == "":
                continue
            raise FormatError(f"more edge lines than the declared m = {m}", lineno)
        a, b = _ints(line, lineno, "u v")
        if a == b:
            raise FormatError(f"self-loop ({a}, {b})", lineno)
        if not a < b:
            raise FormatError(f"expected u < v, got ({a}, {b})", lineno)
        if b >= n:
            raise FormatError(f"vertex {b} out of range for n = {n}", lineno)
        if (a, b) in seen:
            raise FormatError(f"duplicate edge ({a}, {b})", lineno)
        seen.add((a, b))
        edges.append((a, b))
    if len(edges) != m:
        raise FormatError(f"declared m = {m} edges but found {len(edges)}", lineno + 1)
    return Graph(n, np.array(edges, dtype=np.int64).reshape(-1, 2))


def read_edge_list(src: Union[PathLike, TextIO]) -> Graph:
    if hasattr(src, "read"):
        return parse_edge_list(src)
    with open(src, "r", encoding="ascii", newline="") as fh:
        return parse_edge_list(fh)


def graph_from_text(text: str) -> Graph:
    return parse_edge_list(io.StringIO(text))
