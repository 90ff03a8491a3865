"""Immutable bitset-backed graphs plus the clique and coloring primitives
shared by every engine.

Vertices are the integers 0..n-1. Adjacency lives in one Python-int bitmask
per vertex; a boolean numpy matrix is materialized lazily for the
vectorized kernels. Graphs are immutable after construction and safe to
share across threads.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .rng import RngHandle

__all__ = [
    "Graph",
    "GraphFormatError",
    "gnp_generate",
    "complete_graph",
    "common_neighbors",
    "find_clique",
    "disjoint_clique_extensions",
    "greedy_coloring",
    "parse_graph",
    "serialize_graph",
]


class GraphFormatError(ValueError):
    """Edge-list text that violates the interchange format."""


def bits_of(mask: int) -> Iterator[int]:
    """Set bit positions of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int], n: int) -> int:
    m = 0
    for v in vertices:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph with no self-loops.

    `m` is the cached unordered edge count. Use the classmethod
    constructors; the raw __init__ is internal.
    """

    __slots__ = ("n", "m", "_rows", "_matrix")

    def __init__(self, n: int, rows: list[int], matrix=None, m: int | None = None):
        self.n = n
        self._rows = rows
        self._matrix = matrix
        self.m = sum(r.bit_count() for r in rows) // 2 if m is None else m

    # -- constructors -------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Graph":
        if n < 0:
            raise ValueError("n must be nonnegative")
        return cls(n, [0] * n, m=0)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if rows[u] >> v & 1:
                raise ValueError(f"duplicate edge ({u},{v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            m += 1
        return cls(n, rows, m=m)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "Graph":
        """Build from a symmetric boolean adjacency matrix (diagonal ignored)."""
        M = np.array(matrix, dtype=bool)
        np.fill_diagonal(M, False)
        n = M.shape[0]
        rows = cls._pack(M)
        M.setflags(write=False)
        return cls(n, rows, matrix=M)

    @classmethod
    def _from_rows(cls, n: int, rows: list[int], m: int | None = None) -> "Graph":
        return cls(n, rows, m=m)

    @staticmethod
    def _pack(M: np.ndarray) -> list[int]:
        if M.shape[0] == 0:
            return []
        packed = np.packbits(M, axis=1, bitorder="little")
        return [int.from_bytes(packed[u].tobytes(), "little") for u in range(M.shape[0])]

    # -- accessors ----------------------------------------------------

    def row(self, v: int) -> int:
        """Neighborhood of v as a bitmask."""
        return self._rows[v]

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(bits_of(self._rows[v]))

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges (u, v) with u < v, lexicographic."""
        for u in range(self.n):
            rest = self._rows[u] >> (u + 1)
            base = u + 1
            while rest:
                low = rest & -rest
                yield (u, base + low.bit_length() - 1)
                rest ^= low

    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) int64 array, lexicographic."""
        if self.n == 0 or self.m == 0:
            return np.empty((0, 2), dtype=np.int64)
        return np.argwhere(np.triu(self.matrix(), 1))

    def matrix(self) -> np.ndarray:
        """Boolean adjacency matrix (read-only view, cached)."""
        if self._matrix is None:
            nbytes = (self.n + 7) // 8
            buf = b"".join(r.to_bytes(nbytes, "little") for r in self._rows)
            arr = np.frombuffer(buf, dtype=np.uint8).reshape(self.n, nbytes)
            M = np.unpackbits(arr, axis=1, bitorder="little")[:, : self.n].astype(bool)
            M.setflags(write=False)
            self._matrix = M
        return self._matrix

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex i of the result is vertices[i]."""
        idx = list(vertices)
        for v in idx:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range")
        if len(set(idx)) != len(idx):
            raise ValueError("duplicate vertices")
        k = len(idx)
        rows = [0] * k
        for i, u in enumerate(idx):
            ru = self._rows[u]
            for j in range(i + 1, k):
                if ru >> idx[j] & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        return Graph(k, rows)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        """New graph with the given edges added (duplicates tolerated)."""
        rows = list(self._rows)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows)

    def is_subgraph_of(self, other: "Graph") -> bool:
        if self.n != other.n:
            return False
        return all(r & ~s == 0 for r, s in zip(self._rows, other._rows))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._rows == other._rows

    __hash__ = None  # mutable-free but large; compare by edges instead

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- generation -------------------------------------------------------


def gnp_generate(n: int, p: float, rng: RngHandle) -> Graph:
    """Erdos-Renyi G(n, p): every unordered pair is an edge independently
    with probability p.

    Draws one uniform per pair in fixed row-major pair order, so the
    result is bit-for-bit reproducible from the handle alone.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    gen = rng.generator()
    M = np.zeros((n, n), dtype=bool)
    for u in range(n - 1):
        M[u, u + 1 :] = gen.random(n - 1 - u) < p
    M |= M.T
    return Graph.from_matrix(M)


def complete_graph(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be nonnegative")
    full = (1 << n) - 1
    rows = [full ^ (1 << v) for v in range(n)]
    return Graph(n, rows, m=n * (n - 1) // 2)


# -- clique primitives ------------------------------------------------


def _find_clique_mask(rows: Sequence[int], cand: int, r: int) -> Optional[int]:
    """Bitmask of an r-clique inside cand, or None. Exhaustive."""
    if r == 0:
        return 0
    found = 0

    def rec(cand: int, need: int, acc: int) -> bool:
        nonlocal found
        while cand:
            if cand.bit_count() < need:
                return False
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if need == 1:
                found = acc | low
                return True
            if rec(cand & rows[v], need - 1, acc | low):
                return True
        return False

    return found if rec(cand, r, 0) else None


def find_clique(graph: Graph, candidates: Iterable[int] | None, r: int) -> set[int] | None:
    """Find an r-subset of `candidates` inducing a complete subgraph.

    Exhaustive branch and bound over the bitset adjacency: a None return
    proves no such clique exists. candidates=None means all vertices.
    r=0 returns the empty set.
    """
    if r < 0:
        raise ValueError("clique size must be nonnegative")
    cand = graph.full_mask() if candidates is None else mask_of(candidates, graph.n)
    got = _find_clique_mask(graph._rows, cand, r)
    return None if got is None else set(bits_of(got))


def common_neighbors(graph: Graph, u: int, v: int) -> set[int]:
    """Vertices adjacent to both u and v."""
    if u == v:
        raise ValueError("u and v must differ")
    if not (0 <= u < graph.n and 0 <= v < graph.n):
        raise ValueError("vertex out of range")
    return set(bits_of(graph._rows[u] & graph._rows[v]))


def disjoint_clique_extensions(
    graph: Graph, base: Iterable[int], y: int, max_count: int
) -> list[set[int]]:
    """Greedy maximal packing of pairwise-disjoint extensions of `base`.

    An extension is a y-set Y, disjoint from base, with G[Y] complete and
    every Y-vertex adjacent to every base vertex. Stops at max_count.
    """
    if y < 0:
        raise ValueError("extension size must be nonnegative")
    base_mask = mask_of(base, graph.n)
    if y == 0:
        return [set() for _ in range(max_count)]
    avail = graph.full_mask() & ~base_mask
    for b in bits_of(base_mask):
        avail &= graph._rows[b]
    rows = graph._rows
    found: list[set[int]] = []
    while len(found) < max_count:
        got = _find_clique_mask(rows, avail, y)
        if got is None:
            break
        found.append(set(bits_of(got)))
        avail &= ~got
    return found


def greedy_coloring(graph: Graph, order: Sequence[int]) -> list[set[int]]:
    """First-fit coloring along `order`; classes are independent sets.

    Deterministic given the order, which must be a permutation of 0..n-1.
    """
    n = graph.n
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of 0..n-1")
    class_masks: list[int] = []
    for v in order:
        row = graph._rows[v]
        for i, cm in enumerate(class_masks):
            if not cm & row:
                class_masks[i] = cm | (1 << v)
                break
        else:
            class_masks.append(1 << v)
    return [set(bits_of(cm)) for cm in class_masks]


# -- edge-list interchange --------------------------------------------
#
# First line "n m", then m lines "u v" with 0 <= u < v < n, ASCII decimal,
# newline-terminated. This is the only graph interchange format.


def serialize_graph(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise GraphFormatError("malformed header: empty input, expected 'n m'")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"malformed header {lines[0]!r}: expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError(f"malformed header {lines[0]!r}: non-integer fields") from None
    if n < 0 or m < 0:
        raise GraphFormatError(f"malformed header {lines[0]!r}: negative values")
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(body)}")
    rows = [0] * n
    for i, line in enumerate(body, start=2):
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {i}: malformed edge {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {i}: malformed edge {line!r}") from None
        if u == v:
            raise GraphFormatError(f"line {i}: self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {i}: vertex index out of range (n={n})")
        if u > v:
            raise GraphFormatError(f"line {i}: endpoints out of order, need u < v")
        if rows[u] >> v & 1:
            raise GraphFormatError(f"line {i}: duplicate edge ({u},{v})")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows, m=m)
