"""Ground-truth brute force on tiny instances: exact minimum saturated and
weakly saturated subgraphs, used to validate the formulas and
constructions.

Budgets are edge-count based with explicit refusal, never silent
truncation; any result that comes back is proved by exhaustion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, _find_clique_mask

__all__ = [
    "OracleResult",
    "OracleBudgetError",
    "enumerate_maximal_ks_free",
    "exact_sat",
    "exact_wsat",
]


class OracleBudgetError(RuntimeError):
    """Instance exceeds the search budget; raised up front."""


@dataclass
class OracleResult:
    value: int
    witness: Graph
    nodes_explored: int
    exhausted: bool


def enumerate_maximal_ks_free(G: Graph, s: int, max_edges: int = 24, _stats: dict | None = None):
    """Yield every maximal K_s-free subgraph of G, without duplicates.

    Branches on each host edge in/out. An in-branch dies when it would
    close a K_s; an out-branch dies when the edge could no longer complete
    a K_s even if every undecided edge were added. Leaves are verified
    maximal exactly, so completeness holds by construction.
    """
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    if G.m > max_edges:
        raise OracleBudgetError(f"{G.m} edges exceed the budget of {max_edges}")
    edges = list(G.edges())
    m = len(edges)
    n = G.n
    rows_in = [0] * n
    rows_up = list(G._rows)
    out_edges: list[tuple[int, int]] = []
    stats = _stats if _stats is not None else {}
    stats.setdefault("nodes", 0)
    need = s - 2

    def rec(i: int):
        stats["nodes"] += 1
        if i == m:
            for u, v in out_edges:
                if _find_clique_mask(rows_in, rows_in[u] & rows_in[v], need) is None:
                    return
            yield Graph._from_rows(n, list(rows_in))
            return
        u, v = edges[i]
        bu, bv = 1 << u, 1 << v
        # Include the edge unless it closes a K_s.
        if _find_clique_mask(rows_in, rows_in[u] & rows_in[v], need) is None:
            rows_in[u] |= bv
            rows_in[v] |= bu
            yield from rec(i + 1)
            rows_in[u] ^= bv
            rows_in[v] ^= bu
        # Exclude it if it can still be completed by the remaining edges.
        rows_up[u] ^= bv
        rows_up[v] ^= bu
        if _find_clique_mask(rows_up, rows_up[u] & rows_up[v], need) is not None:
            out_edges.append((u, v))
            yield from rec(i + 1)
            out_edges.pop()
        rows_up[u] |= bv
        rows_up[v] |= bu

    yield from rec(0)


def exact_sat(G: Graph, s: int, max_edges: int = 24) -> OracleResult:
    """Minimum edge count over all maximal K_s-free subgraphs of G.

    The witness is the lexicographically smallest edge set among the
    minimum achievers, so results do not depend on exploration order.
    """
    stats: dict = {}
    best: tuple[int, list[tuple[int, int]], Graph] | None = None
    for H in enumerate_maximal_ks_free(G, s, max_edges=max_edges, _stats=stats):
        key = (H.m, sorted(H.edges()))
        if best is None or key < (best[0], best[1]):
            best = (H.m, key[1], H)
    if best is None:
        raise RuntimeError("no maximal K_s-free subgraph found (unreachable)")
    return OracleResult(
        value=best[0], witness=best[2], nodes_explored=stats["nodes"], exhausted=True
    )


def _closure_reaches(rows_h: list[int], G: Graph, s: int) -> bool:
    """Does the bootstrap closure of the given subgraph reach all of G?"""
    rows = list(rows_h)
    missing = []
    for u in range(G.n):
        rest = (G._rows[u] & ~rows[u]) >> (u + 1)
        while rest:
            low = rest & -rest
            missing.append((u, u + 1 + low.bit_length() - 1))
            rest ^= low
    need = s - 2
    progress = True
    while missing and progress:
        progress = False
        leftover = []
        for u, v in missing:
            if _find_clique_mask(rows, rows[u] & rows[v], need) is not None:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                progress = True
            else:
                leftover.append((u, v))
        missing = leftover
    return not missing


def exact_wsat(G: Graph, s: int, max_edges: int = 18) -> OracleResult:
    """Minimum edge count of a weakly K_s-saturated subgraph of G.

    Searches edge subsets by increasing size, so the first hit is the
    minimum. Valid prunes only:
      - host edges that lie in no K_s of G can never be added back, so
        every candidate must contain them;
      - a vertex with a missing incident host edge needs s-2 neighbors in
        the candidate (its first added edge must close a K_s through
        edges of the candidate alone);
      - candidates containing a K_s are discarded.
    """
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    if G.m > max_edges:
        raise OracleBudgetError(f"{G.m} edges exceed the budget of {max_edges}")
    n = G.n
    edges = list(G.edges())
    need = s - 2
    mandatory = [
        (u, v)
        for u, v in edges
        if _find_clique_mask(G._rows, G._rows[u] & G._rows[v], need) is None
    ]
    mand_rows = [0] * n
    for u, v in mandatory:
        mand_rows[u] |= 1 << v
        mand_rows[v] |= 1 << u
    if _find_clique_mask(mand_rows, (1 << n) - 1, s) is not None:
        raise ValueError(
            "no weakly saturated subgraph exists: the forced edges already contain a K_s"
        )
    free = [e for e in edges if e not in set(mandatory)]
    deg_g = [G.degree(v) for v in range(n)]
    lower = max(
        len(mandatory),
        math.ceil(sum(min(deg_g[v], need) for v in range(n)) / 2),
    )
    nodes = 0
    for k in range(lower, G.m + 1):
        extra = k - len(mandatory)
        if extra < 0 or extra > len(free):
            continue
        for combo in combinations(free, extra):
            nodes += 1
            rows = list(mand_rows)
            deg = [r.bit_count() for r in rows]
            for u, v in combo:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                deg[u] += 1
                deg[v] += 1
            if any(deg[v] < need and deg[v] != deg_g[v] for v in range(n)):
                continue
            if _find_clique_mask(rows, (1 << n) - 1, s) is not None:
                continue
            if _closure_reaches(rows, G, s):
                witness = Graph._from_rows(n, rows, m=k)
                return OracleResult(
                    value=k, witness=witness, nodes_explored=nodes, exhausted=True
                )
    raise ValueError("no weakly saturated subgraph exists in this host")
