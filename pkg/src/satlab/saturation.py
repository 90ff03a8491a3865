"""Strong K_s-saturation machinery: the pair-completion predicate, exact
saturation checking, greedy maximal extensions, the naive hub construction,
the three-layer construction, and the edge-cover numerics.

Notation: alpha = 1/(1-p) and beta = 1/(1-p^2) are the decay bases that
convert per-vertex completion probabilities into vertex counts; log_alpha n
is the natural unit for anchor-set sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import combinations

import numpy as np

from .graph import (
    Graph,
    _find_clique_mask,
    bits_of,
    find_clique,
    gnp_generate,
    greedy_coloring,
    mask_of,
)
from .rng import RngHandle

__all__ = [
    "SaturationReport",
    "ConstructionParams",
    "LayeredPartition",
    "CliqueRichReport",
    "completes_pair",
    "is_ks_saturated",
    "maximal_ks_free_extension",
    "naive_sequential_construction",
    "default_params",
    "clique_rich_subgraph",
    "verify_clique_rich",
    "layered_construction",
    "lower_bound_value",
    "escape_vertices",
    "edgecover_bound",
    "edgecover_experiment",
]

# Below this vertex count the per-pair bitset path beats the BLAS path.
MATMUL_MIN_N = 600
_BLOCK = 1024


def _check_hosted(H: Graph, G: Graph) -> None:
    if H.n != G.n:
        raise ValueError(f"vertex sets differ: {H.n} vs {G.n}")
    if not H.is_subgraph_of(G):
        raise ValueError("H is not an edgewise subgraph of the host G")


def completes_pair(H: Graph, u: int, v: int, s: int) -> bool:
    """True iff adding the missing edge uv to H creates a new K_s,
    i.e. the common neighborhood of u and v holds a K_{s-2} of H."""
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    if u == v:
        raise ValueError("u and v must differ")
    if H.has_edge(u, v):
        raise ValueError(f"({u},{v}) is already an edge of H")
    rows = H._rows
    return _find_clique_mask(rows, rows[u] & rows[v], s - 2) is not None


def _missing_edges(H: Graph, G: Graph):
    """G-edges absent from H, lexicographic."""
    for u in range(G.n):
        rest = (G._rows[u] & ~H._rows[u]) >> (u + 1)
        base = u + 1
        while rest:
            low = rest & -rest
            yield (u, base + low.bit_length() - 1)
            rest ^= low


def _missing_edge_array(H: Graph, G: Graph) -> np.ndarray:
    """G-edges absent from H as a (k, 2) int32 array, lexicographic."""
    n = G.n
    GM, HM = G.matrix(), H.matrix()
    chunks = []
    for i0 in range(0, n, _BLOCK):
        i1 = min(n, i0 + _BLOCK)
        diff = np.triu(GM[i0:i1] & ~HM[i0:i1], i0 + 1)
        idx = np.argwhere(diff).astype(np.int32)
        idx[:, 0] += i0
        chunks.append(idx)
    if not chunks:
        return np.empty((0, 2), dtype=np.int32)
    return np.concatenate(chunks)


def _no_common_neighbor_flags(H: Graph, pairs: np.ndarray) -> np.ndarray:
    """For each pair (u,v): True iff u and v share no H-neighbor.

    Blocked float32 matmul over the adjacency; exact, since the counts are
    small integers well inside float32 range.
    """
    flags = np.zeros(len(pairs), dtype=bool)
    if len(pairs) == 0:
        return flags
    n = H.n
    Hf = H.matrix().astype(np.float32)
    order = np.argsort(pairs[:, 0], kind="stable")
    u_sorted = pairs[order, 0]
    v_sorted = pairs[order, 1]
    starts = np.searchsorted(u_sorted, np.arange(0, n + 1, dtype=pairs.dtype))
    for i0 in range(0, n, _BLOCK):
        i1 = min(n, i0 + _BLOCK)
        lo, hi = starts[i0], starts[i1]
        if lo == hi:
            continue
        counts = Hf[i0:i1] @ Hf
        flags[order[lo:hi]] = counts[u_sorted[lo:hi] - i0, v_sorted[lo:hi]] < 0.5
    return flags


@dataclass
class SaturationReport:
    """Exact verdict for H inside its host: K_s-freeness plus the host
    edges missing from H that H fails to complete."""

    is_ks_free: bool
    incomplete_edges: list[tuple[int, int]]
    edge_count: int
    aux: dict | None = None

    @property
    def is_saturated(self) -> bool:
        return self.is_ks_free and not self.incomplete_edges


def is_ks_saturated(H: Graph, G: Graph, s: int) -> SaturationReport:
    """Exact saturation check: K_s-freeness via exhaustive clique search
    plus the full list of missing host edges that completes_pair rejects."""
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    _check_hosted(H, G)
    free = find_clique(H, None, s) is None
    if s == 3 and G.n >= MATMUL_MIN_N:
        miss = _missing_edge_array(H, G)
        flags = _no_common_neighbor_flags(H, miss)
        incomplete = [(int(u), int(v)) for u, v in miss[flags]]
    else:
        incomplete = [
            (u, v) for u, v in _missing_edges(H, G) if not completes_pair(H, u, v, s)
        ]
    return SaturationReport(is_ks_free=free, incomplete_edges=incomplete, edge_count=H.m)


def maximal_ks_free_extension(H: Graph, G: Graph, s: int, rng: RngHandle) -> Graph:
    """Greedy maximal K_s-free supergraph of H inside G.

    Iterates the missing host edges in rng-shuffled order, adding every
    edge that does not create a K_s. Afterwards each still-missing host
    edge completes a K_s by construction.
    """
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    _check_hosted(H, G)
    if find_clique(H, None, s) is not None:
        raise ValueError("H already contains a K_s")
    miss = _missing_edge_array(H, G)
    gen = rng.generator()
    order = gen.permutation(len(miss))
    if s == 3 and G.n >= MATMUL_MIN_N and len(miss):
        # Pairs already complete w.r.t. H stay complete (monotone), so the
        # greedy loop would skip them anyway; drop them up front.
        done = ~_no_common_neighbor_flags(H, miss)
        order = order[~done[order]]
    rows = list(H._rows)
    added = 0
    for k in order:
        u = int(miss[k, 0])
        v = int(miss[k, 1])
        if _find_clique_mask(rows, rows[u] & rows[v], s - 2) is None:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            added += 1
    return Graph._from_rows(G.n, rows, m=H.m + added)


def naive_sequential_construction(G: Graph, rng: RngHandle) -> tuple[Graph, list[int]]:
    """Sequential hub construction for triangle saturation (s = 3 only).

    Picks not-yet-picked vertices at random; the working graph is always
    the bipartite graph of host edges between picked and unpicked, which
    keeps it triangle-free. Stops once every missing host edge is
    complete. Returns (graph, picked order).
    """
    n = G.n
    gen = rng.generator()
    M = G.matrix()
    rowsG = G._rows
    pairs = G.edge_array()
    eu = pairs[:, 0].astype(np.int32)
    ev = pairs[:, 1].astype(np.int32)
    picked: list[int] = []
    picked_mask = 0
    unpicked = np.ones(n, dtype=bool)
    pp_pairs: list[tuple[int, int]] = []  # picked-picked host edges, missing from H

    def pp_all_complete() -> bool:
        free_bits = ~picked_mask & ((1 << n) - 1)
        return all(rowsG[q] & rowsG[r] & free_bits for q, r in pp_pairs)

    while (eu.size or not pp_all_complete()) and len(picked) < n:
        v = int(gen.choice(np.flatnonzero(unpicked)))
        for q in picked:
            if rowsG[q] >> v & 1:
                pp_pairs.append((q, v))
        picked.append(v)
        picked_mask |= 1 << v
        unpicked[v] = False
        if eu.size:
            row = M[v]
            keep = ~(row[eu] & row[ev]) & (eu != v) & (ev != v)
            eu, ev = eu[keep], ev[keep]

    Hm = np.zeros((n, n), dtype=bool)
    if picked and len(picked) < n:
        rest = np.flatnonzero(unpicked)
        block = M[np.ix_(picked, rest)]
        Hm[np.ix_(picked, rest)] = block
        Hm[np.ix_(rest, picked)] = block.T
    return Graph.from_matrix(Hm), picked


# -- construction parameters -------------------------------------------


@dataclass(frozen=True)
class ConstructionParams:
    """Sizes driving the layered construction.

    a1..a3 are the anchor-layer sizes; k is the color-class count of the
    induced graph on the second anchor layer (filled in from the actual
    coloring), and a4 = floor(a3 / 2k) is the bridge part size.
    """

    alpha: float
    beta: float
    a1: int
    a2: int
    a3: int
    k: int | None = None
    a4: int | None = None

    def with_colors(self, k: int) -> "ConstructionParams":
        if k < 1:
            raise ValueError("k must be positive")
        a4 = self.a3 // (2 * k)
        if a4 < 1:
            raise ValueError(
                f"a4 = floor(a3/(2k)) = floor({self.a3}/{2 * k}) < 1; "
                "bridge layer too small for this many color classes"
            )
        return replace(self, k=k, a4=a4)

    def check_against(self, n: int) -> None:
        if min(self.a1, self.a2, self.a3) < 1:
            raise ValueError("layer sizes must be at least 1")
        if self.a1 + self.a2 + self.a3 > n // 2:
            raise ValueError(
                f"a1+a2+a3 = {self.a1 + self.a2 + self.a3} exceeds n/2 = {n // 2}"
            )


def default_params(n: int, p: float, s: int = 3) -> ConstructionParams:
    """Evaluate the anchor-size formulas, rounding up and validating:

        a1 = (1/p) (1 + 3/ln(log_alpha n)) log_alpha n
        a2 = (1 + 2/ln(log_beta C(n,2))) log_beta C(n,2)
        a3 = a2 / sqrt(ln a2)

    Fails loudly at small n rather than silently distorting the layers.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly between 0 and 1")
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    if n < 100:
        raise ValueError(f"n = {n} too small; the layered construction needs n >= 100")
    alpha = 1.0 / (1.0 - p)
    beta = 1.0 / (1.0 - p * p)
    la_n = math.log(n) / math.log(alpha)
    if la_n <= 1.0:
        raise ValueError(f"a1 formula undefined: log_alpha n = {la_n:.4f} <= 1")
    a1 = math.ceil((1.0 / p) * (1.0 + 3.0 / math.log(la_n)) * la_n)
    npairs = n * (n - 1) // 2
    lb_pairs = math.log(npairs) / math.log(beta)
    if lb_pairs <= 1.0:
        raise ValueError(f"a2 formula undefined: log_beta C(n,2) = {lb_pairs:.4f} <= 1")
    a2 = math.ceil((1.0 + 2.0 / math.log(lb_pairs)) * lb_pairs)
    if a2 < 2:
        raise ValueError(f"a3 formula undefined: a2 = {a2} < 2")
    a3 = math.ceil(a2 / math.sqrt(math.log(a2)))
    params = ConstructionParams(alpha=alpha, beta=beta, a1=a1, a2=a2, a3=a3)
    params.check_against(n)
    return params


# -- locally clique-rich subgraphs -------------------------------------


@dataclass
class CliqueRichReport:
    """Verifier verdict: exact K_{s-1}-freeness plus how many checked
    induced subsets of the target size lack a K_{s-2}."""

    ks1_free: bool
    failures: int
    checked: int
    exhaustive: bool

    @property
    def ok(self) -> bool:
        return self.ks1_free and self.failures == 0


def verify_clique_rich(
    H_A: Graph, s: int, subset_size: int, samples: int, rng: RngHandle
) -> CliqueRichReport:
    """Check K_{s-1}-freeness exactly and count induced subsets of
    subset_size vertices without a K_{s-2}.

    Exhaustive over all subsets when C(n, subset_size) <= 10^6, otherwise
    over `samples` uniform subsets.
    """
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    if samples < 1:
        raise ValueError("samples must be positive")
    if subset_size > H_A.n:
        raise ValueError(f"subset_size {subset_size} exceeds vertex count {H_A.n}")
    ks1_free = find_clique(H_A, None, s - 1) is None
    rows = H_A._rows
    need = s - 2
    failures = 0
    if math.comb(H_A.n, subset_size) <= 10**6:
        checked = 0
        for subset in combinations(range(H_A.n), subset_size):
            checked += 1
            if _find_clique_mask(rows, mask_of(subset, H_A.n), need) is None:
                failures += 1
        return CliqueRichReport(ks1_free, failures, checked, exhaustive=True)
    gen = rng.generator()
    for _ in range(samples):
        subset = gen.choice(H_A.n, size=subset_size, replace=False)
        if _find_clique_mask(rows, mask_of(subset.tolist(), H_A.n), need) is None:
            failures += 1
    return CliqueRichReport(ks1_free, failures, samples, exhaustive=False)


def clique_rich_subgraph(
    G_A: Graph,
    s: int,
    subset_size: int,
    rng: RngHandle,
    restarts: int = 5,
    samples: int = 200,
) -> tuple[Graph, bool]:
    """K_{s-1}-free subgraph of G_A aiming to keep a K_{s-2} inside every
    induced subset of subset_size vertices.

    s=3 forces the empty graph (the only K_2-free graph; the K_1 condition
    is vacuous). For s >= 4 this is randomized greedy edge insertion (skip
    any edge that would create a K_{s-1}) with restarts; the bool reports
    whether the verifier accepted the returned graph. On failure the best
    attempt (fewest verifier failures) is returned with False.
    """
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    if s == 3:
        return Graph.empty(G_A.n), True
    edges = list(G_A.edges())
    best: tuple[int, Graph] | None = None
    for attempt in range(restarts):
        gen = rng.child(attempt).generator()
        order = gen.permutation(len(edges))
        rows = [0] * G_A.n
        m = 0
        for k in order:
            u, v = edges[k]
            if _find_clique_mask(rows, rows[u] & rows[v], s - 3) is None:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                m += 1
        cand = Graph._from_rows(G_A.n, rows, m=m)
        report = verify_clique_rich(
            cand, s, subset_size, samples, rng.child(restarts + attempt)
        )
        if report.ok:
            return cand, True
        if best is None or report.failures < best[0]:
            best = (report.failures, cand)
    assert best is not None
    return best[1], False


# -- the layered construction -------------------------------------------


@dataclass(frozen=True)
class LayeredPartition:
    """Vertex layers of the construction: three anchor sets whose incident
    edges do the completing, the remaining bulk, and the bulk split into
    vertices poorly connected to the first anchor set versus the rest."""

    anchors1: frozenset[int]
    anchors2: frozenset[int]
    anchors3: frozenset[int]
    rest: frozenset[int]
    rest_weak: frozenset[int]
    rest_strong: frozenset[int]

    def validate(self, n: int) -> None:
        parts = [self.anchors1, self.anchors2, self.anchors3, self.rest]
        union: set[int] = set()
        size = 0
        for part in parts:
            union |= part
            size += len(part)
        if size != len(union) or union != set(range(n)):
            raise ValueError("anchor sets and rest must partition the vertices")
        if not self.rest_weak <= self.rest:
            raise ValueError("rest_weak must be a subset of rest")
        if self.rest_strong != self.rest - self.rest_weak:
            raise ValueError("rest_strong must equal rest minus rest_weak")


def _core_subset_size(a: int, s: int) -> int:
    if a < 2:
        return 1
    return min(a, max(s - 2, math.ceil(a / math.log(a) ** 3)))


def layered_construction(
    G: Graph, p: float, s: int, params: ConstructionParams, rng: RngHandle
) -> tuple[Graph, LayeredPartition, SaturationReport]:
    """Three-layer saturated-subgraph construction plus a greedy finish.

    1. anchors1 gets a clique-rich core; all host edges anchors1-rest join.
    2. rest vertices with fewer than (1 + 2/ln(log_alpha n)) log_alpha n
       anchors1-neighbors form rest_weak; a second core on anchors2
       attaches to exactly those.
    3. anchors2 is greedily colored into k classes; anchors3 splits into
       2k parts of size a4, and one part (with its own core) attaches to
       each color class plus rest_strong.
    4. The union is finished by a maximal K_s-free extension over the
       remaining incomplete host edges.

    The returned report is the exact saturation check of the final graph;
    its aux dict records the weak-bulk size, incomplete-pair counts after
    stages 1 and 3, core verification failures, and the pre-extension
    edge count and K_s-freeness.
    """
    n = G.n
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly between 0 and 1")
    if abs(1.0 / (1.0 - p) - params.alpha) > 1e-9 * params.alpha:
        raise ValueError("params.alpha does not match the supplied p")
    params.check_against(n)
    a1, a2, a3 = params.a1, params.a2, params.a3
    A1 = list(range(a1))
    A2 = list(range(a1, a1 + a2))
    A3 = list(range(a1 + a2, a1 + a2 + a3))
    B1 = list(range(a1 + a2 + a3, n))
    GM = G.matrix()
    Hm = np.zeros((n, n), dtype=bool)
    flags: list[str] = []

    def attach_core(vertices: list[int], core: Graph) -> None:
        for u, v in core.edges():
            gu, gv = vertices[u], vertices[v]
            Hm[gu, gv] = Hm[gv, gu] = True

    def attach_bipartite(left: list[int], right: list[int]) -> None:
        if not left or not right:
            return
        block = GM[np.ix_(left, right)]
        Hm[np.ix_(left, right)] = block
        Hm[np.ix_(right, left)] = block.T

    # Stage 1: first anchor layer.
    core1, ok1 = clique_rich_subgraph(G.induced(A1), s, _core_subset_size(a1, s), rng.child(1))
    if not ok1:
        flags.append("anchors1")
    attach_core(A1, core1)
    attach_bipartite(A1, B1)

    # Split the bulk by anchors1-degree.
    la_n = math.log(n) / math.log(params.alpha)
    threshold = (1.0 + 2.0 / math.log(la_n)) * la_n
    degs = GM[np.ix_(B1, A1)].sum(axis=1)
    weak_sel = degs < threshold
    B2 = [B1[i] for i in np.flatnonzero(weak_sel)]
    B3 = [B1[i] for i in np.flatnonzero(~weak_sel)]

    rest_pairs_incomplete = _count_incomplete_bulk_pairs(GM, core1, A1, B1, weak_sel, s)

    # Stage 2: second anchor layer attached to the weak bulk.
    core2, ok2 = clique_rich_subgraph(G.induced(A2), s, _core_subset_size(a2, s), rng.child(2))
    if not ok2:
        flags.append("anchors2")
    attach_core(A2, core2)
    attach_bipartite(A2, B2)

    # Stage 3: color the second layer and bridge it to the strong bulk.
    # Greedy quality swings with the vertex order and a4 >= 1 needs
    # 2k <= a3, so try several orders and keep the fewest classes.
    G_A2 = G.induced(A2)
    gen3 = rng.child(3).generator()
    orders = [
        sorted(range(a2), key=lambda v: (-G_A2.degree(v), v)),
        sorted(range(a2), key=lambda v: (G_A2.degree(v), v)),
        list(range(a2)),
    ]
    orders.extend(gen3.permutation(a2).tolist() for _ in range(5))
    classes_local = min((greedy_coloring(G_A2, o) for o in orders), key=len)
    k = len(classes_local)
    params = params.with_colors(k)
    a4 = params.a4
    assert a4 is not None
    parts = [A3[i * a4 : (i + 1) * a4] for i in range(2 * k)]
    verified: list[tuple[list[int], Graph]] = []
    fallback: list[tuple[list[int], Graph]] = []
    for i, part in enumerate(parts):
        if len(verified) == k:
            break
        core, ok = clique_rich_subgraph(G.induced(part), s, _core_subset_size(a4, s), rng.child(10 + i))
        if ok:
            verified.append((part, core))
        else:
            fallback.append((part, core))
    while len(verified) < k and fallback:
        verified.append(fallback.pop(0))
        flags.append(f"anchors3-part{len(verified) - 1}")
    for i, (part, core) in enumerate(verified):
        class_i = sorted(A2[j] for j in classes_local[i])
        attach_core(part, core)
        attach_bipartite(part, class_i + B3)

    union = Graph.from_matrix(Hm)
    pre_free = find_clique(union, None, s) is None
    bridge_incomplete = _count_incomplete_bridge_edges(union, GM, A2, B3, s)

    final = maximal_ks_free_extension(union, G, s, rng.child(4))
    report = is_ks_saturated(final, G, s)
    report.aux = {
        "rest_weak_size": len(B2),
        "incomplete_rest_pairs": rest_pairs_incomplete,
        "incomplete_bridge_edges": bridge_incomplete,
        "core_failures": tuple(flags),
        "pre_extension_edges": union.m,
        "pre_extension_ks_free": pre_free,
        "color_classes": k,
    }
    partition = LayeredPartition(
        anchors1=frozenset(A1),
        anchors2=frozenset(A2),
        anchors3=frozenset(A3),
        rest=frozenset(B1),
        rest_weak=frozenset(B2),
        rest_strong=frozenset(B3),
    )
    return final, partition, report


def _count_incomplete_bulk_pairs(
    GM: np.ndarray,
    core1: Graph,
    A1: list[int],
    B1: list[int],
    weak_sel: np.ndarray,
    s: int,
) -> int:
    """Pairs inside the bulk, not induced by the weak bulk, that stage 1
    fails to complete. Common neighbors necessarily lie in anchors1."""
    nb = len(B1)
    if nb == 0:
        return 0
    if s == 3:
        Bf = GM[np.ix_(B1, A1)].astype(np.float32)
        count = 0
        for i0 in range(0, nb, _BLOCK):
            i1 = min(nb, i0 + _BLOCK)
            counts = Bf[i0:i1] @ Bf.T
            none = counts < 0.5
            both_weak = weak_sel[i0:i1, None] & weak_sel[None, :]
            upper = np.arange(nb)[None, :] > np.arange(i0, i1)[:, None]
            count += int((none & ~both_weak & upper).sum())
        return count
    # General s: per-pair search for a K_{s-2} of the stage-1 core inside
    # the shared anchors1 neighborhood (local anchor coordinates).
    block = GM[np.ix_(B1, A1)]
    packed = np.packbits(block, axis=1, bitorder="little")
    masks = [int.from_bytes(packed[i].tobytes(), "little") for i in range(nb)]
    rows = core1._rows
    count = 0
    for i in range(nb):
        mi = masks[i]
        wi = weak_sel[i]
        for j in range(i + 1, nb):
            if wi and weak_sel[j]:
                continue
            if _find_clique_mask(rows, mi & masks[j], s - 2) is None:
                count += 1
    return count


def _count_incomplete_bridge_edges(
    union: Graph, GM: np.ndarray, A2: list[int], B3: list[int], s: int
) -> int:
    """Host edges between anchors2 and the strong bulk that the assembled
    union does not complete."""
    rows = union._rows
    count = 0
    for w in A2:
        row_w = rows[w]
        adj = GM[w]
        for b in B3:
            if adj[b] and not union.has_edge(w, b):
                if _find_clique_mask(rows, row_w & rows[b], s - 2) is None:
                    count += 1
    return count


# -- closed forms and experiments ---------------------------------------


def lower_bound_value(n: int, p: float) -> float:
    """n log_alpha n - 6 n log_alpha log_alpha n; may be negative at small
    n and is returned as-is."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly between 0 and 1")
    if n < 2:
        raise ValueError("n must be at least 2")
    log_alpha = math.log(1.0 / (1.0 - p))
    la_n = math.log(n) / log_alpha
    factor = la_n - 6.0 * (math.log(la_n) / log_alpha)
    try:
        return float(n) * factor
    except OverflowError:
        return math.inf if factor > 0 else -math.inf


def escape_vertices(G: Graph, x: int, Q) -> set[int]:
    """Vertices adjacent to x but neither members of Q nor adjacent to any
    vertex of Q."""
    if x in Q:
        raise ValueError("x must not belong to Q")
    mask = G._rows[x] & ~mask_of(Q, G.n)
    for q in Q:
        mask &= ~G._rows[q]
    return set(bits_of(mask))


def edgecover_bound(a: int, p: float) -> float:
    """(1 - p^2) ** (a - a/ln a): bound on the expected fraction of bulk
    pairs a size-a anchor set fails to complete."""
    if a < 3:
        raise ValueError("a must be at least 3")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    return (1.0 - p * p) ** (a - a / math.log(a))


def edgecover_experiment(a: int, p: float, s: int, num_pairs: int, rng: RngHandle) -> float:
    """Measured fraction of sampled bulk pairs that a size-a anchor set
    fails to complete.

    The anchor side carries a clique-rich core (empty for s=3, where the
    K_1 condition holds vacuously); anchor-bulk edges are Bernoulli(p);
    the first num_pairs lexicographic bulk pairs are tested for a K_{s-2}
    in their shared anchor neighborhood.
    """
    if a < 3:
        raise ValueError("a must be at least 3")
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    if num_pairs < 1:
        raise ValueError("num_pairs must be positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    b = 2
    while b * (b - 1) // 2 < num_pairs:
        b += 1
    if s == 3:
        inner = Graph.empty(a)
    else:
        host = gnp_generate(a, p, rng.child(1))
        subset = max(s - 2, math.ceil(a / math.log(a) ** 2))
        inner, _ = clique_rich_subgraph(host, s, subset, rng.child(2))
    gen = rng.generator()
    draws = gen.random((b, a)) < p
    packed = np.packbits(draws, axis=1, bitorder="little")
    bulk_masks = [int.from_bytes(packed[i].tobytes(), "little") for i in range(b)]
    rows = inner._rows
    need = s - 2
    incomplete = 0
    seen = 0
    for i, j in combinations(range(b), 2):
        if seen == num_pairs:
            break
        seen += 1
        if _find_clique_mask(rows, bulk_masks[i] & bulk_masks[j], need) is None:
            incomplete += 1
    return incomplete / num_pairs
