"""Weak K_s-saturation: bootstrap closure, the two goodness properties,
the closed-form minimum, and the constructive minimum subgraph."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import Graph, _find_clique_mask, bits_of, find_clique, mask_of
from .rng import RngHandle

__all__ = [
    "ClosureTrace",
    "WeakSatTrace",
    "WeakSatStageError",
    "GoodnessReport",
    "bootstrap_closure",
    "is_weakly_saturated",
    "gamma_constant",
    "check_p1",
    "check_p2",
    "wsat_formula",
    "construct_weak_sat",
    "strongly_saturated_in_kn",
]


@dataclass
class ClosureTrace:
    """Edge-addition order of a bootstrap closure: each step is the added
    edge plus the vertex set of the new K_s it created (s vertices,
    containing both endpoints, fully present at the moment of addition)."""

    s: int
    steps: list[tuple[tuple[int, int], frozenset[int]]]


def _check_hosted(H: Graph, G: Graph) -> None:
    if H.n != G.n:
        raise ValueError(f"vertex sets differ: {H.n} vs {G.n}")
    if not H.is_subgraph_of(G):
        raise ValueError("H is not an edgewise subgraph of the host G")


def bootstrap_closure(
    H: Graph, G: Graph, s: int, rng: RngHandle | None = None
) -> tuple[Graph, ClosureTrace]:
    """Repeatedly add any missing host edge whose addition creates a new
    K_s, until no edge qualifies.

    The fixpoint is independent of the addition order (the process is
    monotone); the optional rng only shuffles the scan order, which the
    trace records for auditing.
    """
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    _check_hosted(H, G)
    missing = []
    for u in range(G.n):
        rest = (G._rows[u] & ~H._rows[u]) >> (u + 1)
        for w in bits_of(rest):
            missing.append((u, u + 1 + w))
    if rng is not None:
        gen = rng.generator()
        order = gen.permutation(len(missing))
        missing = [missing[i] for i in order]
    rows = list(H._rows)
    steps: list[tuple[tuple[int, int], frozenset[int]]] = []
    added = 0
    progress = True
    while progress:
        progress = False
        leftover = []
        for u, v in missing:
            witness = _find_clique_mask(rows, rows[u] & rows[v], s - 2)
            if witness is None:
                leftover.append((u, v))
            else:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                added += 1
                steps.append(((u, v), frozenset(bits_of(witness)) | {u, v}))
                progress = True
        missing = leftover
    return Graph._from_rows(G.n, rows, m=H.m + added), ClosureTrace(s=s, steps=steps)


def is_weakly_saturated(H: Graph, G: Graph, s: int) -> bool:
    """True iff H is K_s-free (exact) and its bootstrap closure in G is
    all of G."""
    if find_clique(H, None, s) is not None:
        return False
    closed, _ = bootstrap_closure(H, G, s)
    return closed == G


def gamma_constant(p: float, t: int) -> float:
    """Density constant p^C(2t,2) / 4t used for goodness at scale t."""
    if not 0.0 < p <= 1.0:
        raise ValueError("p must lie in (0, 1]")
    if t < 1:
        raise ValueError("t must be positive")
    return p ** math.comb(2 * t, 2) / (4 * t)


@dataclass
class GoodnessReport:
    ok: bool
    checked: int
    failures: int
    violation: tuple | None = None


def check_p1(
    G: Graph,
    t: int,
    gamma: float,
    mode: str = "sampled",
    rng: RngHandle | None = None,
    samples: int = 200,
) -> GoodnessReport:
    """Packing property: every vertex set X with |X| <= t must admit
    ceil(gamma*n) disjoint clique extensions of every size y <= t.

    Exhaustive mode visits all (X, y); it refuses when the number of X
    choices exceeds 10^7. Sampled mode draws (X, y) uniformly.
    """
    from .graph import disjoint_clique_extensions

    n = G.n
    if t > n:
        raise ValueError("t exceeds the vertex count")
    need = math.ceil(gamma * n)
    if mode == "exhaustive":
        total = sum(math.comb(n, x) for x in range(t + 1))
        if total > 10**7:
            raise ValueError(f"exhaustive mode refused: {total} candidate sets exceed 10^7")
        from itertools import combinations

        checked = 0
        for x in range(t + 1):
            for X in combinations(range(n), x):
                for y in range(1, t + 1):
                    checked += 1
                    got = disjoint_clique_extensions(G, X, y, need)
                    if len(got) < need:
                        return GoodnessReport(False, checked, 1, (tuple(X), y))
        return GoodnessReport(True, checked, 0)
    if mode != "sampled":
        raise ValueError("mode must be 'exhaustive' or 'sampled'")
    if rng is None:
        raise ValueError("sampled mode needs an rng")
    gen = rng.generator()
    for i in range(samples):
        x = int(gen.integers(0, t + 1))
        X = tuple(int(v) for v in gen.choice(n, size=x, replace=False))
        y = int(gen.integers(1, t + 1))
        got = disjoint_clique_extensions(G, X, y, need)
        if len(got) < need:
            return GoodnessReport(False, i + 1, 1, (X, y))
    return GoodnessReport(True, samples, 0)


def check_p2(
    G: Graph, t: int, gamma: float, samples: int, rng: RngHandle
) -> GoodnessReport:
    """Bridging property: for random disjoint sets S, T of size
    ceil(gamma*n/2), some v in T must form a t-clique with t-1 vertices
    of S."""
    n = G.n
    size = math.ceil(gamma * n / 2)
    if size < t:
        raise ValueError(f"ceil(gamma*n/2) = {size} below t = {t}")
    if 2 * size > n:
        raise ValueError("gamma too large: cannot draw disjoint S and T")
    gen = rng.generator()
    rows = G._rows
    failures = 0
    for _ in range(samples):
        both = gen.choice(n, size=2 * size, replace=False)
        S, T = both[:size], both[size:]
        s_mask = mask_of((int(v) for v in S), n)
        hit = False
        for v in T:
            if _find_clique_mask(rows, rows[int(v)] & s_mask, t - 1) is not None:
                hit = True
                break
        if not hit:
            failures += 1
    return GoodnessReport(failures == 0, samples, failures)


def wsat_formula(n: int, s: int) -> int:
    """(s-2) n - C(s-1, 2): the weak saturation minimum for cliques."""
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    if n < s - 1:
        raise ValueError(f"n = {n} below s-1 = {s - 1}")
    value = (s - 2) * n - math.comb(s - 1, 2)
    assert value == math.comb(n, 2) - math.comb(n - s + 2, 2)
    return value


class WeakSatStageError(RuntimeError):
    """Construction obstruction: names the stage that failed (the instance
    is not good enough, which can happen at small n)."""

    def __init__(self, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail


@dataclass
class WeakSatTrace:
    """Base clique, the vertices adjacent to all of it, and the per-vertex
    attachment cliques, in processing order."""

    base: frozenset[int]
    base_cone: frozenset[int]
    steps: list[tuple[int, frozenset[int]]]


def construct_weak_sat(G: Graph, s: int, rng: RngHandle) -> tuple[Graph, WeakSatTrace]:
    """Build the minimum weakly K_s-saturated subgraph of G.

    Takes a base (s-2)-clique C, keeps every edge touching C into the cone
    V' of vertices adjacent to all of C, then attaches each remaining
    vertex (rng order) to an (s-2)-clique inside its neighborhood in V'.
    Success yields exactly wsat_formula(n, s) edges; obstructions raise
    WeakSatStageError naming the stage.
    """
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    n = G.n
    base = find_clique(G, None, s - 2)
    if base is None:
        raise WeakSatStageError("base-clique", f"no K_{s - 2} in the host graph")
    base_mask = mask_of(base, n)
    cone_mask = G.full_mask() & ~base_mask
    for b in base:
        cone_mask &= G._rows[b]
    rows = [0] * n
    for b in base:
        keep = G._rows[b] & (base_mask | cone_mask)
        rows[b] |= keep
        for w in bits_of(keep):
            rows[w] |= 1 << b
    m = sum(r.bit_count() for r in rows) // 2
    outside = [v for v in range(n) if not (base_mask | cone_mask) >> v & 1]
    gen = rng.generator()
    order = [outside[i] for i in gen.permutation(len(outside))] if outside else []
    steps: list[tuple[int, frozenset[int]]] = []
    for v in order:
        attach = _find_clique_mask(G._rows, G._rows[v] & cone_mask, s - 2)
        if attach is None:
            raise WeakSatStageError(
                "attachment-search",
                f"vertex {v} has no (s-2)-clique extension inside the base cone",
            )
        for w in bits_of(attach):
            rows[v] |= 1 << w
            rows[w] |= 1 << v
        m += s - 2
        steps.append((v, frozenset(bits_of(attach))))
    H = Graph._from_rows(n, rows, m=m)
    assert H.m == wsat_formula(n, s), "edge count must match the closed form"
    if find_clique(H, None, s) is not None:
        raise WeakSatStageError("freeness-check", "constructed graph contains a K_s")
    trace = WeakSatTrace(
        base=frozenset(base),
        base_cone=frozenset(bits_of(cone_mask)),
        steps=steps,
    )
    return H, trace


def strongly_saturated_in_kn(G: Graph, s: int) -> bool:
    """True iff every non-adjacent vertex pair of G has a clique extension
    of size s-2, i.e. adding any missing pair to G creates a K_s (G viewed
    inside the complete host). This certifies the weak-saturation lower
    bound for G."""
    if s < 3:
        raise ValueError("clique size s must be at least 3")
    rows = G._rows
    full = G.full_mask()
    for u in range(G.n):
        non_adj = full & ~rows[u] & ~((1 << (u + 1)) - 1)
        for v in bits_of(non_adj):
            if _find_clique_mask(rows, rows[u] & rows[v], s - 2) is None:
                return False
    return True
