"""One-player decision procedures: threshold and interval constraints.

When a single controller owns every vertex, a strategy is just a play, so
deciding whether some play meets payoff constraints reduces to graph
analysis: reachability and cycle search for the Boolean and
sup/inf/limsup/liminf families, maximum mean cycles for mean payoff, policy
iteration for discounted sums.  The same machinery runs on product graphs
(arena times strategy memories), which is how best responses and strategy
certification are computed elsewhere; graphs therefore carry a projection
back to arena vertices for objective evaluation.

Exactness contract: all values are :class:`fractions.Fraction` and every
returned witness evaluates exactly inside the requested bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

from .arena import (Arena, ArenaError, Lasso, enumerate_simple_lassos,
                    reachable_from, strongly_connected_components)
from .graphs import bfs_path, component_tour, cycle_through, cycle_with_edge, \
    eulerian_circuit
from .objectives import (Buchi, CoBuchi, Muller, Objective, Parity, Rabin,
                         Reachability, Safety, Streett, complement)
from .payoffs import (BooleanPayoff, Discounted, Inf, LimInf, LimSup,
                      MeanPayoffInf, MeanPayoffSup, PayoffSpec, Sup,
                      payoff_of_lasso)

V = Hashable
Edge = tuple[int, int]


class BudgetExceededError(RuntimeError):
    """An exponential search ran out of its node budget."""


@dataclass(frozen=True)
class Digraph:
    """A finite total digraph with optional edge weights and a vertex
    projection used to evaluate arena-level objectives on product graphs."""

    vertices: tuple
    succ: Callable[[V], Iterable[V]]
    weight: Callable[[V, V], Fraction] | None = None
    project: Callable[[V], int] = staticmethod(lambda v: v)

    @staticmethod
    def of_arena(arena: Arena, weight_profile: int | None = None) -> "Digraph":
        weight = None
        if weight_profile is not None:
            if not arena.has_weights(weight_profile):
                raise ArenaError(f"arena has no weight function {weight_profile}")
            table = arena.weights[weight_profile]
            weight = lambda u, v: table[(u, v)]
        return Digraph(vertices=tuple(arena.vertices()),
                       succ=arena.successors, weight=weight)

    def edges(self):
        for v in self.vertices:
            for u in self.succ(v):
                yield (v, u)


def _restricted_succ(dg: Digraph, edge_ok: Callable[[V, V], bool]):
    return lambda v: [u for u in dg.succ(v) if edge_ok(v, u)]


def _cyclic_comps(vertices, succ) -> list[list]:
    """SCCs able to host a play tail, in successors-first order."""
    out = []
    for comp in strongly_connected_components(vertices, succ):
        if len(comp) > 1 or comp[0] in succ(comp[0]):
            out.append(comp)
    return out


def _core_and_alive(vertices, succ) -> tuple[set, set]:
    """Vertices on cycles of the subgraph, and vertices reaching them inside
    the subgraph (i.e. admitting an infinite continuation)."""
    core: set = set()
    for comp in _cyclic_comps(vertices, succ):
        core.update(comp)
    vset = set(vertices)
    preds: dict = {}
    for v in vset:
        for u in succ(v):
            if u in vset:
                preds.setdefault(u, []).append(v)
    alive = set(core)
    todo = list(core)
    while todo:
        v = todo.pop()
        for p in preds.get(v, ()):
            if p not in alive:
                alive.add(p)
                todo.append(p)
    return core, alive


def _reach_up(dg: Digraph, targets: set) -> set:
    """Vertices from which a target is reachable in the full graph."""
    preds: dict = {}
    for v in dg.vertices:
        for u in dg.succ(v):
            preds.setdefault(u, []).append(v)
    seen = set(targets)
    todo = list(targets)
    while todo:
        v = todo.pop()
        for p in preds.get(v, ()):
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def _distinct_weights(dg: Digraph) -> list[Fraction]:
    return sorted({dg.weight(u, v) for (u, v) in dg.edges()})


# ---------------------------------------------------------------------------
# Maximum / minimum mean cycles (Karp)


def max_mean_cycle(edges: Mapping[Edge, Fraction],
                   vertices: Iterable[int] | None = None) -> tuple[Fraction, list[int]]:
    """Cycle of maximum average weight, with its exact rational mean.

    Vertices lying on no cycle are ignored.  Raises :class:`ArenaError` when
    the graph has no cycle at all.
    """
    weights = {(u, v): Fraction(w) for (u, v), w in edges.items()}
    verts = set(vertices) if vertices is not None else set()
    for (u, v) in weights:
        verts.add(u)
        verts.add(v)
    adj: dict[V, list[V]] = {v: [] for v in verts}
    for (u, v) in weights:
        adj[u].append(v)
    for v in adj:
        adj[v].sort()
    succ = lambda v: adj.get(v, [])

    best: tuple[Fraction, list] | None = None
    for comp in _cyclic_comps(sorted(verts), succ):
        val, cyc = _karp_max(comp, adj, weights)
        if best is None or val > best[0]:
            best = (val, cyc)
    if best is None:
        raise ArenaError("graph has no cycle")
    return best


def min_mean_cycle(edges: Mapping[Edge, Fraction],
                   vertices: Iterable[int] | None = None) -> tuple[Fraction, list[int]]:
    neg = {e: -Fraction(w) for e, w in edges.items()}
    val, cyc = max_mean_cycle(neg, vertices)
    return -val, cyc


def _karp_max(comp: list, adj: Mapping[V, list[V]],
              weights: Mapping[Edge, Fraction]) -> tuple[Fraction, list]:
    cset = set(comp)
    n = len(comp)
    s = comp[0]
    dist: list[dict] = [{s: Fraction(0)}]
    pred: list[dict] = [{}]
    for k in range(1, n + 1):
        dk: dict = {}
        pk: dict = {}
        for u in sorted(dist[k - 1]):
            du = dist[k - 1][u]
            for v in adj[u]:
                if v not in cset:
                    continue
                cand = du + weights[(u, v)]
                if v not in dk or cand > dk[v]:
                    dk[v] = cand
                    pk[v] = u
        dist.append(dk)
        pred.append(pk)

    best_val: Fraction | None = None
    best_v = None
    for v in comp:
        if v not in dist[n]:
            continue
        m = min((dist[n][v] - dist[k][v]) / (n - k)
                for k in range(n) if v in dist[k])
        if best_val is None or m > best_val:
            best_val, best_v = m, v
    assert best_val is not None

    # Trace the optimal n-edge walk back; any vertex repeat on it bounds a
    # cycle whose mean is exactly the maximum.
    chain = [best_v]
    for k in range(n, 0, -1):
        chain.append(pred[k][chain[-1]])
    chain.reverse()
    first: dict = {}
    for j, v in enumerate(chain):
        if v in first:
            return best_val, chain[first[v]:j]
        first[v] = j
    raise AssertionError("no repeat on a walk longer than the component")


# ---------------------------------------------------------------------------
# Per-vertex one-player optimal values, per payoff family


def _condensation_best(dg: Digraph, intra: Callable[[list], Fraction | None],
                       cross_edges: bool, maximize: bool) -> dict:
    """Optimum over the reachable structure via DP on the condensation.

    ``intra`` values a component (None when it offers nothing, e.g. a trivial
    SCC); with ``cross_edges`` the weights of traversed inter-component edges
    compete as well (Sup/Inf semantics).
    """
    comps = strongly_connected_components(dg.vertices, dg.succ)
    comp_of: dict = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    better = max if maximize else min
    val: list[Fraction | None] = [None] * len(comps)
    for i, comp in enumerate(comps):  # successors-first order
        candidates: list[Fraction] = []
        own = intra(comp)
        if own is not None:
            candidates.append(own)
        cset = set(comp)
        for v in comp:
            for u in dg.succ(v):
                if u in cset:
                    if cross_edges:
                        candidates.append(dg.weight(v, u))
                    continue
                sub = val[comp_of[u]]
                assert sub is not None, "condensation order violated"
                if cross_edges:
                    sub = better(sub, dg.weight(v, u))
                candidates.append(sub)
        assert candidates, "total graph must offer a continuation"
        val[i] = better(candidates)
    return {v: val[comp_of[v]] for v in dg.vertices}


def _threshold_scan(dg: Digraph, thresholds: list[Fraction],
                    qualifies: Callable[[Fraction], set]) -> dict:
    """First threshold (in the given order) whose qualifying set contains
    each vertex."""
    out: dict = {}
    for t in thresholds:
        good = qualifies(t)
        for v in dg.vertices:
            if v not in out and v in good:
                out[v] = t
    missing = [v for v in dg.vertices if v not in out]
    assert not missing, f"vertices without value: {missing!r}"
    return out


def _intra_extreme(dg: Digraph, comp: list, maximize: bool) -> Fraction | None:
    cset = set(comp)
    ws = [dg.weight(v, u) for v in comp for u in dg.succ(v) if u in cset]
    if not ws:
        return None
    return max(ws) if maximize else min(ws)


def sup_values(dg: Digraph, maximize: bool) -> dict:
    if maximize:
        return _condensation_best(dg, lambda c: _intra_extreme(dg, c, True),
                                  cross_edges=True, maximize=True)

    def alive_leq(t: Fraction) -> set:
        succ = _restricted_succ(dg, lambda u, v: dg.weight(u, v) <= t)
        return _core_and_alive(dg.vertices, succ)[1]

    return _threshold_scan(dg, _distinct_weights(dg), alive_leq)


def inf_values(dg: Digraph, maximize: bool) -> dict:
    if not maximize:
        return _condensation_best(dg, lambda c: _intra_extreme(dg, c, False),
                                  cross_edges=True, maximize=False)

    def alive_geq(t: Fraction) -> set:
        succ = _restricted_succ(dg, lambda u, v: dg.weight(u, v) >= t)
        return _core_and_alive(dg.vertices, succ)[1]

    return _threshold_scan(dg, _distinct_weights(dg)[::-1], alive_geq)


def limsup_values(dg: Digraph, maximize: bool) -> dict:
    if maximize:
        return _condensation_best(dg, lambda c: _intra_extreme(dg, c, True),
                                  cross_edges=False, maximize=True)

    def reach_cycle_leq(t: Fraction) -> set:
        succ = _restricted_succ(dg, lambda u, v: dg.weight(u, v) <= t)
        core, _ = _core_and_alive(dg.vertices, succ)
        return _reach_up(dg, core)

    return _threshold_scan(dg, _distinct_weights(dg), reach_cycle_leq)


def liminf_values(dg: Digraph, maximize: bool) -> dict:
    if not maximize:
        return _condensation_best(dg, lambda c: _intra_extreme(dg, c, False),
                                  cross_edges=False, maximize=False)

    def reach_cycle_geq(t: Fraction) -> set:
        succ = _restricted_succ(dg, lambda u, v: dg.weight(u, v) >= t)
        core, _ = _core_and_alive(dg.vertices, succ)
        return _reach_up(dg, core)

    return _threshold_scan(dg, _distinct_weights(dg)[::-1], reach_cycle_geq)


def mp_values(dg: Digraph, maximize: bool) -> dict:
    def mean(comp: list) -> Fraction | None:
        cset = set(comp)
        edges = {(v, u): dg.weight(v, u)
                 for v in comp for u in dg.succ(v) if u in cset}
        if not edges:
            return None
        return (max_mean_cycle if maximize else min_mean_cycle)(edges, comp)[0]

    return _condensation_best(dg, mean, cross_edges=False, maximize=maximize)


def disc_values(dg: Digraph, lam: Fraction,
                maximize: bool) -> tuple[dict, dict]:
    """Optimal discounted values with an optimal positional policy.

    Policy iteration with exact rational policy evaluation; the result is
    checked against the Bellman optimality equations before returning.
    """
    lam = Fraction(lam)
    better = (lambda a, b: a > b) if maximize else (lambda a, b: a < b)
    policy = {v: sorted(dg.succ(v))[0] for v in dg.vertices}
    while True:
        vals = _disc_evaluate(dg, lam, policy)
        changed = False
        for v in sorted(dg.vertices):
            current = dg.weight(v, policy[v]) + lam * vals[policy[v]]
            best_u, best_val = policy[v], current
            for u in sorted(dg.succ(v)):
                cand = dg.weight(v, u) + lam * vals[u]
                if better(cand, best_val):
                    best_u, best_val = u, cand
            if best_u != policy[v]:
                policy[v] = best_u
                changed = True
        if not changed:
            break
    for v in dg.vertices:
        opts = [dg.weight(v, u) + lam * vals[u] for u in dg.succ(v)]
        want = max(opts) if maximize else min(opts)
        assert vals[v] == want, "policy iteration left a Bellman violation"
    return vals, policy


def _disc_evaluate(dg: Digraph, lam: Fraction, policy: dict) -> dict:
    """Exact discounted value of the deterministic walk induced by a
    positional policy, for every start vertex."""
    vals: dict = {}
    for start in dg.vertices:
        if start in vals:
            continue
        path = [start]
        pos = {start: 0}
        while True:
            nxt = policy[path[-1]]
            if nxt in vals:
                acc = vals[nxt]
                break
            if nxt in pos:
                cyc = path[pos[nxt]:]
                csum = Fraction(0)
                power = Fraction(1)
                for v in cyc:
                    csum += dg.weight(v, policy[v]) * power
                    power *= lam
                cur = csum / (1 - lam ** len(cyc))
                for v in cyc:
                    vals[v] = cur
                    cur = (cur - dg.weight(v, policy[v])) / lam
                acc = vals[cyc[0]]
                path = path[:pos[nxt]]
                break
            pos[nxt] = len(path)
            path.append(nxt)
        for v in reversed(path):
            acc = dg.weight(v, policy[v]) + lam * acc
            vals[v] = acc
    return vals


def optimal_quantitative(dg: Digraph, spec: PayoffSpec, maximize: bool) -> dict:
    """Per-vertex optimal payoff when one controller owns every vertex."""
    if isinstance(spec, Sup):
        return sup_values(dg, maximize)
    if isinstance(spec, Inf):
        return inf_values(dg, maximize)
    if isinstance(spec, LimSup):
        return limsup_values(dg, maximize)
    if isinstance(spec, LimInf):
        return liminf_values(dg, maximize)
    if isinstance(spec, (MeanPayoffSup, MeanPayoffInf)):
        return mp_values(dg, maximize)
    if isinstance(spec, Discounted):
        return disc_values(dg, spec.lam, maximize)[0]
    raise ArenaError(f"no one-player optimisation for {type(spec).__name__}")


# ---------------------------------------------------------------------------
# Boolean witness search (non-emptiness)


def _walk_to_lasso(dg: Digraph, seq: list,
                   succ=None, keep: set | None = None) -> tuple[list, list]:
    """Extend a walk with lowest successors until a vertex repeats; split at
    the repeat into (prefix, cycle).  The continuation may be restricted to a
    subgraph and a set of vertices that admit a continuation there."""
    succ = succ or dg.succ
    seq = list(seq)
    pos: dict = {}
    for i, v in enumerate(seq):
        if v in pos:
            return seq[:pos[v]], seq[pos[v]:i]
        pos[v] = i
    while True:
        options = [u for u in succ(seq[-1]) if keep is None or u in keep]
        nxt = sorted(options)[0]
        if nxt in pos:
            return seq[:pos[nxt]], seq[pos[nxt]:]
        pos[nxt] = len(seq)
        seq.append(nxt)


def _reachable_cyclic(dg: Digraph, reach: set) -> list[list]:
    comps = _cyclic_comps(sorted(reach),
                          lambda v: [u for u in dg.succ(v) if u in reach])
    return sorted(comps, key=min)


def boolean_witness(dg: Digraph, objective: Objective,
                    v0) -> tuple[list, list] | None:
    """A (prefix, cycle) walk from ``v0`` whose projected play satisfies the
    objective, or None if no play does."""
    proj = dg.project
    if isinstance(objective, Reachability):
        path = bfs_path(v0, dg.succ, lambda v: proj(v) in objective.targets)
        if path is None:
            return None
        return _walk_to_lasso(dg, path)
    if isinstance(objective, Safety):
        if proj(v0) in objective.avoid:
            return None
        succ = lambda v: [u for u in dg.succ(v) if proj(u) not in objective.avoid]
        _, alive = _core_and_alive(dg.vertices, succ)
        if v0 not in alive:
            return None
        return _walk_to_lasso(dg, [v0], succ, alive)

    reach = reachable_from(v0, dg.succ)

    def close(cycle: list) -> tuple[list, list]:
        path = bfs_path(v0, dg.succ, lambda v: v == cycle[0])
        assert path is not None
        return path[:-1], cycle

    if isinstance(objective, Buchi):
        for comp in _reachable_cyclic(dg, reach):
            cset = set(comp)
            hits = sorted(v for v in comp if proj(v) in objective.targets)
            if hits:
                return close(cycle_through(hits[0], dg.succ, lambda v: v in cset))
        return None
    if isinstance(objective, CoBuchi):
        succ = lambda v: [u for u in dg.succ(v) if proj(u) not in objective.avoid]
        sub = [v for v in dg.vertices if proj(v) not in objective.avoid]
        for comp in sorted(_cyclic_comps(sub, succ), key=min):
            if set(comp) & reach:
                return close(cycle_through(min(comp), succ, lambda v: v in set(comp)))
        return None
    if isinstance(objective, Parity):
        tops = sorted({objective.colors[proj(v)] for v in dg.vertices}, reverse=True)
        for d in tops:
            if d % 2 != 0:
                continue
            succ = lambda v: [u for u in dg.succ(v)
                              if objective.colors[proj(u)] <= d]
            sub = [v for v in dg.vertices if objective.colors[proj(v)] <= d]
            for comp in sorted(_cyclic_comps(sub, succ), key=min):
                if not set(comp) & reach:
                    continue
                cset = set(comp)
                pivots = sorted(v for v in comp if objective.colors[proj(v)] == d)
                if pivots:
                    return close(cycle_through(pivots[0], succ, lambda v: v in cset))
        return None
    if isinstance(objective, Rabin):
        for (f, g) in objective.pairs:
            succ = lambda v: [u for u in dg.succ(v) if proj(u) not in f]
            sub = [v for v in dg.vertices if proj(v) not in f]
            for comp in sorted(_cyclic_comps(sub, succ), key=min):
                if not set(comp) & reach:
                    continue
                cset = set(comp)
                hits = sorted(v for v in comp if proj(v) in g)
                if hits:
                    return close(cycle_through(hits[0], succ, lambda v: v in cset))
        return None
    if isinstance(objective, Streett):
        for comp in _reachable_cyclic(dg, reach):
            found = _streett_refine(dg, comp, objective.pairs)
            if found is not None:
                return close(component_tour(found, dg.succ))
        return None
    if isinstance(objective, Muller):
        universe = {proj(v) for v in dg.vertices}
        for target in sorted(objective.family, key=lambda s: (len(s), sorted(s))):
            if not target <= universe:
                continue
            succ = lambda v: [u for u in dg.succ(v) if proj(u) in target]
            sub = [v for v in dg.vertices if proj(v) in target]
            for comp in sorted(_cyclic_comps(sub, succ), key=min):
                if not set(comp) & reach:
                    continue
                if {proj(v) for v in comp} == target:
                    return close(component_tour(comp, succ))
        return None
    raise TypeError(f"not an objective: {objective!r}")


def _streett_refine(dg: Digraph, comp: list, pairs) -> list | None:
    proj = dg.project
    cset = set(comp)
    sproj = {proj(v) for v in comp}
    bad = [(f, g) for (f, g) in pairs if not sproj & f and sproj & g]
    if not bad:
        return comp
    removed = set().union(*(g for (_, g) in bad))
    keep = [v for v in comp if proj(v) not in removed]
    succ = lambda v: [u for u in dg.succ(v) if u in cset and proj(u) not in removed]
    for sub in sorted(_cyclic_comps(keep, succ), key=min):
        found = _streett_refine(dg, sub, pairs)
        if found is not None:
            return found
    return None


# ---------------------------------------------------------------------------
# Interval witnesses for quantitative payoffs


def quantitative_interval_witness(dg: Digraph, spec: PayoffSpec,
                                  lower: Fraction | None,
                                  upper: Fraction | None,
                                  v0, budget: int = 200_000) -> tuple[list, list] | None:
    """A (prefix, cycle) walk from ``v0`` whose exact payoff lies within the
    bounds, or None when no play qualifies.

    Mean-payoff interior targets are realised exactly by an Eulerian
    combination of an extremal-mean cycle pair with one connecting round
    trip, whose multiplicities solve a single linear equation in rationals.
    """
    lo, hi = lower, upper
    if isinstance(spec, (Sup, Inf)):
        if isinstance(spec, Sup):
            edge_ok = lambda u, v: hi is None or dg.weight(u, v) <= hi
            pivot_needed = lo is not None
            pivot_ok = lambda w: w >= lo
        else:
            edge_ok = lambda u, v: lo is None or dg.weight(u, v) >= lo
            pivot_needed = hi is not None
            pivot_ok = lambda w: w <= hi
        succ = _restricted_succ(dg, edge_ok)
        _, alive = _core_and_alive(dg.vertices, succ)
        if not pivot_needed:
            if v0 not in alive:
                return None
            return _walk_to_lasso(dg, [v0], succ, alive)
        for (a, b) in sorted(dg.edges()):
            w = dg.weight(a, b)
            if not (edge_ok(a, b) and pivot_ok(w)):
                continue
            if b not in alive:
                continue
            head = bfs_path(v0, succ, lambda v: v == a)
            if head is None:
                continue
            return _walk_to_lasso(dg, head + [b], succ, alive)
        return None
    if isinstance(spec, (LimSup, LimInf)):
        if isinstance(spec, LimSup):
            edge_ok = lambda u, v: hi is None or dg.weight(u, v) <= hi
            pivot_ok = lambda w: lo is None or w >= lo
        else:
            edge_ok = lambda u, v: lo is None or dg.weight(u, v) >= lo
            pivot_ok = lambda w: hi is None or w <= hi
        succ = _restricted_succ(dg, edge_ok)
        reach = reachable_from(v0, dg.succ)
        for comp in sorted(_cyclic_comps(dg.vertices, succ), key=min):
            if not set(comp) & reach:
                continue
            cset = set(comp)
            pivots = sorted((a, b) for a in comp for b in succ(a)
                            if b in cset and pivot_ok(dg.weight(a, b)))
            if not pivots:
                continue
            a, b = pivots[0]
            cyc = cycle_with_edge(a, b, succ, lambda v: v in cset)
            path = bfs_path(v0, dg.succ, lambda v: v == cyc[0])
            assert path is not None
            return path[:-1], cyc
        return None
    if isinstance(spec, (MeanPayoffSup, MeanPayoffInf)):
        return _mp_interval_witness(dg, lo, hi, v0)
    if isinstance(spec, Discounted):
        return _disc_interval_witness(dg, spec.lam, lo, hi, v0, budget)
    raise ArenaError(f"no interval witness search for {type(spec).__name__}")


def _mp_interval_witness(dg: Digraph, lo, hi, v0) -> tuple[list, list] | None:
    reach = reachable_from(v0, dg.succ)
    for comp in _reachable_cyclic(dg, reach):
        cset = set(comp)
        edges = {(v, u): dg.weight(v, u)
                 for v in comp for u in dg.succ(v) if u in cset}
        cmax, cyc_max = max_mean_cycle(edges, comp)
        cmin, cyc_min = min_mean_cycle(edges, comp)
        left = cmin if lo is None else max(cmin, lo)
        right = cmax if hi is None else min(cmax, hi)
        if left > right:
            continue

        def close(cyc: list) -> tuple[list, list]:
            path = bfs_path(v0, dg.succ, lambda v: v == cyc[0])
            assert path is not None
            return path[:-1], cyc

        if left <= cmax <= right:
            return close(cyc_max)
        if left <= cmin <= right:
            return close(cyc_min)
        target = (left + right) / 2
        return close(_mp_exact_cycle(dg, comp, cyc_min, cyc_max, target))
    return None


def _closed_walk_stats(dg: Digraph, walk: list) -> tuple[Fraction, int]:
    s = sum((dg.weight(walk[i], walk[(i + 1) % len(walk)])
             for i in range(len(walk))), Fraction(0))
    return s, len(walk)


def _mp_exact_cycle(dg: Digraph, comp: list, cyc_min: list, cyc_max: list,
                    target: Fraction) -> list:
    """Closed walk within the component whose mean is exactly ``target``,
    with ``target`` strictly between the extremal cycle means."""
    cset = set(comp)
    succ = lambda v: [u for u in dg.succ(v) if u in cset]
    if cyc_min[0] == cyc_max[0]:
        round_trip: list = []
    else:
        go = bfs_path(cyc_min[0], succ, lambda v: v == cyc_max[0])
        back = bfs_path(cyc_max[0], succ, lambda v: v == cyc_min[0])
        assert go is not None and back is not None
        round_trip = go[:-1] + back[:-1]

    s_min, l_min = _closed_walk_stats(dg, cyc_min)
    s_max, l_max = _closed_walk_stats(dg, cyc_max)
    s_rt, l_rt = _closed_walk_stats(dg, round_trip)

    a = s_min - target * l_min
    b = s_max - target * l_max
    c = target * l_rt - s_rt
    assert a < 0 < b, "target must be strictly between the extremal means"
    n_max = Fraction(1)
    while c - n_max * b >= 0:
        n_max += 1
    n_min = (c - n_max * b) / a
    assert n_min > 0
    scale = n_min.denominator * n_max.denominator \
        // _gcd(n_min.denominator, n_max.denominator)
    counts: dict[tuple, int] = {}

    def add_walk(walk: list, times: int):
        for i, v in enumerate(walk):
            e = (v, walk[(i + 1) % len(walk)])
            counts[e] = counts.get(e, 0) + times

    add_walk(cyc_min, int(n_min * scale))
    add_walk(cyc_max, int(n_max * scale))
    if round_trip:
        add_walk(round_trip, scale)
    walk = eulerian_circuit(counts, cyc_min[0])
    total, length = _closed_walk_stats(dg, walk)
    assert Fraction(total, length) == target
    return walk


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _disc_interval_witness(dg: Digraph, lam: Fraction, lo, hi, v0,
                           budget: int) -> tuple[list, list] | None:
    if lo is not None and hi is not None and lo == hi:
        raise ArenaError("exact discounted targets route to the target "
                         "discounted-sum procedures")
    lam = Fraction(lam)
    vmax, pol_max = disc_values(dg, lam, maximize=True)
    vmin, pol_min = disc_values(dg, lam, maximize=False)

    def policy_walk(v, policy) -> tuple[list, int]:
        seq = [v]
        pos = {v: 0}
        while True:
            nxt = policy[seq[-1]]
            if nxt in pos:
                return seq, pos[nxt]
            pos[nxt] = len(seq)
            seq.append(nxt)

    def inside(x: Fraction) -> bool:
        return (lo is None or x >= lo) and (hi is None or x <= hi)

    nodes = 0

    def dfs(v, acc: Fraction, power: Fraction,
            path: list) -> tuple[list, list] | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError("discounted interval search budget exhausted")
        best_hi = acc + power * vmax[v]
        best_lo = acc + power * vmin[v]
        if (hi is not None and best_lo > hi) or (lo is not None and best_hi < lo):
            return None
        for value, policy in ((best_hi, pol_max), (best_lo, pol_min)):
            if inside(value):
                tail, k = policy_walk(v, policy)
                seq = path + tail
                return seq[:len(path) + k], seq[len(path) + k:]
        for u in sorted(dg.succ(v)):
            res = dfs(u, acc + power * dg.weight(v, u), power * lam, path + [v])
            if res is not None:
                return res
        return None

    return dfs(v0, Fraction(0), Fraction(1), [])


# ---------------------------------------------------------------------------
# The one-player solver


@dataclass(frozen=True)
class ConstraintQuery:
    """Payoff constraint ``lower <= f(play) <= upper`` from a start vertex.

    At least one bound must be present; bounds are rationals (0/1 for Boolean
    payoffs).
    """
    spec: PayoffSpec
    start: int
    lower: Fraction | None = None
    upper: Fraction | None = None

    def __post_init__(self):
        lo = None if self.lower is None else Fraction(self.lower)
        hi = None if self.upper is None else Fraction(self.upper)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if lo is None and hi is None:
            raise ArenaError("constraint query needs at least one bound")
        if lo is not None and hi is not None and lo > hi:
            raise ArenaError("lower bound exceeds upper bound")


def solve_one_player(arena: Arena, query: ConstraintQuery,
                     budget: int = 200_000) -> Lasso | None:
    """Find a play meeting the constraints when one controller owns every
    vertex (the vertex partition is ignored).

    Returns a lasso whose exact payoff lies within the bounds, or None when
    no play qualifies.  A discounted constraint with ``lower == upper`` is
    rejected: that is the target discounted-sum problem, served by
    :func:`target_ds_special` and :func:`target_ds_bounded`.
    """
    spec = query.spec
    v0 = query.start
    if isinstance(spec, BooleanPayoff):
        allowed = {x for x in (0, 1)
                   if (query.lower is None or x >= query.lower)
                   and (query.upper is None or x <= query.upper)}
        if not allowed:
            return None
        if allowed == {0, 1}:
            return next(enumerate_simple_lassos(arena, v0))
        dg = Digraph.of_arena(arena)
        want = spec.objective if allowed == {1} else \
            complement(spec.objective, arena.num_vertices)
        found = boolean_witness(dg, want, v0)
        return None if found is None else Lasso.make(arena, *found)
    dg = Digraph.of_arena(arena, spec.weights)
    found = quantitative_interval_witness(dg, spec, query.lower, query.upper,
                                          v0, budget)
    if found is None:
        return None
    lasso = Lasso.make(arena, *found)
    value = payoff_of_lasso(arena, spec, lasso)
    assert (query.lower is None or value >= query.lower) and \
           (query.upper is None or value <= query.upper)
    return lasso


# ---------------------------------------------------------------------------
# Target discounted sums


@dataclass(frozen=True)
class DigitStream:
    """Ultimately periodic digit certificate ``prefix (period)^omega``.

    When no period was established within the search budget, ``period`` is
    None and ``residual`` carries the exact remaining target after the
    prefix, certifying ``t = sum_n prefix[n] lam^n + lam^len(prefix) * residual``.
    """
    prefix: tuple[Fraction, ...]
    period: tuple[Fraction, ...] | None
    residual: Fraction | None = None

    def value(self, lam) -> Fraction:
        """Exact discounted sum of the stream (requires a period)."""
        if self.period is None:
            raise ArenaError("aperiodic certificate prefix has no closed form")
        lam = Fraction(lam)
        total = Fraction(0)
        power = Fraction(1)
        for d in self.prefix:
            total += d * power
            power *= lam
        psum = Fraction(0)
        ppow = Fraction(1)
        for d in self.period:
            psum += d * ppow
            ppow *= lam
        return total + power * psum / (1 - lam ** len(self.period))

    def __str__(self) -> str:
        pre = ",".join(str(d) for d in self.prefix)
        if self.period is None:
            return f"{pre},..."
        per = ",".join(str(d) for d in self.period)
        return f"{pre}({per})" if pre else f"({per})"


def target_ds_special(t, lam, budget: int = 4096) -> tuple[bool, DigitStream | None]:
    """Decide the target discounted-sum problem for digits ``{0, 1}`` with
    ``lam >= 1/2``.

    With base ``1/lam`` at most 2, a greedy expansion realises every target
    up to the all-ones sum ``1/(1-lam)``, so the decision is the comparison
    against that bound.  On yes, the greedy digit certificate is returned,
    with its period detected by remainder repetition when one occurs within
    the budget.
    """
    t = Fraction(t)
    lam = Fraction(lam)
    if not Fraction(1, 2) <= lam < 1:
        raise ArenaError("special case requires a discount factor in [1/2, 1)")
    if t < 0:
        raise ArenaError("special case requires a nonnegative target")
    bound = 1 / (1 - lam)
    if t > bound:
        return False, None
    digits: list[Fraction] = []
    seen: dict[Fraction, int] = {}
    r = t
    for _ in range(budget):
        if r in seen:
            k = seen[r]
            cert = DigitStream(tuple(digits[:k]), tuple(digits[k:]))
            assert cert.value(lam) == t
            return True, cert
        seen[r] = len(digits)
        d = Fraction(1) if r >= 1 else Fraction(0)
        digits.append(d)
        r = (r - d) / lam
        assert 0 <= r <= bound
    return True, DigitStream(tuple(digits), None, r)


@dataclass(frozen=True)
class TargetDsResult:
    status: str  # "yes" | "no" | "unknown"
    witness: DigitStream | None = None


def target_ds_bounded(a, b, t, lam, depth: int) -> TargetDsResult:
    """Bounded search for a digit stream over ``{a, b}`` with discounted sum
    exactly ``t``.

    Digit prefixes are explored with exact pruning against the attainable
    tail interval.  Yes comes with an ultimately periodic witness (a repeated
    remainder closes the period); no means pruning emptied the search; the
    answer is unknown when the depth budget ran out first.
    """
    a, b, t, lam = Fraction(a), Fraction(b), Fraction(t), Fraction(lam)
    if not 0 < lam < 1:
        raise ArenaError("discount factor must lie strictly between 0 and 1")
    if depth < 1:
        raise ArenaError("depth must be at least 1")
    lo_d, hi_d = min(a, b), max(a, b)
    tail_lo = lo_d / (1 - lam)
    tail_hi = hi_d / (1 - lam)
    exhausted = False

    def dfs(r: Fraction, digits: list[Fraction],
            seen: dict[Fraction, int]) -> DigitStream | None:
        nonlocal exhausted
        if r < tail_lo or r > tail_hi:
            return None
        if r in seen:
            k = seen[r]
            return DigitStream(tuple(digits[:k]), tuple(digits[k:]))
        if r == tail_lo:
            return DigitStream(tuple(digits), (lo_d,))
        if r == tail_hi:
            return DigitStream(tuple(digits), (hi_d,))
        if len(digits) >= depth:
            exhausted = True
            return None
        seen[r] = len(digits)
        for d in (hi_d, lo_d) if hi_d != lo_d else (hi_d,):
            found = dfs((r - d) / lam, digits + [d], seen)
            if found is not None:
                del seen[r]
                return found
        del seen[r]
        return None

    witness = dfs(t, [], {})
    if witness is not None:
        assert witness.value(lam) == t
        return TargetDsResult("yes", witness)
    return TargetDsResult("unknown" if exhausted else "no")
