"""Path, cycle and tour construction helpers on directed graphs.

These work on arbitrary hashable vertices (solver products use tuples) with a
successor callable, and are deterministic: successors are visited in sorted
order and breadth-first searches return the first shortest path found under
that order.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Hashable, Iterable, Mapping, Sequence

V = Hashable


def bfs_path(start: V, succ: Callable[[V], Iterable[V]],
             goal: Callable[[V], bool]) -> list[V] | None:
    """Shortest path from ``start`` to a goal vertex, ``start`` included."""
    if goal(start):
        return [start]
    parent: dict[V, V] = {start: start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in sorted(succ(v)):
            if u in parent:
                continue
            parent[u] = v
            if goal(u):
                path = [u]
                while path[-1] != start:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(u)
    return None


def cycle_through(x: V, succ: Callable[[V], Iterable[V]],
                  allowed: Callable[[V], bool] | None = None) -> list[V] | None:
    """A shortest cycle through ``x`` inside the allowed region.

    Returned as the vertex list of the cycle starting at ``x`` (the closing
    edge back to ``x`` is implicit).
    """
    def inside(v: V) -> Iterable[V]:
        return [u for u in succ(v) if allowed is None or allowed(u)]

    for first in sorted(inside(x)):
        if first == x:
            return [x]
        back = bfs_path(first, inside, lambda v: v == x)
        if back is not None:
            return [x] + back[:-1]
    return None


def cycle_with_edge(u: V, w: V, succ: Callable[[V], Iterable[V]],
                    allowed: Callable[[V], bool] | None = None) -> list[V] | None:
    """A cycle containing the edge ``(u, w)``, as a vertex list from ``u``."""
    def inside(v: V) -> Iterable[V]:
        return [s for s in succ(v) if allowed is None or allowed(s)]

    if w == u:
        return [u]
    back = bfs_path(w, inside, lambda v: v == u)
    if back is None:
        return None
    return [u] + back[:-1]


def component_tour(comp: Sequence[V], succ: Callable[[V], Iterable[V]]) -> list[V]:
    """Closed walk visiting every vertex of a strongly connected set.

    The walk stays inside ``comp``, starts at its smallest vertex and is
    returned in cycle form (closing edge implicit).  A singleton component
    must carry a self-loop.
    """
    comp_set = set(comp)
    order = sorted(comp_set)

    def inside(v: V) -> Iterable[V]:
        return [u for u in succ(v) if u in comp_set]

    if len(order) == 1:
        v = order[0]
        if v not in inside(v):
            raise ValueError(f"singleton component {v!r} has no self-loop")
        return [v]
    walk = [order[0]]
    for target in order[1:] + [order[0]]:
        leg = bfs_path(walk[-1], inside, lambda v: v == target)
        if leg is None:
            raise ValueError("component is not strongly connected")
        walk.extend(leg[1:])
    return walk[:-1]


def eulerian_circuit(edge_count: Mapping[tuple[V, V], int], start: V) -> list[V]:
    """Eulerian circuit of a balanced connected multigraph, in cycle form.

    ``edge_count`` maps directed edges to positive multiplicities; every
    vertex must have equal in- and out-degree and the support must be
    connected, which the callers guarantee by construction (the edge counts
    come from sums of cycles sharing vertices).
    """
    remaining: dict[V, list[V]] = {}
    for (u, v), k in sorted(edge_count.items()):
        if k <= 0:
            continue
        remaining.setdefault(u, []).extend([v] * k)
    for u in remaining:
        remaining[u].sort(reverse=True)

    stack = [start]
    circuit: list[V] = []
    while stack:
        v = stack[-1]
        if remaining.get(v):
            stack.append(remaining[v].pop())
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    if circuit and circuit[0] == circuit[-1]:
        circuit.pop()
    return circuit
