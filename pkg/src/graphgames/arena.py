"""Game arenas, plays, lassos and finite-memory strategies.

An arena is a finite directed graph whose vertices are partitioned among the
players; every vertex must have at least one outgoing edge so that plays never
deadlock.  Plays produced by finite-memory strategy profiles are ultimately
periodic, so the library never materialises infinite plays: the ``Lasso`` type
(a finite prefix followed by a repeated cycle) is the canonical witness object
used everywhere.

Vertices are dense integer indices ``0..n-1`` and players are ``1..k``; names
are presentation metadata only.  Edge weights are exact rationals
(:class:`fractions.Fraction`), one optional weight function per player.

All values in this module are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence


class ArenaError(ValueError):
    """Raised for structurally invalid arenas, lassos or strategies."""


class MissingMoveError(KeyError):
    """A strategy has no move for a reached (memory, vertex) pair."""


Edge = tuple[int, int]


class Arena:
    """Finite multi-player game graph.

    Parameters
    ----------
    num_players:
        Number of players; players are indexed ``1..num_players``.
    owner:
        Sequence assigning to every vertex the player index that controls it.
        Its length determines the number of vertices.
    edges:
        Iterable of ``(source, target)`` pairs.
    weights:
        Optional mapping ``player -> {(u, v): weight}``.  When a player has a
        weight function it must be total on the edge set.
    names:
        Optional vertex names for rendering; defaults to ``v0, v1, ...``.
    """

    __slots__ = ("num_players", "num_vertices", "owner", "edges", "weights",
                 "names", "_succ", "_pred", "_edge_set")

    def __init__(self, num_players: int,
                 owner: Sequence[int],
                 edges: Iterable[Edge],
                 weights: Mapping[int, Mapping[Edge, Fraction]] | None = None,
                 names: Sequence[str] | None = None):
        if num_players < 1:
            raise ArenaError("need at least one player")
        self.num_players = int(num_players)
        self.owner = tuple(int(p) for p in owner)
        self.num_vertices = len(self.owner)
        for v, p in enumerate(self.owner):
            if not 1 <= p <= num_players:
                raise ArenaError(f"vertex {v} owned by unknown player {p}")
        edge_list: list[Edge] = []
        seen: set[Edge] = set()
        for (u, v) in edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ArenaError(f"edge ({u},{v}) references unknown vertex")
            if (u, v) not in seen:
                seen.add((u, v))
                edge_list.append((u, v))
        self.edges: tuple[Edge, ...] = tuple(sorted(edge_list))
        self._edge_set = frozenset(self.edges)
        succ: list[list[int]] = [[] for _ in range(self.num_vertices)]
        pred: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for (u, v) in self.edges:
            succ[u].append(v)
            pred[v].append(u)
        self._succ = tuple(tuple(s) for s in succ)
        self._pred = tuple(tuple(sorted(p)) for p in pred)
        w: dict[int, dict[Edge, Fraction]] = {}
        if weights:
            for p, table in weights.items():
                p = int(p)
                if not 1 <= p <= num_players:
                    raise ArenaError(f"weights given for unknown player {p}")
                w[p] = {(int(u), int(v)): Fraction(x) for (u, v), x in table.items()}
        self.weights: dict[int, dict[Edge, Fraction]] = w
        if names is None:
            names = tuple(f"v{i}" for i in range(self.num_vertices))
        self.names = tuple(names)
        if len(self.names) != self.num_vertices:
            raise ArenaError("names must cover every vertex")

    # -- basic queries -------------------------------------------------

    def successors(self, v: int) -> tuple[int, ...]:
        """Successors of ``v`` in ascending index order."""
        return self._succ[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        return self._pred[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_set

    def vertices(self) -> range:
        return range(self.num_vertices)

    def vertices_of(self, player: int) -> tuple[int, ...]:
        return tuple(v for v in range(self.num_vertices) if self.owner[v] == player)

    def weight(self, player: int, u: int, v: int) -> Fraction:
        try:
            return self.weights[player][(u, v)]
        except KeyError:
            raise ArenaError(f"no weight for player {player} on edge ({u},{v})") from None

    def has_weights(self, player: int) -> bool:
        return player in self.weights

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Arena):
            return NotImplemented
        return (self.num_players, self.owner, self.edges, self.weights, self.names) == \
               (other.num_players, other.owner, other.edges, other.weights, other.names)

    def __hash__(self) -> int:
        return hash((self.num_players, self.owner, self.edges))

    def __repr__(self) -> str:
        return (f"Arena(players={self.num_players}, vertices={self.num_vertices}, "
                f"edges={len(self.edges)})")


def validate_arena(arena: Arena) -> list[str]:
    """Check the arena invariants and return a report of violations.

    The report is a list of human-readable messages, one per violation; an
    empty list means the arena is well-formed.  Solvers assume a clean report
    and deadlocks are never repaired silently.
    """
    report: list[str] = []
    for v in arena.vertices():
        if not arena.successors(v):
            report.append(f"vertex {arena.names[v]} (index {v}) has no outgoing edge")
    for p, table in arena.weights.items():
        missing = [e for e in arena.edges if e not in table]
        for (u, v) in missing:
            report.append(f"player {p} weight function misses edge ({u},{v})")
        extra = [e for e in table if e not in arena._edge_set]
        for (u, v) in extra:
            report.append(f"player {p} weight on non-edge ({u},{v})")
    return report


# ---------------------------------------------------------------------------
# Lassos


@dataclass(frozen=True)
class Lasso:
    """Ultimately periodic play ``prefix . cycle^omega`` in canonical form.

    The canonical form makes lasso equality coincide with equality of the
    induced infinite plays: the cycle is reduced to its primitive period, the
    prefix is shortened while its last vertex equals the last cycle vertex
    (rotating the cycle accordingly), and a purely periodic lasso has its
    cycle rotated to the lexicographically minimal start.

    Use :meth:`Lasso.make` to build a validated, normalised lasso.
    """

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    @staticmethod
    def make(arena: Arena, prefix: Sequence[int], cycle: Sequence[int]) -> "Lasso":
        prefix = tuple(int(v) for v in prefix)
        cycle = tuple(int(v) for v in cycle)
        if not cycle:
            raise ArenaError("lasso cycle must be nonempty")
        walk = prefix + cycle + (cycle[0],)
        for a, b in zip(walk, walk[1:]):
            if not arena.has_edge(a, b):
                raise ArenaError(f"lasso step ({a},{b}) is not an edge")
        return Lasso(*_normalise(prefix, cycle))

    # -- derived views -------------------------------------------------

    @property
    def inf_set(self) -> frozenset[int]:
        """Vertices visited infinitely often."""
        return frozenset(self.cycle)

    @property
    def visited(self) -> frozenset[int]:
        return frozenset(self.prefix) | frozenset(self.cycle)

    def vertex_at(self, n: int) -> int:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def play_prefix(self, n: int) -> tuple[int, ...]:
        """First ``n`` vertices of the induced play."""
        return tuple(self.vertex_at(i) for i in range(n))

    def prefix_edges(self) -> list[Edge]:
        """Edges crossed before the play enters its periodic part."""
        walk = self.prefix + (self.cycle[0],)
        return list(zip(walk, walk[1:]))

    def cycle_edges(self) -> list[Edge]:
        """Edges crossed infinitely often, in cycle order."""
        return [(self.cycle[i], self.cycle[(i + 1) % len(self.cycle)])
                for i in range(len(self.cycle))]

    def suffix(self, k: int) -> "Lasso":
        """The lasso describing the play suffix starting at position ``k``."""
        if k <= len(self.prefix):
            return Lasso(*_normalise(self.prefix[k:], self.cycle))
        shift = (k - len(self.prefix)) % len(self.cycle)
        return Lasso(*_normalise((), self.cycle[shift:] + self.cycle[:shift]))

    def __str__(self) -> str:
        pre = " ".join(f"v{i}" for i in self.prefix)
        cyc = " ".join(f"v{i}" for i in self.cycle)
        return f"{pre} ({cyc})^w".strip()


def _primitive(cycle: tuple[int, ...]) -> tuple[int, ...]:
    n = len(cycle)
    for p in range(1, n + 1):
        if n % p == 0 and cycle[:p] * (n // p) == cycle:
            return cycle[:p]
    return cycle


def _normalise(prefix: tuple[int, ...], cycle: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    cycle = _primitive(cycle)
    prefix = tuple(prefix)
    while prefix and prefix[-1] == cycle[-1]:
        prefix = prefix[:-1]
        cycle = cycle[-1:] + cycle[:-1]
    if not prefix:
        best = min(range(len(cycle)), key=lambda i: cycle[i:] + cycle[:i])
        cycle = cycle[best:] + cycle[:best]
    return prefix, cycle


# ---------------------------------------------------------------------------
# Strategies


@dataclass(frozen=True)
class MealyStrategy:
    """Finite-memory strategy as a Mealy machine.

    The machine starts in ``initial``.  On arrival at a vertex ``v`` (the
    initial vertex included) the memory is advanced with ``update[(m, v)]``;
    if ``v`` belongs to the strategy's side the chosen successor is then
    ``next_move[(m', v)]`` where ``m'`` is the advanced memory.  A strategy is
    positional iff it has a single memory state, and uniform iff additionally
    it is defined on every vertex of its side.

    ``player`` is the index of the player the strategy belongs to, or ``None``
    for a coalition strategy that may move at any vertex it defines.
    """

    player: int | None
    num_states: int
    initial: int
    next_move: Mapping[tuple[int, int], int]
    update: Mapping[tuple[int, int], int]

    @staticmethod
    def positional(player: int | None, moves: Mapping[int, int]) -> "MealyStrategy":
        """Memoryless strategy from a vertex-to-successor map."""
        return MealyStrategy(player=player, num_states=1, initial=0,
                             next_move={(0, v): u for v, u in moves.items()},
                             update={})

    @property
    def is_positional(self) -> bool:
        return self.num_states == 1

    def is_uniform(self, arena: Arena) -> bool:
        if not self.is_positional or self.player is None:
            return False
        return all((0, v) in self.next_move for v in arena.vertices_of(self.player))

    def advance(self, state: int, vertex: int) -> int:
        return self.update.get((state, vertex), state)

    def move(self, state: int, vertex: int) -> int:
        try:
            return self.next_move[(state, vertex)]
        except KeyError:
            raise MissingMoveError((state, vertex)) from None

    def moves_at(self, vertex: int) -> dict[int, int]:
        """Chosen successor per memory state at ``vertex`` (diagnostics)."""
        return {m: u for (m, v), u in self.next_move.items() if v == vertex}

    def validate(self, arena: Arena) -> list[str]:
        report = []
        for (m, v), u in self.next_move.items():
            if not arena.has_edge(v, u):
                report.append(f"move ({m},{v})->{u} is not an edge")
            if self.player is not None and arena.owner[v] != self.player:
                report.append(f"move defined at vertex {v} not owned by player {self.player}")
        return report


@dataclass(frozen=True)
class StrategyProfile:
    """One strategy per player, indexed ``1..num_players``."""

    strategies: tuple[MealyStrategy, ...]

    def __post_init__(self):
        for i, s in enumerate(self.strategies, start=1):
            if s.player is not None and s.player != i:
                raise ArenaError(f"profile slot {i} holds a strategy for player {s.player}")

    def strategy(self, player: int) -> MealyStrategy:
        return self.strategies[player - 1]

    def __len__(self) -> int:
        return len(self.strategies)


def outcome(arena: Arena, profile: StrategyProfile, v0: int) -> Lasso:
    """The unique play consistent with every strategy of the profile.

    The joint (memory states, vertex) configuration revisits itself within
    ``|V| * prod |M_i|`` steps, so the play is returned as a lasso.  Raises
    :class:`MissingMoveError` if a reached vertex has no move defined.
    """
    if len(profile) != arena.num_players:
        raise ArenaError("profile size differs from the number of players")
    mems = tuple(s.initial for s in profile.strategies)
    v = v0
    seen: dict[tuple[int, tuple[int, ...]], int] = {}
    trace: list[int] = []
    while True:
        mems = tuple(s.advance(m, v) for s, m in zip(profile.strategies, mems))
        config = (v, mems)
        if config in seen:
            k = seen[config]
            return Lasso.make(arena, trace[:k], trace[k:])
        seen[config] = len(trace)
        trace.append(v)
        mover = profile.strategy(arena.owner[v])
        state = mems[arena.owner[v] - 1]
        v = mover.move(state, v)
        if not arena.has_edge(trace[-1], v):
            raise ArenaError(f"strategy move ({trace[-1]},{v}) is not an edge")


def enumerate_simple_lassos(arena: Arena, v0: int) -> Iterator[Lasso]:
    """Yield every simple lasso from ``v0`` exactly once, in DFS order.

    A lasso ``h.g^omega`` is simple when ``hg`` has no repeated vertex.
    """
    path: list[int] = [v0]
    on_path = {v0: 0}

    def walk() -> Iterator[Lasso]:
        v = path[-1]
        for u in arena.successors(v):
            if u in on_path:
                k = on_path[u]
                yield Lasso.make(arena, path[:k], path[k:])
            else:
                on_path[u] = len(path)
                path.append(u)
                yield from walk()
                path.pop()
                del on_path[u]

    return walk()


# ---------------------------------------------------------------------------
# Strongly connected components


def strongly_connected_components(vertices: Iterable[int],
                                  succ: Callable[[int], Iterable[int]]) -> list[list[int]]:
    """Tarjan SCC decomposition (iterative), deterministic output order.

    Components are returned in reverse topological order of the condensation,
    each sorted ascending.
    """
    vertices = sorted(set(vertices))
    vset = set(vertices)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0

    for root in vertices:
        if root in index:
            continue
        work: list[tuple[int, Iterator[int]]] = [(root, iter(sorted(u for u in succ(root) if u in vset)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for u in it:
                if u not in index:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append(u)
                    on_stack.add(u)
                    work.append((u, iter(sorted(w for w in succ(u) if w in vset))))
                    advanced = True
                    break
                elif u in on_stack:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def reachable_from(v0: int, succ: Callable[[int], Iterable[int]]) -> set[int]:
    seen = {v0}
    todo = [v0]
    while todo:
        v = todo.pop()
        for u in succ(v):
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


def reachable_sccs(arena: Arena, v0: int,
                   keep: Callable[[int], bool] | None = None) -> list[frozenset[int]]:
    """Cyclic SCCs reachable from ``v0`` inside the filtered subgraph.

    Only components that can host a play tail are returned: singletons
    without a self-loop are dropped.  Raises :class:`ArenaError` when ``v0``
    itself is excluded by the filter.
    """
    if keep is not None and not keep(v0):
        raise ArenaError(f"start vertex {v0} is excluded by the filter")

    def succ(v: int) -> list[int]:
        return [u for u in arena.successors(v) if keep is None or keep(u)]

    reach = reachable_from(v0, succ)
    comps = strongly_connected_components(reach, succ)
    out = []
    for comp in comps:
        if len(comp) > 1 or comp[0] in succ(comp[0]):
            out.append(frozenset(comp))
    return sorted(out, key=min)
