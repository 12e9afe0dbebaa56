"""Boolean objectives over plays and their evaluation on lassos.

Every objective classifies an infinite play as winning or losing.  Except for
reachability and safety, the verdict only depends on the set of vertices seen
infinitely often, which for a lasso is exactly the set of cycle vertices; the
evaluators below therefore work on lassos without ever unfolding plays.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable, Mapping

from .arena import Arena, ArenaError, Lasso


@dataclass(frozen=True)
class Reachability:
    """Visit a target vertex at least once (the start vertex counts)."""
    targets: frozenset[int]

    def __init__(self, targets: Iterable[int]):
        object.__setattr__(self, "targets", frozenset(int(v) for v in targets))


@dataclass(frozen=True)
class Safety:
    """Never visit a vertex of the avoided set."""
    avoid: frozenset[int]

    def __init__(self, avoid: Iterable[int]):
        object.__setattr__(self, "avoid", frozenset(int(v) for v in avoid))


@dataclass(frozen=True)
class Buchi:
    """Visit a target vertex infinitely often."""
    targets: frozenset[int]

    def __init__(self, targets: Iterable[int]):
        object.__setattr__(self, "targets", frozenset(int(v) for v in targets))


@dataclass(frozen=True)
class CoBuchi:
    """Visit the avoided set finitely often only."""
    avoid: frozenset[int]

    def __init__(self, avoid: Iterable[int]):
        object.__setattr__(self, "avoid", frozenset(int(v) for v in avoid))


@dataclass(frozen=True)
class Parity:
    """The maximum colour seen infinitely often is even.

    ``colors`` maps every vertex to a natural number.
    """
    colors: tuple[int, ...]

    def __init__(self, colors: Iterable[int] | Mapping[int, int]):
        if isinstance(colors, Mapping):
            n = max(colors) + 1 if colors else 0
            seq = tuple(int(colors[v]) for v in range(n))
        else:
            seq = tuple(int(c) for c in colors)
        if any(c < 0 for c in seq):
            raise ArenaError("parity colours must be natural numbers")
        object.__setattr__(self, "colors", seq)


def _freeze_pairs(pairs) -> tuple[tuple[frozenset[int], frozenset[int]], ...]:
    out = tuple((frozenset(int(v) for v in f), frozenset(int(v) for v in g))
                for (f, g) in pairs)
    if not out:
        raise ArenaError("need at least one pair")
    return out


@dataclass(frozen=True)
class Rabin:
    """Some pair ``(F, G)`` has ``inf`` avoiding ``F`` and meeting ``G``."""
    pairs: tuple[tuple[frozenset[int], frozenset[int]], ...]

    def __init__(self, pairs):
        object.__setattr__(self, "pairs", _freeze_pairs(pairs))


@dataclass(frozen=True)
class Streett:
    """Every pair ``(F, G)`` has ``inf`` meeting ``F`` or avoiding ``G``."""
    pairs: tuple[tuple[frozenset[int], frozenset[int]], ...]

    def __init__(self, pairs):
        object.__setattr__(self, "pairs", _freeze_pairs(pairs))


@dataclass(frozen=True)
class Muller:
    """The set of vertices seen infinitely often belongs to the family."""
    family: frozenset[frozenset[int]]

    def __init__(self, family: Iterable[Iterable[int]]):
        fam = frozenset(frozenset(int(v) for v in s) for s in family)
        if any(not s for s in fam):
            raise ArenaError("Muller family members must be nonempty")
        object.__setattr__(self, "family", fam)


Objective = Reachability | Safety | Buchi | CoBuchi | Parity | Rabin | Streett | Muller

#: Objective types whose verdict depends only on the infinitely-repeated part.
PREFIX_INDEPENDENT_TYPES = (Buchi, CoBuchi, Parity, Rabin, Streett, Muller)


def referenced_vertices(objective: Objective) -> frozenset[int]:
    if isinstance(objective, (Reachability, Buchi)):
        return objective.targets
    if isinstance(objective, (Safety, CoBuchi)):
        return objective.avoid
    if isinstance(objective, Parity):
        return frozenset(range(len(objective.colors)))
    if isinstance(objective, (Rabin, Streett)):
        return frozenset().union(*chain.from_iterable(objective.pairs))
    if isinstance(objective, Muller):
        return frozenset().union(*objective.family) if objective.family else frozenset()
    raise TypeError(f"not an objective: {objective!r}")


def check_objective(objective: Objective, arena: Arena) -> None:
    """Raise :class:`ArenaError` if the objective references unknown vertices."""
    bad = [v for v in referenced_vertices(objective) if not 0 <= v < arena.num_vertices]
    if bad:
        raise ArenaError(f"objective references unknown vertices {sorted(bad)}")
    if isinstance(objective, Parity) and len(objective.colors) != arena.num_vertices:
        raise ArenaError("parity colouring must be total on the vertex set")


def satisfied_by_inf_set(objective: Objective, inf_set: frozenset[int]) -> bool:
    """Evaluate a prefix-independent objective against a set of vertices
    visited infinitely often."""
    if isinstance(objective, Buchi):
        return bool(inf_set & objective.targets)
    if isinstance(objective, CoBuchi):
        return not inf_set & objective.avoid
    if isinstance(objective, Parity):
        return max(objective.colors[v] for v in inf_set) % 2 == 0
    if isinstance(objective, Rabin):
        return any(not inf_set & f and inf_set & g for f, g in objective.pairs)
    if isinstance(objective, Streett):
        return all(inf_set & f or not inf_set & g for f, g in objective.pairs)
    if isinstance(objective, Muller):
        return inf_set in objective.family
    raise ArenaError(f"{type(objective).__name__} is not prefix-independent")


def satisfies(objective: Objective, lasso: Lasso, arena: Arena | None = None) -> bool:
    """Does the play induced by the lasso satisfy the objective?"""
    if arena is not None:
        check_objective(objective, arena)
    if isinstance(objective, Reachability):
        return bool(lasso.visited & objective.targets)
    if isinstance(objective, Safety):
        return not lasso.visited & objective.avoid
    return satisfied_by_inf_set(objective, lasso.inf_set)


def complement(objective: Objective, num_vertices: int | None = None) -> Objective:
    """The objective satisfied exactly by the plays the input rejects.

    Reachability/safety, Buchi/co-Buchi and Rabin/Streett are dual pairs; a
    parity objective is complemented by shifting every colour up by one, and a
    Muller objective by taking the remaining nonempty vertex subsets (which
    requires ``num_vertices``).
    """
    if isinstance(objective, Reachability):
        return Safety(objective.targets)
    if isinstance(objective, Safety):
        return Reachability(objective.avoid)
    if isinstance(objective, Buchi):
        return CoBuchi(objective.targets)
    if isinstance(objective, CoBuchi):
        return Buchi(objective.avoid)
    if isinstance(objective, Parity):
        return Parity(tuple(c + 1 for c in objective.colors))
    if isinstance(objective, Rabin):
        return Streett(objective.pairs)
    if isinstance(objective, Streett):
        return Rabin(objective.pairs)
    if isinstance(objective, Muller):
        if num_vertices is None:
            raise ArenaError("complementing a Muller objective needs the vertex count")
        family = [s for s in _nonempty_subsets(num_vertices) if s not in objective.family]
        return Muller(family)
    raise TypeError(f"not an objective: {objective!r}")


def _nonempty_subsets(num_vertices: int):
    verts = range(num_vertices)
    for r in range(1, num_vertices + 1):
        for combo in combinations(verts, r):
            yield frozenset(combo)


def as_muller(objective: Objective, num_vertices: int) -> Muller:
    """Equivalent explicit Muller objective.

    Works for every prefix-independent objective by enumerating the nonempty
    vertex subsets; reachability and safety are prefix-dependent and rejected.
    """
    if isinstance(objective, (Reachability, Safety)):
        raise ArenaError(f"{type(objective).__name__} has no Muller form (prefix-dependent)")
    if isinstance(objective, Muller):
        return objective
    family = [s for s in _nonempty_subsets(num_vertices)
              if satisfied_by_inf_set(objective, s)]
    return Muller(family)
