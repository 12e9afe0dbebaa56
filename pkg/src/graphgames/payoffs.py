"""Payoff functions evaluated exactly on lassos, and preference relations.

Quantitative payoffs read one player's weight function; which one is recorded
in the spec itself (``weights`` holds the index of the weight profile).  All
evaluation is exact rational arithmetic: mean payoffs are cycle averages,
discounted sums use the closed form for ultimately periodic plays, never a
truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arena import Arena, ArenaError, Lasso
from .objectives import Objective, satisfies

# classification labels, see :func:`classify`
PREFIX_INDEPENDENT = "prefix_independent"
PREFIX_LINEAR = "prefix_linear"
PREFIX_MONOTONE = "prefix_monotone"


@dataclass(frozen=True)
class Sup:
    """Highest weight ever crossed."""
    weights: int


@dataclass(frozen=True)
class Inf:
    """Lowest weight ever crossed."""
    weights: int


@dataclass(frozen=True)
class LimSup:
    """Highest weight crossed infinitely often."""
    weights: int


@dataclass(frozen=True)
class LimInf:
    """Lowest weight crossed infinitely often."""
    weights: int


@dataclass(frozen=True)
class MeanPayoffSup:
    """Limit superior of the average weight of play prefixes."""
    weights: int


@dataclass(frozen=True)
class MeanPayoffInf:
    """Limit inferior of the average weight of play prefixes."""
    weights: int


@dataclass(frozen=True)
class Discounted:
    """Discounted sum with factor ``lam`` in (0, 1)."""
    lam: Fraction
    weights: int

    def __init__(self, lam, weights: int):
        lam = Fraction(lam)
        if not 0 < lam < 1:
            raise ArenaError("discount factor must lie strictly between 0 and 1")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "weights", int(weights))


@dataclass(frozen=True)
class BooleanPayoff:
    """0/1 payoff from a Boolean objective."""
    objective: Objective


PayoffSpec = Sup | Inf | LimSup | LimInf | MeanPayoffSup | MeanPayoffInf | Discounted | BooleanPayoff


@dataclass(frozen=True)
class Maximize:
    """Usual order on rationals: larger payoffs are preferred."""


@dataclass(frozen=True)
class Minimize:
    """Reversed order on rationals: smaller payoffs are preferred."""


@dataclass(frozen=True)
class Secure:
    """Two-player secure preference for the player with index ``own``.

    On payoff pairs, raising one's own component is preferred; with equal own
    components, lowering the opponent's component is preferred.  Total only
    for pairs, hence restricted to two-player games.
    """
    own: int


Preference = Maximize | Minimize | Secure

LESS, EQUAL, GREATER = -1, 0, 1


def payoff_of_lasso(arena: Arena, spec: PayoffSpec, lasso: Lasso) -> Fraction:
    """Exact payoff of the play induced by the lasso.

    Sup/Inf scan every crossed edge; LimSup/LimInf scan the cycle edges only;
    both mean payoffs equal the average weight of the cycle; the discounted
    sum is ``sum_{n<|h|} w_n lam^n + lam^|h| * (sum_{i<|g|} w'_i lam^i) / (1 - lam^|g|)``.
    Boolean payoffs evaluate the wrapped objective to 0 or 1.
    """
    if isinstance(spec, BooleanPayoff):
        return Fraction(1 if satisfies(spec.objective, lasso, arena) else 0)
    p = spec.weights
    if not arena.has_weights(p):
        raise ArenaError(f"arena has no weight function for profile {p}")
    cyc = [arena.weight(p, u, v) for (u, v) in lasso.cycle_edges()]
    if isinstance(spec, (Sup, Inf)):
        all_w = [arena.weight(p, u, v) for (u, v) in lasso.prefix_edges()] + cyc
        return max(all_w) if isinstance(spec, Sup) else min(all_w)
    if isinstance(spec, LimSup):
        return max(cyc)
    if isinstance(spec, LimInf):
        return min(cyc)
    if isinstance(spec, (MeanPayoffSup, MeanPayoffInf)):
        return Fraction(sum(cyc), len(cyc))
    if isinstance(spec, Discounted):
        lam = spec.lam
        total = Fraction(0)
        power = Fraction(1)
        for (u, v) in lasso.prefix_edges():
            total += arena.weight(p, u, v) * power
            power *= lam
        cyc_sum = Fraction(0)
        cyc_pow = Fraction(1)
        for w in cyc:
            cyc_sum += w * cyc_pow
            cyc_pow *= lam
        return total + power * cyc_sum / (1 - lam ** len(cyc))
    raise TypeError(f"not a payoff spec: {spec!r}")


def compare(preference: Preference, p, q) -> int:
    """Order two payoffs: ``LESS`` means ``p`` is strictly less preferred.

    ``Secure`` expects payoff pairs (tuples of two rationals).
    """
    if isinstance(preference, Maximize):
        return LESS if p < q else GREATER if p > q else EQUAL
    if isinstance(preference, Minimize):
        return LESS if p > q else GREATER if p < q else EQUAL
    if isinstance(preference, Secure):
        if len(p) != 2 or len(q) != 2:
            raise ArenaError("secure preference compares payoff pairs")
        i = preference.own - 1
        j = 1 - i
        if p[i] != q[i]:
            return LESS if p[i] < q[i] else GREATER
        if p[j] != q[j]:
            return LESS if p[j] > q[j] else GREATER
        return EQUAL
    raise TypeError(f"not a preference: {preference!r}")


def prefers(preference: Preference, p, q) -> bool:
    """True iff ``q`` is strictly preferred over ``p``."""
    return compare(preference, p, q) == LESS


def at_most(preference: Preference, p, q) -> bool:
    """True iff ``p`` is less preferred than or equal to ``q``."""
    return compare(preference, p, q) != GREATER


def best(preference: Preference, values):
    """Most preferred element of a nonempty iterable."""
    values = list(values)
    if not values:
        raise ArenaError("no values to choose from")
    top = values[0]
    for v in values[1:]:
        if prefers(preference, top, v):
            top = v
    return top


def classify(spec: PayoffSpec) -> str:
    """Static prefix behaviour of the payoff.

    ``prefix_independent``: prepending any history never changes the payoff.
    ``prefix_linear``: prepending preserves both weak and strict comparisons.
    ``prefix_monotone``: prepending preserves weak comparisons only (supremum,
    infimum, reachability and safety payoffs).
    """
    if isinstance(spec, (LimSup, LimInf, MeanPayoffSup, MeanPayoffInf)):
        return PREFIX_INDEPENDENT
    if isinstance(spec, Discounted):
        return PREFIX_LINEAR
    if isinstance(spec, (Sup, Inf)):
        return PREFIX_MONOTONE
    if isinstance(spec, BooleanPayoff):
        from .objectives import Reachability, Safety
        if isinstance(spec.objective, (Reachability, Safety)):
            return PREFIX_MONOTONE
        return PREFIX_INDEPENDENT
    raise TypeError(f"not a payoff spec: {spec!r}")


def weight_profile(spec: PayoffSpec) -> int | None:
    """Index of the weight function read by the spec, if any."""
    return None if isinstance(spec, BooleanPayoff) else spec.weights


def parse_fraction(text) -> Fraction:
    """Parse ``"p/q"`` or integer strings into an exact rational."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ArenaError(f"cannot parse rational from {text!r}")


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
