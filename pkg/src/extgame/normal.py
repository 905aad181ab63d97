"""Extensive-to-normal conversion and expected payoffs of mixed profiles."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import GameTree, NormalFormGame, as_fraction, require_valid
from .strategies import enumerate_pure, play_out


@dataclass(frozen=True)
class MixedStrategy:
    owner: int
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        weights = tuple(as_fraction(w) for w in self.weights)
        if not weights:
            raise ValueError("a mixed strategy needs at least one weight")
        if any(w < 0 for w in weights):
            raise ValueError(f"negative probability in {weights}")
        if sum(weights) != 1:
            raise ValueError(f"weights sum to {sum(weights)}, not 1")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def pure(cls, owner: int, n: int, index: int) -> MixedStrategy:
        return cls(owner, tuple(Fraction(int(i == index)) for i in range(n)))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w > 0)


@dataclass(frozen=True)
class MixedProfile:
    strategies: tuple[MixedStrategy, MixedStrategy]

    def __post_init__(self) -> None:
        strategies = tuple(self.strategies)
        if len(strategies) != 2:
            raise ValueError("a mixed profile has one strategy per player")
        for i, s in enumerate(strategies, start=1):
            if s.owner != i:
                raise ValueError(f"strategy {i} is owned by player {s.owner}")
        object.__setattr__(self, "strategies", strategies)

    @classmethod
    def of(cls, rows: Sequence, cols: Sequence) -> MixedProfile:
        return cls((MixedStrategy(1, tuple(rows)), MixedStrategy(2, tuple(cols))))


def to_normal_form(tree: GameTree) -> NormalFormGame:
    """Tabulate the payoff of every pure profile; player 1 indexes rows."""
    require_valid(tree)
    rows = enumerate_pure(tree, 1)
    cols = enumerate_pure(tree, 2)
    payoffs = tuple(tuple(play_out(tree, (r, c)) for c in cols) for r in rows)
    return NormalFormGame(
        tree.name,
        tree.players,
        (tuple(s.label for s in rows), tuple(s.label for s in cols)),
        payoffs,
    )


def expected_payoff(game: NormalFormGame, prof: MixedProfile) -> tuple[Fraction, Fraction]:
    x, y = (s.weights for s in prof.strategies)
    if (len(x), len(y)) != game.shape:
        raise ValueError(f"profile shape {(len(x), len(y))} does not match game {game.shape}")
    totals = [Fraction(0), Fraction(0)]
    for r, xr in enumerate(x):
        if not xr:
            continue
        for c, yc in enumerate(y):
            if not yc:
                continue
            w = xr * yc
            a, b = game.payoffs[r][c]
            totals[0] += w * a
            totals[1] += w * b
    return totals[0], totals[1]
