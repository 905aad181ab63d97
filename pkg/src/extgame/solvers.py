"""Equilibrium and dominance computations.

Everything is exact: payoffs and probabilities are Fractions, comparisons
use no tolerance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import affine_solve, linprog_max, solve
from .model import Decision, GameTree, NormalFormGame, is_perfect_information, require_valid
from .normal import MixedProfile, MixedStrategy, expected_payoff
from .strategies import PureStrategy, StrategyProfile, make_label, play_out

WEAK = "weak"
STRICT = "strict"


class ImperfectInformationError(ValueError):
    def __init__(self) -> None:
        super().__init__("backward induction requires perfect information")


@dataclass(frozen=True)
class PureEquilibrium:
    row: int
    col: int
    labels: tuple[str, str]
    payoffs: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class MixedEquilibrium:
    """An isolated equilibrium, or a marker for a degenerate support pair.

    Markers (``degenerate=True``) carry the support only: the equilibria
    with that support form a continuum that is not enumerated.
    """

    support: tuple[tuple[int, ...], tuple[int, ...]]
    profile: MixedProfile | None = None
    payoffs: tuple[Fraction, Fraction] | None = None
    degenerate: bool = False


@dataclass(frozen=True)
class DominanceRecord:
    player: int
    dominated: int
    dominator: int
    kind: str


# --- extensive form ---------------------------------------------------------------


def _require_perfect(tree: GameTree) -> None:
    require_valid(tree)
    if not is_perfect_information(tree):
        raise ImperfectInformationError()


def backward_induction(tree: GameTree) -> list[tuple[StrategyProfile, tuple[Fraction, ...]]]:
    """Every profile reachable by bottom-up optimal choice, branching on ties.

    Each result is subgame perfect. Results are ordered by the players'
    strategy indices in enumeration order.
    """
    _require_perfect(tree)

    def solve_at(nid: str) -> list[tuple[tuple[tuple[str, str], ...], tuple[Fraction, ...]]]:
        node = tree.node(nid)
        if not isinstance(node, Decision):
            return [((), node.payoffs)]
        branches = [solve_at(child) for _, child in node.edges]
        out = []
        for combo in itertools.product(*branches):
            best = max(pay[node.owner - 1] for _, pay in combo)
            choices = tuple(c for assignment, _ in combo for c in assignment)
            for (action, _), (_, pay) in zip(node.edges, combo):
                if pay[node.owner - 1] == best:
                    out.append((choices + ((node.infoset, action),), pay))
        return out

    results = []
    for assignment, pay in solve_at(tree.root):
        chosen = dict(assignment)
        prof = []
        for player in range(1, len(tree.players) + 1):
            infosets = tree.infosets_of(player)
            # Every decision node is reachable in a valid tree, so each infoset has a choice.
            actions = tuple(chosen[i.id] for i in infosets)
            prof.append(
                PureStrategy(
                    player,
                    tuple(zip((i.id for i in infosets), actions)),
                    make_label(tree, player, actions),
                )
            )
        results.append((tuple(prof), pay))
    results.sort(key=lambda item: _profile_key(tree, item[0]))
    return results


def _profile_key(tree: GameTree, prof: StrategyProfile) -> tuple:
    key = []
    for strategy in prof:
        infosets = tree.infosets_of(strategy.owner)
        key.append(tuple(i.actions.index(strategy.action(i.id)) for i in infosets))
    return tuple(key)


def is_subgame_perfect(tree: GameTree, prof: StrategyProfile) -> bool:
    """True iff at every decision node the prescribed action is optimal.

    Under perfect information this one-shot deviation check is equivalent
    to the profile inducing a Nash equilibrium in every subgame.
    """
    _require_perfect(tree)
    for node in tree.decisions():
        owner = node.owner - 1
        chosen = prof[node.owner - 1].action(node.infoset)
        values = {a: play_out(tree, prof, child)[owner] for a, child in node.edges}
        if values[chosen] < max(values.values()):
            return False
    return True


# --- normal form ------------------------------------------------------------------


def pure_nash(game: NormalFormGame) -> list[PureEquilibrium]:
    n_rows, n_cols = game.shape
    rows, cols = game.strategies
    col_best = [max(game.payoffs[r][c][0] for r in range(n_rows)) for c in range(n_cols)]
    row_best = [max(game.payoffs[r][c][1] for c in range(n_cols)) for r in range(n_rows)]
    out = []
    for r in range(n_rows):
        for c in range(n_cols):
            a, b = game.payoffs[r][c]
            if a == col_best[c] and b == row_best[r]:
                out.append(PureEquilibrium(r, c, (rows[r], cols[c]), (a, b)))
    return out


def _payoff_vectors(game: NormalFormGame, player: int) -> list[list[Fraction]]:
    """Per own strategy, the player's payoffs against each opposing strategy."""
    n_rows, n_cols = game.shape
    if player == 1:
        return [[game.payoffs[r][c][0] for c in range(n_cols)] for r in range(n_rows)]
    return [[game.payoffs[r][c][1] for r in range(n_rows)] for c in range(n_cols)]


def dominance(game: NormalFormGame, kind: str = WEAK, player: int | None = None) -> list[DominanceRecord]:
    """All (dominated, dominator) pairs of the given kind, per player.

    Weak dominance demands at least one strict improvement, so strategies
    with identical payoffs never dominate each other.
    """
    if kind not in (WEAK, STRICT):
        raise ValueError(f"kind must be {WEAK!r} or {STRICT!r}, got {kind!r}")
    players = (1, 2) if player is None else (player,)
    out = []
    for p in players:
        vectors = _payoff_vectors(game, p)
        for i, low in enumerate(vectors):
            for j, high in enumerate(vectors):
                if i == j:
                    continue
                if kind == STRICT:
                    hit = all(h > l for h, l in zip(high, low))
                else:
                    hit = all(h >= l for h, l in zip(high, low)) and any(
                        h > l for h, l in zip(high, low)
                    )
                if hit:
                    out.append(DominanceRecord(p, i, j, kind))
    return out


def _subsets(n: int):
    for k in range(1, n + 1):
        yield from itertools.combinations(range(n), k)


def _indifference(
    payoff: Sequence[Sequence[Fraction]], responses: tuple[int, ...], mix: tuple[int, ...]
) -> list[Fraction] | None:
    """Weights on ``mix`` making every response in ``responses`` earn one value.

    ``payoff[i][j]`` is the responder's payoff for response ``i`` against
    mixed-over strategy ``j``. Returns the weights followed by the value,
    or ``None`` if the square system is singular.
    """
    k = len(mix)
    a = [[payoff[i][j] for j in mix] + [Fraction(-1)] for i in responses]
    a.append([Fraction(1)] * k + [Fraction(0)])
    b = [Fraction(0)] * len(responses) + [Fraction(1)]
    return solve(a, b)


def _positive_feasible(
    payoff: Sequence[Sequence[Fraction]], responses: tuple[int, ...], mix: tuple[int, ...]
) -> bool:
    """Does some mixture with full support ``mix`` make every response in ``responses`` optimal?

    The tie equations are reduced first. When they have no solution or a
    single one the answer is read off directly; only a continuum of
    solutions goes to the LP over (weights, v+, v-, t): supported
    responses earn v, others at most v, weights sum to one, maximise
    t <= min weight. A positive optimum means a strictly positive solution.
    """
    k = len(mix)
    first = responses[0]
    ties = [[payoff[i][j] - payoff[first][j] for j in mix] for i in responses[1:]]
    reduced = affine_solve(ties + [[Fraction(1)] * k], [Fraction(0)] * len(ties) + [Fraction(1)])
    if reduced is None:
        return False
    point, rank = reduced
    if rank == k:
        if min(point) <= 0:
            return False
        value = sum(payoff[first][j] * w for j, w in zip(mix, point))
        return all(sum(payoff[i][j] * w for j, w in zip(mix, point)) <= value for i in range(len(payoff)))

    n_vars = k + 3
    a_eq, b_eq, a_ub, b_ub = [], [], [], []
    for i in range(len(payoff)):
        row = [payoff[i][j] for j in mix] + [Fraction(-1), Fraction(1), Fraction(0)]
        if i in responses:
            a_eq.append(row)
            b_eq.append(Fraction(0))
        else:
            a_ub.append(row)
            b_ub.append(Fraction(0))
    a_eq.append([Fraction(1)] * k + [Fraction(0)] * 3)
    b_eq.append(Fraction(1))
    for j in range(k):
        row = [Fraction(0)] * n_vars
        row[j] = Fraction(-1)
        row[-1] = Fraction(1)
        a_ub.append(row)
        b_ub.append(Fraction(0))
    cap = [Fraction(0)] * n_vars
    cap[-1] = Fraction(1)
    a_ub.append(cap)
    b_ub.append(Fraction(1))
    result = linprog_max(cap, a_ub, b_ub, a_eq, b_eq)
    return result.status == "optimal" and result.value > 0


def _support_pair(game: NormalFormGame, rows: tuple[int, ...], cols: tuple[int, ...]):
    n_rows, n_cols = game.shape
    row_pay = _payoff_vectors(game, 1)  # [row][col]
    col_pay = _payoff_vectors(game, 2)  # [col][row]
    if len(rows) == len(cols):
        ysol = _indifference(row_pay, rows, cols)
        xsol = _indifference(col_pay, cols, rows)
        if ysol is not None and xsol is not None:
            *y_on, v = ysol
            *x_on, u = xsol
            if min(y_on) <= 0 or min(x_on) <= 0:
                return None
            y = [Fraction(0)] * n_cols
            for c, w in zip(cols, y_on):
                y[c] = w
            x = [Fraction(0)] * n_rows
            for r, w in zip(rows, x_on):
                x[r] = w
            if any(sum(row_pay[r][c] * y[c] for c in cols) > v for r in range(n_rows)):
                return None
            if any(sum(col_pay[c][r] * x[r] for r in rows) > u for c in range(n_cols)):
                return None
            prof = MixedProfile((MixedStrategy(1, tuple(x)), MixedStrategy(2, tuple(y))))
            return MixedEquilibrium((rows, cols), prof, expected_payoff(game, prof))
    # Singular or unequal-size supports: any equilibrium here lies in a continuum.
    # Check the side with fewer degrees of freedom first; it usually settles the pair.
    sides = [(col_pay, cols, rows), (row_pay, rows, cols)]
    sides.sort(key=lambda side: len(side[2]) - len(side[1]))
    if all(_positive_feasible(*side) for side in sides):
        return MixedEquilibrium((rows, cols), degenerate=True)
    return None


def mixed_nash_2p(game: NormalFormGame) -> list[MixedEquilibrium]:
    """Support enumeration for two-player games.

    Square indifference systems with a unique solution give isolated
    equilibria. Support pairs whose equilibria are not isolated are
    reported once as degenerate markers. Ordered by total support size,
    then lexicographically by (row support, column support).
    """
    n_rows, n_cols = game.shape
    pairs = sorted(
        itertools.product(_subsets(n_rows), _subsets(n_cols)),
        key=lambda rc: (len(rc[0]) + len(rc[1]), rc[0], rc[1]),
    )
    out = []
    seen = set()
    for rows, cols in pairs:
        eq = _support_pair(game, rows, cols)
        if eq is not None and (eq.support, eq.degenerate) not in seen:
            seen.add((eq.support, eq.degenerate))
            out.append(eq)
    return out
