"""Finite two-player games: GDT parsing, normal form, equilibria, dominance."""

from .gdt import ParseError, SourceSpan, parse, parse_extensive, parse_normal, serialize_extensive, serialize_normal
from .model import (
    Decision,
    Diagnostic,
    GameTree,
    InformationSet,
    InvalidGameError,
    NormalFormGame,
    Terminal,
    ValidationReport,
    is_perfect_information,
    validate_tree,
)
from .normal import MixedProfile, MixedStrategy, expected_payoff, to_normal_form
from .render import RenderOptions, render_matrix, render_tree
from .solvers import (
    DominanceRecord,
    ImperfectInformationError,
    MixedEquilibrium,
    PureEquilibrium,
    backward_induction,
    dominance,
    is_subgame_perfect,
    mixed_nash_2p,
    pure_nash,
)
from .strategies import PureStrategy, StrategyProfile, decode_label, enumerate_pure, play_out, profile

__version__ = "0.1.0"
