"""Lexicographic two-player weighted games: values, secure equilibria,
constrained existence."""

from .game import (
    Lasso,
    Measure,
    NormalizationInfo,
    PayoffPair,
    WeightedGame,
    denormalize_value,
    eval_lasso_payoff,
    lex_compare,
    normalize_weights,
    validate_game,
)
from .rational import ExtRational, Rational, format_rational, rational

__all__ = [
    "ExtRational",
    "Lasso",
    "Measure",
    "NormalizationInfo",
    "PayoffPair",
    "Rational",
    "WeightedGame",
    "denormalize_value",
    "eval_lasso_payoff",
    "format_rational",
    "lex_compare",
    "normalize_weights",
    "rational",
    "validate_game",
]
