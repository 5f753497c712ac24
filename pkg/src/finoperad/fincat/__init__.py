"""Finite categories, functors into finite sets, colimits, Kan extensions and nerve homology."""
from __future__ import annotations

from .colimits import Colimit, LeftKan, colimit, comma_category, counit, left_kan
from .core import (
    Arrow,
    FinCat,
    Functor,
    NatTrans,
    SetFunctor,
    constant_functor,
    discrete_category,
    poset_category,
    product_category,
    representable,
    restrict,
    terminal_category,
    with_terminal,
)
from .fibration import check_grothendieck_fibration, check_isomorphism
from .monoidal import FinMonoidalCat, check_cartesian_criterion
from .nerve import BettiSummary, nerve_betti
from .standard import build_standard

colimit_set_functor = colimit

__all__ = [
    "Arrow",
    "BettiSummary",
    "Colimit",
    "FinCat",
    "FinMonoidalCat",
    "Functor",
    "LeftKan",
    "NatTrans",
    "SetFunctor",
    "build_standard",
    "check_cartesian_criterion",
    "check_grothendieck_fibration",
    "check_isomorphism",
    "colimit",
    "colimit_set_functor",
    "comma_category",
    "constant_functor",
    "counit",
    "discrete_category",
    "left_kan",
    "nerve_betti",
    "poset_category",
    "product_category",
    "representable",
    "restrict",
    "terminal_category",
    "with_terminal",
]
