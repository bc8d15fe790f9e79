"""Omega-automata and omega-grammars under the six (sigma, rho) acceptance modes."""

from .core import (AcceptanceMode, Alphabet, DesignatedFamily, LassoWord,
                   OccurrenceProfile, SetConstraint, lasso_normalize, parse_lasso,
                   format_lasso, profile_of, satisfies, six_modes)
from .automata import OmegaFSA, OmegaPDA, OmegaTM
from .grammars import OmegaGrammar, Production, classify, make_grammar
from .oracle import Verdict, bounded_member, certificate_check, difftest, enumerate_lassos

__version__ = "0.1.0"

__all__ = [
    "AcceptanceMode", "Alphabet", "DesignatedFamily", "LassoWord", "OccurrenceProfile",
    "SetConstraint", "lasso_normalize", "parse_lasso", "format_lasso", "profile_of",
    "satisfies", "six_modes", "OmegaFSA", "OmegaPDA", "OmegaTM", "OmegaGrammar",
    "Production", "classify", "make_grammar", "Verdict", "bounded_member",
    "certificate_check", "difftest", "enumerate_lassos",
]
