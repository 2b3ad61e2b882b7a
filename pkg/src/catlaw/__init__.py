"""Finite categories, monads, distributive laws and PRO representations, checked exhaustively."""
from pathlib import Path

from .distlaw import (
    DistLawData,
    DistrMorphism,
    check_beck_roundtrip,
    law_from_lift,
    lift_from_law,
    validate_dist_law,
    validate_distr_morphism,
)
from .dsl import SpecDocument, SpecError, emit_spec, parse_spec
from .fincat import (
    FinCategory,
    FunctorData,
    NatTransData,
    chain_category,
    cyclic_group,
    monoid_category,
    poset_category,
    validate_category,
    validate_functor,
    validate_nat_trans,
)
from .monad import ComonadData, EMConstruction, MonadData, build_em, validate_comonad, validate_monad
from .pro import (
    EquivariantRep,
    PairMapData,
    ProPresentation,
    ProRepresentation,
    builtin_pros,
    eval_word,
    validate_pair_map,
    validate_representation,
)
from .report import CatlawError, Report
from .runner import emit_report, run_checks

__version__ = "0.1.0"

CORPUS = Path(__file__).parent / "corpus"

__all__ = [
    "CORPUS", "CatlawError", "ComonadData", "DistLawData", "DistrMorphism", "EMConstruction",
    "EquivariantRep", "FinCategory", "FunctorData", "MonadData", "NatTransData", "PairMapData",
    "ProPresentation", "ProRepresentation", "Report", "SpecDocument", "SpecError", "build_em",
    "builtin_pros", "chain_category", "check_beck_roundtrip", "cyclic_group", "emit_report", "emit_spec",
    "eval_word", "law_from_lift", "lift_from_law", "monoid_category", "parse_spec", "poset_category",
    "run_checks", "validate_category", "validate_comonad", "validate_dist_law", "validate_distr_morphism",
    "validate_functor", "validate_monad", "validate_nat_trans", "validate_pair_map", "validate_representation",
]
