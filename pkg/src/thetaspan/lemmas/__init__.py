"""Canonical configurations, the path-length lemmas on them, and the stretch constants."""

from .checks import (
    CheckResult,
    InductionViolated,
    check_config,
    check_lemma_abba,
    check_lemma_paa1,
    check_lemma_paa5,
    check_lemma_paasecond,
    check_lemma_thetapath,
    recursive_theta_path,
)
from .configs import (
    CanonicalConfig,
    check_invariants,
    config_edges_sound,
    extract_configs,
    lemma_case,
    normalize_config,
    sample_config_points,
    sample_gadget,
)
from .constants import CASES, StretchConstantReport, reproduce_tables, stretch_constant
from .harness import HarnessConfig, HarnessReport, run_harness

__all__ = [
    "CASES", "CanonicalConfig", "CheckResult", "HarnessConfig", "HarnessReport", "InductionViolated",
    "StretchConstantReport", "check_config", "check_invariants", "check_lemma_abba", "check_lemma_paa1",
    "check_lemma_paa5", "check_lemma_paasecond", "check_lemma_thetapath", "config_edges_sound",
    "extract_configs", "lemma_case", "normalize_config", "recursive_theta_path", "reproduce_tables",
    "run_harness", "sample_config_points", "sample_gadget", "stretch_constant",
]
