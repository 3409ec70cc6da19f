"""Auslander-Reiten theory: transpose, translations, Ext, almost split sequences, classification."""

from .translate import transpose, tau, tau_minus, tau_report, tau_minus_report, trtr_check, Translate
from .ext import (ShortExactSeq, ExtSpace, ExtClass, ext1, ext_dim, realize_extension, is_split,
                  stable_hom_proj, stable_hom_inj, covariant_defect_dim, contravariant_defect_dim)
from .almost_split import AlmostSplit, almost_split
from .catalog import interval, linear_catalog, resolve, corpus, ses_pool
from .classify import Classification, classify_gar
from .verify import Check, SuiteReport, SUITES, run_suite

__all__ = [
    "transpose", "tau", "tau_minus", "tau_report", "tau_minus_report", "trtr_check", "Translate",
    "ShortExactSeq", "ExtSpace", "ExtClass", "ext1", "ext_dim", "realize_extension", "is_split",
    "stable_hom_proj", "stable_hom_inj", "covariant_defect_dim", "contravariant_defect_dim",
    "AlmostSplit", "almost_split", "interval", "linear_catalog", "resolve", "corpus", "ses_pool",
    "Classification", "classify_gar", "Check", "SuiteReport", "SUITES", "run_suite",
]
