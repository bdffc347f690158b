"""Exact character codegrees of permutation groups and a classifier for
groups with exactly four codegrees."""

from __future__ import annotations

from .build import BuiltGroup, build
from .chartable import character_table, cod_set, codegree_report
from .classify import CaseVerdict, classify, theorem_round_trip
from .dsl import parse_catalog, parse_spec, to_text
from .errors import CapacityError, CodegreeError, DomainError, InputError, InvariantError
from .perm import Permutation, PermGroup

__all__ = [
    "BuiltGroup", "build", "character_table", "cod_set", "codegree_report", "CaseVerdict",
    "classify", "theorem_round_trip", "parse_catalog", "parse_spec", "to_text", "CapacityError",
    "CodegreeError", "DomainError", "InputError", "InvariantError", "Permutation", "PermGroup",
]
