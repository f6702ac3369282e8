"""Exact finite-instance engine for order envelopes of homogeneous functions."""
from __future__ import annotations

__version__ = "0.1.0"

from ._backend import BACKEND, USE_NUMBA
from .errors import OrdhullError
from .order import Poset, CompletedPoset, closure, complete, is_order_complete
from .algebra import FiniteSemigroup, Homomorphism, cyclic_group, klein_group
from .actions import CarrierAction, OrderedAction, orbit, stabilizer, is_free
from .instance import FunctionTable, Instance, build_instance
from .instancefile import load_instance, load_fixture, parse_instance, save_instance
from .envelope import (classify, lower_envelope, upper_envelope, regularized_minorant,
                       regularized_majorant, check_on_generators, left_multiply)
from .statements import STATEMENTS, check_statement, check_statements
from .verifier import InstanceFamily, enumerate_instances, hunt, run_suite

__all__ = [
    "BACKEND", "USE_NUMBA", "OrdhullError",
    "Poset", "CompletedPoset", "closure", "complete", "is_order_complete",
    "FiniteSemigroup", "Homomorphism", "cyclic_group", "klein_group",
    "CarrierAction", "OrderedAction", "orbit", "stabilizer", "is_free",
    "FunctionTable", "Instance", "build_instance",
    "load_instance", "load_fixture", "parse_instance", "save_instance",
    "classify", "lower_envelope", "upper_envelope", "regularized_minorant",
    "regularized_majorant", "check_on_generators", "left_multiply",
    "STATEMENTS", "check_statement", "check_statements",
    "InstanceFamily", "enumerate_instances", "hunt", "run_suite",
]
