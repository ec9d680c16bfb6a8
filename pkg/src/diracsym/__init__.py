"""Exact gamma-matrix algebra and C/P/T/Q discrete-symmetry checks for the Dirac equation."""

from ._version import __version__
from .scalars import ExactComplex, ExactMatrix, I_UNIT, ONE, ZERO
from .clifford import basis_table, dirac_rep, gamma, identity_checks
from .gammaexpr import ParseError, canonicalize, eval_exact, evaluate, format_canonical, parse
from .discrete import (
    DiscreteOp,
    IntertwinerConstraint,
    apply,
    compose,
    make_C,
    make_P,
    make_Q,
    make_T,
    operator,
    solve_intertwiner,
    transformation_table,
)
from .planewave import PlaneWave, PlaneWaveState, ptq_vs_c_check
from .coupling import DiracInstance, build_solution, instance_map, transport_check
from .report import Report, run_suite

__all__ = [
    "__version__",
    "ExactComplex",
    "ExactMatrix",
    "ZERO",
    "ONE",
    "I_UNIT",
    "basis_table",
    "dirac_rep",
    "gamma",
    "identity_checks",
    "ParseError",
    "parse",
    "eval_exact",
    "evaluate",
    "canonicalize",
    "format_canonical",
    "DiscreteOp",
    "IntertwinerConstraint",
    "apply",
    "compose",
    "make_P",
    "make_T",
    "make_C",
    "make_Q",
    "operator",
    "solve_intertwiner",
    "transformation_table",
    "PlaneWave",
    "PlaneWaveState",
    "ptq_vs_c_check",
    "DiracInstance",
    "build_solution",
    "instance_map",
    "transport_check",
    "Report",
    "run_suite",
]
