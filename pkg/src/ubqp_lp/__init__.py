"""UBQP to LP reduction, a bundled simplex solver, and a brute-force oracle."""
from .instance import UbqpInstance, evaluate, random_instance
from .layout import Layout, dims
from .lpsolve import LpProblem, LpSolution, SolveOptions, check_point, solve
from .reduction import assemble, build_E, build_T

__all__ = [
    "Layout",
    "LpProblem",
    "LpSolution",
    "SolveOptions",
    "UbqpInstance",
    "assemble",
    "build_E",
    "build_T",
    "check_point",
    "dims",
    "evaluate",
    "random_instance",
    "solve",
]
