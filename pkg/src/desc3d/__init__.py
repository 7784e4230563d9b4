"""Exact computation of the descendant 3D-index of ideal triangulations.

Series are Laurent series in ``u = q^(1/2)`` with exact rational
coefficients. The main entry points are :func:`rotated_index`,
:func:`inserted_rotated_index`, :func:`extract_q`, :func:`guess` and
:func:`block`.
"""
__version__ = "0.1.0"

from .blocks import BlockId, block, factorization_check
from .indexsum import rotated_index, window
from .insertion import Insertion, builtin_insertion, inserted_rotated_index, parse_insertion
from .kernels import backend
from .nzdata import builtin, builtin_reduced, parse_triangulation, reduce
from .qdiff import QDiffOperator, guess, known_operator
from .qmatrix import extract_q, verify_q
from .qseries import QSeries
from .ratfun import RatFun, UPoly

__all__ = [
    "__version__",
    "BlockId",
    "Insertion",
    "QDiffOperator",
    "QSeries",
    "RatFun",
    "UPoly",
    "backend",
    "block",
    "builtin",
    "builtin_insertion",
    "builtin_reduced",
    "extract_q",
    "factorization_check",
    "guess",
    "inserted_rotated_index",
    "known_operator",
    "parse_insertion",
    "parse_triangulation",
    "reduce",
    "rotated_index",
    "verify_q",
    "window",
]
