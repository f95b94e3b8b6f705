"""Exact exterior power and Adams operations on cubes of commuting automorphisms."""

from .bincx import (
    BinaryComplexPair,
    Cube,
    CubeError,
    FormalSum,
    GeneralCube,
    cube_to_bincx,
    cube_to_complex,
    external_product,
    normalize_cube,
    verify_certificate,
)
from .invariants import symbol, symbol_of_sum, torsion
from .kops import adams, external_product_sum, hiller_lambda, lambda_cube, lambda_general_cube
from .linalg import QQ, ExactMatrix, FieldSpec
from .symfunc import newton_poly, product_poly, schur_in_e

__version__ = "0.1.0"

__all__ = [
    "BinaryComplexPair",
    "Cube",
    "CubeError",
    "ExactMatrix",
    "FieldSpec",
    "FormalSum",
    "GeneralCube",
    "QQ",
    "adams",
    "cube_to_bincx",
    "cube_to_complex",
    "external_product",
    "external_product_sum",
    "hiller_lambda",
    "lambda_cube",
    "lambda_general_cube",
    "newton_poly",
    "normalize_cube",
    "product_poly",
    "schur_in_e",
    "symbol",
    "symbol_of_sum",
    "torsion",
    "verify_certificate",
]
