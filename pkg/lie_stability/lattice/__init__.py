from .torus_polynomial import (
    CosineParseError,
    ExponentVector,
    NonRealPolynomialError,
    PolynomialDivisionError,
    RankMismatchError,
    TorusPolynomial,
    parse_cosine,
)

__all__ = [
    "CosineParseError",
    "ExponentVector",
    "NonRealPolynomialError",
    "PolynomialDivisionError",
    "RankMismatchError",
    "TorusPolynomial",
    "parse_cosine",
]
