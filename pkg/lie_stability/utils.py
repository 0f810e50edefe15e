import sympy

from lie_stability.lattice import TorusPolynomial


def format_rational(value) -> str:
    """Formats an exact rational as ``p/q`` (or ``p`` when the denominator is 1)."""
    value = sympy.Rational(value)
    if value.q == 1:
        return str(value.p)
    return f"{value.p}/{value.q}"


def parse_rational(text: str) -> sympy.Rational:
    """
    Parses ``p`` or ``p/q`` into an exact rational.

    Raises:
        ValueError: If the text is not an integer or a fraction of integers.
    """
    parts = text.strip().split("/")
    if len(parts) > 2 or not all(part.strip().lstrip("+-").isdigit() for part in parts):
        raise ValueError(f"expected a rational of the form p or p/q, but got {text!r}")
    if len(parts) == 2 and int(parts[1]) == 0:
        raise ValueError("expected a non-zero denominator")
    return sympy.Rational(text.strip())


def format_pi_multiple(coefficient, power: int) -> str:
    """Formats ``coefficient * pi**power`` as ``48*pi^2``."""
    coefficient = sympy.Rational(coefficient)
    if coefficient == 0:
        return "0"
    pi_text = "pi" if power == 1 else f"pi^{power}"
    return f"{format_rational(coefficient)}*{pi_text}"


def encode_rational(value) -> dict:
    value = sympy.Rational(value)
    return {"num": int(value.p), "den": int(value.q)}


def decode_rational(data: dict) -> sympy.Rational:
    if data is None:
        return data
    return sympy.Rational(data["num"], data["den"])


def encode_polynomial(polynomial: TorusPolynomial) -> dict:
    """
    Encodes a torus polynomial for JSON output.

    Exponent coordinates are written in the stored half-lattice units.
    """
    if polynomial is None:
        return polynomial

    return {
        "rank": polynomial.rank,
        "exponent_unit": "1/2",
        "terms": [
            [list(exponent), int(coeff.p), int(coeff.q)]
            for exponent, coeff in polynomial.items()
        ],
    }


def decode_polynomial(data: dict) -> TorusPolynomial:
    if data is None:
        return data

    if data.get("exponent_unit", "1/2") != "1/2":
        raise ValueError(f"unsupported exponent unit: {data['exponent_unit']}")

    rank = data["rank"]
    terms = {}
    for coords, numerator, denominator in data["terms"]:
        if len(coords) != rank:
            raise ValueError(f"expected {rank} exponent coordinates, but got {len(coords)}")
        terms[tuple(coords)] = sympy.Rational(numerator, denominator)
    return TorusPolynomial(terms, rank)
