"""Parsers and formatters for the text forms used by the CLI and the corpus"""
import re
from typing import Iterable, List, Optional, Sequence

from src.models.field import FieldCtx, FieldElement
from src.models.functions import Family
from src.models.poly import Poly
from src.utils.errors import InvalidArgs

_TERM_RE = re.compile(r"^(\d*)\*?(?:(x)(?:\^(\d+))?)?$")
_ELEMENT_RE = re.compile(r"^(-?)\s*(?:alpha|a)(?:\s*\^\s*(-?\d+))?$")


def parse_poly(text: str, q: int) -> Poly:
    """Read forms such as x^4+x^3+x^2+1 or 2x^5+x+2 over GF(q)"""
    cleaned = text.replace(" ", "")
    if not cleaned:
        raise InvalidArgs("Empty polynomial", details={"text": text})
    cleaned = cleaned.replace("-", "+-")
    coeffs: dict = {}
    for raw in cleaned.split("+"):
        if not raw:
            continue
        sign = 1
        if raw.startswith("-"):
            sign, raw = -1, raw[1:]
        match = _TERM_RE.match(raw)
        if not match or not raw:
            raise InvalidArgs(f"Cannot read term '{raw}'", details={"text": text})
        digits, var, power = match.groups()
        coeff = int(digits) if digits else 1
        if var is None:
            if not digits:
                raise InvalidArgs(f"Cannot read term '{raw}'", details={"text": text})
            degree = 0
        else:
            degree = int(power) if power else 1
        coeffs[degree] = coeffs.get(degree, 0) + sign * coeff
    top = max(coeffs)
    return Poly(q, [coeffs.get(i, 0) for i in range(top + 1)])


def parse_coeffs(text: str) -> List[int]:
    """Comma separated ascending coefficients, e.g. 1,1,0,1"""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InvalidArgs("Coefficients must be integers", details={"text": text})


def parse_modulus(text: Optional[str], q: int) -> Optional[List[int]]:
    """Modulus as a polynomial in x or as ascending coefficients"""
    if text is None:
        return None
    if "x" in text:
        return list(parse_poly(text, q).coeffs)
    return parse_coeffs(text)


def parse_element(text: str, ctx: FieldCtx) -> FieldElement:
    """Accepts base-field integers (1, -1, 2), alpha, alpha^k, -alpha^k"""
    value = text.strip().lower()
    if re.fullmatch(r"-?\d+", value):
        return ctx.element(int(value) % ctx.q)
    match = _ELEMENT_RE.match(value)
    if not match:
        raise InvalidArgs(f"Cannot read field element '{text}'", details={"text": text})
    negate, power = match.groups()
    element = ctx.alpha(int(power) if power else 1)
    return -element if negate else element


def parse_family(text: str) -> Family:
    try:
        return Family.parse(text)
    except ValueError:
        choices = ", ".join(f.value for f in Family)
        raise InvalidArgs(f"Unknown family '{text}' (choose from {choices})", details={"family": text})


def format_triple(n: int, k: int, d: Optional[int] = None) -> str:
    if d is None:
        return f"[{n},{k}]"
    return f"[{n},{k},{d}]"


def format_interval(lo: int, hi: int) -> str:
    return str(lo) if lo == hi else f"{lo}..{hi}"


def format_leaders(leaders: Iterable[int]) -> str:
    return " ".join(str(j) for j in leaders)


def ids_filter(ids: Sequence[str], pattern: Optional[str]) -> List[str]:
    """Ids containing the pattern; every id when no pattern is given"""
    if not pattern:
        return list(ids)
    return [i for i in ids if pattern in i]
