"""Defining polynomials pinned by the worked examples.

Generator polynomials depend on the choice of primitive element, so every
worked example fixes its modulus. Coefficients are ascending (c0, ..., cm).
"""
from typing import Dict, List, Optional, Tuple

MODULI: Dict[Tuple[int, int], Tuple[int, ...]] = {
    # Binary fields
    (2, 3): (1, 1, 0, 1),                      # x^3 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),                # x^5 + x^2 + 1
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),          # x^7 + x + 1
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),    # x^9 + x^4 + 1
    # Ternary fields
    (3, 2): (2, 2, 1),                         # x^2 + 2x + 2
    (3, 3): (1, 2, 0, 1),                      # x^3 + 2x + 1
    (3, 4): (2, 0, 0, 2, 1),                   # x^4 + 2x^3 + 2
    (3, 5): (1, 2, 0, 0, 0, 1),                # x^5 + 2x + 1
    (3, 6): (2, 2, 1, 0, 2, 0, 1),             # x^6 + 2x^4 + x^2 + 2x + 2
    (3, 7): (1, 0, 2, 0, 0, 0, 0, 1),          # x^7 + 2x^2 + 1
    # Quinary fields
    (5, 2): (2, 4, 1),                         # x^2 + 4x + 2
    (5, 3): (3, 3, 0, 1),                      # x^3 + 3x + 3
    (5, 6): (2, 0, 1, 4, 1, 0, 1),             # x^6 + x^4 + 4x^3 + x^2 + 2
}


def get_modulus(q: int, m: int) -> Optional[List[int]]:
    """Embedded modulus for (q, m), if a worked example pins one"""
    coeffs = MODULI.get((q, m))
    return list(coeffs) if coeffs is not None else None


def has_modulus(q: int, m: int) -> bool:
    return (q, m) in MODULI
