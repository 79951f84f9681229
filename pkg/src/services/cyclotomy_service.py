from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
import structlog

from src.models.cosets import CosetStats, CosetTable, EpsilonTable, LemmaCheck
from src.utils.errors import InvalidArgs, NotCoprime

logger = structlog.get_logger()


def build_cosets(q: int, n: int) -> CosetTable:
    """All q-cyclotomic cosets modulo n"""
    if n < 1 or gcd(q, n) != 1:
        raise NotCoprime(
            f"Cosets need gcd(q, n) = 1 (q={q}, n={n})",
            details={"q": q, "n": n},
        )
    return _build_cosets(q, n)


@lru_cache(maxsize=64)
def _build_cosets(q: int, n: int) -> CosetTable:
    base = np.arange(n, dtype=np.int64)
    leader_of = base.copy()
    current = (base * q) % n
    # Walk the whole orbit once; for n = q^m - 1 this takes m steps
    while not np.array_equal(current, base):
        np.minimum(leader_of, current, out=leader_of)
        current = (current * q) % n
    counts = np.bincount(leader_of, minlength=n)
    leaders = tuple(int(j) for j in np.flatnonzero(counts))
    sizes = {j: int(counts[j]) for j in leaders}
    leader_of.setflags(write=False)
    logger.debug("Cosets built", q=q, n=n, count=len(leaders))
    return CosetTable(q=q, n=n, leader_of=leader_of, leaders=leaders, sizes=sizes)


def coset_stats(table: CosetTable, m: int) -> CosetStats:
    """rho_i (even elements in C_i) and nu_i = (m rho_i / l_i) mod 2"""
    if table.q != 2:
        raise InvalidArgs("rho and nu are defined for binary cosets only", details={"q": table.q})
    rho: Dict[int, int] = {}
    nu: Dict[int, int] = {}
    for j in table.leaders:
        elements = table.coset(j)
        size = len(elements)
        if m % size:
            raise InvalidArgs(f"Coset size {size} does not divide m={m}", details={"leader": j})
        rho[j] = sum(1 for e in elements if e % 2 == 0)
        nu[j] = ((m // size) * rho[j]) % 2
    return CosetStats(m=m, rho=rho, nu=nu)


def nu_parity_holds(table: CosetTable, stats: CosetStats) -> bool:
    """nu_i + nu_{n-i} = 1 (mod 2) for 1 <= i <= n-1"""
    n = table.n
    for i in range(1, n):
        if (stats.nu[table.leader(i)] + stats.nu[table.leader(n - i)]) % 2 != 1:
            return False
    return True


def epsilon(a: int, t: int) -> int:
    """Number of i >= 0 with 2^i a <= 2^t - 1"""
    T = 2 ** t - 1
    count = 0
    while a <= T:
        count += 1
        a *= 2
    return count


def epsilon_table(t: int) -> EpsilonTable:
    if t < 1:
        raise InvalidArgs("t must be at least 1", details={"t": t})
    T = 2 ** t - 1
    eps: Dict[int, int] = {}
    b_sets = {}
    for a in range(1, T + 1, 2):
        eps[a] = epsilon(a, t)
        b_sets[a] = tuple(a * 2 ** i for i in range(eps[a]))
    return EpsilonTable(t=t, epsilon=eps, b_sets=b_sets)


def count_odd_eps(t: int) -> int:
    """N_t: odd a <= 2^t - 1 whose epsilon is odd"""
    return epsilon_table(t).odd_count


def n_t_closed_form(t: int) -> int:
    if t == 1:
        return 1
    return (2 ** t + (-1) ** (t - 1)) // 3


def n_p(i: int, p: int) -> int:
    """The gate N_p(i): 0 when p divides i, else 1"""
    return 0 if i % p == 0 else 1


@lru_cache(maxsize=None)
def _chain(J: int, t: int) -> int:
    if t == 1:
        return 1
    return sum(_chain(j, t - 1) for j in range(t - 1, J))


def n_choose_chain(J: int, t: int) -> int:
    """N(J, t) = sum_{j=t-1}^{J-1} N(j, t-1) with N(J, 1) = 1"""
    if t < 1 or J < t:
        raise InvalidArgs(f"N(J, t) needs J >= t >= 1 (J={J}, t={t})", details={"J": J, "t": t})
    return _chain(J, t)


def count_chains(J: int, t: int) -> int:
    """Strictly increasing (t-1)-tuples drawn from [1, J)"""
    return sum(1 for _ in combinations(range(1, J), t - 1))


# Lemma checks
def _pairwise_distinct(table: CosetTable, exponents: Sequence[int]) -> bool:
    leaders = [table.leader(e) for e in exponents]
    return len(set(leaders)) == len(leaders)


def _all_full(table: CosetTable, exponents: Iterable[int], m: int) -> bool:
    return all(table.size(e) == m for e in exponents)


def welch_cosets_check(table: CosetTable, m: int) -> LemmaCheck:
    """C_1, C_3, C_{2^t+1}, C_{2^t+2}, C_{2^t+3} are distinct and full for m = 2t+1"""
    t = (m - 1) // 2
    exponents = [1, 3, 2 ** t + 1, 2 ** t + 2, 2 ** t + 3]
    holds = _pairwise_distinct(table, exponents) and _all_full(table, exponents, m)
    return LemmaCheck("welch-five-cosets", holds, f"m={m}")


def small_cosets_check(table: CosetTable, m: int, h: int) -> LemmaCheck:
    """l_j = m for 1 <= j <= 2^h, and odd j <= 2^h - 1 lie in distinct cosets"""
    full = _all_full(table, range(1, 2 ** h + 1), m)
    distinct = _pairwise_distinct(table, list(range(1, 2 ** h, 2)))
    return LemmaCheck("small-cosets-full", full and distinct, f"m={m} h={h}")


def shifted_window_check(table: CosetTable, m: int, h: int, shift: int) -> LemmaCheck:
    """Cosets of B = shift + {0..2^h-1}: full, distinct, and meeting odd a <= 2^h-1 only at C_1"""
    window = [shift + i for i in range(2 ** h)]
    holds = _all_full(table, window, m) and _pairwise_distinct(table, window)
    for i, b in enumerate(window):
        for a in range(1, 2 ** h, 2):
            meets = table.same_coset(b, a)
            if meets != (i == 0 and a == 1 and table.same_coset(shift, 1)):
                holds = False
    return LemmaCheck("shifted-window", holds, f"m={m} h={h} shift={shift}")


def geometric_exponents(q: int, h: int) -> Dict[int, int]:
    """Exponents 1 + sum q^{i_j} + q^u with 1 <= i_1 < ... < u <= h-1, mapped to u"""
    exponents = {1: 0}
    for u in range(1, h):
        for size in range(0, u):
            for middle in combinations(range(1, u), size):
                exponents[1 + sum(q ** i for i in middle) + q ** u] = u
    return exponents


def geometric_cosets_check(table: CosetTable, q: int, m: int, h: int) -> LemmaCheck:
    exponents = sorted(geometric_exponents(q, h))
    holds = _pairwise_distinct(table, exponents) and _all_full(table, exponents, m)
    return LemmaCheck("geometric-exponents", holds, f"q={q} m={m} h={h}")


def coulter_mathews_exponents(h: int) -> Dict[int, Optional[int]]:
    """Exponents 1 + sum 3^i and 2 + sum 3^i over subsets of [1, h-1].

    Values are the largest index used for the 1+... family and None for 2+...
    """
    exponents: Dict[int, Optional[int]] = {}
    for size in range(0, h):
        for subset in combinations(range(1, h), size):
            tail = sum(3 ** i for i in subset)
            exponents[1 + tail] = max(subset) if subset else 0
            exponents[2 + tail] = None
    return exponents


def coulter_mathews_cosets_check(table: CosetTable, m: int, h: int) -> LemmaCheck:
    exponents = sorted(coulter_mathews_exponents(h))
    holds = _pairwise_distinct(table, exponents) and _all_full(table, exponents, m)
    return LemmaCheck("coulter-mathews-exponents", holds, f"m={m} h={h}")


def leaders_of(table: CosetTable, exponents: Iterable[int]) -> List[int]:
    return sorted({table.leader(e) for e in exponents})
