import time
from itertools import chain, combinations, islice, product
from math import comb, gcd
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from src.config.settings import get_settings
from src.models.analysis import DistanceResult, Relation, SubcodeReport
from src.models.poly import Poly
from src.models.schemas import BoundReport
from src.models.sequences import CyclicCode
from src.services.cyclotomy_service import build_cosets
from src.services.sequence_service import zero_set_of
from src.utils.errors import BudgetExceeded, InvalidArgs

logger = structlog.get_logger()

# Set bits per byte value
POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


# Bounds
def _longest_cyclic_run(bits: np.ndarray) -> int:
    if bits.all():
        return int(bits.size)
    start = int(np.flatnonzero(~bits)[0])
    rolled = np.roll(bits, -start).astype(np.int8)
    edges = np.diff(np.concatenate(([0], rolled, [0])))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return int((ends - starts).max()) if starts.size else 0


def _unit_steps(n: int, q: int) -> Iterator[int]:
    """One step per orbit of the units mod n under multiplication by q and -1"""
    seen = np.zeros(n, dtype=bool)
    for step in range(1, n):
        if seen[step] or gcd(step, n) != 1:
            continue
        yield step
        current = step
        while not seen[current]:
            seen[current] = True
            seen[(-current) % n] = True
            current = (current * q) % n


def run_length(exponents: Iterable[int], n: int, step: int = 1) -> int:
    """Longest run b, b + step, b + 2 step, ... (cyclically) inside the exponent set"""
    mask = np.zeros(n, dtype=bool)
    mask[[e % n for e in exponents]] = True
    order = (np.arange(n, dtype=np.int64) * step) % n
    return _longest_cyclic_run(mask[order])


def bch_bound(exponents: Iterable[int], n: int, q: int = 2, parity_lift: bool = False,
              all_steps: bool = False) -> int:
    """Consecutive-root lower bound on the minimum distance.

    Runs are taken over the root exponents and their negatives (the
    reciprocal code); with ``all_steps`` every step coprime to n is tried.
    The parity lift applies to binary codes whose generator has the root 1.
    """
    exponents = [e % n for e in exponents]
    if not exponents:
        return 1
    if len(set(exponents)) == n:
        return n + 1
    steps: Iterable[int] = _unit_steps(n, q) if all_steps else (1, n - 1)
    mask = np.zeros(n, dtype=bool)
    mask[exponents] = True
    best = 0
    for step in steps:
        order = (np.arange(n, dtype=np.int64) * step) % n
        best = max(best, _longest_cyclic_run(mask[order]))
    bound = best + 1
    if parity_lift and q == 2 and bound % 2 == 1:
        bound += 1
    return bound


def square_root_bound(n: int) -> int:
    """Smallest positive even d with d^2 - d + 1 >= n"""
    if n < 1:
        raise InvalidArgs("n must be positive", details={"n": n})
    d = 2
    while d * d - d + 1 < n:
        d += 2
    return d


def sphere_packing_upper(n: int, k: int, q: int) -> int:
    """Largest d whose radius-(d-1)/2 ball fits q^{n-k} times into GF(q)^n, capped by n - k + 1"""
    if not 0 <= k <= n:
        raise InvalidArgs("Dimension must satisfy 0 <= k <= n", details={"n": n, "k": k})
    capacity = q ** (n - k)
    best = 1
    volume = 1
    radius = 0
    for d in range(2, n - k + 2):
        t = (d - 1) // 2
        while radius < t:
            radius += 1
            volume += comb(n, radius) * (q - 1) ** radius
        if volume > capacity:
            break
        best = d
    return best


# Code structure
def root_exponents(code: CyclicCode) -> List[int]:
    """All i with g(alpha^i) = 0"""
    if code.generator.degree <= 0:
        return []
    leaders = code.zero_set
    if not leaders and code.ctx is not None:
        leaders = zero_set_of(code.generator, code.ctx)
    table = build_cosets(code.q, code.n)
    return sorted(i for j in leaders for i in table.coset(j))


def has_root_one(code: CyclicCode) -> bool:
    return code.generator(1) == 0


def dual_code(code: CyclicCode) -> CyclicCode:
    """Code generated by the monic reciprocal of h(x) = (x^n - 1) / g(x)"""
    check = code.check_polynomial()
    generator = check.reciprocal()
    zero_set: Tuple[int, ...] = ()
    if code.ctx is not None:
        zero_set = zero_set_of(generator, code.ctx)
    return CyclicCode(q=code.q, n=code.n, generator=generator, zero_set=zero_set, ctx=code.ctx)


def subcode_relation(a: CyclicCode, b: CyclicCode) -> SubcodeReport:
    """Containment by generator divisibility; a is inside b when g_b divides g_a"""
    if (a.q, a.n) != (b.q, b.n):
        raise InvalidArgs("Codes must share q and n", details={"a": [a.q, a.n], "b": [b.q, b.n]})
    if a.generator == b.generator:
        return SubcodeReport(relation=Relation.EQUAL)
    if b.generator.divides(a.generator):
        relation, big, small = Relation.A_IN_B, b, a
    elif a.generator.divides(b.generator):
        relation, big, small = Relation.B_IN_A, a, b
    else:
        return SubcodeReport(relation=Relation.INCOMPARABLE)
    extra = small.generator.exact_div(big.generator)
    ctx = a.ctx or b.ctx
    leaders = zero_set_of(extra, ctx) if ctx is not None else ()
    even = a.q == 2 and extra == Poly.x_minus(2, 1)
    return SubcodeReport(
        relation=relation,
        extra_factor=extra,
        extra_leaders=leaders,
        dimension_gap=big.k - small.k,
        even_weight_subcode=even,
    )


def generator_rows(code: CyclicCode) -> np.ndarray:
    """k x n matrix whose rows are x^i g(x)"""
    g = code.generator.array()
    rows = np.zeros((code.k, code.n), dtype=np.int64)
    for i in range(code.k):
        rows[i, i: i + g.size] = g
    return rows


def syndrome_columns(generator: Poly, n: int) -> np.ndarray:
    """n x r matrix of x^i mod g(x)"""
    q = generator.q
    r = generator.degree
    low = np.array(generator.coeffs[:r], dtype=np.int64)
    columns = np.zeros((n, r), dtype=np.int64)
    current = np.zeros(r, dtype=np.int64)
    current[0] = 1
    for i in range(n):
        columns[i] = current
        top = current[-1]
        current = np.concatenate(([0], current[:-1]))
        if top:
            current = (current - top * low) % q
    return columns


class AnalysisService:
    """Distance search and bound reports for cyclic codes"""

    def __init__(self):
        self.settings = get_settings()

    def bound_report(self, code: CyclicCode, with_distance: bool = True,
                     square_root: bool = False, max_work: Optional[int] = None,
                     max_weight: Optional[int] = None,
                     max_seconds: Optional[float] = None) -> BoundReport:
        n, q = code.n, code.q
        roots = root_exponents(code)
        lift = q == 2 and has_root_one(code)
        negated = [(-i) % n for i in roots]
        bch_gen = self._bch_unit(roots, n, q, lift)
        bch_rec = self._bch_unit(negated, n, q, lift)
        bch_any = bch_bound(roots, n, q, parity_lift=lift,
                            all_steps=n <= self.settings.BCH_MAX_PERIOD)
        upper = sphere_packing_upper(n, code.k, q)
        weight = code.generator.weight

        if with_distance:
            result = self.minimum_distance(code, max_work=max_work, max_weight=max_weight,
                                           max_seconds=max_seconds)
        else:
            lo = min(max(bch_gen, bch_rec, bch_any), upper)
            result = DistanceResult(lo=lo, hi=min(upper, weight) if code.k else lo, strategy="bounds")

        return BoundReport(
            bch_lower=bch_gen,
            bch_lower_reciprocal=bch_rec,
            bch_lower_any_step=bch_any,
            even_weight_lift=lift,
            square_root_lower=square_root_bound(n) if square_root else None,
            sphere_packing_upper=upper,
            generator_weight=weight,
            distance_exact=result.exact,
            distance_lo=result.lo,
            distance_hi=result.hi,
            strategy=result.strategy,
            all_weights_even=result.all_even,
        )

    def _bch_unit(self, exponents: Sequence[int], n: int, q: int, lift: bool) -> int:
        if not exponents:
            return 1
        if len(set(exponents)) == n:
            return n + 1
        bound = run_length(exponents, n) + 1
        if lift and bound % 2 == 1:
            bound += 1
        return bound

    def lower_bound(self, code: CyclicCode) -> int:
        roots = root_exponents(code)
        lift = code.q == 2 and has_root_one(code)
        return bch_bound(roots, code.n, code.q, parity_lift=lift,
                         all_steps=code.n <= self.settings.BCH_MAX_PERIOD)

    def minimum_distance(self, code: CyclicCode, max_work: Optional[int] = None,
                         max_weight: Optional[int] = None,
                         max_seconds: Optional[float] = None) -> DistanceResult:
        """Exact minimum distance, or an interval when the budget runs out.

        Codes with q^k <= ENUMERATION_LIMIT are enumerated; the rest go
        through a weight-ascending syndrome search.
        """
        n, k, q = code.n, code.k, code.q
        if k == 0:
            return DistanceResult(lo=n + 1, hi=n + 1, strategy="zero-code")
        if code.generator.degree == 0:
            return DistanceResult(lo=1, hi=1, exact=1, strategy="full-space", witness=(0,))

        max_work = max_work if max_work is not None else self.settings.DISTANCE_MAX_WORK
        max_weight = max_weight if max_weight is not None else self.settings.DISTANCE_MAX_WEIGHT
        max_seconds = max_seconds if max_seconds is not None else self.settings.DISTANCE_MAX_SECONDS
        deadline = time.time() + max_seconds

        lower = self.lower_bound(code)
        upper = min(sphere_packing_upper(n, k, q), code.generator.weight)
        lower = min(lower, upper)
        start_time = time.time()

        if q ** k <= self.settings.ENUMERATION_LIMIT:
            result = self._enumerate(code, lower, upper, deadline)
        else:
            result = self._syndrome_search(code, lower, upper, max_work, max_weight, deadline)
        logger.info(
            "Minimum distance",
            n=n,
            k=k,
            q=q,
            strategy=result.strategy,
            lo=result.lo,
            hi=result.hi,
            work=result.work,
            duration_ms=int((time.time() - start_time) * 1000),
        )
        return result

    # Strategy (a)
    def _enumerate(self, code: CyclicCode, lower: int, upper: int, deadline: float) -> DistanceResult:
        q, n, k = code.q, code.n, code.k
        rows = generator_rows(code)
        low = 0
        while low < k and q ** (low + 1) <= self.settings.ENUMERATION_CHUNK:
            low += 1
        low = max(low, 1)
        packed = q == 2 and n <= 64

        if packed:
            shifts = np.uint64(1) << np.arange(n, dtype=np.uint64)
            words = (rows.astype(np.uint64) * shifts).sum(axis=1, dtype=np.uint64)
            table = np.zeros(1, dtype=np.uint64)
            for word in words[:low]:
                table = np.concatenate((table, table ^ word))
            high_rows = words[low:]
        else:
            table = np.zeros((1, n), dtype=np.int64)
            for row in rows[:low]:
                table = np.concatenate([(table + c * row) % q for c in range(q)])
            high_rows = rows[low:]

        best = upper
        all_even = True
        work = 0
        high_count = q ** (k - low)
        try:
            for index in range(high_count):
                if time.time() > deadline:
                    raise BudgetExceeded("Enumeration ran out of time", details={"visited": work})
                if packed:
                    offset = np.uint64(0)
                    bits, position = index, 0
                    while bits:
                        if bits & 1:
                            offset ^= high_rows[position]
                        bits >>= 1
                        position += 1
                    block = table ^ offset
                    weights = POPCOUNT[block.view(np.uint8)].reshape(-1, 8).sum(axis=1)
                else:
                    digits = [(index // q ** i) % q for i in range(k - low)]
                    offset = (np.array(digits, dtype=np.int64) @ high_rows) % q if k > low else 0
                    weights = np.count_nonzero((table + offset) % q, axis=1)
                if index == 0:
                    weights = weights[1:]
                work += int(weights.size)
                if weights.size:
                    best = min(best, int(weights.min()))
                    if all_even and np.any(weights % 2):
                        all_even = False
                if best <= lower:
                    return DistanceResult(lo=best, hi=best, exact=best, strategy="enumeration",
                                          all_even=None, work=work)
        except BudgetExceeded as e:
            logger.warning("Distance budget exhausted", error=str(e), lo=lower, hi=best)
            return DistanceResult(lo=lower, hi=best, strategy="enumeration", work=work)
        return DistanceResult(lo=best, hi=best, exact=best, strategy="enumeration",
                              all_even=all_even, work=work)

    # Strategy (b)
    def _syndrome_search(self, code: CyclicCode, lower: int, upper: int, max_work: int,
                         max_weight: Optional[int], deadline: float) -> DistanceResult:
        q, n = code.q, code.n
        columns = syndrome_columns(code.generator, n)
        even_only = q == 2 and has_root_one(code)
        work = 0
        weight = lower
        strategy = "syndrome-search"
        while weight <= upper:
            if even_only and weight % 2:
                weight += 1
                continue
            if weight == upper:
                witness = None
                if upper == code.generator.weight:
                    witness = tuple(i for i, c in enumerate(code.generator.coeffs) if c)
                return DistanceResult(lo=upper, hi=upper, exact=upper, strategy=strategy,
                                      work=work, witness=witness)
            if max_weight is not None and weight > max_weight:
                break
            left = (weight + 1) // 2
            right = weight - left
            estimate = comb(n - 1, left - 1) * (q - 1) ** (left - 1) + comb(n - 1, right) * (q - 1) ** right
            if work + estimate > max_work:
                logger.warning("Distance budget exhausted", weight=weight, work=work, estimate=estimate)
                break
            try:
                found = self._search_weight(columns, q, left, right, deadline)
            except BudgetExceeded as e:
                logger.warning("Distance budget exhausted", error=str(e), weight=weight)
                break
            work += estimate
            logger.debug("Weight searched", weight=weight, work=work, found=found is not None)
            if found is not None:
                return DistanceResult(lo=weight, hi=weight, exact=weight, strategy=strategy,
                                      work=work, witness=found)
            weight += 1
        lo = min(weight, upper)
        return DistanceResult(lo=lo, hi=upper, exact=upper if lo == upper else None,
                              strategy=strategy, work=work)

    def _side(self, columns: np.ndarray, q: int, extra: int, fixed: bool,
              deadline: float) -> Iterator[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
        """Chunks of (positions, coefficient patterns, syndromes) for one half of the split.

        The fixed half holds position 0 with coefficient 1; positions are
        drawn from [1, n) in lexicographic order.
        """
        n, r = columns.shape
        base = columns[0] if fixed else np.zeros(r, dtype=np.int64)
        combos = list(product(range(1, q), repeat=extra))
        patterns = np.array(combos, dtype=np.int64).reshape(len(combos), extra)
        if extra == 0:
            yield np.zeros((1, 0), dtype=np.int64), patterns, (base % q)[None, :]
            return
        per_chunk = max(1, self.settings.ENUMERATION_CHUNK // patterns.shape[0])
        supports = combinations(range(1, n), extra)
        while True:
            if time.time() > deadline:
                raise BudgetExceeded("Syndrome search ran out of time")
            flat = np.fromiter(chain.from_iterable(islice(supports, per_chunk)), dtype=np.int64)
            if flat.size == 0:
                return
            positions = flat.reshape(-1, extra)
            synd = (base + np.einsum("pe,cer->cpr", patterns, columns[positions])) % q
            yield positions, patterns, synd.reshape(-1, r)

    def _search_weight(self, columns: np.ndarray, q: int, left: int, right: int,
                       deadline: float) -> Optional[Tuple[int, ...]]:
        """Support of a codeword of weight left + right through position 0, if one exists"""
        r = columns.shape[1]
        hash_weights = np.array([pow(q, i, 1 << 64) for i in range(r)], dtype=np.uint64)

        def keys(synd: np.ndarray) -> np.ndarray:
            return (synd.astype(np.uint64) * hash_weights).sum(axis=1, dtype=np.uint64)

        table_keys, table_rows = [], []
        for positions, patterns, synd in self._side(columns, q, left - 1, True, deadline):
            table_keys.append(keys(synd))
            table_rows.append((positions, patterns))
        all_keys = np.concatenate(table_keys)
        order = np.argsort(all_keys, kind="stable")
        sorted_keys = all_keys[order]
        offsets = np.cumsum([0] + [p.shape[0] * pat.shape[0] for p, pat in table_rows])

        def table_entry(index: int) -> Tuple[np.ndarray, np.ndarray]:
            chunk = int(np.searchsorted(offsets, index, side="right")) - 1
            positions, patterns = table_rows[chunk]
            local = index - offsets[chunk]
            combo, pattern = divmod(int(local), patterns.shape[0])
            return positions[combo], patterns[pattern]

        for positions, patterns, synd in self._side(columns, q, right, False, deadline):
            lookup = keys((-synd) % q)
            slots = np.searchsorted(sorted_keys, lookup)
            inside = slots < sorted_keys.size
            hits = np.flatnonzero(inside)
            hits = hits[sorted_keys[slots[hits]] == lookup[hits]]
            for hit in hits:
                combo, pattern = divmod(int(hit), patterns.shape[0])
                slot = int(slots[hit])
                while slot < sorted_keys.size and sorted_keys[slot] == lookup[hit]:
                    fixed_positions, fixed_pattern = table_entry(int(order[slot]))
                    support = self._verify(
                        columns, q,
                        [0] + fixed_positions.tolist(), [1] + fixed_pattern.tolist(),
                        positions[combo].tolist(), patterns[pattern].tolist(),
                    )
                    if support is not None:
                        return support
                    slot += 1
        return None

    def _verify(self, columns: np.ndarray, q: int, positions_a: List[int], coeffs_a: List[int],
                positions_b: List[int], coeffs_b: List[int]) -> Optional[Tuple[int, ...]]:
        word = {}
        for position, coeff in chain(zip(positions_a, coeffs_a), zip(positions_b, coeffs_b)):
            word[position] = (word.get(position, 0) + coeff) % q
        support = tuple(sorted(p for p, c in word.items() if c))
        if not support:
            return None
        syndrome = sum(word[p] * columns[p] for p in support) % q
        return support if not np.any(syndrome) else None


analysis_service = AnalysisService()
