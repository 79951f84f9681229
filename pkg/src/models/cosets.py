from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Tuple

import numpy as np


def orbit(j: int, q: int, n: int) -> Tuple[int, ...]:
    """C_j = (j, qj, q^2 j, ...) mod n in generation order"""
    start = j % n if n else 0
    elements = [start]
    current = (start * q) % n if n else 0
    while current != start:
        elements.append(current)
        current = (current * q) % n
    return tuple(elements)


@dataclass(frozen=True, eq=False)
class CosetTable:
    """All q-cyclotomic cosets modulo n, keyed by their smallest element"""

    q: int
    n: int
    leader_of: np.ndarray = field(repr=False)
    leaders: Tuple[int, ...] = field(repr=False)
    sizes: Dict[int, int] = field(repr=False)

    def leader(self, j: int) -> int:
        return int(self.leader_of[j % self.n])

    def size(self, j: int) -> int:
        return self.sizes[self.leader(j)]

    def coset(self, j: int) -> Tuple[int, ...]:
        return orbit(j, self.q, self.n)

    def same_coset(self, i: int, j: int) -> bool:
        return self.leader(i) == self.leader(j)

    def __iter__(self) -> Iterator[int]:
        return iter(self.leaders)

    def __len__(self) -> int:
        return len(self.leaders)

    def records(self) -> List[dict]:
        return [
            {"leader": j, "size": self.sizes[j], "elements": list(self.coset(j))}
            for j in self.leaders
        ]


@dataclass(frozen=True)
class CosetStats:
    """Even-element counts rho and parities nu per coset leader (binary case)"""

    m: int
    rho: Dict[int, int]
    nu: Dict[int, int]


@dataclass(frozen=True)
class EpsilonTable:
    """epsilon_a and the sets B_a = {2^i a : i < epsilon_a} for odd a <= 2^t - 1"""

    t: int
    epsilon: Dict[int, int]
    b_sets: Dict[int, Tuple[int, ...]]

    @property
    def T(self) -> int:
        return 2 ** self.t - 1

    @property
    def odd_count(self) -> int:
        return sum(1 for eps in self.epsilon.values() if eps % 2 == 1)

    def odd_leaders(self) -> List[int]:
        return [a for a, eps in self.epsilon.items() if eps % 2 == 1]


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    holds: bool
    detail: str = ""
