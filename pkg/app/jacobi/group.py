"""H x C, the Jacobi group SL_2(Z) x Z^2 and representatives of Gamma^J_infinity \\ Gamma^J."""

import logging
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from pathlib import Path
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from ..errors import CacheCorruptionError, DomainError
from ..siegel.cosets import read_rows, write_rows

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JacobiPoint:
    tau: complex
    z: complex

    def __post_init__(self):
        object.__setattr__(self, "tau", complex(self.tau))
        object.__setattr__(self, "z", complex(self.z))
        if not self.tau.imag > 0:
            raise DomainError(f"Im tau must be positive, got {self.tau}")

    @classmethod
    def from_coordinates(cls, coords: Sequence[float]) -> "JacobiPoint":
        x, y, u, v = coords
        return cls(complex(x, y), complex(u, v))

    @property
    def y(self) -> float:
        return self.tau.imag

    @property
    def v(self) -> float:
        return self.z.imag

    def coordinates(self) -> np.ndarray:
        return np.array([self.tau.real, self.tau.imag, self.z.real, self.z.imag])


@dataclass(frozen=True)
class JacobiEvaluator:
    """A function on H x C with a name and optional metadata."""
    fn: Callable[[JacobiPoint], complex] = field(compare=False)
    name: str = "phi"
    meta: Dict = field(default_factory=dict, compare=False)

    def __call__(self, point: JacobiPoint) -> complex:
        return complex(self.fn(point))

    def on_coordinates(self, coords: Sequence[float]) -> complex:
        return self(JacobiPoint.from_coordinates(coords))


@dataclass(frozen=True)
class JacobiGroupElement:
    """[(a b; c d), (lambda, mu)], acting by (tau, z) -> (M tau, (z + lambda tau + mu)/(c tau + d))."""
    a: int
    b: int
    c: int
    d: int
    lam: int = 0
    mu: int = 0

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"({self.a} {self.b}; {self.c} {self.d}) does not have determinant 1")

    def __matmul__(self, other: "JacobiGroupElement") -> "JacobiGroupElement":
        """[M1, X1][M2, X2] = [M1 M2, X1 M2 + X2]."""
        return JacobiGroupElement(
            self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d,
            self.lam * other.a + self.mu * other.c + other.lam,
            self.lam * other.b + self.mu * other.d + other.mu,
        )

    def act(self, point: JacobiPoint) -> JacobiPoint:
        j = self.c * point.tau + self.d
        return JacobiPoint((self.a * point.tau + self.b) / j,
                           (point.z + self.lam * point.tau + self.mu) / j)

    def heisenberg_exponent(self, point: JacobiPoint) -> complex:
        """-c (z + lambda tau + mu)^2 / (c tau + d) + lambda^2 tau + 2 lambda z."""
        tau, z = point.tau, point.z
        shifted = z + self.lam * tau + self.mu
        return -self.c * shifted ** 2 / (self.c * tau + self.d) + self.lam ** 2 * tau + 2 * self.lam * z

    def to_list(self) -> List[int]:
        return [self.a, self.b, self.c, self.d, self.lam, self.mu]


def complete_row(c: int, d: int) -> Tuple[int, int]:
    """(a, b) with a d - b c = 1 for a coprime bottom row (c, d)."""
    if gcd(c, d) != 1:
        raise ValueError(f"bottom row ({c}, {d}) is not coprime")
    # extended Euclid on (d, -c): a d + b (-c) = 1
    old_r, r = d, -c
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    a, b = old_s * old_r, old_t * old_r
    return a, b


@dataclass
class JacobiCosetFamily:
    """Coset representatives [M, l (a, b)] for coprime (c, d) and l in [-bound, bound].

    Left multiplication by [(1 eta; 0 1), (0, n)] shifts (lambda, mu) by
    n (c, d), so l (a, b) with the completed top row runs through the cosets
    over a fixed bottom row.
    """
    bound: int
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    lam: np.ndarray
    mu: np.ndarray

    def __len__(self) -> int:
        return len(self.c)

    def elements(self) -> List[JacobiGroupElement]:
        return [JacobiGroupElement(*map(int, row)) for row in
                zip(self.a, self.b, self.c, self.d, self.lam, self.mu)]

    def keys(self) -> List[Tuple[int, int, int]]:
        """Coset invariants (c, d, lambda d - mu c)."""
        return [(int(c), int(d), int(lam * d - mu * c))
                for c, d, lam, mu in zip(self.c, self.d, self.lam, self.mu)]

    def rows(self) -> List[Tuple[int, int]]:
        return sorted({(int(c), int(d)) for c, d in zip(self.c, self.d)})

    @classmethod
    def from_rows(cls, bound: int, rows: Sequence[Sequence[int]]) -> "JacobiCosetFamily":
        data = np.array(rows, dtype=np.int64).reshape(-1, 6)
        return cls(bound, *(data[:, i].copy() for i in range(6)))


def coprime_rows(bound: int) -> List[Tuple[int, int]]:
    return [(c, d) for c in range(-bound, bound + 1) for d in range(-bound, bound + 1)
            if gcd(c, d) == 1]


def jacobi_cosets(bound: int) -> JacobiCosetFamily:
    """Coprime (c, d) with |c|, |d| <= bound, one completion each, and l in [-bound, bound]."""
    if bound < 0:
        raise ValueError(f"bound must be non-negative, got {bound}")
    rows = []
    for c, d in coprime_rows(bound) or [(0, 1)]:
        a, b = complete_row(c, d)
        for l in range(-bound, bound + 1):
            rows.append((a, b, c, d, l * a, l * b))
    logger.info(f"Enumerated {len(rows)} Jacobi cosets at bound {bound}")
    return JacobiCosetFamily.from_rows(bound, rows)


def brute_force_jacobi_keys(bound: int) -> set:
    """Invariants (c, d, lambda d - mu c) of all group elements in a box, restricted to the bound."""
    radius = max(bound, 1)
    shifts = range(-bound * radius, bound * radius + 1)
    keys = set()
    for a, b, c, d in product(range(-radius, radius + 1), repeat=4):
        if a * d - b * c != 1 or max(abs(c), abs(d)) > bound:
            continue
        for lam, mu in product(shifts, repeat=2):
            l = lam * d - mu * c
            if abs(l) <= bound:
                keys.add((c, d, l))
    return keys


def random_jacobi_point(rng: np.random.Generator) -> JacobiPoint:
    """A sample point with y near 1 and small |v|."""
    y = rng.uniform(0.9, 1.4)
    v = rng.uniform(-0.3, 0.3)
    x, u = rng.uniform(-0.5, 0.5, size=2)
    return JacobiPoint(complex(x, y), complex(u, v))


class JacobiCosetCache:
    """Text cache of Jacobi coset families: header line, then 6 integers per line."""

    def __init__(self, cache_dir: str):
        self.cache_dir = Path(cache_dir)
        self.logger = logging.getLogger(__name__)

    def path(self, bound: int) -> Path:
        return self.cache_dir / f"jacobi_bound{bound}.txt"

    def write(self, family: JacobiCosetFamily) -> Path:
        path = self.path(family.bound)
        write_rows(path, "jacobi", family.bound, [e.to_list() for e in family.elements()])
        self.logger.info(f"Wrote {len(family)} Jacobi cosets to {path}")
        return path

    def read(self, bound: int) -> JacobiCosetFamily:
        path = self.path(bound)
        stored_bound, rows = read_rows(path, "jacobi", 6)
        if stored_bound != bound:
            raise CacheCorruptionError(f"{path}: header bound {stored_bound} != {bound}")
        for line, row in enumerate(rows, start=2):
            try:
                JacobiGroupElement(*row)
            except ValueError:
                raise CacheCorruptionError(f"{path}: line {line} does not have determinant 1") from None
        return JacobiCosetFamily.from_rows(bound, rows)

    def load_or_build(self, bound: int) -> JacobiCosetFamily:
        if self.path(bound).exists():
            return self.read(bound)
        family = jacobi_cosets(bound)
        self.write(family)
        return family
