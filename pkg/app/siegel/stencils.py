"""Fourth-order central finite differences in real coordinates, with Wirtinger helpers."""

import logging
from typing import Callable, Dict, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

# offset -> weight, to be divided by h (first) or h^2 (second)
FIRST_STENCIL = ((-2, 1.0 / 12), (-1, -8.0 / 12), (1, 8.0 / 12), (2, -1.0 / 12))
SECOND_STENCIL = ((-2, -1.0 / 12), (-1, 16.0 / 12), (0, -30.0 / 12), (1, 16.0 / 12), (2, -1.0 / 12))


def scaled_step(value: float, step: float) -> float:
    return step * max(1.0, abs(value))


class Derivatives:
    """Cached first and second real partials of f at one point.

    f maps a coordinate array to a complex number. Mixed second partials use
    the tensor product of two first-derivative stencils (16 points).
    """

    def __init__(self, f: Callable[[np.ndarray], complex], point: Sequence[float], step: float):
        if step <= 0:
            raise ValueError(f"finite-difference step must be positive, got {step}")
        self.f = f
        self.point = np.asarray(point, dtype=float)
        self.step = step
        self.h = np.array([scaled_step(c, step) for c in self.point])
        self._values: Dict[Tuple[Tuple[int, int], ...], complex] = {}
        self._first: Dict[int, complex] = {}
        self._second: Dict[Tuple[int, int], complex] = {}

    def value_at(self, *offsets: Tuple[int, int]) -> complex:
        key = tuple(sorted((i, o) for i, o in offsets if o != 0))
        if key not in self._values:
            shifted = self.point.copy()
            for i, o in key:
                shifted[i] += o * self.h[i]
            self._values[key] = complex(self.f(shifted))
        return self._values[key]

    def first(self, i: int) -> complex:
        if i not in self._first:
            total = sum(w * self.value_at((i, o)) for o, w in FIRST_STENCIL)
            self._first[i] = total / self.h[i]
        return self._first[i]

    def second(self, i: int, j: int) -> complex:
        key = (min(i, j), max(i, j))
        if key not in self._second:
            if i == j:
                total = sum(w * self.value_at((i, o)) for o, w in SECOND_STENCIL)
                self._second[key] = total / self.h[i] ** 2
            else:
                total = sum(wi * wj * self.value_at((i, oi), (j, oj))
                            for oi, wi in FIRST_STENCIL for oj, wj in FIRST_STENCIL)
                self._second[key] = total / (self.h[i] * self.h[j])
        return self._second[key]

    # Wirtinger derivatives of the complex variable with real part a, imaginary part b

    def holo(self, a: int, b: int) -> complex:
        return 0.5 * (self.first(a) - 1j * self.first(b))

    def anti(self, a: int, b: int) -> complex:
        return 0.5 * (self.first(a) + 1j * self.first(b))

    def holo_holo(self, w1: Tuple[int, int], w2: Tuple[int, int]) -> complex:
        (a1, b1), (a2, b2) = w1, w2
        return 0.25 * (self.second(a1, a2) - 1j * self.second(a1, b2)
                       - 1j * self.second(b1, a2) - self.second(b1, b2))

    def anti_holo(self, w1: Tuple[int, int], w2: Tuple[int, int]) -> complex:
        """d/d conj(w1) d/d w2."""
        (a1, b1), (a2, b2) = w1, w2
        return 0.25 * (self.second(a1, a2) - 1j * self.second(a1, b2)
                       + 1j * self.second(b1, a2) + self.second(b1, b2))

    def anti_anti(self, w1: Tuple[int, int], w2: Tuple[int, int]) -> complex:
        (a1, b1), (a2, b2) = w1, w2
        return 0.25 * (self.second(a1, a2) + 1j * self.second(a1, b2)
                       + 1j * self.second(b1, a2) - self.second(b1, b2))

    @property
    def evaluations(self) -> int:
        return len(self._values)
