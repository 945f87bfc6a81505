"""Points of the degree-2 Siegel upper half space, Sp_2(Z) and the slash action."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence

import numpy as np

from ..errors import DomainError

logger = logging.getLogger(__name__)

# real coordinates of a point, in this order
COORDINATES = ("x", "y", "u", "v", "xp", "yp")


@dataclass(frozen=True)
class SiegelPoint:
    """Z = (tau z; z tau') with Y = Im Z positive definite."""
    tau: complex
    z: complex
    tau_p: complex

    def __post_init__(self):
        object.__setattr__(self, "tau", complex(self.tau))
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "tau_p", complex(self.tau_p))
        if not self.tau.imag > 0 or not self.det_Y > 0:
            raise DomainError(f"Im Z is not positive definite at {self}")

    @classmethod
    def from_matrix(cls, Z: np.ndarray) -> "SiegelPoint":
        return cls(Z[0, 0], 0.5 * (Z[0, 1] + Z[1, 0]), Z[1, 1])

    @classmethod
    def from_coordinates(cls, coords: Sequence[float]) -> "SiegelPoint":
        x, y, u, v, xp, yp = coords
        return cls(complex(x, y), complex(u, v), complex(xp, yp))

    @property
    def Z(self) -> np.ndarray:
        return np.array([[self.tau, self.z], [self.z, self.tau_p]], dtype=complex)

    @property
    def Y(self) -> np.ndarray:
        return self.Z.imag

    @property
    def det_Y(self) -> float:
        return self.tau.imag * self.tau_p.imag - self.z.imag ** 2

    def coordinates(self) -> np.ndarray:
        return np.array([self.tau.real, self.tau.imag, self.z.real, self.z.imag,
                         self.tau_p.real, self.tau_p.imag])

    def reflected(self) -> "SiegelPoint":
        """-conj(Z), which keeps Y."""
        return SiegelPoint(-self.tau.conjugate(), -self.z.conjugate(), -self.tau_p.conjugate())

    def translated(self, dx_p: float) -> "SiegelPoint":
        return SiegelPoint(self.tau, self.z, self.tau_p + dx_p)


def random_point(rng: np.random.Generator, spread: float = 0.4) -> SiegelPoint:
    """A sample point with Y near the identity."""
    y = rng.uniform(0.9, 1.5)
    yp = rng.uniform(0.9, 1.5)
    v = rng.uniform(-spread, spread) * np.sqrt(y * yp) * 0.5
    x, u, xp = rng.uniform(-0.5, 0.5, size=3)
    return SiegelPoint(complex(x, y), complex(u, v), complex(xp, yp))


J2 = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]], dtype=np.int64)


@dataclass(frozen=True)
class SymplecticMatrix:
    """An integral 4x4 matrix (A B; C D) with M J tM = J."""
    matrix: np.ndarray = field(compare=False)

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=np.int64).reshape(4, 4)
        if not np.array_equal(matrix @ J2 @ matrix.T, J2):
            raise ValueError(f"matrix is not symplectic:\n{matrix}")
        object.__setattr__(self, "matrix", matrix)

    @property
    def A(self) -> np.ndarray:
        return self.matrix[:2, :2]

    @property
    def B(self) -> np.ndarray:
        return self.matrix[:2, 2:]

    @property
    def C(self) -> np.ndarray:
        return self.matrix[2:, :2]

    @property
    def D(self) -> np.ndarray:
        return self.matrix[2:, 2:]

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return SymplecticMatrix(self.matrix @ other.matrix)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymplecticMatrix) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(tuple(self.matrix.ravel()))

    def inverse(self) -> "SymplecticMatrix":
        return SymplecticMatrix(-J2 @ self.matrix.T @ J2)

    def automorphy(self, point: SiegelPoint) -> complex:
        """det(CZ + D)."""
        return complex(np.linalg.det(self.C @ point.Z + self.D))

    def act(self, point: SiegelPoint) -> SiegelPoint:
        Z = point.Z
        denominator = self.C @ Z + self.D
        if abs(np.linalg.det(denominator)) < 1e-300:
            raise DomainError("CZ + D is singular")
        return SiegelPoint.from_matrix((self.A @ Z + self.B) @ np.linalg.inv(denominator))

    def to_list(self) -> List[int]:
        return [int(e) for e in self.matrix.ravel()]


def identity() -> SymplecticMatrix:
    return SymplecticMatrix(np.eye(4, dtype=np.int64))


def involution() -> SymplecticMatrix:
    return SymplecticMatrix(J2)


def translation(S: Sequence[Sequence[int]]) -> SymplecticMatrix:
    S = np.asarray(S, dtype=np.int64)
    if not np.array_equal(S, S.T):
        raise ValueError("translations need a symmetric matrix")
    matrix = np.eye(4, dtype=np.int64)
    matrix[:2, 2:] = S
    return SymplecticMatrix(matrix)


def rotation(U: Sequence[Sequence[int]]) -> SymplecticMatrix:
    """diag(U, U^{-T}) for U in GL_2(Z)."""
    U = np.asarray(U, dtype=np.int64)
    det = int(round(np.linalg.det(U)))
    if det not in (1, -1):
        raise ValueError("rotations need a unimodular matrix")
    inverse = np.array([[U[1, 1], -U[0, 1]], [-U[1, 0], U[0, 0]]], dtype=np.int64) * det
    matrix = np.zeros((4, 4), dtype=np.int64)
    matrix[:2, :2] = U
    matrix[2:, 2:] = inverse.T
    return SymplecticMatrix(matrix)


def generators() -> List[SymplecticMatrix]:
    """A generating set of Sp_2(Z) closed under inverses."""
    gens = [involution(), involution().inverse()]
    for S in ([[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [1, 0]]):
        T = translation(S)
        gens += [T, T.inverse()]
    for U in ([[1, 1], [0, 1]], [[0, 1], [1, 0]], [[1, 0], [0, -1]]):
        R = rotation(U)
        gens += [R, R.inverse()]
    return gens


def random_word(rng: np.random.Generator, length: int) -> SymplecticMatrix:
    gens = generators()
    result = identity()
    for index in rng.integers(0, len(gens), size=length):
        result = result @ gens[index]
    return result


@dataclass(frozen=True)
class Evaluator:
    """A function on the Siegel upper half space with a name and optional metadata."""
    fn: Callable[[SiegelPoint], complex] = field(compare=False)
    name: str = "G"
    meta: Dict = field(default_factory=dict, compare=False)

    def __call__(self, point: SiegelPoint) -> complex:
        return complex(self.fn(point))

    def on_coordinates(self, coords: Sequence[float]) -> complex:
        return self(SiegelPoint.from_coordinates(coords))


def slash_factor(j, alpha: float, beta: float):
    """det^{-alpha} conj(det)^{-beta} on the principal branch, written as |j|^{-2 alpha} conj(j)^{alpha-beta}."""
    shift = alpha - beta
    if abs(shift - round(shift)) > 1e-12:
        raise ValueError(f"alpha - beta must be integral, got {shift}")
    j = np.asarray(j, dtype=complex)
    return np.abs(j) ** (-2.0 * alpha) * np.conj(j) ** int(round(shift))


def slash(G: Evaluator, M: SymplecticMatrix, alpha: float, beta: float) -> Evaluator:
    """(G |_{(alpha, beta)} M)(Z) = det(CZ+D)^{-alpha} det(C conj(Z)+D)^{-beta} G(M Z)."""
    slash_factor(1.0, alpha, beta)

    def evaluate(point: SiegelPoint) -> complex:
        j = M.automorphy(point)
        if abs(j) < 1e-300:
            raise DomainError("det(CZ + D) vanishes at this point")
        return complex(slash_factor(j, alpha, beta)) * G(M.act(point))

    return Evaluator(evaluate, f"{G.name}|M", {"alpha": alpha, "beta": beta})


def det_Y_power(s: float) -> Evaluator:
    return Evaluator(lambda P: P.det_Y ** s, f"detY^{s}", {"s": s})


def holomorphic_exponential(T: Sequence[Sequence[float]]) -> Evaluator:
    """exp(2 pi i tr(T Z))."""
    T = np.asarray(T, dtype=float)
    return Evaluator(lambda P: np.exp(2j * np.pi * np.trace(T @ P.Z)), "e(tr TZ)", {"T": T.tolist()})
