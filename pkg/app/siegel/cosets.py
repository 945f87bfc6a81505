"""Representatives of Gamma_infinity \\ Sp_2(Z) as coprime symmetric pairs (C, D).

Two pairs are in the same coset iff they differ by a left GL_2(Z) factor, so the
canonical form of a coset is the row Hermite normal form of the 2x4 block [C D].
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import CacheCorruptionError
from .domain import J2, SymplecticMatrix, generators

logger = logging.getLogger(__name__)

CANONICAL_TAG = "hnf-row"

Pair = Tuple[int, ...]


def row_hnf(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    """Row Hermite normal form: positive pivots, entries above each pivot in [0, pivot)."""
    rows = [[int(e) for e in row] for row in matrix]
    n_rows, n_cols = len(rows), len(rows[0])
    pivot = 0
    for col in range(n_cols):
        if pivot == n_rows:
            break
        while True:
            live = [r for r in range(pivot, n_rows) if rows[r][col] != 0]
            if not live:
                break
            smallest = min(live, key=lambda r: abs(rows[r][col]))
            rows[pivot], rows[smallest] = rows[smallest], rows[pivot]
            reduced = True
            for r in range(pivot + 1, n_rows):
                if rows[r][col]:
                    q = rows[r][col] // rows[pivot][col]
                    rows[r] = [a - q * b for a, b in zip(rows[r], rows[pivot])]
                    reduced = reduced and rows[r][col] == 0
            if reduced:
                break
        if rows[pivot][col] == 0:
            continue
        if rows[pivot][col] < 0:
            rows[pivot] = [-a for a in rows[pivot]]
        for r in range(pivot):
            q = rows[r][col] // rows[pivot][col]
            rows[r] = [a - q * b for a, b in zip(rows[r], rows[pivot])]
        pivot += 1
    return rows


def is_hnf(matrix: Sequence[Sequence[int]]) -> bool:
    return row_hnf(matrix) == [[int(e) for e in row] for row in matrix]


def canonical_pair(C: np.ndarray, D: np.ndarray) -> Pair:
    """Canonical (C, D) of the coset, flattened to 8 integers."""
    block = np.hstack([np.asarray(C), np.asarray(D)])
    return tuple(e for row in row_hnf(block) for e in row)


def _minors(W: np.ndarray) -> np.ndarray:
    """All six 2x2 minors of a stack of 2x4 blocks, shape (..., 6)."""
    return np.stack([W[..., 0, i] * W[..., 1, j] - W[..., 0, j] * W[..., 1, i]
                     for i, j in combinations(range(4), 2)], axis=-1)


def is_coprime_symmetric(C: np.ndarray, D: np.ndarray) -> bool:
    W = np.hstack([C, D]).astype(np.int64)
    symmetric = np.array_equal(C @ D.T, D @ C.T)
    return bool(symmetric and np.gcd.reduce(np.abs(_minors(W))) == 1)


def _admissible(W: np.ndarray) -> np.ndarray:
    """Mask of blocks [C D] with C tD symmetric and coprime minors."""
    C, D = W[:, :, :2], W[:, :, 2:]
    symmetric = (C[:, 0, 0] * D[:, 1, 0] + C[:, 0, 1] * D[:, 1, 1]
                 == C[:, 1, 0] * D[:, 0, 0] + C[:, 1, 1] * D[:, 0, 1])
    return symmetric & (np.gcd.reduce(np.abs(_minors(W)), axis=-1) == 1)


def _d_blocks(bound: int) -> np.ndarray:
    entries = np.arange(-bound, bound + 1, dtype=np.int64)
    return np.array(list(product(entries, repeat=4)), dtype=np.int64).reshape(-1, 2, 2)


def complete_to_symplectic(C: np.ndarray, D: np.ndarray) -> SymplecticMatrix:
    """An integral (A B; C D) in Sp_2(Z) with the given bottom blocks."""
    W = np.hstack([np.asarray(C), np.asarray(D)]).astype(np.int64)
    if not is_coprime_symmetric(W[:, :2], W[:, 2:]):
        raise ValueError(f"(C, D) is not a coprime symmetric pair:\n{W}")
    N = J2 @ W.T
    reduced = np.array(row_hnf(np.hstack([N, np.eye(4, dtype=np.int64)])), dtype=np.int64)
    V = reduced[:2, 2:]
    s = int((V @ J2 @ V.T)[0, 1])
    V = V + np.array([[0, s], [0, 0]], dtype=np.int64) @ W
    return SymplecticMatrix(np.vstack([V, W]))


@dataclass
class CosetFamily:
    """Canonical (C, D) pairs of all cosets with entries bounded by `bound`.

    The identity coset (C = 0, D = I) is always present, also at bound 0.
    """
    bound: int
    C: np.ndarray
    D: np.ndarray
    tag: str = CANONICAL_TAG
    _matrices: Optional[List[SymplecticMatrix]] = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.C)

    def keys(self) -> List[Pair]:
        return [tuple(int(e) for e in np.hstack([c, d]).ravel()) for c, d in zip(self.C, self.D)]

    def matrices(self) -> List[SymplecticMatrix]:
        if self._matrices is None:
            self._matrices = [complete_to_symplectic(c, d) for c, d in zip(self.C, self.D)]
        return self._matrices

    def ranks(self) -> np.ndarray:
        return np.linalg.matrix_rank(self.C.astype(float))

    @classmethod
    def from_keys(cls, bound: int, keys: Sequence[Pair]) -> "CosetFamily":
        blocks = np.array(keys, dtype=np.int64).reshape(-1, 2, 4)
        return cls(bound, blocks[:, :, :2].copy(), blocks[:, :, 2:].copy())


def _rank_two(bound: int, d_blocks: np.ndarray) -> List[np.ndarray]:
    found = []
    for a in range(1, bound + 1):
        for d in range(1, bound + 1):
            for b in range(d):
                W = np.zeros((len(d_blocks), 2, 4), dtype=np.int64)
                W[:, :, :2] = np.array([[a, b], [0, d]])
                W[:, :, 2:] = d_blocks
                found.append(W[_admissible(W)])
    return found


def _rank_one(bound: int, d_blocks: np.ndarray) -> List[np.ndarray]:
    found = []
    for c11, c12 in product(range(-bound, bound + 1), repeat=2):
        first = c11 if c11 != 0 else c12
        if first <= 0:
            continue
        W = np.zeros((len(d_blocks), 2, 4), dtype=np.int64)
        W[:, 0, :2] = (c11, c12)
        W[:, :, 2:] = d_blocks
        candidates = W[_admissible(W)]
        found.append(np.array([w for w in candidates if is_hnf(w)], dtype=np.int64).reshape(-1, 2, 4))
    return found


def coset_reps(bound: int) -> CosetFamily:
    """Every coset whose canonical [C D] has max absolute entry <= bound, exactly once."""
    if bound < 0:
        raise ValueError(f"bound must be non-negative, got {bound}")
    identity = np.array([[[0, 0, 1, 0], [0, 0, 0, 1]]], dtype=np.int64)
    blocks = [identity]
    if bound >= 1:
        d_blocks = _d_blocks(bound)
        blocks += _rank_two(bound, d_blocks) + _rank_one(bound, d_blocks)
    W = np.concatenate(blocks, axis=0)
    logger.info(f"Enumerated {len(W)} cosets of Gamma_infinity at bound {bound}")
    return CosetFamily(bound, W[:, :, :2].copy(), W[:, :, 2:].copy())


def plucker_key(C: np.ndarray, D: np.ndarray) -> Pair:
    """Sign-normalized 2x2 minors of [C D]; equal exactly for pairs in the same coset."""
    minors = [int(e) for e in _minors(np.hstack([np.asarray(C), np.asarray(D)]).astype(np.int64))]
    first = next((e for e in minors if e != 0), 1)
    return tuple(e if first > 0 else -e for e in minors)


def word_cosets(max_length: int = 8, minor_cap: int = 8) -> Dict[Pair, Tuple[np.ndarray, np.ndarray]]:
    """Cosets Gamma_infinity w for words w in generators() of length <= max_length.

    Breadth-first over cosets keyed by plucker_key; a coset is recorded when
    reached but only expanded while its minors stay within minor_cap.
    """
    gens = [g.matrix for g in generators()]
    start = np.eye(4, dtype=np.int64)
    found = {plucker_key(start[2:, :2], start[2:, 2:]): (start[2:, :2], start[2:, 2:])}
    frontier = [start]
    for length in range(1, max_length + 1):
        reached = []
        for M in frontier:
            for g in gens:
                N = M @ g
                key = plucker_key(N[2:, :2], N[2:, 2:])
                if key in found:
                    continue
                found[key] = (N[2:, :2].copy(), N[2:, 2:].copy())
                if max(abs(e) for e in key) <= minor_cap:
                    reached.append(N)
        logger.debug(f"Word length {length}: {len(reached)} new cosets to expand, {len(found)} in total")
        frontier = reached
    return found


def word_canonical_forms(bound: int, max_length: int = 8, minor_cap: int = 8) -> set:
    """Canonical forms within the bound of all cosets reached by short generator words."""
    keys = set()
    for C, D in word_cosets(max_length, minor_cap).values():
        key = canonical_pair(C, D)
        if max(abs(e) for e in key) <= bound:
            keys.add(key)
    return keys


def _centered(value: int, modulus: int) -> int:
    return (value + modulus // 2) % modulus - modulus // 2


def translation_orbit_rep(C: np.ndarray, D: np.ndarray) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """Canonical representative of the orbit of the coset under x' -> x' + 1.

    Returns None for cosets fixed by the translation (C[:, 1] = 0 up to the
    left action), which only contribute to the constant Fourier-Jacobi term.
    """
    C = np.asarray(C, dtype=np.int64)
    D = np.array(D, dtype=np.int64)
    rank = np.linalg.matrix_rank(C.astype(float))
    if rank == 2:
        b, d = int(C[0, 1]), int(C[1, 1])
        target = _centered(int(D[1, 1]), d)
        t = (target - int(D[1, 1])) // d
        D[:, 1] += t * np.array([b, d])
        return C, D
    if rank == 1 and C[0, 1] != 0:
        c12 = int(C[0, 1])
        D[0, 1] = _centered(int(D[0, 1]), abs(c12))
        return C, D
    return None


@dataclass
class XOrbitFamily:
    """Orbits of a coset family under x' -> x' + 1, and the cosets fixed by it."""
    bound: int
    C: np.ndarray
    D: np.ndarray
    fixed: int


def translation_orbits(family: CosetFamily) -> XOrbitFamily:
    """translation_orbit_rep applied to the whole stack at once, duplicates removed."""
    C = np.asarray(family.C, dtype=np.int64)
    D = np.array(family.D, dtype=np.int64)
    det = C[:, 0, 0] * C[:, 1, 1] - C[:, 0, 1] * C[:, 1, 0]
    full = det != 0
    partial = (det == 0) & (C[:, 0, 1] != 0)

    b, d = C[full, 0, 1], C[full, 1, 1]
    d11 = D[full, 1, 1]
    t = ((d11 + d // 2) % d - d // 2 - d11) // d
    D[full, 0, 1] += t * b
    D[full, 1, 1] += t * d

    c12 = np.abs(C[partial, 0, 1])
    D[partial, 0, 1] = (D[partial, 0, 1] + c12 // 2) % c12 - c12 // 2

    keep = full | partial
    fixed = int(np.count_nonzero(~keep))
    stacked = np.concatenate([C[keep].reshape(-1, 4), D[keep].reshape(-1, 4)], axis=1)
    if len(stacked):
        stacked = np.unique(stacked, axis=0)
    Cs = stacked[:, :4].reshape(-1, 2, 2)
    Ds = stacked[:, 4:].reshape(-1, 2, 2)
    logger.debug(f"{len(Cs)} translation orbits and {fixed} fixed cosets at bound {family.bound}")
    return XOrbitFamily(family.bound, Cs, Ds, fixed)


# Text cache: a header line, then one symplectic matrix per line as 16 integers.

def _header(kind: str, bound: int, count: int) -> str:
    return f"# cosets kind={kind} bound={bound} tag={CANONICAL_TAG} count={count}"


def _parse_header(line: str, kind: str, path: Path) -> Dict[str, str]:
    if not line.startswith("# cosets "):
        raise CacheCorruptionError(f"{path}: missing header")
    try:
        fields = dict(item.split("=", 1) for item in line[len("# cosets "):].split())
    except ValueError:
        raise CacheCorruptionError(f"{path}: malformed header '{line}'") from None
    if fields.get("kind") != kind or fields.get("tag") != CANONICAL_TAG:
        raise CacheCorruptionError(f"{path}: expected kind={kind} tag={CANONICAL_TAG}, got '{line}'")
    return fields


def read_rows(path: Path, kind: str, width: int) -> Tuple[int, List[List[int]]]:
    """Header bound and integer rows of a cache file, with format checks."""
    lines = [line.strip() for line in path.read_text().splitlines() if line.strip()]
    if not lines:
        raise CacheCorruptionError(f"{path}: empty cache file")
    fields = _parse_header(lines[0], kind, path)
    try:
        bound, count = int(fields["bound"]), int(fields["count"])
        rows = [[int(e) for e in line.split()] for line in lines[1:]]
    except (KeyError, ValueError) as e:
        raise CacheCorruptionError(f"{path}: {e}") from e
    if len(rows) != count:
        raise CacheCorruptionError(f"{path}: header says {count} rows, found {len(rows)}")
    bad = [i for i, row in enumerate(rows, start=2) if len(row) != width]
    if bad:
        raise CacheCorruptionError(f"{path}: line {bad[0]} does not hold {width} integers")
    return bound, rows


def write_rows(path: Path, kind: str, bound: int, rows: Sequence[Sequence[int]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    body = [_header(kind, bound, len(rows))] + [" ".join(str(int(e)) for e in row) for row in rows]
    path.write_text("\n".join(body) + "\n")


class CosetCache:
    """On-disk cache of coset families, one text file per bound."""

    def __init__(self, cache_dir: str):
        self.cache_dir = Path(cache_dir)
        self.logger = logging.getLogger(__name__)

    def path(self, bound: int) -> Path:
        return self.cache_dir / f"siegel_bound{bound}.txt"

    def write(self, family: CosetFamily) -> Path:
        path = self.path(family.bound)
        write_rows(path, "siegel", family.bound, [M.to_list() for M in family.matrices()])
        self.logger.info(f"Wrote {len(family)} cosets to {path}")
        return path

    def read(self, bound: int) -> CosetFamily:
        path = self.path(bound)
        stored_bound, rows = read_rows(path, "siegel", 16)
        if stored_bound != bound:
            raise CacheCorruptionError(f"{path}: header bound {stored_bound} != {bound}")
        keys, matrices = [], []
        for line, row in enumerate(rows, start=2):
            try:
                M = SymplecticMatrix(np.array(row))
            except ValueError:
                raise CacheCorruptionError(f"{path}: line {line} is not symplectic") from None
            key = tuple(int(e) for e in np.hstack([M.C, M.D]).ravel())
            if canonical_pair(M.C, M.D) != key:
                raise CacheCorruptionError(f"{path}: line {line} is not in canonical form")
            keys.append(key)
            matrices.append(M)
        if len(set(keys)) != len(keys):
            raise CacheCorruptionError(f"{path}: duplicate cosets")
        family = CosetFamily.from_keys(bound, keys)
        family._matrices = matrices
        return family

    def load_or_build(self, bound: int) -> CosetFamily:
        if self.path(bound).exists():
            self.logger.debug(f"Reading cosets for bound {bound} from {self.path(bound)}")
            return self.read(bound)
        family = coset_reps(bound)
        self.write(family)
        return family


