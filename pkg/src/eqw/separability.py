"""Exact tensor-factorization structure of integer-amplitude pure states.

Everything here is decided with integer arithmetic: a state splits across a
bipartition iff its reshaped coefficient matrix has rank 1, which is tested
by cross-multiplication against a reference entry, with no elimination and
no tolerances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .errors import ResourceCapError
from .states import LinearForm, StateVector, tensor_all

FACTOR_CAP = 12

LABEL_FULLY_SEPARABLE = "fully-separable"
LABEL_BISEPARABLE = "biseparable"
LABEL_Q_SEPARABLE = "q-separable"
LABEL_GME = "genuinely-multipartite-entangled"


@dataclass(frozen=True)
class Bipartition:
    """A nonempty proper subset of the 1-based qubit indices of an n-qubit state."""

    n: int
    subset: tuple[int, ...]

    def __post_init__(self):
        subset = tuple(sorted(self.subset))
        object.__setattr__(self, "subset", subset)
        if not 1 <= len(subset) <= self.n - 1:
            raise ValueError(
                f"subset size {len(subset)} must be between 1 and n-1 = {self.n - 1}"
            )
        if len(set(subset)) != len(subset):
            raise ValueError("subset contains repeated qubit indices")
        if subset[0] < 1 or subset[-1] > self.n:
            raise ValueError(f"qubit indices must lie in 1..{self.n}")

    @property
    def complement(self) -> tuple[int, ...]:
        inside = set(self.subset)
        return tuple(q for q in range(1, self.n + 1) if q not in inside)


@lru_cache(maxsize=512)
def _index_maps(n: int, subset: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-basis-index (row, col) coordinates for the reshape at a bipartition.

    Row bits come from the subset qubits, column bits from the rest, each in
    ascending qubit order (first listed qubit most significant).
    """
    others = tuple(q for q in range(1, n + 1) if q not in subset)
    rows, cols = [], []
    for x in range(1 << n):
        r = 0
        for q in subset:
            r = (r << 1) | ((x >> (n - q)) & 1)
        c = 0
        for q in others:
            c = (c << 1) | ((x >> (n - q)) & 1)
        rows.append(r)
        cols.append(c)
    return tuple(rows), tuple(cols)


def _reshape(s: StateVector, p: Bipartition) -> list[list[int]]:
    rows, cols = _index_maps(s.m, p.subset)
    mat = [[0] * (1 << (s.m - len(p.subset))) for _ in range(1 << len(p.subset))]
    for x, a in enumerate(s.amps):
        if a:
            mat[rows[x]][cols[x]] = a
    return mat


def _content_reduced(vec: list[int]) -> list[int]:
    g = math.gcd(*vec)
    return [v // g for v in vec]


def try_factor(
    s: StateVector, p: Bipartition
) -> Optional[tuple[StateVector, StateVector]]:
    """Split s across the bipartition if its reshaped matrix has rank 1.

    Rank 1 holds iff every entry satisfies a[i][j] * a[r][c] == a[i][c] * a[r][j]
    against a fixed nonzero reference a[r][c]; the identity also forces the
    zero rows/columns. Returns content-reduced integer factors, the subset
    factor with its first nonzero entry positive, such that their tensor
    product equals s up to a positive rational scale. None means no split.
    """
    if s.m < 2:
        raise ValueError("need at least 2 qubits to bipartition")
    if p.n != s.m:
        raise ValueError(f"bipartition is for {p.n} qubits, state has {s.m}")
    mat = _reshape(s, p)
    r0 = c0 = -1
    for i, row in enumerate(mat):
        for j, a in enumerate(row):
            if a:
                r0, c0 = i, j
                break
        if r0 >= 0:
            break
    ref = mat[r0][c0]
    ref_row = mat[r0]
    for row in mat:
        ui = row[c0]
        for aj, vj in zip(row, ref_row):
            if aj * ref != ui * vj:
                return None
    u = _content_reduced([row[c0] for row in mat])
    v = _content_reduced(list(ref_row))
    if ref < 0:
        v = [-x for x in v]
    for x in u:
        if x:
            if x < 0:
                u = [-y for y in u]
                v = [-y for y in v]
            break
    k = len(p.subset)
    return StateVector(k, tuple(u)), StateVector(s.m - k, tuple(v))


@dataclass(frozen=True)
class Factorization:
    """Finest tensor decomposition: blocks of qubit indices with their factors.

    Blocks are ordered by smallest contained index; reassembling the factors
    under the shared index convention reproduces the input up to one overall
    positive rational scale.
    """

    n: int
    blocks: tuple[tuple[tuple[int, ...], StateVector], ...]

    @property
    def q(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(qs) for qs, _ in self.blocks))

    def block_index_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(qs for qs, _ in self.blocks)

    def reassemble(self) -> StateVector:
        """Tensor the block factors back together at their original positions."""
        out = [1] * (1 << self.n)
        for qubits, factor in self.blocks:
            k = len(qubits)
            for x in range(1 << self.n):
                if out[x] == 0:
                    continue
                local = 0
                for q in qubits:
                    local = (local << 1) | ((x >> (self.n - q)) & 1)
                out[x] *= factor.amps[local]
        return StateVector(self.n, tuple(out))


def _split_blocks(
    qubits: tuple[int, ...], s: StateVector
) -> list[tuple[tuple[int, ...], StateVector]]:
    m = len(qubits)
    if m == 1:
        return [(qubits, s)]
    for t in range(1, m // 2 + 1):
        for local in combinations(range(1, m + 1), t):
            res = try_factor(s, Bipartition(m, local))
            if res is None:
                continue
            factor, cofactor = res
            inside = set(local)
            fq = tuple(qubits[i - 1] for i in local)
            cq = tuple(qubits[i - 1] for i in range(1, m + 1) if i not in inside)
            return _split_blocks(fq, factor) + _split_blocks(cq, cofactor)
    return [(qubits, s)]


def finest_factorization(s: StateVector, cap: int = FACTOR_CAP) -> Factorization:
    """Peel factors greedily by subset size until no bipartition splits.

    Subsets of each size are tried in lexicographic order, so the result is
    deterministic; the partition itself is unique for pure states.
    """
    if s.m > cap:
        raise ResourceCapError(
            f"factorization capped at {cap} qubits (state has {s.m}); raise the cap to proceed"
        )
    blocks = _split_blocks(tuple(range(1, s.m + 1)), s)
    blocks.sort(key=lambda b: b[0][0])
    return Factorization(s.m, tuple(blocks))


@dataclass(frozen=True)
class SeparabilityReport:
    """q-separability class of a state: block count, sizes, label, factors."""

    q: int
    block_sizes: tuple[int, ...]
    label: str
    factorization: Factorization

    def to_dict(self) -> dict:
        return {
            "schema": "report-v1",
            "q": self.q,
            "label": self.label,
            "blocks": [
                {"qubits": list(qs), "amps": [str(a) for a in f.amps]}
                for qs, f in self.factorization.blocks
            ],
        }


def classify(s: StateVector, cap: int = FACTOR_CAP) -> SeparabilityReport:
    """Finest factorization plus its q-separability label.

    q = n is fully separable (trivially so for a single qubit), q = 1 is
    genuinely multipartite entangled, q = 2 biseparable, otherwise
    q-separable.
    """
    fac = finest_factorization(s, cap=cap)
    q = fac.q
    if q == s.m:
        label = LABEL_FULLY_SEPARABLE
    elif q == 1:
        label = LABEL_GME
    elif q == 2:
        label = LABEL_BISEPARABLE
    else:
        label = LABEL_Q_SEPARABLE
    return SeparabilityReport(q, fac.block_sizes(), label, fac)


def wht(s: StateVector) -> list[int]:
    """Walsh-Hadamard spectrum of a sign vector by the in-place butterfly.

    spectrum[a] = sum_x s[x] * (-1)^(a.x), with a encoded under the shared
    bit convention. O(n 2^n) integer additions.
    """
    if not s.is_sign_vector():
        raise ValueError("spectrum is defined here for +-1 amplitude vectors only")
    a = list(s.amps)
    h = 1
    size = len(a)
    while h < size:
        for start in range(0, size, h * 2):
            for j in range(start, start + h):
                x, y = a[j], a[j + h]
                a[j] = x + y
                a[j + h] = x - y
        h *= 2
    return a


def full_separability_fast(s: StateVector) -> Optional[tuple[LinearForm, int]]:
    """Spectral test for full separability of a sign vector.

    A sign vector is fully separable iff its spectrum has a single nonzero
    coefficient, necessarily +-2^n at the position of the defining parity
    string. Returns that string and the sign, or None.
    """
    spectrum = wht(s)
    hit = -1
    for a, coeff in enumerate(spectrum):
        if coeff:
            if hit >= 0:
                return None
            hit = a
    value = spectrum[hit]
    assert abs(value) == len(s.amps)
    return LinearForm.from_value(s.m, hit), (1 if value > 0 else -1)


def lemma_check(factors: list[StateVector]) -> tuple[bool, bool]:
    """Compare balancedness of a tensor product with that of its factors.

    Returns (product is balanced, at least one factor is balanced); the two
    are equal for sign-vector factors.
    """
    if len(factors) < 2:
        raise ValueError("need at least two factors")
    if not all(f.is_sign_vector() for f in factors):
        raise ValueError("factors must have +-1 amplitudes")
    product = tensor_all(factors)
    product_balanced = product.plus_count() == product.minus_count()
    any_factor_balanced = any(f.plus_count() == f.minus_count() for f in factors)
    return product_balanced, any_factor_balanced


def schmidt_rank(s: StateVector, p: Bipartition) -> int:
    """Exact rank of the reshaped coefficient matrix at a bipartition.

    Integer Gaussian elimination with gcd reduction per row, so the result
    is exact for arbitrary-precision amplitudes.
    """
    mat = [row[:] for row in _reshape(s, p) if any(row)]
    ncols = 1 << (s.m - len(p.subset))
    rank = 0
    for c in range(ncols):
        pivot = None
        for i in range(rank, len(mat)):
            if mat[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        prow = mat[rank]
        pval = prow[c]
        for i in range(rank + 1, len(mat)):
            val = mat[i][c]
            if val:
                row = [pval * a - val * b for a, b in zip(mat[i], prow)]
                if any(row):
                    g = math.gcd(*row)
                    row = [x // g for x in row]
                mat[i] = row
        rank += 1
    return rank
