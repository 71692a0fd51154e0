"""Shared helpers: independent oracles used to cross-check library results."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from eqw.states import BooleanFunction, StateVector


def function_from_int(n: int, fi: int) -> BooleanFunction:
    """Truth table with bit x of fi giving f(x)."""
    return BooleanFunction(n, tuple((fi >> x) & 1 for x in range(1 << n)))


def sign_state_from_int(n: int, fi: int) -> StateVector:
    return StateVector(n, tuple(1 - 2 * ((fi >> x) & 1) for x in range(1 << n)))


def all_sign_states(n: int):
    for fi in range(1 << (1 << n)):
        yield fi, sign_state_from_int(n, fi)


def balanced_sign_states(n: int):
    size = 1 << n
    for minus in combinations(range(size), size // 2):
        amps = [1] * size
        for x in minus:
            amps[x] = -1
        yield StateVector(n, tuple(amps))


def canonical_amps(amps: tuple[int, ...]) -> tuple[int, ...]:
    """Global-sign canonical key for deduplicating states."""
    for a in amps:
        if a:
            return tuple(-x for x in amps) if a < 0 else amps
    raise ValueError("zero vector")


def naive_wht(amps: tuple[int, ...]) -> list[int]:
    """O(4^n) transform straight from the definition; oracle for the butterfly."""
    size = len(amps)
    return [
        sum(s * (-1 if (a & x).bit_count() % 2 else 1) for x, s in enumerate(amps))
        for a in range(size)
    ]


def fraction_rank(matrix: list[list[int]]) -> int:
    """Rank over the rationals by plain Gaussian elimination with Fractions."""
    mat = [[Fraction(v) for v in row] for row in matrix if any(row)]
    rank = 0
    ncols = len(matrix[0]) if matrix else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        prow = mat[rank]
        inv = Fraction(1) / prow[c]
        mat[rank] = [v * inv for v in prow]
        prow = mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], prow)]
        rank += 1
    return rank


def interleave_product(
    n: int, subset: tuple[int, ...], u: tuple[int, ...], v: tuple[int, ...]
) -> tuple[int, ...]:
    """Product state with u's qubits at the subset positions, v's at the rest.

    Independent of the library's reshape/tensor code: assembles each global
    amplitude directly from the two factors' bits.
    """
    others = tuple(q for q in range(1, n + 1) if q not in subset)
    out = []
    for x in range(1 << n):
        r = 0
        for q in subset:
            r = (r << 1) | ((x >> (n - q)) & 1)
        c = 0
        for q in others:
            c = (c << 1) | ((x >> (n - q)) & 1)
        out.append(u[r] * v[c])
    return tuple(out)
