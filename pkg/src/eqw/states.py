"""Exact representations of Boolean functions and integer-amplitude states.

Amplitudes are arbitrary-precision signed integers with implicit
normalization: the physical amplitude at basis index x is
amps[x] / sqrt(sum of squares). Basis indices follow one convention
everywhere: x = sum_i x_i * 2^(n-i), so qubit 1 is the most significant
bit and the tensor product puts the left operand's qubits in the most
significant positions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def _require_qubit_count(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"qubit count must be a positive integer, got {n!r}")


def qubit_bit(index: int, qubit: int, m: int) -> int:
    """Bit of basis ``index`` belonging to 1-based ``qubit`` in an m-qubit system."""
    return (index >> (m - qubit)) & 1


@dataclass(frozen=True)
class BooleanFunction:
    """Truth table of f: {0,1}^n -> {0,1} as a tuple of 2^n bits, table[x] = f(x)."""

    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        _require_qubit_count(self.n)
        if len(self.table) != 1 << self.n:
            raise ValueError(
                f"truth table has {len(self.table)} entries, expected 2^{self.n} = {1 << self.n}"
            )
        if any(b not in (0, 1) for b in self.table):
            raise ValueError("truth table entries must be 0 or 1")

    def bits(self) -> str:
        """Text encoding, index ascending (x = 0 first)."""
        return "".join(str(b) for b in self.table)

    def __call__(self, x: int) -> int:
        return self.table[x]


@dataclass(frozen=True)
class StateVector:
    """2^m integer amplitudes, not all zero; normalization is implicit."""

    m: int
    amps: tuple[int, ...]

    def __post_init__(self):
        _require_qubit_count(self.m)
        if len(self.amps) != 1 << self.m:
            raise ValueError(
                f"amplitude vector has {len(self.amps)} entries, expected 2^{self.m}"
            )
        if not any(self.amps):
            raise ValueError("amplitude vector must have at least one nonzero entry")

    def is_sign_vector(self) -> bool:
        """True when every amplitude is +1 or -1 (a real equally weighted state)."""
        return all(a == 1 or a == -1 for a in self.amps)

    def plus_count(self) -> int:
        return sum(1 for a in self.amps if a > 0)

    def minus_count(self) -> int:
        return sum(1 for a in self.amps if a < 0)

    def canonical(self) -> "StateVector":
        """Global-sign canonical form: first nonzero amplitude positive."""
        for a in self.amps:
            if a:
                if a < 0:
                    return StateVector(self.m, tuple(-x for x in self.amps))
                return self
        raise AssertionError("unreachable: zero vector rejected at construction")

    def negate(self) -> "StateVector":
        return StateVector(self.m, tuple(-a for a in self.amps))

    def nonzero_indices(self) -> tuple[int, ...]:
        return tuple(x for x, a in enumerate(self.amps) if a)


@dataclass(frozen=True)
class LinearForm:
    """An n-bit string a defining the parity function x -> a.x; a = 0 is constant."""

    n: int
    bits: tuple[int, ...]

    def __post_init__(self):
        _require_qubit_count(self.n)
        if len(self.bits) != self.n:
            raise ValueError(f"expected {self.n} bits, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    @property
    def value(self) -> int:
        """Integer encoding under the shared bit convention (bit 1 most significant)."""
        v = 0
        for b in self.bits:
            v = (v << 1) | b
        return v

    @classmethod
    def from_value(cls, n: int, value: int) -> "LinearForm":
        _require_qubit_count(n)
        if not 0 <= value < (1 << n):
            raise ValueError(f"value {value} out of range for {n} bits")
        return cls(n, tuple((value >> (n - i)) & 1 for i in range(1, n + 1)))

    def bit_string(self) -> str:
        return "".join(str(b) for b in self.bits)


def make_function(n: int, table: Sequence[int] | str) -> BooleanFunction:
    """Build a BooleanFunction from a bit sequence of length 2^n."""
    if isinstance(table, str):
        if not set(table) <= {"0", "1"}:
            raise ValueError(f"truth table string must be over {{0,1}}, got {table!r}")
        bits = tuple(int(c) for c in table)
    else:
        bits = tuple(int(b) for b in table)
    return BooleanFunction(n, bits)


def parse_function(n: int, text: str) -> BooleanFunction:
    """Parse the two accepted text encodings of a truth table.

    Binary form: a {0,1} string of length 2^n, index ascending. Hex form
    "0x...": bit of input x sits at position x counted from the least
    significant bit of the hex value.
    """
    _require_qubit_count(n)
    size = 1 << n
    if text.lower().startswith("0x"):
        try:
            value = int(text, 16)
        except ValueError:
            raise ValueError(f"malformed hex truth table {text!r}") from None
        if value >= (1 << size):
            raise ValueError(f"hex truth table {text!r} does not fit 2^{n} bits")
        return BooleanFunction(n, tuple((value >> x) & 1 for x in range(size)))
    return make_function(n, text)


def bv_function(a: LinearForm) -> BooleanFunction:
    """Truth table of the parity function f(x) = a1 x1 xor ... xor an xn."""
    av = a.value
    return BooleanFunction(
        a.n, tuple((av & x).bit_count() & 1 for x in range(1 << a.n))
    )


def state_from_function(f: BooleanFunction) -> StateVector:
    """Sign vector with amps[x] = (-1)^f(x)."""
    return StateVector(f.n, tuple(1 - 2 * b for b in f.table))


def uniform_state(n: int) -> StateVector:
    """All 2^n amplitudes equal to +1."""
    _require_qubit_count(n)
    return StateVector(n, (1,) * (1 << n))


def weight(f: BooleanFunction) -> int:
    """Number of inputs mapped to 1."""
    return sum(f.table)


def is_balanced(f: BooleanFunction) -> bool:
    """True iff exactly half of the 2^n inputs map to 1."""
    return weight(f) == 1 << (f.n - 1)


def complement(f: BooleanFunction) -> BooleanFunction:
    """Pointwise negation; its state is the original state with a global -1."""
    return BooleanFunction(f.n, tuple(1 - b for b in f.table))


def apply_local_x(s: StateVector, qubit: int) -> StateVector:
    """Permute amplitudes by flipping one qubit's bit in every basis index."""
    if not 1 <= qubit <= s.m:
        raise ValueError(f"qubit {qubit} out of range 1..{s.m}")
    bit = 1 << (s.m - qubit)
    amps = s.amps
    return StateVector(s.m, tuple(amps[x ^ bit] for x in range(len(amps))))


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product; a's qubits occupy the most significant positions."""
    nb = len(b.amps)
    out = [0] * (len(a.amps) * nb)
    for x, ax in enumerate(a.amps):
        if ax == 0:
            continue
        base = x * nb
        for y, by in enumerate(b.amps):
            out[base + y] = ax * by
    return StateVector(a.m + b.m, tuple(out))


def tensor_all(factors: Iterable[StateVector]) -> StateVector:
    """Left-to-right tensor product of a sequence of states."""
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    acc = factors[0]
    for f in factors[1:]:
        acc = tensor(acc, f)
    return acc
