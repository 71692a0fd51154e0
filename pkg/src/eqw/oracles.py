"""State-preparation pipelines: phase oracle with a minus-target qubit, and
the two-register periodic-function evolution with measurement collapse.

The register states analysed elsewhere are generated here by actually
simulating the oracle unitaries on integer amplitude vectors, so agreement
with the direct constructions is a real check, not a tautology.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceCapError, TargetEntanglementError
from .rng import SplitMix64
from .separability import Bipartition, try_factor
from .states import BooleanFunction, StateVector

GLOBAL_STATE_CAP = 8


def _hadamard_all(amps: list[int], m: int, qubits: range) -> None:
    """Unnormalized Hadamard on each listed qubit of an m-qubit vector, in place."""
    for q in qubits:
        bit = 1 << (m - q)
        for x in range(len(amps)):
            if x & bit:
                continue
            y = x | bit
            a, b = amps[x], amps[y]
            amps[x] = a + b
            amps[y] = a - b


def _split_register_target(state: StateVector) -> tuple[StateVector, StateVector]:
    """Factor an (n+1)-qubit post-oracle state into register and target parts.

    Raises TargetEntanglementError if the last qubit does not factor out as
    exactly the (+1, -1) pair. Unreachable from the pipeline below, which is
    itself something the tests confirm both ways.
    """
    m = state.m
    res = try_factor(state, Bipartition(m, (m,)))
    if res is None:
        raise TargetEntanglementError("target qubit is entangled with the register")
    target, register = res
    if target.amps != (1, -1):
        raise TargetEntanglementError(
            f"target qubit factored out as {target.amps}, expected (1, -1)"
        )
    return register, target


def dj_oracle_pipeline(f: BooleanFunction) -> tuple[StateVector, StateVector]:
    """Run the full (n+1)-qubit preparation and return (register, target).

    Register starts in |0...0>, target in the unnormalized (+1, -1) pair;
    Hadamards act on the register only, then the oracle maps |x>|y> to
    |x>|f(x) xor y>. The target factor is verified unchanged before the
    register is returned.
    """
    n = f.n
    m = n + 1
    amps = [0] * (1 << m)
    amps[0], amps[1] = 1, -1
    _hadamard_all(amps, m, range(1, n + 1))
    table = f.table
    out = [0] * len(amps)
    for x in range(1 << n):
        flip = table[x]
        base = x << 1
        out[base] = amps[base + flip]
        out[base + 1] = amps[base + (1 - flip)]
    return _split_register_target(StateVector(m, tuple(out)))


def prepare_dj_state(f: BooleanFunction) -> StateVector:
    """Register state after the oracle call; equals the direct sign vector."""
    register, _ = dj_oracle_pipeline(f)
    return register


@dataclass(frozen=True)
class SimonInstance:
    """A periodic 2-to-1 function: table[x] = table[y] iff x = y xor r."""

    n: int
    r: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if not 0 < self.r < (1 << self.n):
            raise ValueError(f"period must be a nonzero {self.n}-bit value, got {self.r}")
        if len(self.table) != 1 << self.n:
            raise ValueError("table must cover all 2^n inputs")
        for x, out in enumerate(self.table):
            if not 0 <= out < (1 << self.n):
                raise ValueError(f"output {out} is not an {self.n}-bit value")
            if out != self.table[x ^ self.r]:
                raise ValueError(f"table breaks periodicity at input {x}")
        seen: dict[int, int] = {}
        for x, out in enumerate(self.table):
            prev = seen.setdefault(out, x)
            if prev != x and prev != (x ^ self.r):
                raise ValueError(f"output {out} is shared beyond its period coset")

    def coset_representatives(self) -> tuple[int, ...]:
        """Minimum element of each {x, x xor r} coset, ascending."""
        return tuple(x for x in range(1 << self.n) if x < x ^ self.r)

    def r_bits(self) -> str:
        return format(self.r, f"0{self.n}b")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r_bits(),
            "table": [format(v, f"0{self.n}b") for v in self.table],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SimonInstance":
        n = int(data["n"])
        r = int(str(data["r"]), 2)
        table = tuple(int(str(v), 2) for v in data["table"])
        return cls(n, r, table)


@dataclass(frozen=True)
class MeasurementOutcome:
    """Second-register readout plus the collapsed first-register state."""

    n: int
    observed: int
    collapsed: StateVector

    def observed_bits(self) -> str:
        return format(self.observed, f"0{self.n}b")


def _parse_period(n: int, r: int | str) -> int:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if isinstance(r, str):
        if len(r) != n or not set(r) <= {"0", "1"}:
            raise ValueError(f"period must be an {n}-bit string, got {r!r}")
        value = int(r, 2)
    else:
        value = int(r)
    if not 0 < value < (1 << n):
        raise ValueError(f"period must be a nonzero {n}-bit value, got {r!r}")
    return value


def make_simon_instance(n: int, r: int | str, seed: int) -> SimonInstance:
    """Build a periodic 2-to-1 table with seed-determined output labels.

    Inputs are grouped into the 2^(n-1) cosets {x, x xor r}; a Fisher-Yates
    shuffle of all 2^n output words (splitmix64 keyed by the seed) assigns
    each coset, in ascending-representative order, a distinct output.
    """
    rv = _parse_period(n, r)
    size = 1 << n
    labels = list(range(size))
    SplitMix64(seed).shuffle(labels)
    table = [0] * size
    reps = [x for x in range(size) if x < x ^ rv]
    for i, rep in enumerate(reps):
        table[rep] = table[rep ^ rv] = labels[i]
    return SimonInstance(n, rv, tuple(table))


def simon_global_state(inst: SimonInstance) -> StateVector:
    """Joint 2n-qubit state after the function evaluation.

    First register in the most significant n bits; +1 amplitude at every
    |x>|f(x)>, so exactly 2^n nonzero entries.
    """
    n = inst.n
    if n > GLOBAL_STATE_CAP:
        raise ResourceCapError(
            f"global two-register state capped at n = {GLOBAL_STATE_CAP}, got {n}"
        )
    amps = [0] * (1 << (2 * n))
    for x, out in enumerate(inst.table):
        amps[(x << n) | out] = 1
    return StateVector(2 * n, tuple(amps))


def simon_measure(inst: SimonInstance, seed: int) -> MeasurementOutcome:
    """Collapse the first register by a seeded uniform readout of the second.

    Draws one of the 2^(n-1) output values uniformly (splitmix64, rejection
    sampled) and returns it with the two-term state on {xbar, xbar xor r}.
    """
    reps = inst.coset_representatives()
    xbar = reps[SplitMix64(seed).below(len(reps))]
    amps = [0] * (1 << inst.n)
    amps[xbar] = 1
    amps[xbar ^ inst.r] = 1
    return MeasurementOutcome(inst.n, inst.table[xbar], StateVector(inst.n, tuple(amps)))


def simon_canonical_state(n: int, r: int | str) -> StateVector:
    """Two-term state |0...0> + |r>, the xbar = 0 representative of a collapse."""
    rv = _parse_period(n, r)
    amps = [0] * (1 << n)
    amps[0] = 1
    amps[rv] = 1
    return StateVector(n, tuple(amps))
