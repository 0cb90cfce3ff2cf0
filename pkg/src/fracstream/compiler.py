"""Compiling unary Turing machines to Fractran programs.

The simulation works on numbers of the shape l^L * p_q * h^H * r^R,
one prime each for the tape left of the head, the machine state, the
cell under the head and the tape to the right.  A move rewrites the
tape digit by digit through primed scratch copies (l', h', r'), driven
by mover primes m_{L,x} / m_{R,x} whose x toggles between digits, then
copies the scratch tape back under c0/c1.  Transition fractions switch
the state prime and deposit the written symbol; states with no rule
for a symbol make the run halt.  An initial block of 1/(p*p') sweeps
fractions kills every value carrying an illegal prime combination, so
that from a legal start the run visits exactly the configuration
encodings in between the scratch work.

Values between two configuration encodings always carry a mover, copy
or h' prime, so the encodings are precisely the clean values of the
run.  check_simulation leans on that: it replays a machine next to its
compiled program and demands that the clean values appear in lockstep
with the machine's configurations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .fractran import (
    ExponentVector,
    Fraction,
    FractranProgram,
    FuelExhausted,
    Halted,
)
from .turing import Configuration, UnaryTM, tm_run


class SelfTransition(ValueError):
    """The compiler needs a machine with no state mapped to itself."""


def _primes() -> Iterator[int]:
    n = 2
    while True:
        for p in range(2, n):
            if n % p == 0:
                break
            if p * p > n:
                yield n
                break
        else:
            yield n
        n += 1


@dataclass(frozen=True)
class PrimeAllocation:
    """Role primes are fixed; state primes continue from 41 in machine
    state order."""

    l: int = 2    # tape left of the head
    h: int = 3    # cell under the head
    r: int = 5    # tape right of the head
    lp: int = 7   # scratch tape left
    hp: int = 11  # scratch cell under the head
    rp: int = 13  # scratch tape right
    mL0: int = 17  # move head left, toggle 0
    mL1: int = 19  # move head left, toggle 1
    mR0: int = 23  # move head right, toggle 0
    mR1: int = 29  # move head right, toggle 1
    c0: int = 31   # copy scratch back, toggle 0
    c1: int = 37   # copy scratch back, toggle 1
    state_primes: Dict[str, int] = None  # type: ignore[assignment]

    def state_prime(self, q: str) -> int:
        return self.state_primes[q]


def allocate_primes(tm: UnaryTM) -> PrimeAllocation:
    gen = _primes()
    states: Dict[str, int] = {}
    for p in gen:
        if p > 37:
            states[tm.states[0]] = p
            break
    for q in tm.states[1:]:
        states[q] = next(gen)
    return PrimeAllocation(state_primes=states)


@dataclass(frozen=True)
class CompiledProgram:
    program: FractranProgram
    allocation: PrimeAllocation
    families: Tuple[str, ...]  # one tag per fraction, same order

    def family_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for tag in self.families:
            counts[tag] = counts.get(tag, 0) + 1
        return counts


def compile(tm: UnaryTM) -> CompiledProgram:
    """Compile a machine with no self transitions (normalize first)."""
    if tm.has_self_transition():
        raise SelfTransition(
            "a state maps to itself; run normalize_no_self_loops first"
        )
    a = allocate_primes(tm)
    fractions: List[Fraction] = []
    families: List[str] = []

    def emit(num: int, den: int, tag: str) -> None:
        fractions.append(Fraction(num, den))
        families.append(tag)

    # illegal prime pairs, unordered with repetition, group by group
    movers = (a.mL0, a.mL1, a.mR0, a.mR1, a.c0, a.c1)
    state_ps = tuple(a.state_primes[q] for q in tm.states)
    heads = (a.h, a.hp)
    for group in (movers, state_ps, heads):
        for i in range(len(group)):
            for j in range(i, len(group)):
                emit(1, group[i] * group[j], "illegal")

    # head moves, one digit per firing; x=0 and x=1 instances adjacent
    mL = (a.mL0, a.mL1)
    for x in (0, 1):
        emit(mL[1 - x] * a.lp, mL[x] * a.l * a.l, "move-left")
    for x in (0, 1):
        emit(mL[1 - x] * a.rp * a.rp, mL[x] * a.r, "move-left")
    for x in (0, 1):
        emit(mL[1 - x] * a.rp, mL[x] * a.hp, "move-left")
    for x in (0, 1):
        emit(mL[1 - x] * a.h, mL[x] * a.l, "move-left")
    for x in (0, 1):
        emit(a.c0, mL[x], "move-left")

    mR = (a.mR0, a.mR1)
    for x in (0, 1):
        emit(mR[1 - x] * a.rp, mR[x] * a.r * a.r, "move-right")
    for x in (0, 1):
        emit(mR[1 - x] * a.lp * a.lp, mR[x] * a.l, "move-right")
    for x in (0, 1):
        emit(mR[1 - x] * a.lp, mR[x] * a.hp, "move-right")
    for x in (0, 1):
        emit(mR[1 - x] * a.h, mR[x] * a.r, "move-right")
    for x in (0, 1):
        emit(a.c0, mR[x], "move-right")

    cc = (a.c0, a.c1)
    for x in (0, 1):
        emit(cc[1 - x] * a.l, cc[x] * a.lp, "copy")
    for x in (0, 1):
        emit(cc[1 - x] * a.r, cc[x] * a.rp, "copy")
    for x in (0, 1):
        emit(1, cc[x], "copy")

    def mover_for(d: str) -> int:
        return a.mL0 if d == "L" else a.mR0

    for q in tm.states:
        rule = tm.delta.get((q, 1))
        if rule is not None:
            q2, s, d = rule
            emit(
                a.state_primes[q2] * a.hp**s * mover_for(d),
                a.state_primes[q] * a.h,
                "trans-head",
            )

    for q in tm.states:
        emit(1, a.state_primes[q] * a.h, "term")

    for q in tm.states:
        rule = tm.delta.get((q, 0))
        if rule is not None:
            q2, s, d = rule
            emit(
                a.state_primes[q2] * a.hp**s * mover_for(d),
                a.state_primes[q],
                "trans-blank",
            )

    return CompiledProgram(FractranProgram(fractions), a, tuple(families))


def encode_config(allocation: PrimeAllocation, c: Configuration) -> ExponentVector:
    """The number l^left * p_state * h^head * r^right, as a vector."""
    entries = {
        allocation.l: c.left,
        allocation.state_primes[c.state]: 1,
        allocation.h: c.head,
        allocation.r: c.right,
    }
    return ExponentVector.from_dict(entries)


_SECTION_TITLES = {
    "illegal": "illegal prime combinations",
    "move-left": "move head left",
    "move-right": "move head right",
    "copy": "copy scratch tape back",
    "trans-head": "transitions on head symbol 1",
    "term": "termination on uncovered head symbol 1",
    "trans-blank": "transitions on head symbol 0",
}


def render_compiled(compiled: CompiledProgram) -> str:
    """Commented program text; parse_program accepts it unchanged."""
    a = compiled.allocation
    lines = []
    for name, p, meaning in (
        ("l", a.l, "tape left of the head"),
        ("h", a.h, "cell under the head"),
        ("r", a.r, "tape right of the head"),
        ("l'", a.lp, "scratch tape left"),
        ("h'", a.hp, "scratch cell under the head"),
        ("r'", a.rp, "scratch tape right"),
        ("m_L0", a.mL0, "move head left, toggle 0"),
        ("m_L1", a.mL1, "move head left, toggle 1"),
        ("m_R0", a.mR0, "move head right, toggle 0"),
        ("m_R1", a.mR1, "move head right, toggle 1"),
        ("c0", a.c0, "copy scratch back, toggle 0"),
        ("c1", a.c1, "copy scratch back, toggle 1"),
    ):
        lines.append(f"# {name} {p} = {meaning}")
    for q, p in a.state_primes.items():
        lines.append(f"# p_{q} {p} = state {q}")
    current = None
    for f, tag in zip(compiled.program.fractions, compiled.families):
        if tag != current:
            lines.append(f"# {_SECTION_TITLES[tag]}")
            current = tag
        lines.append(f"{f.num}/{f.den}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# simulation checking


@dataclass(frozen=True)
class Verified:
    tm_steps: int
    fractran_steps: int


@dataclass(frozen=True)
class CounterExample:
    reason: str
    fractran_steps: int


def check_simulation(tm: UnaryTM, c: Configuration, fuel: int):
    """Replay tm from c against its compiled program.

    The compiled run must reach every configuration encoding in order,
    stay dirty (carry a scratch prime) strictly in between, and halt
    once the machine does.  Returns Verified, CounterExample or
    FuelExhausted; the machine itself gets the same fuel, which cannot
    be the binding constraint since each move costs several fractions.
    """
    compiled = compile(tm)
    prog = compiled.program
    a = compiled.allocation
    dirty_primes = (a.lp, a.hp, a.rp, a.mL0, a.mL1, a.mR0, a.mR1, a.c0, a.c1)

    def is_clean(v: Dict[int, int]) -> bool:
        return not any(p in v for p in dirty_primes)

    mtrace = tm_run(tm, c, fuel)
    targets = [encode_config(a, ci).as_dict() for ci in mtrace.configs[1:]]

    v = encode_config(a, c).as_dict()
    steps = 0
    for k, target in enumerate(targets):
        while True:
            nxt = prog._vector_step(v)
            if nxt is None:
                return CounterExample(
                    f"halted before reaching configuration {k + 1}", steps
                )
            steps += 1
            v = nxt
            if v == target:
                break
            if is_clean(v):
                return CounterExample(
                    f"clean value between configurations {k} and {k + 1}", steps
                )
            if steps >= fuel:
                return FuelExhausted(fuel)

    if not isinstance(mtrace.outcome, Halted):
        return FuelExhausted(fuel)

    while True:
        nxt = prog._vector_step(v)
        if nxt is None:
            return Verified(tm_steps=len(targets), fractran_steps=steps)
        steps += 1
        v = nxt
        if steps >= fuel:
            return FuelExhausted(fuel)
