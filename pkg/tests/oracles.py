"""Reference models the test suite trusts.

Everything here recomputes behavior from first principles on plain
ints, dicts and strings, deliberately independent of the package
internals being checked.
"""

from __future__ import annotations

import random
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

# the worked three-state machine: scans right, flipping 1s to 0s, and
# writes a 1 on every blank until it runs off the written tape
EXAMPLE_MACHINE = """\
start a0
a0 0 -> b 1 R
a0 1 -> a1 0 R
a1 0 -> b 1 R
a1 1 -> a0 0 R
b 1 -> a0 0 R
"""

FractionPairs = Sequence[Tuple[int, int]]


def brute_first_match(fractions: FractionPairs, n: int) -> Optional[Tuple[int, int]]:
    """First applicable fraction by literal divisibility scan."""
    for i, (num, den) in enumerate(fractions):
        if (n * num) % den == 0:
            return i, n * num // den
    return None


def brute_step(fractions: FractionPairs, n: int) -> Optional[int]:
    hit = brute_first_match(fractions, n)
    return None if hit is None else hit[1]


def brute_run(fractions: FractionPairs, n: int, fuel: int) -> Tuple[List[int], bool]:
    """Value sequence and whether the run halted within fuel."""
    values = [n]
    for _ in range(fuel):
        nxt = brute_step(fractions, values[-1])
        if nxt is None:
            return values, True
        values.append(nxt)
    return values, False


def denominator_lcm(fractions: FractionPairs) -> int:
    return lcm(*(den for _, den in fractions))


def expected_canonical(
    fractions: FractionPairs, values: Sequence[int], halted: bool
) -> Tuple[int, ...]:
    """Indices of the root elements a rewrite of element values[0]-1 must
    pass through: one per interpreter value, then, after a halt at v,
    the descent v-1-d, v-1-2d, ... down into the first period."""
    out = [v - 1 for v in values]
    if halted:
        d = denominator_lcm(fractions)
        n = values[-1] - 1
        while n >= d:
            n -= d
            out.append(n)
    return tuple(out)


# ---------------------------------------------------------------------------
# a Turing machine on an explicit {position: bit} tape

Delta = Dict[Tuple[str, int], Tuple[str, int, str]]


def tape_from_triple(left: int, head: int, right: int) -> Dict[int, int]:
    tape: Dict[int, int] = {}
    if head:
        tape[0] = head
    i = -1
    while left:
        if left & 1:
            tape[i] = 1
        left >>= 1
        i -= 1
    i = 1
    while right:
        if right & 1:
            tape[i] = 1
        right >>= 1
        i += 1
    return tape


def triple_from_tape(tape: Dict[int, int], pos: int) -> Tuple[int, int, int]:
    left = sum(1 << i for i in range(64) if tape.get(pos - 1 - i, 0))
    right = sum(1 << i for i in range(64) if tape.get(pos + 1 + i, 0))
    return left, tape.get(pos, 0), right


def dict_tape_step(
    delta: Delta, state: str, tape: Dict[int, int], pos: int
) -> Optional[Tuple[str, Dict[int, int], int]]:
    rule = delta.get((state, tape.get(pos, 0)))
    if rule is None:
        return None
    q2, s, d = rule
    tape = dict(tape)
    if s:
        tape[pos] = 1
    else:
        tape.pop(pos, None)
    return q2, tape, pos - 1 if d == "L" else pos + 1


def dict_tape_run(
    delta: Delta, state: str, triple: Tuple[int, int, int], fuel: int
) -> Tuple[List[Tuple[str, int, int, int]], bool]:
    """Trace of (state, left, head, right) rows and whether it halted."""
    tape = tape_from_triple(*triple)
    pos = 0
    rows = [(state, *triple_from_tape(tape, pos))]
    for _ in range(fuel):
        nxt = dict_tape_step(delta, state, tape, pos)
        if nxt is None:
            return rows, True
        state, tape, pos = nxt
        rows.append((state, *triple_from_tape(tape, pos)))
    return rows, False


# ---------------------------------------------------------------------------
# seeded generators (text only, so nothing here depends on package types)


def random_program_text(
    rng: random.Random, max_fractions: int = 6, max_part: int = 30
) -> str:
    k = rng.randint(1, max_fractions)
    return " ".join(
        f"{rng.randint(1, max_part)}/{rng.randint(1, max_part)}" for _ in range(k)
    )


def random_machine_text(
    rng: random.Random, max_states: int = 3, allow_self: bool = False
) -> str:
    k = rng.randint(1, max_states)
    names = [f"q{i}" for i in range(k)]
    lines = [f"start {names[0]}"]
    for q in names:
        for x in (0, 1):
            if rng.random() < 0.75:
                targets = names if allow_self or k == 1 else [p for p in names if p != q]
                if not targets:
                    continue
                q2 = rng.choice(targets)
                if not allow_self and q2 == q:
                    continue
                s = rng.randint(0, 1)
                d = rng.choice("LR")
                lines.append(f"{q} {x} -> {q2} {s} {d}")
    return "\n".join(lines) + "\n"


def random_triple(rng: random.Random, max_bits: int = 4) -> Tuple[int, int, int]:
    top = (1 << max_bits) - 1
    return rng.randint(0, top), rng.randint(0, 1), rng.randint(0, top)
