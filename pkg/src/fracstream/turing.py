"""Unary Turing machines over tape alphabet {0, 1}.

The tape is two-way infinite and all but finitely many cells are 0, so
a configuration packs into three numbers: reading outward from the
head, the cells at positions -1, -2, ... are the binary digits of
`left` (least significant nearest the head) and the cells at +1, +2,
... are the digits of `right` likewise.  `head` is the cell under the
head.  A transition function is partial; the machine halts when the
current (state, symbol) pair has no rule.

Machine text format, '#' comments allowed:

    start a0
    a0 0 -> b 1 R
    b 1 -> a0 0 L

Configuration text is three fields, for example "1 b 1001": the left
field is an ordinary binary numeral (most significant digit first), the
last field is the head cell followed by the tape to its right in tape
order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .fractran import FuelExhausted, Halted


class TuringError(ValueError):
    """Base class for machine text and configuration errors."""


class NoStart(TuringError):
    """Machine text does not begin with a start line."""


class DuplicateTransition(TuringError):
    """Two rules share the same (state, symbol) pair."""


class BadSymbol(TuringError):
    """A tape symbol other than 0 or 1."""


class UnknownDirection(TuringError):
    """A move other than L or R."""


Transition = Tuple[str, int, str]  # (next state, symbol written, direction)


@dataclass(frozen=True)
class UnaryTM:
    states: Tuple[str, ...]  # start state first, then appearance order
    start: str
    delta: Dict[Tuple[str, int], Transition]

    def __post_init__(self) -> None:
        known = set(self.states)
        if self.start not in known:
            raise NoStart(f"start state {self.start!r} is not a machine state")
        for (q, x), (q2, s, d) in self.delta.items():
            if q not in known or q2 not in known:
                raise TuringError(f"transition uses unknown state: {q!r} or {q2!r}")
            if x not in (0, 1) or s not in (0, 1):
                raise BadSymbol(f"tape symbols are 0 or 1: {q} {x} -> {q2} {s} {d}")
            if d not in ("L", "R"):
                raise UnknownDirection(f"direction must be L or R: {d!r}")

    def has_self_transition(self) -> bool:
        return any(q == q2 for (q, _), (q2, _, _) in self.delta.items())


@dataclass(frozen=True)
class Configuration:
    state: str
    left: int   # tape left of the head, least significant bit adjacent
    head: int   # cell under the head
    right: int  # tape right of the head, least significant bit adjacent

    def __post_init__(self) -> None:
        if self.left < 0 or self.right < 0:
            raise TuringError("tape numbers must be >= 0")
        if self.head not in (0, 1):
            raise BadSymbol(f"head cell must be 0 or 1, got {self.head}")


def parse_tm(text: str) -> UnaryTM:
    lines = []
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append(body)
    if not lines or lines[0].split()[0] != "start":
        raise NoStart("machine text must begin with 'start <state>'")
    head = lines[0].split()
    if len(head) != 2:
        raise NoStart(f"bad start line: {lines[0]!r}")
    start = head[1]

    states: List[str] = [start]
    seen = {start}

    def note(q: str) -> None:
        if q not in seen:
            seen.add(q)
            states.append(q)

    delta: Dict[Tuple[str, int], Transition] = {}
    for line in lines[1:]:
        tokens = line.split()
        if len(tokens) != 6 or tokens[2] != "->":
            raise TuringError(f"bad transition line: {line!r}")
        q, x_s, _, q2, s_s, d = tokens
        if x_s not in ("0", "1") or s_s not in ("0", "1"):
            raise BadSymbol(f"tape symbols are 0 or 1: {line!r}")
        if d not in ("L", "R"):
            raise UnknownDirection(f"direction must be L or R: {line!r}")
        x = int(x_s)
        if (q, x) in delta:
            raise DuplicateTransition(f"second rule for ({q}, {x})")
        note(q)
        note(q2)
        delta[(q, x)] = (q2, int(s_s), d)
    return UnaryTM(tuple(states), start, delta)


def parse_config(text: str) -> Configuration:
    parts = text.split()
    if len(parts) != 3:
        raise TuringError(f"configuration needs three fields, got {text!r}")
    left_s, state, cells = parts
    if not left_s or any(c not in "01" for c in left_s):
        raise BadSymbol(f"left tape must be a binary numeral: {left_s!r}")
    if not cells or any(c not in "01" for c in cells):
        raise BadSymbol(f"head-and-right field must be binary: {cells!r}")
    # cells[0] is under the head; cells[1:] follow in tape order, so the
    # digit adjacent to the head is the least significant one of right
    right_bits = cells[:0:-1]
    return Configuration(
        state=state,
        left=int(left_s, 2),
        head=int(cells[0]),
        right=int(right_bits, 2) if right_bits else 0,
    )


def format_config(c: Configuration) -> str:
    right = ""
    r = c.right
    while r:
        right += str(r & 1)
        r >>= 1
    return f"{c.left:b} {c.state} {c.head}{right}"


def tm_step(tm: UnaryTM, c: Configuration) -> Optional[Configuration]:
    """One move, or None when no rule covers (state, head)."""
    rule = tm.delta.get((c.state, c.head))
    if rule is None:
        return None
    q2, s, d = rule
    if d == "L":
        return Configuration(q2, c.left >> 1, c.left & 1, s + 2 * c.right)
    return Configuration(q2, s + 2 * c.left, c.right & 1, c.right >> 1)


@dataclass(frozen=True)
class TMTrace:
    configs: Tuple[Configuration, ...]
    outcome: object  # Halted | FuelExhausted


def tm_run(tm: UnaryTM, c: Configuration, fuel: int) -> TMTrace:
    configs = [c]
    for _ in range(fuel):
        nxt = tm_step(tm, configs[-1])
        if nxt is None:
            return TMTrace(tuple(configs), Halted(len(configs) - 1))
        configs.append(nxt)
    return TMTrace(tuple(configs), FuelExhausted(fuel))


def normalize_no_self_loops(tm: UnaryTM) -> UnaryTM:
    """Split every state into itself plus a shadow so no rule maps a
    state to itself.  Machines already free of self transitions come
    back unchanged (the same object); running the result again is a
    no-op, and each original move stays exactly one move.
    """
    if not tm.has_self_transition():
        return tm

    taken = set(tm.states)

    def fresh(q: str) -> str:
        name = q + "#"
        while name in taken:
            name += "#"
        taken.add(name)
        return name

    shadow = {q: fresh(q) for q in tm.states}
    states: List[str] = []
    for q in tm.states:
        states.append(q)
        states.append(shadow[q])
    delta: Dict[Tuple[str, int], Transition] = {}
    for (q, x), (q2, s, d) in tm.delta.items():
        delta[(q, x)] = (shadow[q2], s, d)
        delta[(shadow[q], x)] = (q2, s, d)
    return UnaryTM(tuple(states), tm.start, delta)
