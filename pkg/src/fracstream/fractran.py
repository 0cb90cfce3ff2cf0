"""Exact Fractran semantics.

A Fractran program is a finite ordered list of positive fractions.  One
step multiplies the current natural number by the first fraction that
yields a natural number again; the run halts when no fraction applies.
Fractions are kept exactly as written in the source, never reduced: the
residue machinery below uses numerators and denominators as given.

Whether a fraction applies to n depends only on n modulo d, the least
common multiple of the denominators.  For each class representative
c in {1..d} the program therefore has a fixed multiplier and offset with

    f(n) = floor((n - 1) / d) * multiplier(c) + offset(c)

where c is n's representative.  The per-class entries are computed on
demand and cached; d itself can be far too large for a materialized
table (the prime-generating program below has d = 6469693230).

Two step backends exist and must agree: plain big integers, and
exponent vectors (finite prime -> exponent maps) where divisibility is
a componentwise comparison.  The vector backend keeps huge values
implicit, which matters for programs compiled from Turing machines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Rational
from math import lcm
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple


class FractranError(ValueError):
    """Base class for program text and input validation errors."""


class EmptyProgram(FractranError):
    """Program text contains no fractions."""


class ZeroPart(FractranError):
    """A numerator or denominator is zero."""


class Malformed(FractranError):
    """A token does not match the a/b grammar."""


class ZeroInput(FractranError):
    """An operation that needs n >= 1 was given something smaller."""


# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True)
class Fraction:
    """A program fraction, stored exactly as written (never reduced)."""

    num: int  # numerator, >= 1
    den: int  # denominator, >= 1

    def __post_init__(self) -> None:
        if self.num < 1 or self.den < 1:
            raise ZeroPart(f"fraction parts must be positive: {self.num}/{self.den}")

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


@dataclass(frozen=True)
class ExponentVector:
    """A natural number >= 1 as a finite map from prime to exponent.

    Entries are (prime, exponent) pairs with primes ascending and
    exponents >= 1; the empty vector is 1.
    """

    entries: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        last = 1
        for p, e in self.entries:
            if p <= last:
                raise ValueError("primes must be distinct and ascending")
            if e < 1:
                raise ValueError("stored exponents must be >= 1")
            last = p

    @staticmethod
    def from_dict(entries: Mapping[int, int]) -> "ExponentVector":
        return ExponentVector(tuple(sorted((p, e) for p, e in entries.items() if e)))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    def exponent(self, prime: int) -> int:
        for p, e in self.entries:
            if p == prime:
                return e
        return 0

    def value(self) -> int:
        n = 1
        for p, e in self.entries:
            n *= p**e
        return n


def factorize(n: int) -> ExponentVector:
    """Factor n >= 1 by trial division (inputs are desk scale)."""
    if n < 1:
        raise ZeroInput(f"cannot factor {n}")
    entries: List[Tuple[int, int]] = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            entries.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        entries.append((m, 1))
    return ExponentVector(tuple(entries))


# ---------------------------------------------------------------------------
# programs and the residue table


class ResidueEntry(Tuple[int, int, int]):
    """Table row (multiplier, offset, rule) for one residue class."""

    __slots__ = ()

    def __new__(cls, multiplier: int, offset: int, rule: int) -> "ResidueEntry":
        return tuple.__new__(cls, (multiplier, offset, rule))

    @property
    def multiplier(self) -> int:
        return self[0]

    @property
    def offset(self) -> int:
        return self[1]

    @property
    def rule(self) -> int:
        return self[2]


class ResidueTable(Mapping[int, Optional[ResidueEntry]]):
    """Read-only view of a program's residue table, keyed by 1..d.

    Entries are computed on first access; nothing of size d is ever
    materialized, so the view works for gigantic d as well.
    """

    __slots__ = ("_program",)

    def __init__(self, program: "FractranProgram") -> None:
        self._program = program

    def __getitem__(self, n: int) -> Optional[ResidueEntry]:
        if not 1 <= n <= self._program.d:
            raise KeyError(n)
        return self._program.residue_entry(n)

    def __iter__(self) -> Iterator[int]:
        return iter(range(1, self._program.d + 1))

    def __len__(self) -> int:
        return self._program.d


class FractranProgram:
    """An ordered fraction list plus its residue machinery."""

    __slots__ = ("fractions", "d", "_need_vecs", "_delta_vecs", "_residue_cache")

    def __init__(self, fractions: Sequence[Fraction]):
        if not fractions:
            raise EmptyProgram("a program needs at least one fraction")
        self.fractions: Tuple[Fraction, ...] = tuple(fractions)
        self.d: int = lcm(*(f.den for f in self.fractions))
        # Per-rule factored forms for the exponent-vector backend. Since
        # fractions are kept unreduced, a numerator may cover part of its
        # own denominator: p/q applies to n iff q divides n*p, so the
        # exponent test must subtract num from den first.
        needs = []
        deltas = []
        for f in self.fractions:
            num = dict(factorize(f.num).entries)
            den = dict(factorize(f.den).entries)
            primes = sorted(set(num) | set(den))
            delta = {p: num.get(p, 0) - den.get(p, 0) for p in primes}
            needs.append(tuple((p, -e) for p, e in delta.items() if e < 0))
            deltas.append(tuple((p, e) for p, e in delta.items() if e))
        self._need_vecs = tuple(needs)
        self._delta_vecs = tuple(deltas)
        self._residue_cache: Dict[int, Optional[ResidueEntry]] = {}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FractranProgram) and self.fractions == other.fractions

    def __hash__(self) -> int:
        return hash(self.fractions)

    def __repr__(self) -> str:
        return f"FractranProgram({' '.join(str(f) for f in self.fractions)})"

    def first_rule(self, n: int) -> Optional[int]:
        """Index of the first fraction applicable to n, if any."""
        if n < 1:
            raise ZeroInput(f"step needs n >= 1, got {n}")
        for i, f in enumerate(self.fractions):
            if (n * f.num) % f.den == 0:
                return i
        return None

    def residue_entry(self, n: int) -> Optional[ResidueEntry]:
        """Table row for class representative n in {1..d}, or None."""
        if not 1 <= n <= self.d:
            raise ZeroInput(f"residue class representative must be in 1..{self.d}")
        try:
            return self._residue_cache[n]
        except KeyError:
            pass
        i = self.first_rule(n)
        if i is None:
            entry = None
        else:
            f = self.fractions[i]
            entry = ResidueEntry(f.num * (self.d // f.den), n * f.num // f.den, i)
        self._residue_cache[n] = entry
        return entry

    @property
    def table(self) -> ResidueTable:
        return ResidueTable(self)

    # exponent-vector stepping on plain dicts (internal plumbing; the
    # public wrapper is step_vector below)
    def _vector_step(self, v: Dict[int, int]) -> Optional[Dict[int, int]]:
        stepped = self._vector_step_rule(v)
        return None if stepped is None else stepped[0]

    def _vector_step_rule(
        self, v: Dict[int, int]
    ) -> Optional[Tuple[Dict[int, int], int]]:
        get = v.get
        for i, need in enumerate(self._need_vecs):
            for p, e in need:
                if get(p, 0) < e:
                    break
            else:
                out = dict(v)
                for p, e in self._delta_vecs[i]:
                    r = out.get(p, 0) + e
                    if r:
                        out[p] = r
                    else:
                        del out[p]
                return out, i
        return None


def parse_program(text: str) -> FractranProgram:
    """Parse whitespace-separated a/b tokens; '#' comments to end of line.

    A bare integer token a means a/1.
    """
    fractions: List[Fraction] = []
    for line in text.splitlines():
        body = line.split("#", 1)[0]
        for token in body.split():
            num_s, sep, den_s = token.partition("/")
            if not num_s.isdigit() or (sep and not den_s.isdigit()):
                raise Malformed(f"bad fraction token: {token!r}")
            num = int(num_s)
            den = int(den_s) if sep else 1
            if num == 0 or den == 0:
                raise ZeroPart(f"zero in fraction token: {token!r}")
            fractions.append(Fraction(num, den))
    return FractranProgram(fractions)


# ---------------------------------------------------------------------------
# stepping and runs


def step(program: FractranProgram, n: int) -> Optional[int]:
    """One Fractran step on n, or None when no fraction applies."""
    i = program.first_rule(n)
    if i is None:
        return None
    f = program.fractions[i]
    return n * f.num // f.den


def step_with_rule(program: FractranProgram, n: int) -> Optional[Tuple[int, int]]:
    """Like step, but also reports which rule fired."""
    i = program.first_rule(n)
    if i is None:
        return None
    f = program.fractions[i]
    return n * f.num // f.den, i


def step_vector(program: FractranProgram, v: ExponentVector) -> Optional[ExponentVector]:
    """The exponent-vector twin of step; must agree with it everywhere."""
    out = program._vector_step(v.as_dict())
    return None if out is None else ExponentVector.from_dict(out)


@dataclass(frozen=True)
class Halted:
    steps: int  # number of steps taken before no fraction applied


@dataclass(frozen=True)
class FuelExhausted:
    fuel: int  # the exhausted budget


Outcome = object  # Halted | FuelExhausted


@dataclass(frozen=True)
class Trace:
    """A run's exact value sequence plus how it ended.

    If outcome is Halted(k), values has length k + 1 and no fraction
    applies to the last value.
    """

    values: Tuple[int, ...]
    outcome: Outcome


def run(program: FractranProgram, n0: int, fuel: int, backend: str = "int") -> Trace:
    """Iterate step from n0 until undefined or fuel runs out."""
    if n0 < 1:
        raise ZeroInput(f"start value must be >= 1, got {n0}")
    values = [n0]
    if backend == "int":
        n = n0
        for _ in range(fuel):
            nxt = step(program, n)
            if nxt is None:
                return Trace(tuple(values), Halted(len(values) - 1))
            values.append(nxt)
            n = nxt
    elif backend == "vector":
        v = factorize(n0).as_dict()
        for _ in range(fuel):
            v = program._vector_step(v)
            if v is None:
                return Trace(tuple(values), Halted(len(values) - 1))
            values.append(ExponentVector.from_dict(v).value())
    else:
        raise ValueError(f"unknown backend: {backend!r}")
    return Trace(tuple(values), FuelExhausted(fuel))


def halts(program: FractranProgram, n: int, fuel: int, backend: str = "int"):
    """Bounded halting probe: Halted(steps) or Exhausted(fuel)."""
    if n < 1:
        raise ZeroInput(f"start value must be >= 1, got {n}")
    if backend == "int":
        for i in range(fuel):
            nxt = step(program, n)
            if nxt is None:
                return Halted(i)
            n = nxt
    elif backend == "vector":
        v = factorize(n).as_dict()
        for i in range(fuel):
            v = program._vector_step(v)
            if v is None:
                return Halted(i)
    else:
        raise ValueError(f"unknown backend: {backend!r}")
    return FuelExhausted(fuel)


def is_trivially_immortal(program: FractranProgram) -> bool:
    """True iff some fraction has denominator 1 as written (2/4 is not
    reduced to 1/2 first)."""
    return any(f.den == 1 for f in program.fractions)


def iter_power_of_two_exponents(
    program: FractranProgram, n0: int, max_steps: int
) -> Iterator[int]:
    """Yield e for every exact power 2^e among steps 1..max_steps.

    Step 0 (the start value) is deliberately not scanned, and 1 = 2^0
    counts with exponent 0.  Uses the exponent-vector backend so huge
    intermediate values stay implicit.
    """
    if n0 < 1:
        raise ZeroInput(f"start value must be >= 1, got {n0}")
    v = factorize(n0).as_dict()
    for _ in range(max_steps):
        v = program._vector_step(v)
        if v is None:
            return
        if all(p == 2 for p in v):
            yield v.get(2, 0)


def powers_of_two_exponents(
    program: FractranProgram, n0: int, limit: int
) -> List[int]:
    """All power-of-two exponents seen in steps 1..limit, in order."""
    return list(iter_power_of_two_exponents(program, n0, limit))


# ---------------------------------------------------------------------------
# the Collatz-function view


class _BranchView(Sequence[Tuple[Rational, Rational]]):
    """Branches (a_j, b_j) for j = 0..p-1, computed on demand."""

    __slots__ = ("_program",)

    def __init__(self, program: FractranProgram) -> None:
        self._program = program

    def __len__(self) -> int:
        return self._program.d

    def __getitem__(self, j: int):
        d = self._program.d
        if isinstance(j, slice):
            return [self[i] for i in range(*j.indices(d))]
        if not 0 <= j < d:
            raise IndexError(j)
        entry = self._program.residue_entry(j if j >= 1 else d)
        if entry is None:
            return (Rational(0), Rational(1))
        f = self._program.fractions[entry.rule]
        return (Rational(f.num, f.den), Rational(0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, _BranchView):
            other = list(other)
        if isinstance(other, (list, tuple)):
            return len(other) == len(self) and all(
                self[j] == other[j] for j in range(len(self))
            )
        return NotImplemented


@dataclass(frozen=True)
class CollatzForm:
    """A program as a total piecewise-linear map on residue classes.

    Branch j covers n with n mod p = j.  Either b_j = 0 and the branch
    is one program step, or (a_j, b_j) = (0, 1): the step was undefined
    and the map returns 1 instead.  That convention lives here only,
    never in the interpreter.
    """

    p: int
    branches: Sequence[Tuple[Rational, Rational]]

    def apply(self, n: int) -> int:
        if n < 1:
            raise ZeroInput(f"the form is evaluated on n >= 1, got {n}")
        a, b = self.branches[n % self.p]
        out = a * n + b
        assert out.denominator == 1
        return int(out)


def derive_collatz_form(program: FractranProgram) -> CollatzForm:
    return CollatzForm(p=program.d, branches=_BranchView(program))


# ---------------------------------------------------------------------------
# rendering

def render_factorization(n: int) -> str:
    if n == 1:
        return "1"
    return "·".join(f"{p}^{e}" for p, e in factorize(n).entries)


def render_trace(trace: Trace, factored: bool = False) -> List[str]:
    """One line per value, step-indexed; factored form on request."""
    lines = []
    for i, v in enumerate(trace.values):
        if factored:
            lines.append(f"{i}: {v} = {render_factorization(v)}")
        else:
            lines.append(f"{i}: {v}")
    return lines


# Conway's prime-generating program: started from 2, the powers of two
# that appear later in the run carry exactly the primes as exponents.
PRIME_GAME = parse_program(
    "17/91 78/85 19/51 23/38 29/33 77/29 95/23 77/19 1/17 11/13 13/11 15/14 15/2 55/1"
)
