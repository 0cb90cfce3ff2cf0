"""Stream specifications induced by Fractran programs.

A program with residue bound d turns into a specification of one
stream over the data domain {bullet}: the root unfolds to a d-way zip
whose n-th component is either mod_m(tail^(o-1)(root)) when class n
steps with multiplier m and offset o, or bullet : mod_d(tail^(n-1)(root))
when class n halts.  Under the usual lazy-stream rules (head, tail,
mod_k keeps every k-th element, zip_d interleaves round-robin) the
root's element n rewrites to bullet exactly when the program halts on
n + 1, so bounded rewriting doubles as a bounded halting probe.

The rewrite engine below is a focus-plus-context machine.  Structural
descent is free; each rule application costs one step of fuel, so step
counts are exact rewrite lengths.  Runs of tail applications are kept
as counts, and long tail runs over mod, zip or the induced root are
contracted in closed form without changing the step arithmetic, which
is what makes element probes affordable when d is in the billions (the
root's zip is then never materialized at all; a cursor into it stands
in for the partially consumed right-hand side).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .fractran import FractranProgram, ZeroInput


class StreamError(ValueError):
    """Base class for specification and rewriting errors."""


class FuelZero(StreamError):
    """Rewriting was asked to contract something with no fuel at all."""


class SpecTooLarge(StreamError):
    """The rule set cannot be materialized at this d."""


# ---------------------------------------------------------------------------
# terms


class Term:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Bullet(Term):
    """The only data element."""


@dataclass(frozen=True, slots=True)
class Root(Term):
    """The specified stream constant."""


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Cons(Term):
    head: Term
    tail: Term


@dataclass(frozen=True, slots=True)
class Head(Term):
    arg: Term


@dataclass(frozen=True, slots=True)
class Tail(Term):
    """tail applied count times; runs are merged on construction."""

    arg: Term
    count: int = 1


@dataclass(frozen=True, slots=True)
class Mod(Term):
    k: int
    arg: Term


@dataclass(frozen=True, slots=True)
class Zip(Term):
    args: Tuple[Term, ...]


@dataclass(frozen=True, slots=True)
class RootZip(Term):
    """Cursor into the induced root's zip after m head elements.

    Stands in for the partially consumed right-hand side of the root
    rule when the zip is too wide to build: component i is recovered
    from the residue table on demand.
    """

    m: int


BULLET = Bullet()
ROOT = Root()


def tails(t: Term, k: int) -> Term:
    """tail^k(t) with adjacent runs merged."""
    if k < 0:
        raise StreamError(f"tail count must be >= 0, got {k}")
    if k == 0:
        return t
    if type(t) is Tail:
        return Tail(t.arg, t.count + k)
    return Tail(t, k)


# ---------------------------------------------------------------------------
# specifications


@dataclass(frozen=True)
class StreamSpec:
    """A stream specification the engine can evaluate.

    Either root_rhs holds the materialized right-hand side of the root
    rule, or program is set and the root unfolds through a RootZip
    cursor; induced specs at small d carry both.  mod_ks lists the
    mod arities that occur in the rules (None when unknown because the
    rules were never materialized).
    """

    d: int
    root_name: str
    program: Optional[FractranProgram] = None
    root_rhs: Optional[Term] = None
    mod_ks: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.root_rhs is None and self.program is None:
            raise StreamError("a spec needs a root rule or a program to induce one")


def _component(program: FractranProgram, d: int, n: int) -> Term:
    """Zip component n in 1..d of the induced root."""
    entry = program.residue_entry(n)
    if entry is None:
        return Cons(BULLET, Mod(d, tails(ROOT, n - 1)))
    return Mod(entry.multiplier, tails(ROOT, entry.offset - 1))


def induce_spec(
    program: FractranProgram, materialize_limit: int = 512
) -> StreamSpec:
    """The specification induced by a program.

    The root's zip is built outright when d fits under
    materialize_limit; otherwise the spec stays virtual (the engine
    still evaluates it, but there is no finite rule text to print).
    """
    d = program.d
    if d <= materialize_limit:
        components = tuple(_component(program, d, n) for n in range(1, d + 1))
        ks = set()
        undefined = False
        for n in range(1, d + 1):
            entry = program.residue_entry(n)
            if entry is None:
                undefined = True
            else:
                ks.add(entry.multiplier)
        if undefined:
            ks.add(d)
        return StreamSpec(
            d=d,
            root_name="P",
            program=program,
            root_rhs=Zip(components),
            mod_ks=tuple(sorted(ks)),
        )
    return StreamSpec(d=d, root_name="P", program=program)


def collatz_spec() -> StreamSpec:
    """The two-component spec whose element dynamics are the classic
    Collatz trajectories: C -> bullet : zip_2(C, mod_6(tail^9(C)))."""
    rhs = Cons(BULLET, Zip((ROOT, Mod(6, tails(ROOT, 9)))))
    return StreamSpec(d=2, root_name="C", root_rhs=rhs, mod_ks=(6,))


def phi(n: int, d: int) -> int:
    """The representative of n's residue class, drawn from 1..d."""
    if n < 1:
        raise ZeroInput(f"phi needs n >= 1, got {n}")
    if d < 1:
        raise ZeroInput(f"phi needs d >= 1, got {d}")
    return (n - 1) % d + 1


def predicted_step(program: FractranProgram, n: int) -> Optional[int]:
    """One program step computed from the residue table alone."""
    entry = program.residue_entry(phi(n, program.d))
    if entry is None:
        return None
    return (n - 1) // program.d * entry.multiplier + entry.offset


# ---------------------------------------------------------------------------
# rule listing and export


def spec_rules(spec: StreamSpec) -> List[Tuple[Term, Term]]:
    """The rewrite rules, root first, then head, tail, mod_k ascending,
    zip last."""
    if spec.root_rhs is None:
        raise SpecTooLarge(
            f"d = {spec.d} zip components will not be materialized"
        )
    x = Var("x")
    s = Var("s")
    rules: List[Tuple[Term, Term]] = [
        (ROOT, spec.root_rhs),
        (Head(Cons(x, s)), x),
        (Tail(Cons(x, s)), s),
    ]
    for k in spec.mod_ks or ():
        rules.append((Mod(k, s), Cons(Head(s), Mod(k, tails(s, k)))))
    svars = tuple(Var(f"s{i}") for i in range(1, spec.d + 1))
    rules.append(
        (Zip(svars), Cons(Head(svars[0]), Zip(svars[1:] + (tails(svars[0], 1),))))
    )
    return rules


def render_term(t: Term, root_name: str = "P") -> str:
    cls = type(t)
    if cls is Bullet:
        return "bullet"
    if cls is Root:
        return root_name
    if cls is Var:
        return t.name
    if cls is Cons:
        return f"cons({render_term(t.head, root_name)},{render_term(t.tail, root_name)})"
    if cls is Head:
        return f"head({render_term(t.arg, root_name)})"
    if cls is Tail:
        out = render_term(t.arg, root_name)
        for _ in range(t.count):
            out = f"tail({out})"
        return out
    if cls is Mod:
        return f"mod{t.k}({render_term(t.arg, root_name)})"
    if cls is Zip:
        inner = ",".join(render_term(u, root_name) for u in t.args)
        return f"zip{len(t.args)}({inner})"
    raise StreamError(f"cannot render {t!r}")


def emit_trs(spec: StreamSpec) -> str:
    """The rules in first-order TRS text form, variables declared up
    front, one rule per line."""
    rules = spec_rules(spec)
    names = ["x", "s"] + [f"s{i}" for i in range(1, spec.d + 1)]
    lines = [f"(VAR {' '.join(names)})", "(RULES"]
    for lhs, rhs in rules:
        lines.append(
            f"{render_term(lhs, spec.root_name)} -> {render_term(rhs, spec.root_name)}"
        )
    lines.append(")")
    return "\n".join(lines) + "\n"


def _subterms(t: Term) -> Iterator[Term]:
    yield t
    cls = type(t)
    if cls is Cons:
        yield from _subterms(t.head)
        yield from _subterms(t.tail)
    elif cls in (Head, Mod):
        yield from _subterms(t.arg)
    elif cls is Tail:
        yield from _subterms(t.arg)
    elif cls is Zip:
        for u in t.args:
            yield from _subterms(u)


def _rule_key(t: Term):
    cls = type(t)
    if cls is Root:
        return ("root",)
    if cls is Head:
        return ("head",)
    if cls is Tail:
        return ("tail",)
    if cls is Mod:
        return ("mod", t.k)
    if cls is Zip:
        return ("zip", len(t.args))
    return None


def check_orthogonal(spec: StreamSpec) -> bool:
    """Left-linearity plus non-overlap of the rule set.

    The shapes make this easy: every left-hand side is its own defined
    symbol applied to constructor-and-variable arguments, so it is
    enough that the defined symbols are pairwise distinct and that no
    left-hand side hides a defined symbol in a proper subterm.
    """
    rules = spec_rules(spec)
    keys = []
    for lhs, _ in rules:
        names: List[str] = []
        for sub in _subterms(lhs):
            if type(sub) is Var:
                names.append(sub.name)
        if len(names) != len(set(names)):
            return False
        keys.append(_rule_key(lhs))
    if None in keys or len(keys) != len(set(keys)):
        return False
    defined = set(keys)
    for lhs, _ in rules:
        for sub in _subterms(lhs):
            if sub is lhs:
                continue
            if _rule_key(sub) in defined and type(sub) is not Var:
                # tail(cons(x,s)) legitimately nests nothing defined;
                # a defined symbol below the root would overlap
                return False
    return True


# ---------------------------------------------------------------------------
# the rewrite engine


@dataclass(frozen=True)
class Produced:
    """The element rewrote to bullet in exactly steps rule applications."""

    steps: int
    canonical: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class Exhausted:
    """Fuel ran out; term is the exact partial rewrite."""

    fuel: int
    term: Optional[Term] = None
    canonical: Optional[Tuple[int, ...]] = None


def _induced_head(program: FractranProgram, d: int, m: int) -> Term:
    """Head element handed out by the root zip cursor at position m."""
    base = _component(program, d, m % d + 1)
    return Head(tails(base, m // d))


def rewrite_term(
    spec: StreamSpec,
    term: Term,
    fuel: int,
    batch: bool = True,
    collect_canonical: bool = False,
):
    """Rewrite term to the data normal form bullet, fuel permitting.

    Every rule application costs one unit of fuel and nothing else
    does, so Produced.steps is the exact rewrite length; batch only
    changes how fast long tail runs are consumed, never the count.
    With collect_canonical the result carries the indices n of every
    intermediate of the shape head(tail^n(root)), the probe's own
    index first.
    """
    if fuel < 0:
        raise FuelZero(f"fuel must be >= 0, got {fuel}")
    if fuel == 0:
        if type(term) is Bullet:
            return Produced(0, () if collect_canonical else None)
        raise FuelZero("fuel 0 cannot contract a non-constructor term")

    program = spec.program
    d = spec.d
    frames: List[Optional[int]] = []  # None = pending head, int = pending tails
    focus = term
    steps = 0
    canon: Optional[List[int]] = [] if collect_canonical else None

    def snapshot() -> Term:
        t = focus
        for fr in reversed(frames):
            t = Head(t) if fr is None else tails(t, fr)
        return t

    def done(count: int) -> Produced:
        return Produced(count, tuple(canon) if canon is not None else None)

    def exhausted() -> Exhausted:
        return Exhausted(fuel, snapshot(), tuple(canon) if canon is not None else None)

    while True:
        cls = focus.__class__
        if cls is Cons:
            if not frames:
                raise StreamError("a stream constructor is not a data element")
            if steps >= fuel:
                return exhausted()
            steps += 1
            top = frames[-1]
            if top is None:
                frames.pop()
                focus = focus.head
            elif top == 1:
                frames.pop()
                focus = focus.tail
            else:
                frames[-1] = top - 1
                focus = focus.tail
        elif cls is Head:
            frames.append(None)
            focus = focus.arg
        elif cls is Tail:
            if frames and frames[-1] is not None:
                frames[-1] += focus.count
            else:
                frames.append(focus.count)
            focus = focus.arg
        elif cls is Root:
            if canon is not None:
                if len(frames) == 1 and frames[0] is None:
                    canon.append(0)
                elif len(frames) == 2 and frames[0] is None and frames[1] is not None:
                    canon.append(frames[1])
            if steps >= fuel:
                return exhausted()
            steps += 1
            if spec.root_rhs is not None:
                focus = spec.root_rhs
            else:
                focus = RootZip(0)
        elif cls is Mod:
            k = focus.k
            s = focus.arg
            if batch and frames and frames[-1] is not None:
                t = frames[-1]
                pairs = min(t, (fuel - steps) // 2)
                if pairs == t:
                    steps += 2 * t
                    frames.pop()
                    focus = Mod(k, tails(s, k * t))
                else:
                    steps += 2 * pairs
                    frames[-1] = t - pairs
                    s = tails(s, k * pairs)
                    if steps < fuel:
                        steps += 1
                        focus = Cons(Head(s), Mod(k, tails(s, k)))
                    else:
                        focus = Mod(k, s)
                        return exhausted()
            else:
                if steps >= fuel:
                    return exhausted()
                steps += 1
                focus = Cons(Head(s), Mod(k, tails(s, k)))
        elif cls is Zip:
            args = focus.args
            if batch and frames and frames[-1] is not None:
                t = frames[-1]
                pairs = min(t, (fuel - steps) // 2)
                if pairs == t:
                    steps += 2 * t
                    frames.pop()
                    focus = Zip(_rotate(args, t))
                else:
                    steps += 2 * pairs
                    frames[-1] = t - pairs
                    args = _rotate(args, pairs)
                    if steps < fuel:
                        steps += 1
                        focus = Cons(
                            Head(args[0]), Zip(args[1:] + (tails(args[0], 1),))
                        )
                    else:
                        focus = Zip(args)
                        return exhausted()
            else:
                if steps >= fuel:
                    return exhausted()
                steps += 1
                focus = Cons(Head(args[0]), Zip(args[1:] + (tails(args[0], 1),)))
        elif cls is RootZip:
            m = focus.m
            if batch and frames and frames[-1] is not None:
                t = frames[-1]
                pairs = min(t, (fuel - steps) // 2)
                if pairs == t:
                    steps += 2 * t
                    frames.pop()
                    focus = RootZip(m + t)
                else:
                    steps += 2 * pairs
                    frames[-1] = t - pairs
                    m += pairs
                    if steps < fuel:
                        steps += 1
                        focus = Cons(_induced_head(program, d, m), RootZip(m + 1))
                    else:
                        focus = RootZip(m)
                        return exhausted()
            else:
                if steps >= fuel:
                    return exhausted()
                steps += 1
                focus = Cons(_induced_head(program, d, m), RootZip(m + 1))
        elif cls is Bullet:
            if frames:
                raise StreamError("the bullet is a data element, not a stream")
            return done(steps)
        elif cls is Var:
            raise StreamError(f"cannot rewrite an open term (variable {focus.name})")
        else:
            raise StreamError(f"not a stream term: {focus!r}")


def _rotate(args: Tuple[Term, ...], m: int) -> Tuple[Term, ...]:
    """The zip argument tuple after m unfold-and-peel pairs."""
    dz = len(args)
    out = []
    for i in range(dz):
        j = (i + m) % dz
        wraps = (m - j + dz - 1) // dz if m > j else 0
        out.append(tails(args[j], wraps))
    return tuple(out)


def rewrite_nth(
    spec: StreamSpec,
    n: int,
    fuel: int,
    batch: bool = True,
    collect_canonical: bool = False,
):
    """Evaluate element n of the specified stream: head(tail^n(root))."""
    if n < 0:
        raise StreamError(f"element index must be >= 0, got {n}")
    return rewrite_term(
        spec,
        Head(tails(ROOT, n)),
        fuel,
        batch=batch,
        collect_canonical=collect_canonical,
    )


# ---------------------------------------------------------------------------
# productivity probing


@dataclass(frozen=True)
class ProbeReport:
    entries: Tuple[object, ...]  # Produced | Exhausted, one per index
    fuel: int
    productive_up_to: int  # length of the produced prefix

    @property
    def produced_count(self) -> int:
        return sum(1 for e in self.entries if isinstance(e, Produced))

    @property
    def all_produced(self) -> bool:
        return self.produced_count == len(self.entries)


def probe_productivity(spec: StreamSpec, count: int, fuel: int) -> ProbeReport:
    """Evaluate elements 0..count-1, each on a fresh fuel budget."""
    if count < 0:
        raise StreamError(f"count must be >= 0, got {count}")
    entries = tuple(rewrite_nth(spec, n, fuel) for n in range(count))
    prefix = 0
    for e in entries:
        if not isinstance(e, Produced):
            break
        prefix += 1
    return ProbeReport(entries=entries, fuel=fuel, productive_up_to=prefix)


def render_probe_report(report: ProbeReport) -> List[str]:
    lines = []
    for n, e in enumerate(report.entries):
        if isinstance(e, Produced):
            lines.append(f"{n}: produced steps={e.steps}")
        else:
            lines.append(f"{n}: exhausted fuel={e.fuel}")
    lines.append(
        f"summary: produced={report.produced_count}/{len(report.entries)}"
        f" productive_up_to={report.productive_up_to}"
    )
    return lines
