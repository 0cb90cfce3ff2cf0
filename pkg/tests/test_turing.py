"""Machine parsing, configuration packing, stepping, normalization."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

import fracstream as fs
from oracles import (
    EXAMPLE_MACHINE,
    dict_tape_run,
    dict_tape_step,
    random_machine_text,
    random_triple,
    tape_from_triple,
    triple_from_tape,
)


def test_parse_example_machine():
    tm = fs.parse_tm(EXAMPLE_MACHINE)
    assert tm.start == "a0"
    assert tm.states == ("a0", "b", "a1")
    assert len(tm.delta) == 5
    assert tm.delta[("b", 1)] == ("a0", 0, "R")
    assert ("b", 0) not in tm.delta


def test_parse_machine_with_comments_and_blank_lines():
    tm = fs.parse_tm("# scanner\nstart q  # here\n\nq 1 -> p 0 L\n")
    assert tm.states == ("q", "p")
    assert tm.delta[("q", 1)] == ("p", 0, "L")


def test_parse_machine_with_no_transitions():
    tm = fs.parse_tm("start q\n")
    assert tm.states == ("q",)
    assert tm.delta == {}


def test_parse_machine_errors():
    with pytest.raises(fs.NoStart):
        fs.parse_tm("")
    with pytest.raises(fs.NoStart):
        fs.parse_tm("q 0 -> p 1 R\n")
    with pytest.raises(fs.NoStart):
        fs.parse_tm("start\n")
    with pytest.raises(fs.DuplicateTransition):
        fs.parse_tm("start q\nq 0 -> p 1 R\nq 0 -> q 1 L\n")
    with pytest.raises(fs.BadSymbol):
        fs.parse_tm("start q\nq 2 -> p 1 R\n")
    with pytest.raises(fs.BadSymbol):
        fs.parse_tm("start q\nq 0 -> p b R\n")
    with pytest.raises(fs.UnknownDirection):
        fs.parse_tm("start q\nq 0 -> p 1 U\n")
    with pytest.raises(fs.TuringError):
        fs.parse_tm("start q\nq 0 p 1 R\n")


# ---------------------------------------------------------------------------
# configurations


def test_parse_config_packs_tape_outward_from_head():
    c = fs.parse_config("1 b 1001")
    assert c == fs.Configuration("b", 1, 1, 4)
    assert fs.parse_config("10 a0 001") == fs.Configuration("a0", 2, 0, 2)
    assert fs.parse_config("101 b 01") == fs.Configuration("b", 5, 0, 1)
    assert fs.parse_config("0 q 0") == fs.Configuration("q", 0, 0, 0)


def test_format_config_round_trips_examples():
    for text in ("1 b 1001", "10 a0 001", "101 b 01", "0 q 0"):
        assert fs.format_config(fs.parse_config(text)) == text


def test_parse_config_errors():
    with pytest.raises(fs.TuringError):
        fs.parse_config("1 b")
    with pytest.raises(fs.BadSymbol):
        fs.parse_config("2 b 1")
    with pytest.raises(fs.BadSymbol):
        fs.parse_config("1 b x0")
    with pytest.raises(fs.BadSymbol):
        fs.Configuration("q", 0, 2, 0)
    with pytest.raises(fs.TuringError):
        fs.Configuration("q", -1, 0, 0)


@given(st.integers(0, 2**12), st.integers(0, 1), st.integers(0, 2**12))
def test_config_text_round_trip(left, head, right):
    c = fs.Configuration("q", left, head, right)
    assert fs.parse_config(fs.format_config(c)) == c


# ---------------------------------------------------------------------------
# stepping


def test_step_right_writes_then_shifts():
    tm = fs.parse_tm("start q\nq 0 -> p 1 R\n")
    c = fs.tm_step(tm, fs.Configuration("q", 0, 0, 0))
    assert c == fs.Configuration("p", 1, 0, 0)


def test_step_left_writes_then_shifts():
    tm = fs.parse_tm("start q\nq 1 -> p 0 L\n")
    c = fs.tm_step(tm, fs.Configuration("q", 5, 1, 2))
    assert c == fs.Configuration("p", 2, 1, 4)


def test_step_halts_when_uncovered():
    tm = fs.parse_tm("start q\nq 1 -> p 0 L\n")
    assert fs.tm_step(tm, fs.Configuration("q", 0, 0, 0)) is None


def test_example_machine_trace():
    tm = fs.parse_tm(EXAMPLE_MACHINE)
    trace = fs.tm_run(tm, fs.parse_config("1 b 1001"), 100)
    assert [fs.format_config(c) for c in trace.configs] == [
        "1 b 1001",
        "10 a0 001",
        "101 b 01",
    ]
    assert trace.outcome == fs.Halted(2)


def test_run_exhausts_fuel_on_right_runner():
    tm = fs.parse_tm("start q\nq 0 -> p 1 R\np 0 -> q 1 R\n")
    trace = fs.tm_run(tm, fs.Configuration("q", 0, 0, 0), 10)
    assert trace.outcome == fs.FuelExhausted(10)
    assert len(trace.configs) == 11


@given(st.integers(0, 10**9), st.data())
def test_step_matches_dict_tape_oracle(seed, data):
    rng = random.Random(seed)
    tm = fs.parse_tm(random_machine_text(rng, max_states=3, allow_self=True))
    left, head, right = random_triple(rng)
    c = fs.Configuration(tm.start, left, head, right)
    stepped = fs.tm_step(tm, c)
    oracle = dict_tape_step(tm.delta, c.state, tape_from_triple(left, head, right), 0)
    if stepped is None:
        assert oracle is None
    else:
        state, tape, pos = oracle
        assert (stepped.state, stepped.left, stepped.head, stepped.right) == (
            state,
            *triple_from_tape(tape, pos),
        )


def test_run_matches_dict_tape_oracle_over_many_machines():
    rng = random.Random(20)
    for _ in range(120):
        tm = fs.parse_tm(random_machine_text(rng, max_states=3, allow_self=True))
        triple = random_triple(rng)
        c = fs.Configuration(tm.start, *triple)
        trace = fs.tm_run(tm, c, 40)
        rows, halted = dict_tape_run(tm.delta, tm.start, triple, 40)
        assert [(x.state, x.left, x.head, x.right) for x in trace.configs] == rows
        assert isinstance(trace.outcome, fs.Halted) == halted


# ---------------------------------------------------------------------------
# normalization


def test_normalize_returns_same_object_when_clean():
    tm = fs.parse_tm(EXAMPLE_MACHINE)
    assert fs.normalize_no_self_loops(tm) is tm


def test_normalize_splits_self_transition():
    tm = fs.parse_tm("start q\nq 0 -> q 1 R\n")
    out = fs.normalize_no_self_loops(tm)
    assert out.states == ("q", "q#")
    assert out.delta == {("q", 0): ("q#", 1, "R"), ("q#", 0): ("q", 1, "R")}
    assert not out.has_self_transition()
    assert fs.normalize_no_self_loops(out) is out


def test_normalize_avoids_name_collisions():
    # '#' starts a comment in the text format, so force the clash directly
    tm = fs.UnaryTM(
        states=("q", "q#"),
        start="q",
        delta={("q", 0): ("q#", 1, "R"), ("q#", 0): ("q#", 1, "L")},
    )
    out = fs.normalize_no_self_loops(tm)
    assert len(set(out.states)) == len(out.states) == 4
    assert out.states[0] == "q" and out.states[2] == "q#"


def test_normalize_preserves_behavior_stepwise():
    rng = random.Random(4)
    for _ in range(80):
        tm = fs.parse_tm(random_machine_text(rng, max_states=3, allow_self=True))
        norm = fs.normalize_no_self_loops(tm)
        assert not norm.has_self_transition()
        triple = random_triple(rng)
        a = fs.tm_run(tm, fs.Configuration(tm.start, *triple), 30)
        b = fs.tm_run(norm, fs.Configuration(norm.start, *triple), 30)
        assert a.outcome == b.outcome
        shadows = dict(zip(norm.states[::2], norm.states[1::2])) if norm is not tm else {}
        for i, (x, y) in enumerate(zip(a.configs, b.configs)):
            assert (x.left, x.head, x.right) == (y.left, y.head, y.right)
            if norm is tm or i % 2 == 0:
                assert y.state == x.state
            else:
                assert y.state == shadows[x.state]
