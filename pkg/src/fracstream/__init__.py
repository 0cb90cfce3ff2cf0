"""Fractran interpretation, Turing machine compilation, and the stream
specifications Fractran programs induce."""

from .compiler import (
    CompiledProgram,
    CounterExample,
    PrimeAllocation,
    SelfTransition,
    Verified,
    allocate_primes,
    check_simulation,
    encode_config,
    render_compiled,
)
from .compiler import compile as compile_tm
from .fractran import (
    CollatzForm,
    EmptyProgram,
    ExponentVector,
    Fraction,
    FractranError,
    FractranProgram,
    FuelExhausted,
    Halted,
    Malformed,
    PRIME_GAME,
    ResidueEntry,
    ResidueTable,
    Trace,
    ZeroInput,
    ZeroPart,
    derive_collatz_form,
    factorize,
    halts,
    is_trivially_immortal,
    iter_power_of_two_exponents,
    parse_program,
    powers_of_two_exponents,
    render_trace,
    run,
    step,
    step_vector,
    step_with_rule,
)
from .streams import (
    BULLET,
    Exhausted,
    FuelZero,
    ProbeReport,
    Produced,
    ROOT,
    SpecTooLarge,
    StreamError,
    StreamSpec,
    check_orthogonal,
    collatz_spec,
    emit_trs,
    induce_spec,
    phi,
    predicted_step,
    probe_productivity,
    render_probe_report,
    render_term,
    rewrite_nth,
    rewrite_term,
    spec_rules,
)
from .turing import (
    BadSymbol,
    Configuration,
    DuplicateTransition,
    NoStart,
    TMTrace,
    TuringError,
    UnaryTM,
    UnknownDirection,
    format_config,
    normalize_no_self_loops,
    parse_config,
    parse_tm,
    tm_run,
    tm_step,
)

__all__ = [
    "BULLET",
    "BadSymbol",
    "CollatzForm",
    "CompiledProgram",
    "Configuration",
    "CounterExample",
    "DuplicateTransition",
    "EmptyProgram",
    "Exhausted",
    "ExponentVector",
    "Fraction",
    "FractranError",
    "FractranProgram",
    "FuelExhausted",
    "FuelZero",
    "Halted",
    "Malformed",
    "NoStart",
    "PRIME_GAME",
    "PrimeAllocation",
    "ProbeReport",
    "Produced",
    "ROOT",
    "ResidueEntry",
    "ResidueTable",
    "SelfTransition",
    "SpecTooLarge",
    "StreamError",
    "StreamSpec",
    "TMTrace",
    "Trace",
    "TuringError",
    "UnaryTM",
    "UnknownDirection",
    "Verified",
    "ZeroInput",
    "ZeroPart",
    "allocate_primes",
    "check_orthogonal",
    "check_simulation",
    "collatz_spec",
    "compile_tm",
    "derive_collatz_form",
    "emit_trs",
    "encode_config",
    "factorize",
    "format_config",
    "halts",
    "induce_spec",
    "is_trivially_immortal",
    "iter_power_of_two_exponents",
    "normalize_no_self_loops",
    "parse_config",
    "parse_program",
    "parse_tm",
    "phi",
    "powers_of_two_exponents",
    "predicted_step",
    "probe_productivity",
    "render_compiled",
    "render_probe_report",
    "render_term",
    "render_trace",
    "rewrite_nth",
    "rewrite_term",
    "run",
    "spec_rules",
    "step",
    "step_vector",
    "step_with_rule",
    "tm_run",
    "tm_step",
]
