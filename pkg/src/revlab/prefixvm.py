"""Prefix-machine semantics, the machine enumeration, and the reference
universal interpreter.

Prefix machines here are four-tape quadruple machines with fixed roles:
tape 1 is the one-way read-only program tape, tape 2 the auxiliary tape,
tape 3 the work tape, tape 4 the output tape.  The program tape carries
an unbounded bit stream of which the caller supplies a finite prefix;
a machine that scans past the supplied prefix ends with TapeExhausted.
The bits actually scanned when a run halts are the program.

Integers name machines through the standard bijection with bit strings
(i <-> the binary expansion of i+1 without its leading 1).  Description
strings decode as:

    ""      canonical diverging machine (the empty description is malformed)
    "0"     halt machine (no rules)
    "1"     literal printer: doubled payload bits terminated by "01"
    "00"    three-bit copier
    "01"    slow zeros: unary payload k -> 2^(k+1)-1 zeros, built by
            quadratic-time doubling on the work tape
    "10"    slow ones: same with ones
    "11"    auxiliary-tape copier
    "111"+b general rule-table grammar (docs/universal-machine.md)
    other   canonical diverging machine

The universal interpreter decodes a self-delimiting index <i> (each bit
of the description string doubled, terminated by "01"; the pair "10" is
malformed and diverges), then simulates machine i on the remaining bit
stream.  One interpreter step is one bit consumed while decoding <i>
plus one step per simulated step of machine i; divergence consumes the
whole budget.  The reversible counterpart reports the step count the
Bennett transform of the interpreter would take, using the transform's
own construction constants, and pairs the program with the output.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .machines import (
    Alphabet,
    Machine,
    MachineError,
    ReadWriteRule,
    Rule,
    ShiftRule,
    domain_conflicts,
)
from .reversal import LINEAR_A, LINEAR_B, LINEAR_C

BIT_BLANK = "_"
BITS = Alphabet.of("0", "1", blank=BIT_BLANK)

HALTED = "halted"
BUDGET_EXCEEDED = "budget-exceeded"
TAPE_EXHAUSTED = "tape-exhausted"


@dataclass(frozen=True)
class PrefixRunResult:
    outcome: str
    program: str
    output: str
    steps: int
    pair: tuple[str, str] | None = None

    @property
    def halted(self) -> bool:
        return self.outcome == HALTED


# ---------------------------------------------------------------------------
# Integer <-> description string bijection and the self-delimiting code


def string_of_index(i: int) -> str:
    if i < 0:
        raise ValueError("index must be >= 0")
    return bin(i + 1)[3:]


def index_of_string(s: str) -> int:
    return int("1" + s, 2) - 1


def encode_index(i: int) -> str:
    """Self-delimiting code: description bits doubled, then "01"."""
    return "".join(c + c for c in string_of_index(i)) + "01"


def decode_index(bits: str) -> tuple[int, int] | None:
    """(index, bits consumed), or None when more bits are needed.

    Raises MalformedIndex on the pair "10".
    """
    out = []
    pos = 0
    while True:
        if pos + 2 > len(bits):
            return None
        pair = bits[pos:pos + 2]
        pos += 2
        if pair == "01":
            return index_of_string("".join(out)), pos
        if pair == "00":
            out.append("0")
        elif pair == "11":
            out.append("1")
        else:
            raise MalformedIndex(pos)


class MalformedIndex(Exception):
    def __init__(self, consumed: int):
        super().__init__(f"malformed index pair at bit {consumed - 2}")
        self.consumed = consumed


# ---------------------------------------------------------------------------
# Builtin machines

AUX_SYMS = ("0", "1", BIT_BLANK)
PROG_SYMS = ("0", "1")


def _prefix_machine(name: str, work_extra: Iterable[str], rules: list[Rule],
                    start: str, states: Iterable[str]) -> Machine:
    work = Alphabet(frozenset({"0", "1", BIT_BLANK, *work_extra}), BIT_BLANK)
    all_states = set(states)
    for r in rules:
        all_states.add(r.from_state)
        all_states.add(r.to_state)
    halt = frozenset(s for s in all_states
                     if not any(r.from_state == s for r in rules))
    return Machine(name, (BITS, BITS, work, BITS), frozenset(all_states),
                   start, halt, tuple(rules), output_tape=4)


def diverger_machine() -> Machine:
    return _prefix_machine(
        "diverger", (), [ShiftRule("spin", (0, 0, 0, 0), "spin")],
        "spin", ("spin",))


def halt_machine() -> Machine:
    return _prefix_machine("halt", (), [], "h", ("h",))


def print_machine() -> Machine:
    # Reads doubled payload bits until "01"; "10" diverges.  The head
    # parks on the terminator's second bit so nothing is over-scanned.
    rules: list[Rule] = []
    for p in PROG_SYMS:
        for a in AUX_SYMS:
            rules.append(ReadWriteRule(
                "r1", (p, a, BIT_BLANK, BIT_BLANK),
                (p, a, BIT_BLANK, BIT_BLANK), f"m1_{p}"))
    for b in PROG_SYMS:
        rules.append(ShiftRule(f"m1_{b}", (1, 0, 0, 0), f"r2_{b}"))
    for a in AUX_SYMS:
        rules.append(ReadWriteRule(  # pair 00: emit 0
            "r2_0", ("0", a, BIT_BLANK, BIT_BLANK),
            ("0", a, BIT_BLANK, "0"), "m2"))
        rules.append(ReadWriteRule(  # pair 01: done
            "r2_0", ("1", a, BIT_BLANK, BIT_BLANK),
            ("1", a, BIT_BLANK, BIT_BLANK), "done"))
        rules.append(ReadWriteRule(  # pair 11: emit 1
            "r2_1", ("1", a, BIT_BLANK, BIT_BLANK),
            ("1", a, BIT_BLANK, "1"), "m2"))
        rules.append(ReadWriteRule(  # pair 10: malformed
            "r2_1", ("0", a, BIT_BLANK, BIT_BLANK),
            ("0", a, BIT_BLANK, BIT_BLANK), "spin"))
    rules.append(ShiftRule("m2", (1, 0, 0, 1), "r1"))
    rules.append(ShiftRule("spin", (0, 0, 0, 0), "spin"))
    return _prefix_machine("print", (), rules, "r1", ("r1", "done", "spin"))


def copy3_machine() -> Machine:
    rules: list[Rule] = []
    for n in (1, 2, 3):
        nxt = "done" if n == 3 else f"d{n}"
        for b in PROG_SYMS:
            for a in AUX_SYMS:
                rules.append(ReadWriteRule(
                    f"c{n}", (b, a, BIT_BLANK, BIT_BLANK),
                    (b, a, BIT_BLANK, b), nxt))
        if n < 3:
            rules.append(ShiftRule(f"d{n}", (1, 0, 0, 1), f"c{n + 1}"))
    return _prefix_machine("copy3", (), rules, "c1", ("c1", "done"))


def slow_repeater_machine(emit: str) -> Machine:
    """Unary payload 0^k 1 -> emit^(2^(k+1)-1), by k quadratic doubling
    rounds of a marked block on the work tape."""
    name = "slow_zeros" if emit == "0" else "slow_ones"
    rules: list[Rule] = []

    def rw(f, p, a, w, o, wp, op, t):
        rules.append(ReadWriteRule(f, (p, a, w, o), (p, a, wp, op), t))

    B = BIT_BLANK
    for p in PROG_SYMS:
        for a in AUX_SYMS:
            rw("i0", p, a, B, B, "Z", B, "rp")  # seed block of size one
    for a in AUX_SYMS:
        # payload 0: double the block.  Mark cell 0 and start the round.
        rw("rp", "0", a, "Z", B, "ZM", B, "db")
        # payload 1: copy the block to the output as `emit` symbols.
        rw("rp", "1", a, "Z", B, "Z", emit, "cb")
        for w in ("O", "Y"):
            rw("dc", "0", a, w, B, w, B, "dcm")
        rw("dc", "0", a, B, B, "Y", B, "dd")
        for w in ("Y", "O"):
            rw("dd", "0", a, w, B, w, B, "ddm")
        for w in ("ZM", "OM"):
            rw("dd", "0", a, w, B, w, B, "de")
        rw("df", "0", a, "O", B, "OM", B, "db")
        rw("df", "0", a, "Y", B, "Y", B, "dg")
        rw("dg", "0", a, "Y", B, "Y", B, "dgm")
        rw("dg", "0", a, B, B, "Y", B, "dh")
        for w in ("Y", "OM"):
            rw("dh", "0", a, w, B, "O", B, "dhm")
        rw("dh", "0", a, "ZM", B, "Z", B, "di")
        rw("cc", "1", a, "O", B, "O", emit, "cb")
        rw("cc", "1", a, B, B, B, B, "done")
    rules.append(ShiftRule("db", (0, 0, 1, 0), "dc"))
    rules.append(ShiftRule("dcm", (0, 0, 1, 0), "dc"))
    rules.append(ShiftRule("ddm", (0, 0, -1, 0), "dd"))
    rules.append(ShiftRule("de", (0, 0, 1, 0), "df"))
    rules.append(ShiftRule("dgm", (0, 0, 1, 0), "dg"))
    rules.append(ShiftRule("dhm", (0, 0, -1, 0), "dh"))
    rules.append(ShiftRule("di", (1, 0, 0, 0), "rp"))
    rules.append(ShiftRule("cb", (0, 0, 1, 1), "cc"))
    return _prefix_machine(name, ("Z", "O", "ZM", "OM", "Y"), rules,
                           "i0", ("i0", "done"))


def aux_copy_machine() -> Machine:
    rules: list[Rule] = []
    for p in PROG_SYMS:
        for a in ("0", "1"):
            rules.append(ReadWriteRule(
                "a1", (p, a, BIT_BLANK, BIT_BLANK),
                (p, a, BIT_BLANK, a), "a2"))
        rules.append(ReadWriteRule(
            "a1", (p, BIT_BLANK, BIT_BLANK, BIT_BLANK),
            (p, BIT_BLANK, BIT_BLANK, BIT_BLANK), "done"))
    rules.append(ShiftRule("a2", (0, 1, 0, 1), "a1"))
    return _prefix_machine("aux_copy", (), rules, "a1", ("a1", "done"))


HALT_INDEX = 1
PRINT_INDEX = 2
COPY3_INDEX = 3
SLOW_ZEROS_INDEX = 4
SLOW_ONES_INDEX = 5
AUX_COPY_INDEX = 6

_GENERAL_PREFIX = "111"


@lru_cache(maxsize=1)
def builtin_machines() -> dict[str, Machine]:
    return {
        "0": halt_machine(),
        "1": print_machine(),
        "00": copy3_machine(),
        "01": slow_repeater_machine("0"),
        "10": slow_repeater_machine("1"),
        "11": aux_copy_machine(),
    }


@lru_cache(maxsize=1)
def _diverger() -> Machine:
    return diverger_machine()


def is_diverger(m: Machine) -> bool:
    return m is _diverger()


# ---------------------------------------------------------------------------
# General description grammar


class _BitReader:
    def __init__(self, bits: str):
        self.bits = bits
        self.pos = 0

    def take(self, n: int) -> str:
        if self.pos + n > len(self.bits):
            raise _Malformed()
        out = self.bits[self.pos:self.pos + n]
        self.pos += n
        return out

    def gamma(self) -> int:
        """Elias gamma: value >= 1."""
        zeros = 0
        while self.take(1) == "0":
            zeros += 1
            if zeros > 60:
                raise _Malformed()
        return int("1" + self.take(zeros), 2)

    def done(self) -> bool:
        return self.pos == len(self.bits)


class _Malformed(Exception):
    pass


def _width(n: int) -> int:
    return max(1, (n - 1).bit_length()) if n > 1 else 0


_AUX_CODE = {"00": "0", "01": "1", "10": BIT_BLANK}
_AUX_ENC = {v: k for k, v in _AUX_CODE.items()}
_MOVE_CODE = {"00": -1, "01": 0, "10": 1}
_MOVE_ENC = {v: k for k, v in _MOVE_CODE.items()}


def _work_symbols(extra: int) -> list[str]:
    return [BIT_BLANK, "0", "1"] + [f"w{n}" for n in range(extra)]


def _parse_general(body: str) -> Machine | None:
    try:
        r = _BitReader(body)
        extra = r.gamma() - 1
        n_states = r.gamma()
        n_rules = r.gamma() - 1
        if extra > 64 or n_states > 4096 or n_rules > 16384:
            return None
        work = _work_symbols(extra)
        wwidth = _width(len(work))
        swidth = _width(n_states)
        states = [f"s{n}" for n in range(n_states)]

        def state() -> str:
            ix = int(r.take(swidth), 2) if swidth else 0
            if ix >= n_states:
                raise _Malformed()
            return states[ix]

        def aux_sym() -> str:
            code = r.take(2)
            if code not in _AUX_CODE:
                raise _Malformed()
            return _AUX_CODE[code]

        def work_sym() -> str:
            ix = int(r.take(wwidth), 2) if wwidth else 0
            if ix >= len(work):
                raise _Malformed()
            return work[ix]

        def move() -> int:
            code = r.take(2)
            if code not in _MOVE_CODE:
                raise _Malformed()
            return _MOVE_CODE[code]

        rules: list[Rule] = []
        for _ in range(n_rules):
            kind = r.take(1)
            frm, to = None, None
            if kind == "0":
                frm = state()
                p = r.take(1)
                a_r, a_w = aux_sym(), aux_sym()
                w_r, w_w = work_sym(), work_sym()
                o_r, o_w = aux_sym(), aux_sym()
                to = state()
                rules.append(ReadWriteRule(
                    frm, (p, a_r, w_r, o_r), (p, a_w, w_w, o_w), to))
            else:
                frm = state()
                p_move = 1 if r.take(1) == "1" else 0
                moves = (p_move, move(), move(), move())
                to = state()
                rules.append(ShiftRule(frm, moves, to))
        if not r.done():
            return None
    except (_Malformed, ValueError):
        return None

    work_alpha = Alphabet(frozenset(_work_symbols(extra)), BIT_BLANK)
    halt = frozenset(s for s in states
                     if not any(rule.from_state == s for rule in rules))
    m = Machine(f"t_{_GENERAL_PREFIX}{body}"[:40], (BITS, BITS, work_alpha, BITS),
                frozenset(states), "s0", halt, tuple(rules), output_tape=4)
    if domain_conflicts(m.rules):
        return None
    return m


def serialize_index(m: Machine) -> int:
    """Index of a prefix-convention machine under the general grammar.

    The machine must have four tapes with the standard alphabets (work
    extras are renamed canonically), a read-only program tape, and no
    left shifts on the program tape.  Behaviour is preserved; state and
    symbol names are not.
    """
    if m.tape_count != 4:
        raise MachineError("prefix machines have exactly 4 tapes")
    base = {BIT_BLANK, "0", "1"}
    for t in (0, 1, 3):
        if m.alphabets[t].symbols != frozenset(base) or m.alphabets[t].blank != BIT_BLANK:
            raise MachineError(f"tape {t + 1} must use the binary alphabet")
    extras = sorted(m.alphabets[2].symbols - base)
    if m.alphabets[2].blank != BIT_BLANK:
        raise MachineError("work tape blank must be '_'")
    work = _work_symbols(len(extras))
    rename = {BIT_BLANK: BIT_BLANK, "0": "0", "1": "1"}
    rename.update({s: f"w{n}" for n, s in enumerate(extras)})
    states = sorted(m.states)
    states.remove(m.start_state)
    states.insert(0, m.start_state)
    state_ix = {s: n for n, s in enumerate(states)}
    swidth = _width(len(states))
    wwidth = _width(len(work))
    work_ix = {s: n for n, s in enumerate(work)}

    def gamma(n: int) -> str:
        b = bin(n)[2:]
        return "0" * (len(b) - 1) + b

    def fixed(ix: int, width: int) -> str:
        return format(ix, f"0{width}b") if width else ""

    bits = [gamma(len(extras) + 1), gamma(len(states)), gamma(len(m.rules) + 1)]
    for rule in m.rules:
        if isinstance(rule, ReadWriteRule):
            if rule.reads[0] != rule.writes[0]:
                raise MachineError("program tape is read-only")
            if rule.reads[0] not in ("0", "1"):
                raise MachineError("program tape reads must be bits")
            bits.append("0")
            bits.append(fixed(state_ix[rule.from_state], swidth))
            bits.append(rule.reads[0])
            bits.append(_AUX_ENC[rule.reads[1]] + _AUX_ENC[rule.writes[1]])
            bits.append(fixed(work_ix[rename[rule.reads[2]]], wwidth)
                        + fixed(work_ix[rename[rule.writes[2]]], wwidth))
            bits.append(_AUX_ENC[rule.reads[3]] + _AUX_ENC[rule.writes[3]])
            bits.append(fixed(state_ix[rule.to_state], swidth))
        else:
            if rule.moves[0] == -1:
                raise MachineError("program tape is one-way")
            bits.append("1")
            bits.append(fixed(state_ix[rule.from_state], swidth))
            bits.append("1" if rule.moves[0] == 1 else "0")
            bits.append(_MOVE_ENC[rule.moves[1]] + _MOVE_ENC[rule.moves[2]]
                        + _MOVE_ENC[rule.moves[3]])
            bits.append(fixed(state_ix[rule.to_state], swidth))
    return index_of_string(_GENERAL_PREFIX + "".join(bits))


@lru_cache(maxsize=4096)
def enumerate_machine(i: int) -> Machine:
    """Total enumeration: malformed descriptions give the diverging machine."""
    desc = string_of_index(i)
    builtin = builtin_machines().get(desc)
    if builtin is not None:
        return builtin
    if desc.startswith(_GENERAL_PREFIX):
        parsed = _parse_general(desc[len(_GENERAL_PREFIX):])
        if parsed is not None:
            return parsed
    return _diverger()


# ---------------------------------------------------------------------------
# Prefix-tape execution


def _prefix_checks(m: Machine) -> None:
    if m.tape_count != 4:
        raise MachineError(f"prefix machine needs 4 tapes, got {m.tape_count}")
    for rule in m.rules:
        if isinstance(rule, ShiftRule):
            if rule.moves[0] == -1:
                raise MachineError("program tape is one-way: no left shifts")
        elif rule.reads[0] != rule.writes[0]:
            raise MachineError("program tape is read-only")


def run_prefix(m: Machine, bits: str, aux: str, budget: int) -> PrefixRunResult:
    """Simulate a prefix machine on a finite program-bit prefix.

    The program tape is read on demand: the run ends TapeExhausted the
    moment the machine scans a cell beyond the supplied bits (scanning
    happens whenever the current state has ReadWrite rules).  ``program``
    is the prefix of bits actually scanned.
    """
    if budget < 0:
        raise MachineError("budget must be >= 0")
    _prefix_checks(m)
    from .machines import _tables
    dispatch = _tables(m).dispatch
    blanks = m.blanks()
    state = m.start_state
    prog_head = 0
    scanned = 0  # cells 0..scanned-1 were read
    tapes = [list(aux), [], []]
    heads = [0, 0, 0]
    steps = 0
    outcome = None
    while True:
        entry = dispatch.get(state)
        if entry is None:
            outcome = HALTED
            break
        kind, payload = entry
        if kind == "rw":
            if prog_head >= len(bits):
                outcome = TAPE_EXHAUSTED
                break
            scanned = max(scanned, prog_head + 1)
            reads = (bits[prog_head],) + tuple(
                tapes[t][heads[t]] if heads[t] < len(tapes[t]) else blanks[t + 1]
                for t in range(3))
            hit = payload.get(reads)
            if hit is None:
                outcome = HALTED
                break
            if steps >= budget:
                outcome = BUDGET_EXCEEDED
                break
            writes, state = hit[0], hit[1]
            for t in range(3):
                w = writes[t + 1]
                h = heads[t]
                tape = tapes[t]
                if h < len(tape):
                    tape[h] = w
                elif w != blanks[t + 1]:
                    tape.extend([blanks[t + 1]] * (h - len(tape)))
                    tape.append(w)
        else:
            if steps >= budget:
                outcome = BUDGET_EXCEEDED
                break
            moves, state = payload[0], payload[1]
            prog_head += moves[0]
            for t in range(3):
                d = moves[t + 1]
                if d:
                    h = heads[t] + d
                    heads[t] = h if h > 0 else 0
        steps += 1
    out = []
    for s in tapes[2]:
        if s == blanks[3]:
            break
        out.append(s)
    return PrefixRunResult(outcome, bits[:scanned], "".join(out), steps)


# ---------------------------------------------------------------------------
# The universal interpreter


@dataclass(frozen=True)
class UniversalMachine:
    index_scheme: str
    serialization_scheme: str
    digest: str


@lru_cache(maxsize=1)
def universal_machine() -> UniversalMachine:
    from .machfmt import serialize_machine
    payload = ["index-scheme doubled-bits-01", "grammar rev-grammar-v1"]
    for desc in sorted(builtin_machines()):
        payload.append(f"builtin {desc}")
        payload.append(serialize_machine(builtin_machines()[desc]))
    payload.append(serialize_machine(_diverger()))
    payload.append(f"accounting decode-per-bit sim-per-step "
                   f"rev {LINEAR_A} {LINEAR_B} {LINEAR_C}")
    digest = hashlib.sha256("\n".join(payload).encode()).hexdigest()
    return UniversalMachine("doubled-bits-01", "rev-grammar-v1", digest)


def _spin_out(program: str, budget: int) -> PrefixRunResult:
    # Divergence burns the remaining budget; identical to honestly
    # stepping the diverger's self-loop (tested against it).
    return PrefixRunResult(BUDGET_EXCEEDED, program, "", budget)


def universal_run(bits: str, aux: str = "", budget: int = 0) -> PrefixRunResult:
    """Decode <i> from the bit stream, then simulate machine i.

    Steps: one per bit consumed during index decoding plus one per
    simulated step.  Malformed indices and malformed descriptions
    diverge (never a parse error) so halting programs stay prefix-free.
    """
    if budget < 0:
        raise MachineError("budget must be >= 0")
    pos = 0
    sbits: list[str] = []
    pair = ""
    while True:
        # One step per bit; exhaustion is checked before the budget, like
        # the per-step order in run_prefix.
        if pos >= len(bits):
            return PrefixRunResult(TAPE_EXHAUSTED, bits[:pos], "", pos)
        if pos >= budget:
            return PrefixRunResult(BUDGET_EXCEEDED, bits[:pos], "", pos)
        pair += bits[pos]
        pos += 1
        if len(pair) < 2:
            continue
        if pair == "01":
            break
        if pair == "00":
            sbits.append("0")
        elif pair == "11":
            sbits.append("1")
        else:  # "10": malformed, diverge
            return _spin_out(bits[:pos], budget)
        pair = ""
    i = index_of_string("".join(sbits))
    machine = enumerate_machine(i)
    if is_diverger(machine):
        return _spin_out(bits[:pos], budget)
    sim = run_prefix(machine, bits[pos:], aux, budget - pos)
    return PrefixRunResult(
        sim.outcome, bits[:pos] + sim.program, sim.output, pos + sim.steps)


def reversible_steps(u_steps: int, program: str, output: str) -> int:
    """Step count of the Bennett-transformed interpreter for a halted run."""
    return LINEAR_A * u_steps + LINEAR_B * (len(program) + len(output)) + LINEAR_C


def reversible_view(u: PrefixRunResult, budget: int) -> PrefixRunResult:
    """Map a forward interpreter result to the reversible emulation's.

    A halted run takes reversible_steps(...) steps and outputs the pair
    (program, output); non-halting outcomes carry over (the emulation is
    only slower, so a forward non-halt within the budget implies a
    reversible non-halt within the same budget)."""
    if u.outcome == HALTED:
        rev = reversible_steps(u.steps, u.program, u.output)
        if rev <= budget:
            return PrefixRunResult(HALTED, u.program, u.output, rev,
                                   pair=(u.program, u.output))
        return PrefixRunResult(BUDGET_EXCEEDED, u.program, "", budget)
    if u.outcome == TAPE_EXHAUSTED:
        return PrefixRunResult(TAPE_EXHAUSTED, u.program, "",
                               min(budget, LINEAR_A * u.steps))
    return PrefixRunResult(BUDGET_EXCEEDED, u.program, "", budget)


def universal_reversible_run(bits: str, aux: str = "",
                             budget: int = 0) -> PrefixRunResult:
    """Reversible counterpart of universal_run, realized through the
    transform's step accounting (see module docstring)."""
    return reversible_view(universal_run(bits, aux, budget), budget)


def print_program(x: str) -> str:
    """Program making the literal printer output x."""
    return encode_index(PRINT_INDEX) + "".join(c + c for c in x) + "01"


def halt_program() -> str:
    return encode_index(HALT_INDEX)


# ---------------------------------------------------------------------------
# Prefix-freeness check


@dataclass(frozen=True)
class CheckReport:
    max_len: int
    budget: int
    aux: str
    runs: int
    halting_programs: tuple[str, ...]
    violations: tuple[tuple[str, str], ...]

    @property
    def prefix_free(self) -> bool:
        return not self.violations


def all_bit_strings(max_len: int) -> list[str]:
    out = [""]
    layer = [""]
    for _ in range(max_len):
        layer = [w + b for w in layer for b in "01"]
        out.extend(layer)
    return out


def prefix_free_check(max_len: int, budget: int, aux: str = "",
                      runner=universal_run) -> CheckReport:
    """Exhaustively run every bit string up to max_len and verify the set
    of halting programs is an antichain under the prefix order."""
    programs = set()
    runs = 0
    for bits in all_bit_strings(max_len):
        runs += 1
        result = runner(bits, aux, budget)
        if result.outcome == HALTED:
            programs.add(result.program)
    ordered = sorted(programs)
    violations = []
    for a, b in zip(ordered, ordered[1:]):
        if b.startswith(a) and a != b:
            violations.append((a, b))
    return CheckReport(max_len, budget, aux, runs, tuple(ordered),
                       tuple(violations))
