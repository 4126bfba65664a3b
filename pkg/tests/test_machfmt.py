"""Machine file and configuration snapshot formats."""

import pytest

from revlab.corpus import corpus
from revlab.machfmt import (
    MachineFormatError,
    parse_configuration,
    parse_machine,
    serialize_configuration,
    serialize_machine,
)
from revlab.machines import QuintupleMachine, normalize_to_quadruples, run


def test_machine_roundtrip_on_corpus():
    for entry in corpus():
        text = serialize_machine(entry.machine)
        again = parse_machine(text)
        assert serialize_machine(again) == text
        assert again.rules == entry.machine.rules
        assert again.states == entry.machine.states
        assert again.start_state == entry.machine.start_state


def test_parsed_machine_runs_identically():
    for entry in corpus():
        if not entry.halts:
            continue
        m = entry.machine
        again = parse_machine(serialize_machine(m))
        if isinstance(m, QuintupleMachine):
            m = normalize_to_quadruples(m)
            again = normalize_to_quadruples(again)
        for w in ("", "1", "11"):
            if any(s not in entry.input_alphabet for s in w):
                continue
            assert run(again, w, 10_000) == run(m, w, 10_000)


def test_parse_error_carries_line_number():
    text = "machine x\ntapes 1\nalphabet 1 blank _ symbols 0 1\nstart s\nbogus line\n"
    with pytest.raises(MachineFormatError) as err:
        parse_machine(text)
    assert err.value.line_no == 5
    assert "line 5" in str(err.value)


def test_parse_rejects_mixed_rule_styles():
    text = (
        "machine x\ntapes 1\nalphabet 1 blank _ symbols 0 1\n"
        "states s t\nstart s\n"
        "rule s 0 -> 1 t\n"
        "quintuple s 1 -> 0 +1 t\n"
    )
    with pytest.raises(MachineFormatError):
        parse_machine(text)


def test_parse_rejects_bad_shift():
    text = (
        "machine x\ntapes 1\nalphabet 1 blank _ symbols 0 1\n"
        "states s t\nstart s\n"
        "rule s / -> +2 t\n"
    )
    with pytest.raises(MachineFormatError) as err:
        parse_machine(text)
    assert err.value.line_no == 6


def test_configuration_snapshot_roundtrip():
    from revlab.machines import Configuration
    c = Configuration("q1", (("1", "0"), ()), (1, 0), 17)
    text = serialize_configuration(c)
    assert parse_configuration(text) == c
    # Bit-exact: serializing again yields the same text.
    assert serialize_configuration(parse_configuration(text)) == text
