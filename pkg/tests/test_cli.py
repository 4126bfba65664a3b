"""CLI dispatch, envelopes, exit codes, and reproducibility."""

import json

import pytest

from revlab.cli import EXIT_INVALID, EXIT_NO_WITNESS, EXIT_OK, EXIT_USAGE, main
from revlab.corpus import corpus_entry
from revlab.machfmt import serialize_machine


@pytest.fixture()
def corpus_dir(tmp_path, capsys):
    rc = main(["corpus", "export", str(tmp_path / "corpus")])
    assert rc == EXIT_OK
    capsys.readouterr()  # drain the export envelope
    return tmp_path / "corpus"


def run_cli(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    lines = [json.loads(line) for line in captured.out.splitlines()]
    for env in lines:
        assert set(env) >= {"tool", "digest", "payload", "wall_ms"}
    return rc, lines, captured.err


def test_no_arguments_is_usage_error(capsys):
    rc = main([])
    assert rc == EXIT_USAGE


def test_validate_corpus_flipper(capsys, corpus_dir):
    rc, lines, _ = run_cli(capsys, ["machine", "validate",
                                    str(corpus_dir / "flipper.tm")])
    assert rc == EXIT_OK
    assert lines[0]["payload"]["conflicts"] == []


def test_validate_nonexistent_file(capsys):
    rc = main(["machine", "validate", "/nonexistent/x.tm"])
    assert rc == EXIT_USAGE


def test_machine_run_and_trace(capsys, corpus_dir):
    rc, lines, _ = run_cli(capsys, [
        "machine", "run", str(corpus_dir / "flipper.tm"),
        "--input", "10", "--budget", "100"])
    assert rc == EXIT_OK
    assert lines[0]["payload"]["output"] == "01"
    assert lines[0]["payload"]["steps"] == 4

    rc, lines, _ = run_cli(capsys, [
        "machine", "trace", str(corpus_dir / "flipper.tm"),
        "--input", "10", "--budget", "100"])
    assert rc == EXIT_OK
    assert len(lines) == 5  # initial configuration plus four steps


def test_rev_verify_exit_codes(capsys, corpus_dir):
    rc, _, _ = run_cli(capsys, ["rev", "verify",
                                str(corpus_dir / "nonrev_fixture.tm")])
    assert rc == EXIT_INVALID

    # A Bennett compile is reversible.
    out = corpus_dir / "flipper_rev.tm"
    rc, lines, _ = run_cli(capsys, ["rev", "compile",
                                    str(corpus_dir / "flipper.tm"),
                                    "-o", str(out)])
    assert rc == EXIT_OK
    assert out.exists()
    rc, _, _ = run_cli(capsys, ["rev", "verify", str(out)])
    assert rc == EXIT_OK


def test_rev_reverse_roundtrip(capsys, corpus_dir, tmp_path):
    from revlab.machfmt import parse_machine, serialize_configuration
    from revlab.machines import run
    from revlab.reversal import bennett_transform

    bm = bennett_transform(corpus_entry("flipper").machine)
    machine_file = tmp_path / "rev.tm"
    machine_file.write_text(serialize_machine(bm.machine))
    final = run(bm.machine, "10", 10_000).final
    config_file = tmp_path / "final.cfg"
    config_file.write_text(serialize_configuration(final))

    rc, lines, _ = run_cli(capsys, [
        "rev", "reverse", str(machine_file),
        "--from", str(config_file), "--budget", "10000"])
    assert rc == EXIT_OK
    payload = lines[0]["payload"]
    assert payload["final"]["tapes"][0] == "10"
    assert payload["final"]["heads"] == [0, 0, 0]


def test_univ_run_and_enumerate(capsys):
    rc, lines, _ = run_cli(capsys, [
        "univ", "run", "--bits", "0001", "--budget", "100"])
    assert rc == EXIT_OK
    assert lines[0]["payload"]["outcome"] == "halted"
    assert lines[0]["payload"]["program"] == "0001"

    rc, lines, _ = run_cli(capsys, ["univ", "enumerate", "--index", "2"])
    assert rc == EXIT_OK
    assert lines[0]["payload"]["name"] == "print"

    rc, lines, _ = run_cli(capsys, ["univ", "enumerate", "--index", "0"])
    assert lines[0]["payload"]["diverger"] is True


def test_univ_run_accepts_hex_bits(capsys):
    # 0x1 -> "0001", the halt program.
    rc, lines, _ = run_cli(capsys, [
        "univ", "run", "--bits", "0x1", "--budget", "100"])
    assert rc == EXIT_OK
    assert lines[0]["payload"]["program"] == "0001"
    rc = main(["univ", "run", "--bits", "012", "--budget", "10"])
    assert rc == EXIT_INVALID


def test_univ_check_prefix(capsys):
    rc, lines, _ = run_cli(capsys, [
        "univ", "check-prefix", "--max-len", "8", "--budget", "2000"])
    assert rc == EXIT_OK
    assert lines[0]["payload"]["prefix_free"] is True


def test_depth_k_and_ld(capsys):
    rc, lines, _ = run_cli(capsys, [
        "depth", "k", "", "--max-len", "4", "--budget", "1000"])
    assert rc == EXIT_OK
    assert lines[0]["payload"]["k_upper"] == 4

    rc, lines, _ = run_cli(capsys, [
        "depth", "ld", "101", "--b", "0", "--variant", "rev",
        "--max-len", "10", "--budget", "5000"])
    assert rc == EXIT_OK
    payload = lines[0]["payload"]
    assert payload["variant"] == "reversible"
    assert payload["witness"]
    assert payload["ld"] > 0


def test_depth_no_witness_exit_code(capsys):
    rc, lines, _ = run_cli(capsys, [
        "depth", "k", "1", "--max-len", "0", "--budget", "0"])
    assert rc == EXIT_NO_WITNESS


def test_depth_requires_budgets(capsys):
    assert main(["depth", "k", "1"]) == EXIT_USAGE
    assert main(["depth", "ld", "1", "--b", "0", "--variant", "rev"]) == EXIT_USAGE


def test_depth_table_rows(capsys):
    rc, lines, _ = run_cli(capsys, [
        "depth", "table", "psi", "--n-max", "1",
        "--max-len", "10", "--budget", "3000"])
    assert rc == EXIT_OK
    assert len(lines) == 2
    assert lines[0]["payload"]["row"]["n"] == 0


def test_cli_payloads_reproducible(capsys):
    argv = ["depth", "k", "00", "--max-len", "10", "--budget", "2000"]
    _, first, _ = run_cli(capsys, argv)
    _, second, _ = run_cli(capsys, argv)

    def strip(env):
        return {k: v for k, v in env.items() if k != "wall_ms"}

    assert [strip(e) for e in first] == [strip(e) for e in second]


def test_cli_workers_invariance(capsys):
    base = ["depth", "table", "f", "--n-max", "1",
            "--max-len", "10", "--budget", "3000"]
    _, one, _ = run_cli(capsys, base + ["--workers", "1"])
    _, four, _ = run_cli(capsys, base + ["--workers", "4"])

    def strip(envs):
        return [{k: v for k, v in e.items() if k != "wall_ms"} for e in envs]

    assert strip(one) == strip(four)


def test_cache_dir_roundtrip(capsys, tmp_path):
    argv = ["depth", "k", "0", "--max-len", "8", "--budget", "1000",
            "--cache-dir", str(tmp_path)]
    rc, first, _ = run_cli(capsys, argv)
    assert rc == EXIT_OK
    assert list(tmp_path.iterdir())
    rc, second, _ = run_cli(capsys, argv)
    assert first[0]["payload"] == second[0]["payload"]


def test_corpus_list(capsys):
    rc, lines, _ = run_cli(capsys, ["corpus", "list"])
    assert rc == EXIT_OK
    assert len(lines) >= 20


def test_witness_replays_through_cli(capsys):
    # A depth record's witness, replayed via `univ run`, reproduces the
    # recorded step count and output.
    rc, lines, _ = run_cli(capsys, [
        "depth", "ld", "000", "--b", "0", "--variant", "rev",
        "--max-len", "10", "--budget", "5000"])
    assert rc == EXIT_OK
    record = lines[0]["payload"]
    rc, lines, _ = run_cli(capsys, [
        "univ", "run", "--bits", record["witness"], "--budget", "5000",
        "--reversible"])
    assert rc == EXIT_OK
    replay = lines[0]["payload"]
    assert replay["outcome"] == "halted"
    assert replay["steps"] == record["ld"]
    assert replay["output"] == record["x"]
    assert replay["pair"] == [record["witness"], record["x"]]
