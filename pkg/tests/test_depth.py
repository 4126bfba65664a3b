"""Budget-bounded complexity, depth, growth tables, and the ledger."""

import math

import pytest

from oracles import naive_k, naive_ld_general, naive_ld_reversible
from revlab.depth import (
    Budget,
    ComplexityRecord,
    DepthLab,
    NoWitness,
    RunLedger,
)
from revlab.prefixvm import (
    HALTED,
    print_program,
    universal_reversible_run,
    universal_run,
)

QUICK = Budget(10, 3000)
MID = Budget(12, 10_000)


@pytest.fixture(scope="module")
def lab():
    return DepthLab()


# --- k_bounded -----------------------------------------------------------------

def test_k_empty_string_is_four(lab):
    # <1> = "0001" drives the halt machine; nothing shorter halts: "01"
    # names the diverger and no other 2- or 3-bit string completes an index.
    rec = lab.k_bounded("", Budget(4, 1000))
    assert isinstance(rec, ComplexityRecord)
    assert rec.k_upper == 4
    assert rec.witnesses == ("0001",)
    assert rec.exhaustive


def test_k_upper_bounded_by_print_program(lab):
    for x in ("", "0", "01", "110", "0101"):
        rec = lab.k_bounded(x, QUICK)
        assert rec.k_upper <= len(print_program(x)) == 2 * len(x) + 6


def test_k_no_witness_at_zero_budget(lab):
    assert isinstance(lab.k_bounded("1", Budget(0, 0)), NoWitness)


def test_k_witnesses_replay(lab):
    for x in ("", "0", "000", "11"):
        rec = lab.k_bounded(x, QUICK)
        for p in rec.witnesses:
            replay = universal_run(p, "", QUICK.max_steps)
            assert replay.outcome == HALTED
            assert replay.program == p
            assert replay.output == x


def test_k_conditional_aux(lab):
    # The auxiliary copier gives K(x|x) <= 7 for any x.
    rec = lab.k_bounded("1011", QUICK, aux="1011")
    assert rec.k_upper <= 7
    plain = lab.k_bounded("1011", QUICK)
    assert plain.k_upper > rec.k_upper


def test_k_matches_naive_oracle(lab):
    for n in range(4):
        for k in range(2 ** n):
            x = format(k, f"0{n}b") if n else ""
            rec = lab.k_bounded(x, QUICK)
            expect = naive_k(x, QUICK.max_len, QUICK.max_steps)
            assert expect is not None
            assert (rec.k_upper, rec.witnesses) == expect, x


def test_shortest_programs_canonical_and_reproducible(lab):
    first = lab.shortest_programs("000", QUICK)
    second = DepthLab().shortest_programs("000", QUICK)
    assert first == second
    assert list(first) == sorted(first)


# --- incompressible programs ------------------------------------------------------

def test_canonical_star_always_in_incompressible_set(lab):
    for x in ("", "0", "000", "10"):
        star = lab.shortest_programs(x, QUICK)[0]
        for b in (0, 1, 2):
            inc = lab.incompressible_programs(x, b, QUICK)
            assert star in inc.programs, (x, b)


def test_print_program_in_set_at_permissive_threshold(lab):
    x = "01"
    rec = lab.k_bounded(x, QUICK)
    big_b = len(print_program(x)) - rec.k_upper  # enough slack by length
    inc = lab.incompressible_programs(x, big_b, QUICK)
    assert print_program(x) in inc.programs


def test_long_incompressible_producer_exists_report(lab):
    # The phenomenon behind the general/reversible split: some x has a
    # producer p with |p| > |x*| that is itself (budget-)incompressible.
    found = {}
    for n in range(1, 5):
        for k in range(2 ** n):
            x = format(k, f"0{n}b")
            rec = lab.k_bounded(x, MID)
            inc = lab.incompressible_programs(x, 0, MID)
            longer = [p for p in inc.programs if len(p) > rec.k_upper]
            found[x] = bool(longer)
    report = ", ".join(f"{x}:{'found' if v else 'none'}"
                       for x, v in sorted(found.items()))
    print(f"\nlonger-than-minimal incompressible producers: {report}")
    assert any(found.values())


# --- logical depth -----------------------------------------------------------------

def test_depth_monotone_in_significance(lab):
    for x in ("0", "000", "101"):
        for variant in ("general", "reversible"):
            prev = None
            for b in range(4):
                rec = lab.logical_depth(x, b, MID, variant)
                assert not isinstance(rec, NoWitness)
                if prev is not None:
                    assert rec.ld <= prev, (x, variant, b)
                prev = rec.ld


def test_depth_general_matches_naive_oracle(lab):
    for n in range(3):
        for k in range(2 ** n):
            x = format(k, f"0{n}b") if n else ""
            for b in (0, 1, 2):
                rec = lab.logical_depth_general(x, b, QUICK)
                expect = naive_ld_general(x, b, QUICK.max_len, QUICK.max_steps)
                assert not isinstance(rec, NoWitness)
                assert (rec.ld, rec.witness) == expect, (x, b)


def test_depth_reversible_matches_naive_oracle(lab):
    for n in range(3):
        for k in range(2 ** n):
            x = format(k, f"0{n}b") if n else ""
            for b in (0, 1, 2):
                rec = lab.logical_depth_reversible(x, b, QUICK)
                expect = naive_ld_reversible(x, b, QUICK.max_len, QUICK.max_steps)
                assert not isinstance(rec, NoWitness)
                assert (rec.ld, rec.witness) == expect, (x, b)


def test_reversible_witness_lengths_in_window(lab):
    for x in ("0", "00", "000", "110"):
        kx = lab.k_bounded(x, MID).k_upper
        for b in (0, 1, 2):
            rec = lab.logical_depth_reversible(x, b, MID)
            assert kx <= len(rec.witness) <= kx + b


def test_reversible_witness_run_has_pair_shape(lab):
    rec = lab.logical_depth_reversible("000", 0, MID)
    replay = universal_reversible_run(rec.witness, "", MID.max_steps)
    assert replay.pair == (rec.witness, "000")
    assert replay.steps == rec.ld


def test_depth_large_b_admits_print_run(lab):
    x = "10"
    b = len(x) + 10
    rec = lab.logical_depth_general(x, b, QUICK)
    print_steps = universal_run(print_program(x), "", QUICK.max_steps).steps
    assert rec.ld <= print_steps


def test_slow_short_program_creates_depth_gap(lab):
    # K("000") is met only by the slow doubling machine; one extra bit
    # admits the fast copier, so depth drops strictly.
    ld0 = lab.logical_depth_reversible("000", 0, MID)
    ld1 = lab.logical_depth_reversible("000", 1, MID)
    assert ld0.ld > ld1.ld


# --- growth tables --------------------------------------------------------------------

def test_psi_has_single_row_at_n_zero(lab):
    table = lab.psi_table(0, QUICK)
    assert len(table.rows) == 1
    assert table.rows[0].witness_x == ""
    assert not table.rows[0].inconclusive


def test_psi_values_stable_under_doubled_budget(lab):
    a = lab.psi_table(3, MID)
    b = lab.psi_table(3, Budget(MID.max_len, MID.max_steps * 2))
    for ra, rb in zip(a.rows, b.rows):
        assert ra.value == rb.value
        assert ra.witness_x == rb.witness_x
        assert ra.witness_program == rb.witness_program


def test_psi_row_witnesses_replay(lab):
    table = lab.psi_table(3, MID)
    for row in table.rows:
        assert not row.inconclusive
        replay = universal_reversible_run(row.witness_program, "", MID.max_steps)
        assert replay.pair == (row.witness_program, row.witness_x)
        assert replay.steps == row.value


def test_phi_psi_cross_linearity(lab):
    # Within one budget the reversible table is the forward table pushed
    # through the emulation accounting.
    psi = lab.psi_table(3, MID)
    phi = lab.phi_table(3, MID)
    for rp, rf in zip(psi.rows, phi.rows):
        assert rp.value <= 12 * rf.value + 4 * (
            len(rf.witness_program) + len(rf.witness_x)) + 9


def test_f_table_nonnegative_and_reports_gap(lab):
    table = lab.f_table(3, MID)
    for row in table.rows:
        assert not row.inconclusive
        assert row.value >= 0
    assert table.rows[3].value > 0  # the engineered "000" gap


def test_f_variant_comparison(lab):
    rev = lab.f_table(2, QUICK, variant="reversible")
    gen = lab.f_table(2, QUICK, variant="general")
    assert all(r.value is not None and r.value >= 0 for r in rev.rows)
    assert all(r.value is not None and r.value >= 0 for r in gen.rows)


# --- budget monotonicity -----------------------------------------------------------

def test_budget_monotonicity_in_steps(lab):
    small = Budget(10, 1500)
    double = Budget(10, 3000)
    for x in ("", "0", "00", "000"):
        a = lab.k_bounded(x, small)
        b = lab.k_bounded(x, double)
        assert b.k_upper <= a.k_upper
        assert b.exhaustive >= a.exhaustive
        for variant in ("general", "reversible"):
            da = lab.logical_depth(x, 1, small, variant)
            db = lab.logical_depth(x, 1, double, variant)
            if not isinstance(da, NoWitness):
                assert not isinstance(db, NoWitness)
                assert db.ld <= da.ld


def test_budget_monotonicity_in_length(lab):
    a = lab.k_bounded("000", Budget(7, 3000))
    b = lab.k_bounded("000", Budget(10, 3000))
    assert b.k_upper <= a.k_upper


# --- dovetail and partitioning ---------------------------------------------------------

def test_dovetail_single_program_equals_run(lab):
    out = lab.dovetail(QUICK, programs=["0001"])
    assert out == [universal_run("0001", "", QUICK.max_steps)]


def test_dovetail_empty_program_set(lab):
    assert lab.dovetail(QUICK, programs=[]) == []


def test_dovetail_partition_invariance():
    one = DepthLab(workers=1)
    four = DepthLab(workers=4)
    assert one.dovetail(QUICK) == four.dovetail(QUICK)
    assert one.psi_table(2, QUICK) == four.psi_table(2, QUICK)
    assert one.f_table(2, QUICK) == four.f_table(2, QUICK)


def test_sweep_derivation_matches_direct_runs():
    lab = DepthLab()
    table = lab.sweep(Budget(8, 800))
    for bits, r in table.items():
        assert r == universal_run(bits, "", 800)


# --- ledger -------------------------------------------------------------------------

def test_ledger_roundtrip(tmp_path):
    lab = DepthLab(ledger=RunLedger(tmp_path))
    rec = lab.k_bounded("01", QUICK)
    lab.ledger.save()
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert files[0].name == f"{lab.digest}.jsonl"

    warm = DepthLab(ledger=RunLedger(tmp_path))
    assert len(warm.ledger) == len(lab.ledger)
    assert warm.k_bounded("01", QUICK) == rec


def test_ledger_hits_identical_to_recomputation(tmp_path):
    lab = DepthLab(ledger=RunLedger(tmp_path))
    lab.sweep(Budget(6, 500))
    for bits, r in lab.sweep(Budget(6, 500)).items():
        assert r == universal_run(bits, "", 500)


# --- upper-bound sanity ------------------------------------------------------------

def test_k_upper_within_log_bound_up_to_len_eight(lab):
    # Measured constant for this interpreter: the literal printer costs
    # 2n + 6 bits, so c = 7 covers n + 2*ceil(log2(n+1)) + c for n <= 8.
    c_u = 7
    budget = Budget(8, 3000)
    for n in range(9):
        for k in range(2 ** n):
            x = format(k, f"0{n}b") if n else ""
            rec = lab.k_bounded(x, budget)
            bound = n + 2 * math.ceil(math.log2(n + 1)) + c_u
            assert rec.k_upper <= bound, (x, rec.k_upper, bound)
