"""Budget-bounded complexity and logical depth by exhaustive enumeration.

Every value here is relative to an explicit Budget(max_len L, max_steps
D) and exact only under the assumption that a program not halting within
D steps never halts.  The machinery:

  * a persistent RunLedger caching interpreter runs keyed by
    (universal digest, bits, aux, D);
  * one shared sweep per (L, D, aux): every bit string of length <= L is
    run for up to D steps, and the exactly-consumed halting runs form
    the program table all queries scan;
  * the literal-print program of x is always seeded as a candidate, even
    beyond L, which keeps k_upper below the print bound whenever the
    step budget allows the print run at all.

Candidate sets respect exact consumption: a bit string counts as a
program for x only when the run halts having scanned precisely that
string.  Tie-breaks are (steps, length, lexicographic) everywhere, so
results are independent of enumeration order and worker partitioning.

The general-variant depth uses permissive incompressibility: a producer
p qualifies at significance b when |p| <= k_upper(p) + b with k_upper
from this same budget, which can only admit extra programs (k_upper
bounds the true complexity from above) and therefore biases depth
downward; records carry flags for nested non-exhaustive results.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .prefixvm import (
    HALTED,
    TAPE_EXHAUSTED,
    PrefixRunResult,
    all_bit_strings,
    print_program,
    reversible_view,
    universal_machine,
    universal_run,
)


@dataclass(frozen=True)
class Budget:
    max_len: int
    max_steps: int

    def __post_init__(self) -> None:
        if self.max_len < 0 or self.max_steps < 0:
            raise ValueError("budget bounds must be >= 0")


@dataclass(frozen=True)
class NoWitness:
    x: str
    aux: str
    budget: Budget
    detail: str = ""


@dataclass(frozen=True)
class ComplexityRecord:
    x: str
    aux: str
    k_upper: int
    witnesses: tuple[str, ...]
    budget: Budget
    exhaustive: bool
    universal_digest: str


@dataclass(frozen=True)
class IncompressibleSet:
    x: str
    b: int
    aux: str
    programs: tuple[str, ...]
    nested_exhaustive: bool
    budget: Budget


@dataclass(frozen=True)
class DepthRecord:
    x: str
    b: int
    ld: int
    witness: str
    variant: str  # "general" | "reversible"
    budget: Budget
    exhaustive: bool
    universal_digest: str


@dataclass(frozen=True)
class GrowthRow:
    n: int
    value: Optional[int]
    witness_x: str
    witness_program: str
    witness_b: Optional[int]
    inconclusive: bool


@dataclass(frozen=True)
class GrowthTable:
    kind: str  # "psi" | "phi" | "f"
    variant: str
    rows: tuple[GrowthRow, ...]
    budget: Budget
    universal_digest: str


class RunLedger:
    """Cache of interpreter runs, persisted as one JSONL file per digest.

    Hits are bit-identical to recomputation: the key is the exact query
    (bits, aux, budget) and the stored value the full result.
    """

    def __init__(self, cache_dir: str | os.PathLike | None = None):
        self.digest = universal_machine().digest
        self._mem: dict[tuple[str, str, int], PrefixRunResult] = {}
        self._dirty = 0
        self.path: Optional[Path] = None
        if cache_dir is not None:
            self.path = Path(cache_dir) / f"{self.digest}.jsonl"
            self._load()

    def _load(self) -> None:
        if self.path is None or not self.path.exists():
            return
        with self.path.open() as fh:
            for line in fh:
                if not line.strip():
                    continue
                e = json.loads(line)
                key = (e["bits"], e["aux"], e["budget"])
                self._mem[key] = PrefixRunResult(
                    e["outcome"], e["program"], e["output"], e["steps"])

    def run(self, bits: str, aux: str, budget: int) -> PrefixRunResult:
        key = (bits, aux, budget)
        hit = self._mem.get(key)
        if hit is None:
            hit = universal_run(bits, aux, budget)
            self._mem[key] = hit
            self._dirty += 1
        return hit

    def put(self, bits: str, aux: str, budget: int, result: PrefixRunResult) -> None:
        """Record a result known to equal recomputation (derived runs)."""
        key = (bits, aux, budget)
        if key not in self._mem:
            self._mem[key] = result
            self._dirty += 1

    def save(self) -> None:
        if self.path is None or not self._dirty:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("w") as fh:
            for (bits, aux, budget), r in sorted(self._mem.items()):
                fh.write(json.dumps(
                    {"bits": bits, "aux": aux, "budget": budget,
                     "outcome": r.outcome, "program": r.program,
                     "output": r.output, "steps": r.steps},
                    sort_keys=True) + "\n")
        self._dirty = 0

    def __len__(self) -> int:
        return len(self._mem)


def _check_binary(x: str, what: str = "string") -> None:
    if any(c not in "01" for c in x):
        raise ValueError(f"{what} must be binary, got {x!r}")


def _partition(items: list[str], workers: int) -> list[list[str]]:
    """Split bit strings by leading-bit bucket so that a string and its
    parent prefix land in the same partition (keeps the sweep's
    prefix-derivation local to a worker)."""
    workers = max(1, workers)
    if workers == 1:
        return [items]
    k = max(1, (workers - 1).bit_length())
    parts: list[list[str]] = [[] for _ in range(workers)]
    for s in items:
        bucket = int(s[:k], 2) % workers if len(s) >= k else 0
        parts[bucket].append(s)
    return parts


@dataclass
class DepthLab:
    """Shared sweep state for all depth-lab operations."""

    ledger: RunLedger = field(default_factory=RunLedger)
    workers: int = 1
    _sweeps: dict = field(default_factory=dict, repr=False)

    @property
    def digest(self) -> str:
        return self.ledger.digest

    # -- sweeps ------------------------------------------------------------

    def run_one(self, bits: str, aux: str, max_steps: int) -> PrefixRunResult:
        return self.ledger.run(bits, aux, max_steps)

    def rev_one(self, bits: str, aux: str, max_steps: int) -> PrefixRunResult:
        return reversible_view(self.run_one(bits, aux, max_steps), max_steps)

    def sweep(self, budget: Budget, aux: str = "") -> dict[str, PrefixRunResult]:
        """Every bit string of length <= L run for <= D steps.

        A string extending a prefix whose run already halted or exceeded
        the budget runs identically (the machine never looks at the
        extension), so only the tape-exhausted frontier is executed
        afresh; the equivalence is asserted in the tests.  Worker
        partitions are processed independently and merged in canonical
        (length, lexicographic) order; with pure deterministic runs the
        partitioning is unobservable.
        """
        key = (budget.max_len, budget.max_steps, aux)
        cached = self._sweeps.get(key)
        if cached is not None:
            return cached
        programs = all_bit_strings(budget.max_len)
        results: dict[str, PrefixRunResult] = {}
        for part in _partition(programs, self.workers):
            local: dict[str, PrefixRunResult] = {}
            for bits in part:
                parent = local.get(bits[:-1]) if bits else None
                if parent is not None and parent.outcome != TAPE_EXHAUSTED:
                    local[bits] = parent
                    self.ledger.put(bits, aux, budget.max_steps, parent)
                else:
                    local[bits] = self.run_one(bits, aux, budget.max_steps)
            results.update(local)
        ordered = {bits: results[bits] for bits in programs}
        self._sweeps[key] = ordered
        return ordered

    def exact_halters(self, budget: Budget, aux: str = "") -> dict[str, PrefixRunResult]:
        """Halting runs that consumed exactly their bit string."""
        key = ("exact", budget.max_len, budget.max_steps, aux)
        cached = self._sweeps.get(key)
        if cached is not None:
            return cached
        table = {
            bits: r for bits, r in self.sweep(budget, aux).items()
            if r.outcome == HALTED and r.program == bits
        }
        self._sweeps[key] = table
        return table

    def dovetail(self, budget: Budget, aux: str = "",
                 programs: Optional[Iterable[str]] = None) -> list[PrefixRunResult]:
        """Run stream over programs in canonical order (all strings of
        length <= L when no explicit set is given), ledger backed."""
        if programs is None:
            return list(self.sweep(budget, aux).values())
        ordered = sorted(set(programs), key=lambda p: (len(p), p))
        for part in _partition(ordered, self.workers):
            for bits in part:
                self.run_one(bits, aux, budget.max_steps)
        return [self.run_one(bits, aux, budget.max_steps) for bits in ordered]

    # -- producers ----------------------------------------------------------

    def _producers(self, x: str, budget: Budget, aux: str) -> dict[str, PrefixRunResult]:
        """Programs whose run halts with output x, seeded with the literal
        printer even when it is longer than L."""
        table = self.exact_halters(budget, aux)
        out = {p: r for p, r in table.items() if r.output == x}
        seed = print_program(x)
        if seed not in out:
            r = self.run_one(seed, aux, budget.max_steps)
            if r.outcome == HALTED and r.program == seed and r.output == x:
                out[seed] = r
        return out

    # -- complexity -----------------------------------------------------------

    def k_bounded(self, x: str, budget: Budget,
                  aux: str = "") -> ComplexityRecord | NoWitness:
        _check_binary(x)
        _check_binary(aux, "aux")
        producers = self._producers(x, budget, aux)
        if not producers:
            return NoWitness(x, aux, budget, "no producing program within budget")
        k_upper = min(len(p) for p in producers)
        witnesses = tuple(sorted(p for p in producers if len(p) == k_upper))
        exhaustive = k_upper - 1 <= budget.max_len
        return ComplexityRecord(x, aux, k_upper, witnesses, budget,
                                exhaustive, self.digest)

    def shortest_programs(self, x: str, budget: Budget,
                          aux: str = "") -> tuple[str, ...] | NoWitness:
        rec = self.k_bounded(x, budget, aux)
        if isinstance(rec, NoWitness):
            return rec
        return rec.witnesses

    def incompressible_programs(self, x: str, b: int, budget: Budget,
                                aux: str = "") -> IncompressibleSet | NoWitness:
        """Producers p of x with |p| <= k_upper(p) + b.

        Nested complexities use the same budget and empty auxiliary; a
        nested NoWitness admits the program (permissive direction) and
        clears the nested_exhaustive flag.
        """
        if b < 0:
            raise ValueError("significance level must be >= 0")
        producers = self._producers(x, budget, aux)
        if not producers:
            return NoWitness(x, aux, budget, "no producing program within budget")
        kept = []
        nested_ok = True
        for p in sorted(producers, key=lambda q: (len(q), q)):
            nested = self.k_bounded(p, budget, aux="")
            if isinstance(nested, NoWitness):
                nested_ok = False
                kept.append(p)
            else:
                if not nested.exhaustive:
                    nested_ok = False
                if len(p) <= nested.k_upper + b:
                    kept.append(p)
        return IncompressibleSet(x, b, aux, tuple(kept), nested_ok, budget)

    # -- logical depth -----------------------------------------------------------

    def logical_depth_general(self, x: str, b: int, budget: Budget,
                              aux: str = "") -> DepthRecord | NoWitness:
        inc = self.incompressible_programs(x, b, budget, aux)
        if isinstance(inc, NoWitness):
            return inc
        if not inc.programs:
            return NoWitness(x, aux, budget, "no incompressible producer")
        producers = self._producers(x, budget, aux)
        best = min(inc.programs,
                   key=lambda p: (producers[p].steps, len(p), p))
        return DepthRecord(x, b, producers[best].steps, best, "general",
                           budget, inc.nested_exhaustive, self.digest)

    def logical_depth_reversible(self, x: str, b: int, budget: Budget,
                                 aux: str = "") -> DepthRecord | NoWitness:
        """Least reversible-interpreter step count over programs p with
        pair output (p, x) and |p| <= k_upper(x) + b."""
        if b < 0:
            raise ValueError("significance level must be >= 0")
        kx = self.k_bounded(x, budget, aux)
        if isinstance(kx, NoWitness):
            return kx
        threshold = kx.k_upper + b
        candidates: dict[str, PrefixRunResult] = {}
        for p, _ in self._producers(x, budget, aux).items():
            if len(p) > threshold:
                continue
            rev = self.rev_one(p, aux, budget.max_steps)
            if rev.outcome == HALTED and rev.pair == (p, x):
                candidates[p] = rev
        if not candidates:
            return NoWitness(x, aux, budget,
                             "no reversible run within budget at this level")
        best = min(candidates, key=lambda p: (candidates[p].steps, len(p), p))
        exhaustive = kx.exhaustive and threshold <= budget.max_len
        return DepthRecord(x, b, candidates[best].steps, best, "reversible",
                           budget, exhaustive, self.digest)

    def logical_depth(self, x: str, b: int, budget: Budget, variant: str,
                      aux: str = "") -> DepthRecord | NoWitness:
        if variant in ("reversible", "rev"):
            return self.logical_depth_reversible(x, b, budget, aux)
        if variant in ("general", "gen"):
            return self.logical_depth_general(x, b, budget, aux)
        raise ValueError(f"unknown variant {variant!r}")

    # -- growth tables -------------------------------------------------------------

    def _star_row(self, x: str, budget: Budget, aux: str,
                  reversible: bool) -> tuple[str, int] | None:
        """Canonical shortest program for x and its run time on the chosen
        interpreter, or None when nothing qualifies within budget."""
        runs: dict[str, PrefixRunResult] = {}
        for p in self._producers(x, budget, aux):
            if reversible:
                r = self.rev_one(p, aux, budget.max_steps)
                if r.outcome == HALTED and r.pair == (p, x):
                    runs[p] = r
            else:
                runs[p] = self.run_one(p, aux, budget.max_steps)
        if not runs:
            return None
        star = min(runs, key=lambda p: (len(p), p))
        return star, runs[star].steps

    def _minmax_table(self, kind: str, n_max: int, budget: Budget, aux: str,
                      reversible: bool) -> GrowthTable:
        rows = []
        for n in range(n_max + 1):
            best: tuple[int, str, str] | None = None
            failed: str | None = None
            for x in _binary_strings(n):
                got = self._star_row(x, budget, aux, reversible)
                if got is None:
                    failed = x
                    break
                star, d = got
                # max over x; ties resolved toward the lexicographically
                # least witness by scanning x in order.
                if best is None or d > best[0]:
                    best = (d, x, star)
            if failed is not None or best is None:
                rows.append(GrowthRow(n, None, failed or "", "", None, True))
            else:
                rows.append(GrowthRow(n, best[0], best[1], best[2], None, False))
        return GrowthTable(kind, "reversible" if reversible else "general",
                           tuple(rows), budget, self.digest)

    def psi_table(self, n_max: int, budget: Budget, aux: str = "") -> GrowthTable:
        """Worst-case over length-n strings of the shortest program's
        reversible running time."""
        return self._minmax_table("psi", n_max, budget, aux, reversible=True)

    def phi_table(self, n_max: int, budget: Budget, aux: str = "") -> GrowthTable:
        return self._minmax_table("phi", n_max, budget, aux, reversible=False)

    def f_table(self, n_max: int, budget: Budget, aux: str = "",
                variant: str = "reversible") -> GrowthTable:
        """Largest one-level drop of depth: max over |x| = n, 0 <= b <= n
        of ld_b(x) - ld_(b+1)(x)."""
        rows = []
        for n in range(n_max + 1):
            best: tuple[int, str, int, str] | None = None
            failed: str | None = None
            for x in _binary_strings(n):
                lds: dict[int, DepthRecord] = {}
                bad = False
                for b in range(n + 2):
                    rec = self.logical_depth(x, b, budget, variant, aux)
                    if isinstance(rec, NoWitness):
                        bad = True
                        break
                    lds[b] = rec
                if bad:
                    failed = x
                    break
                for b in range(n + 1):
                    diff = lds[b].ld - lds[b + 1].ld
                    if best is None or diff > best[0]:
                        best = (diff, x, b, lds[b].witness)
            if failed is not None or best is None:
                rows.append(GrowthRow(n, None, failed or "", "", None, True))
            else:
                rows.append(GrowthRow(n, best[0], best[1], best[3],
                                      best[2], False))
        return GrowthTable("f", variant, tuple(rows), budget, self.digest)


def _binary_strings(n: int) -> list[str]:
    return [format(k, f"0{n}b") for k in range(2 ** n)] if n else [""]


# Convenience wrappers over a process-default lab (no persistence).

_default_lab: DepthLab | None = None


def default_lab() -> DepthLab:
    global _default_lab
    if _default_lab is None:
        _default_lab = DepthLab()
    return _default_lab


def k_bounded(x: str, budget: Budget, aux: str = "") -> ComplexityRecord | NoWitness:
    return default_lab().k_bounded(x, budget, aux)


def shortest_programs(x: str, budget: Budget, aux: str = "") -> tuple[str, ...] | NoWitness:
    return default_lab().shortest_programs(x, budget, aux)


def incompressible_programs(x: str, b: int, budget: Budget,
                            aux: str = "") -> IncompressibleSet | NoWitness:
    return default_lab().incompressible_programs(x, b, budget, aux)


def logical_depth_general(x: str, b: int, budget: Budget,
                          aux: str = "") -> DepthRecord | NoWitness:
    return default_lab().logical_depth_general(x, b, budget, aux)


def logical_depth_reversible(x: str, b: int, budget: Budget,
                             aux: str = "") -> DepthRecord | NoWitness:
    return default_lab().logical_depth_reversible(x, b, budget, aux)


def psi_table(n_max: int, budget: Budget, aux: str = "") -> GrowthTable:
    return default_lab().psi_table(n_max, budget, aux)


def phi_table(n_max: int, budget: Budget, aux: str = "") -> GrowthTable:
    return default_lab().phi_table(n_max, budget, aux)


def f_table(n_max: int, budget: Budget, aux: str = "",
            variant: str = "reversible") -> GrowthTable:
    return default_lab().f_table(n_max, budget, aux, variant)
