"""Pipeline sweeps over (input x mapping x ordering x mode) and report I/O."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import fermion, mappings, optimizer, simulator, trotter
from .circuits import GateCounts, count_gates, synthesize_plan
from .fermion import IntegralSet
from .mappings import MappingScheme
from .trotter import OrderingStrategy

CSV_HEADER = ("system,n_qubits,mapping,ordering,seed,mode,"
              "raw_total,raw_entangling,raw_single,raw_nonclifford,"
              "opt_total,opt_entangling,opt_single,opt_nonclifford,"
              "savings,trotter_error")

OPTIMIZE_LEVELS = ("none", "cancel", "full")


@dataclass(frozen=True)
class BenchInput:
    """Either an integral file path or a synthetic spec."""

    system: str
    path: str | None = None
    synthetic: tuple[int, int, float] | None = None  # (n_spatial, seed, density)

    @classmethod
    def parse(cls, spec: str) -> "BenchInput":
        """``path/to/file.fcidump`` or ``synthetic:n=8,seed=1,density=1.0``."""
        if spec.startswith("synthetic:"):
            kv = dict(part.split("=") for part in spec[len("synthetic:"):].split(","))
            n = int(kv["n"])
            seed = int(kv.get("seed", "0"))
            density = float(kv.get("density", "1.0"))
            return cls(f"synthetic-n{n}-s{seed}-d{density:g}", synthetic=(n, seed, density))
        return cls(Path(spec).stem, path=spec)

    def load(self) -> IntegralSet:
        if self.synthetic is not None:
            n, seed, density = self.synthetic
            return fermion.synthetic_integrals(n, seed, density)
        return fermion.parse_fcidump(Path(self.path).read_text())


@dataclass
class BenchConfig:
    inputs: list[BenchInput]
    mappings: list[MappingScheme] = field(default_factory=lambda: list(MappingScheme))
    orderings: list[OrderingStrategy] = field(
        default_factory=lambda: [OrderingStrategy("magnitude")])
    modes: list[str] = field(default_factory=lambda: ["canonical"])
    optimize_level: str = "full"
    n_steps: int = 1
    time: float = 1.0
    with_error: bool = False
    error_qubit_limit: int = simulator.OPERATOR_QUBIT_LIMIT
    workers: int = 1

    def __post_init__(self):
        if not (self.inputs and self.mappings and self.orderings and self.modes):
            raise ValueError("need at least one input, mapping, ordering and mode")
        if self.optimize_level not in OPTIMIZE_LEVELS:
            raise ValueError(f"optimize level must be one of {OPTIMIZE_LEVELS}")


@dataclass
class BenchRow:
    system: str
    n_qubits: int
    mapping: str
    ordering: str
    seed: int | None
    mode: str
    raw: GateCounts | None = None
    optimized: GateCounts | None = None
    savings: float | None = None
    trotter_error: float | None = None
    error: str | None = None


def _cell(cfg: BenchConfig, inp: BenchInput, scheme: MappingScheme,
          ordering: OrderingStrategy, mode: str) -> BenchRow:
    row = BenchRow(system=inp.system, n_qubits=0, mapping=scheme.value,
                   ordering=ordering.kind, seed=ordering.seed, mode=mode)
    try:
        ints = inp.load()
        ham = fermion.build_hamiltonian(ints)
        row.n_qubits = ham.n_modes
        qop = mappings.map_operator(ham, scheme)
        time = simulator.safe_evolution_time(qop, cfg.time)
        plan = trotter.plan_for(qop, ordering, cfg.n_steps, time)
        circ = synthesize_plan(plan, mode)
        row.raw = count_gates(circ)
        if cfg.optimize_level == "none":
            opt = circ
        elif cfg.optimize_level == "cancel":
            opt = optimizer.cancel_adjacent(circ)
        else:
            opt = optimizer.optimize(circ)
        row.optimized = count_gates(opt)
        row.savings = ((row.raw.total - row.optimized.total) / row.raw.total
                       if row.raw.total else 0.0)
        if cfg.with_error and row.n_qubits <= cfg.error_qubit_limit:
            matrix = simulator.operator_matrix(qop)
            energy, ground = simulator.ground_state(matrix)
            rep = simulator.trotter_error(plan, energy, ground,
                                          ordering=str(ordering), mapping=scheme.value)
            row.trotter_error = rep.error
    except Exception as exc:  # cell isolation: a sweep never aborts
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def _cell_args(args) -> BenchRow:
    return _cell(*args)


def run_bench(cfg: BenchConfig) -> list[BenchRow]:
    """Cartesian sweep; rows sorted by (system, mapping, ordering, mode)."""
    cells = [(cfg, inp, scheme, ordering, mode)
             for inp in cfg.inputs
             for scheme in cfg.mappings
             for ordering in cfg.orderings
             for mode in cfg.modes]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_cell_args, cells))
    else:
        rows = [_cell(*c) for c in cells]
    rows.sort(key=lambda r: (r.system, r.mapping, r.ordering, str(r.seed), r.mode))
    return rows


def _row_fields(row: BenchRow) -> list[str]:
    def num(v):
        return "" if v is None else repr(v)

    fields = [row.system, str(row.n_qubits), row.mapping, row.ordering,
              "" if row.seed is None else str(row.seed), row.mode]
    for counts in (row.raw, row.optimized):
        if counts is None:
            fields += ["", "", "", ""]
        else:
            fields += [str(counts.total), str(counts.entangling),
                       str(counts.single_qubit), str(counts.non_clifford)]
    fields.append(num(row.savings))
    fields.append(num(row.trotter_error))
    return fields


def emit_report(rows: list[BenchRow], fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for row in rows:
            writer.writerow(_row_fields(row))
        return buf.getvalue()
    if fmt == "json":
        payload = []
        for row in rows:
            d = {
                "system": row.system, "n_qubits": row.n_qubits,
                "mapping": row.mapping, "ordering": row.ordering,
                "seed": row.seed, "mode": row.mode,
                "savings": row.savings, "trotter_error": row.trotter_error,
            }
            for label, counts in (("raw", row.raw), ("opt", row.optimized)):
                d[label] = None if counts is None else {
                    "total": counts.total, "entangling": counts.entangling,
                    "single": counts.single_qubit, "nonclifford": counts.non_clifford,
                }
            if row.error is not None:
                d["error"] = row.error
            payload.append(d)
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(text: str) -> list[BenchRow]:
    """Inverse of the CSV emitter, for round-trip checks."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != CSV_HEADER.split(","):
        raise ValueError("unexpected report header")
    rows = []
    for rec in reader:
        def counts(vals):
            if any(v == "" for v in vals):
                return None
            t, e, s, nc = (int(v) for v in vals)
            return GateCounts(t, e, s, nc)

        rows.append(BenchRow(
            system=rec[0], n_qubits=int(rec[1]), mapping=rec[2], ordering=rec[3],
            seed=None if rec[4] == "" else int(rec[4]), mode=rec[5],
            raw=counts(rec[6:10]), optimized=counts(rec[10:14]),
            savings=None if rec[14] == "" else float(rec[14]),
            trotter_error=None if rec[15] == "" else float(rec[15]),
        ))
    return rows
