"""Command-line front end (``stabkit``).

Arrays are read and written in the stab v1 text format; ``-`` means
stdin or stdout.  Exit status is 0 on success, 1 on domain errors and 2
on usage errors.  ``--json`` turns every result into one JSON line.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import oracle as dense
from .array import QubitPartition, StabiliserArray, format_array, parse_array, validate
from .bench import ALGOS, bench, fit_exponent, to_csv
from .bipartite import MEASURES, cnfp, entanglement, full_normal_form
from .cnf import cnf1, negative_phase_normalize
from .errors import StabiliserError
from .generate import random_array, random_partition
from .overlap import DyadicScalar, overlap
from .reduce import drop_dependent, ptrace, rank, rref


class UsageError(Exception):
    """Bad option values; reported with exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# argument helpers ------------------------------------------------------

def _index_list(text: str) -> list[int]:
    """Parse ``"1,3"`` into 0-based indices."""
    try:
        idx = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not idx:
        raise argparse.ArgumentTypeError("empty qubit list")
    if any(i < 1 for i in idx):
        raise argparse.ArgumentTypeError("qubit indices are 1-based")
    if len(set(idx)) != len(idx):
        raise argparse.ArgumentTypeError(f"repeated qubit in {text!r}")
    return [i - 1 for i in idx]


def _size_list(text: str) -> list[int]:
    try:
        sizes = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if any(n < 1 for n in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive")
    return sizes


def _read(path: str) -> StabiliserArray:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise StabiliserError(f"cannot read {path}: {exc.strerror}") from None
    return parse_array(text)


def _load(path: str) -> StabiliserArray:
    return validate(_read(path))


def _write(text: str, path: str = "-"):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _partition(party_a: list[int], n: int) -> QubitPartition:
    if any(q >= n for q in party_a):
        raise StabiliserError(f"party A qubit {max(party_a) + 1} out of range for {n} qubits")
    if len(party_a) == n:
        raise StabiliserError("party B is empty")
    return QubitPartition.from_party_A(party_a, n)


def _dyadic_json(d: DyadicScalar) -> dict:
    return {"zero": d.zero, "log2": None if d.zero else float(d.log2_value),
            "decimal": float(d)}


def _rows_json(a: StabiliserArray) -> dict:
    return {"n": a.n_qubits, "k": a.n_rows, "rows": list(a.rows)}


class _Out:
    """Collects human-readable lines or one JSON record."""

    def __init__(self, command: str, as_json: bool, path: str = "-"):
        self.record = {"command": command}
        self.lines: list[str] = []
        self.as_json = as_json
        self.path = path

    def flush(self):
        if self.as_json:
            _write(json.dumps(self.record, separators=(",", ":")) + "\n", self.path)
        else:
            _write("".join(line + "\n" for line in self.lines), self.path)


# subcommands ----------------------------------------------------------

def _cmd_validate(args, out: _Out):
    a = _load(args.file)
    r = rank(a)
    out.record.update(valid=True, n=a.n_qubits, k=a.n_rows, rank=r)
    out.lines.append(f"valid: N={a.n_qubits} K={a.n_rows} rank={r}")


def _cmd_rank(args, out: _Out):
    r = rank(_load(args.file))
    out.record["rank"] = r
    out.lines.append(f"rank = {r}")


def _cmd_rref(args, out: _Out):
    res = rref(_load(args.file))
    out.record.update(_rows_json(res.array), rank=res.rank)
    out.lines.append(format_array(res.array).rstrip("\n"))


def _cmd_ptrace(args, out: _Out):
    a = _load(args.file)
    if any(q >= a.n_qubits for q in args.qubits):
        raise StabiliserError(f"qubit {max(args.qubits) + 1} out of range for {a.n_qubits} qubits")
    red = ptrace(a, args.qubits)
    out.record.update(_rows_json(red))
    out.lines.append(format_array(red).rstrip("\n"))


def _cmd_cnf(args, out: _Out):
    res = cnf1(drop_dependent(_load(args.file)))
    if args.positive:
        res = negative_phase_normalize(res)
    out.record.update(_rows_json(res.array), r=res.r,
                      permutation=[q + 1 for q in res.column_permutation])
    out.lines.append(format_array(res.array).rstrip("\n"))
    if args.circuit:
        out.record["circuit"] = [str(g) for g in res.circuit]
        out.lines.append("# circuit")
        out.lines.extend(str(g) for g in res.circuit)


def _cmd_overlap(args, out: _Out):
    a1, a2 = _read(args.file1), _read(args.file2)
    ov = overlap(a1, a2)
    out.record.update(F=_dyadic_json(ov.F), F_u=_dyadic_json(ov.F_u), D_bures=ov.D_bures)
    out.lines += [f"F = {ov.F}", f"F_u = {ov.F_u}", f"D_bures = {ov.D_bures:.12f}"]


def _cmd_entangle(args, out: _Out):
    a = _load(args.file)
    part = _partition(args.partyA, a.n_qubits)
    report = full_normal_form(a, part) if args.normal_form else cnfp(a, part)
    e = entanglement(report, args.measure)
    out.record.update(p=report.p, E=e, measure=args.measure, bound=report.bound)
    out.lines += [f"p = {report.p}", f"E = {e}"]
    if args.normal_form:
        nf = report.normal_form
        out.record["normal_form"] = _rows_json(nf)
        out.record["circuit_A"] = [str(g) for g in report.circuit_A]
        out.record["circuit_B"] = [str(g) for g in report.circuit_B]
        out.lines.append(format_array(nf).rstrip("\n"))


def _cmd_random(args, out: _Out):
    if not 0 <= args.k <= args.n:
        raise UsageError(f"need 0 <= k <= n, got n={args.n}, k={args.k}")
    a = random_array(args.n, args.k, args.seed)
    out.record.update(_rows_json(a), seed=args.seed)
    out.lines.append(format_array(a).rstrip("\n"))


def _cmd_bench(args, out: _Out):
    rows = bench(args.sizes, args.reps, args.algos, args.seed)
    fits = {}
    for algo in args.algos:
        try:
            fits[algo] = fit_exponent(rows, algo)
        except ValueError:
            pass
    if out.as_json:
        out.record.update(rows=[r.__dict__ for r in rows], exponents=fits)
    else:
        out.lines.append(to_csv(rows).rstrip("\n"))
        for algo, e in fits.items():
            print(f"exponent {algo} = {e:.2f}", file=sys.stderr)


# oracle subcommands ----------------------------------------------------

def _oracle_instance(args, n_files: int) -> list[StabiliserArray]:
    if args.files:
        if len(args.files) != n_files:
            raise UsageError(f"expected {n_files} file(s), got {len(args.files)}")
        return [_load(f) for f in args.files]
    if args.seed is None:
        raise UsageError("give input files or --seed")
    k = args.n if args.k is None else args.k
    if not 0 <= k <= args.n:
        raise UsageError(f"need 0 <= k <= n, got n={args.n}, k={k}")
    return [random_array(args.n, k, args.seed + i) for i in range(n_files)]


def _oracle_overlap(args, out: _Out):
    a1, a2 = _oracle_instance(args, 2)
    if a1.n_qubits != a2.n_qubits:
        overlap(a1, a2)  # raises the dimension mismatch
    r1, r2 = dense.dense_state(a1), dense.dense_state(a2)
    f, fu = dense.dense_overlap(r1, r2), dense.dense_uhlmann(r1, r2)
    d = 2.0 * float(np.sqrt(max(0.0, 1.0 - fu)))
    out.record.update(F=f, F_u=fu, D_bures=d)
    out.lines += [f"F = {f:.12f}", f"F_u = {fu:.12f}", f"D_bures = {d:.12f}"]


def _oracle_ptrace(args, out: _Out):
    (a,) = _oracle_instance(args, 1)
    qubits = args.qubits if args.qubits is not None else [0]
    if any(q >= a.n_qubits for q in qubits):
        raise StabiliserError(f"qubit {max(qubits) + 1} out of range for {a.n_qubits} qubits")
    rho = dense.dense_ptrace(dense.dense_state(a), qubits)
    s = dense.dense_entropy(rho)
    agrees = bool(np.allclose(rho, dense.dense_state(ptrace(a, qubits)), atol=1e-12))
    out.record.update(entropy=s, agrees=agrees)
    out.lines += [f"entropy = {s:.12f}", f"agrees = {str(agrees).lower()}"]


def _oracle_entangle(args, out: _Out):
    (a,) = _oracle_instance(args, 1)
    if args.partyA is not None:
        part = _partition(args.partyA, a.n_qubits)
    else:
        part = random_partition(a.n_qubits, args.seed)
    rho = dense.dense_state(a)
    ln = dense.dense_logneg(rho, sorted(part.party_B))
    out.record.update(logneg=ln, p=cnfp(a, part).p)
    out.lines.append(f"logneg = {ln:.12f}")
    if rank(a) == a.n_qubits:
        s = dense.dense_entropy(dense.dense_ptrace(rho, sorted(part.party_B)))
        out.record["entropy"] = s
        out.lines.append(f"entropy = {s:.12f}")
    out.lines.append(f"p = {out.record['p']}")


def _oracle_selfcheck(args, out: _Out):
    """Random instances: library results against the dense oracle."""
    seed = 0 if args.seed is None else args.seed
    rng = np.random.default_rng(seed)
    bad = []
    for t in range(args.trials):
        n = int(rng.integers(1, args.n + 1))
        a = random_array(n, int(rng.integers(0, n + 1)), seed * 100003 + 2 * t)
        b = random_array(n, int(rng.integers(0, n + 1)), seed * 100003 + 2 * t + 1)
        ra, rb = dense.dense_state(a), dense.dense_state(b)
        ov = overlap(a, b)
        if abs(float(ov.F) - dense.dense_overlap(ra, rb)) > 1e-12:
            bad.append((t, "overlap"))
        if abs(float(ov.F_u) - dense.dense_uhlmann(ra, rb)) > 1e-10:
            bad.append((t, "fidelity"))
        if n >= 2:
            part = random_partition(n, seed * 100003 + t)
            if abs(cnfp(a, part).p - dense.dense_logneg(ra, sorted(part.party_B))) > 1e-9:
                bad.append((t, "entangle"))
            traced = [q for q in range(n) if q in part.party_A]
            want = dense.dense_ptrace(ra, traced)
            if not np.allclose(dense.dense_state(ptrace(a, traced)), want, atol=1e-12):
                bad.append((t, "ptrace"))
    out.record.update(trials=args.trials, mismatches=[{"trial": t, "check": c} for t, c in bad])
    out.lines.append(f"selfcheck: {args.trials} trials, {len(bad)} mismatches")
    out.lines.extend(f"  trial {t}: {c}" for t, c in bad)
    if bad:
        raise _Failed()


class _Failed(Exception):
    """Selfcheck found mismatches (exit status 1, output already written)."""


ORACLE_COMMANDS = {
    "overlap": _oracle_overlap,
    "ptrace": _oracle_ptrace,
    "entangle": _oracle_entangle,
    "selfcheck": _oracle_selfcheck,
}


def _cmd_oracle(args, out: _Out):
    ORACLE_COMMANDS[args.what](args, out)


# parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # The global options are accepted before or after the subcommand.
    # Each parser gets its own copies: shared action objects would let
    # the subparser defaults clobber a value given up front.
    def add_common(parser, default):
        parser.add_argument("--json", action="store_true", default=default(False),
                            help="print one JSON record per invocation")
        parser.add_argument("-o", "--output", default=default("-"), metavar="FILE",
                            help="write to FILE instead of stdout")

    p = _Parser(prog="stabkit", description="Normal forms and reductions for stabiliser states.")
    add_common(p, lambda v: v)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        add_common(sp, lambda v: argparse.SUPPRESS)
        sp.set_defaults(func=fn)
        return sp

    sp = add("validate", _cmd_validate, "check that a file describes a stabiliser state")
    sp.add_argument("file")
    sp = add("rank", _cmd_rank, "number of independent generators")
    sp.add_argument("file")
    sp = add("rref", _cmd_rref, "row-reduced echelon form")
    sp.add_argument("file")
    sp = add("ptrace", _cmd_ptrace, "partial trace over some qubits")
    sp.add_argument("file")
    sp.add_argument("--qubits", type=_index_list, required=True, help="1-based list, e.g. 1,3")
    sp = add("cnf", _cmd_cnf, "single-party Clifford normal form")
    sp.add_argument("file")
    sp.add_argument("--circuit", action="store_true", help="also list the operations applied")
    sp.add_argument("--positive", action="store_true", help="flip -X leaders to +X")
    sp = add("overlap", _cmd_overlap, "overlap, Uhlmann fidelity and Bures distance")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp = add("entangle", _cmd_entangle, "EPR pairs across a bipartition")
    sp.add_argument("file")
    sp.add_argument("--partyA", type=_index_list, required=True, help="1-based list, e.g. 1,2")
    sp.add_argument("--measure", choices=MEASURES, default="logneg")
    sp.add_argument("--normal-form", action="store_true", help="also print the normal form")
    sp = add("random", _cmd_random, "seeded random array of given rank")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("bench", _cmd_bench, "timing medians as CSV (n,k,algo,median_us)")
    sp.add_argument("--sizes", type=_size_list, default=[50, 100, 200],
                    help="comma-separated qubit counts (default 50,100,200)")
    sp.add_argument("--reps", type=int, default=3)
    sp.add_argument("--algos", type=lambda s: [t for t in s.split(",") if t], default=list(ALGOS))
    sp.add_argument("--seed", type=int, default=0)
    sp = add("oracle", _cmd_oracle, "dense-matrix cross-checks (small N only)")
    sp.add_argument("what", choices=sorted(ORACLE_COMMANDS))
    sp.add_argument("files", nargs="*")
    sp.add_argument("--seed", type=int, default=None, help="use random instances instead of files")
    sp.add_argument("--n", type=int, default=4, help="qubits for random instances")
    sp.add_argument("--k", type=int, default=None, help="rank for random instances (default n)")
    sp.add_argument("--qubits", type=_index_list, default=None)
    sp.add_argument("--partyA", type=_index_list, default=None)
    sp.add_argument("--trials", type=int, default=50)
    return p


def _check_options(args):
    if args.command == "bench":
        if args.reps < 1:
            raise UsageError("--reps must be at least 1")
        bad = set(args.algos) - set(ALGOS)
        if bad:
            raise UsageError(f"unknown algorithm(s): {', '.join(sorted(bad))}")
    if args.command == "random" and args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.command == "oracle" and (args.n < 1 or args.trials < 0):
        raise UsageError("--n must be positive and --trials non-negative")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_options(args)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = _Out(args.command, args.json, args.output)
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _Failed:
        out.flush()
        return 1
    except StabiliserError as exc:
        if args.json:
            out.record = {"command": args.command, "error": str(exc)}
            out.flush()
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
