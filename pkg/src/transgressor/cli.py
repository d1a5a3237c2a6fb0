"""Command-line front end: ``transgressor VERB [flags]``.

Exit codes: 0 when every check passes, 1 on a mathematical failure (the
report names a witness), 2 on unreadable or malformed input or when a
space exceeds the size ceiling.  Each run prints a JSON report and, with
``--out DIR``, writes it to ``DIR/report.json`` next to any ``.cch``
artifacts.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import io
from .algebra import AxiomError, inertia_crossed_module, preset_group, trivial_crossed_module
from .cochains import MAX_CELLS_ENV, CellLimitError, SimplexSpace, d_gamma, d_n, random_cochain
from .cohomology import cohomology_group, make_multiplicator, random_cocycle, verify_multiplicator
from .extensions import ExtensionError, build_extension, equivariant_extension
from .transgression import (check_chain_identity, check_T1_anticommutes, tau_map, transgress,
                            transgress_T1_explicit)

VERBS = ("check", "cohomology", "transgress", "multiplicator", "tau", "extend", "identity-suite")


class InputError(Exception):
    """Bad command line or input file (exit code 2)."""


class Run:
    """Collects checks and outputs for one invocation."""

    def __init__(self, verb, out_dir):
        self.verb = verb
        self.out_dir = Path(out_dir) if out_dir else None
        self.inputs = {}
        self.checks = []
        self.outputs = []
        self.results = {}
        self.start = time.perf_counter()

    def digest(self, label, path):
        data = Path(path).read_bytes()
        self.inputs[label] = {"path": str(path), "sha256": hashlib.sha256(data).hexdigest()}

    def check(self, name, passed, witness=None, **info):
        entry = {"name": name, "status": "PASS" if passed else "FAIL"}
        entry.update(info)
        if not passed:
            entry["witness"] = witness if witness is not None else "unavailable"
        self.checks.append(entry)
        return passed

    def residual(self, name, cochain):
        """A check that passes iff ``cochain`` vanishes."""
        norm = int(cochain.coeffs.norm(cochain.values).max(initial=0))
        return self.check(name, cochain.is_zero(), cochain.witness(), max_norm=norm,
                          cells=int(cochain.space.size))

    def write_cochain(self, name, cochain):
        if self.out_dir is None:
            return
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / f"{name}.cch"
        io.write_cch(path, cochain)
        self.outputs.append(str(path))

    def write_text(self, name, text):
        if self.out_dir is None:
            return
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / name
        path.write_text(text)
        self.outputs.append(str(path))

    @property
    def passed(self):
        return all(c["status"] == "PASS" for c in self.checks)

    def report(self):
        return {
            "verb": self.verb,
            "status": "PASS" if self.passed else "FAIL",
            "inputs": self.inputs,
            "results": self.results,
            "checks": self.checks,
            "outputs": self.outputs,
            "wall_time_s": round(time.perf_counter() - self.start, 3),
        }


# -- input loading -----------------------------------------------------------

def _load_xmod(run, source):
    if source is None:
        raise InputError("--xmod is required")
    if source.startswith("inertia:"):
        try:
            return inertia_crossed_module(preset_group(source.split(":", 1)[1]))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    run.digest("xmod", source)
    return io.read_xmod(source)


def _load_group(run, source):
    if Path(source).exists():
        run.digest("grp", source)
        return io.read_grp(source)
    try:
        return preset_group(source)
    except ValueError:
        raise InputError(f"no such file or preset: {source}") from None


def _load_cocycle(run, path, cm):
    if path is None:
        raise InputError("--cocycle is required")
    run.digest("cocycle", path)
    return io.read_cch(path, cm)


def _need_n(args):
    if args.n is None:
        raise InputError("--n is required")
    if args.n < 2:
        raise InputError("--n must be at least 2")
    return args.n


def _inject(cm):
    """Overwrite the last action entry with the next element of N."""
    x, g = cm.N.order - 1, cm.Gamma.order - 1
    value = (int(cm.act[x, g]) + 1) % cm.N.order
    return cm.with_action_entry(x, g, value), {"x": x, "g": g, "value": value}


# -- verbs -------------------------------------------------------------------

def cmd_check(run, args):
    if args.grp is None and args.xmod is None:
        raise InputError("check needs --grp or --xmod")
    try:
        if args.grp is not None:
            G = _load_group(run, args.grp)
            run.results["group"] = {"order": G.order}
        if args.xmod is not None:
            cm = _load_xmod(run, args.xmod)
            run.results["xmod"] = {"N": cm.N.order, "Gamma": cm.Gamma.order}
        run.check("axioms", True)
    except AxiomError as exc:
        run.check("axioms", False, {"message": str(exc), "elements": list(exc.witness)})


def cmd_cohomology(run, args):
    n = _need_n(args)
    if args.grp is not None:
        cm = trivial_crossed_module(_load_group(run, args.grp))
    else:
        cm = _load_xmod(run, args.xmod)
    k = args.k or 0
    top = 3 if args.depth is None else args.depth
    groups = {}
    for p in range(top + 1):
        H = cohomology_group(cm, k, p, n)
        groups[str(p)] = {"factors": list(H.factors), "order": H.order, "method": H.method}
    run.results.update({"k": k, "n": n, "H": groups})
    run.check("computed", True)


def cmd_transgress(run, args):
    cm = _load_xmod(run, args.xmod)
    omega = _load_cocycle(run, args.cocycle, cm)
    if omega.shape[0] != 0:
        raise InputError("--cocycle must be a Gamma-cochain (k = 0)")
    k = 1 if args.k is None else args.k
    p = omega.shape[1]
    if not 0 <= k <= p:
        raise InputError(f"--k must lie in 0..{p}")
    T = transgress(omega, k)
    run.results.update({"k": k, "degree": p, "shape": list(T.shape), "nonzero": int(T.support().size)})
    if k == 1:
        run.residual("shuffle_sum_equals_explicit_T1", T - transgress_T1_explicit(omega))
    else:
        run.check("computed", True)
    run.write_cochain(f"T{k}", T)


def cmd_multiplicator(run, args):
    cm = _load_xmod(run, args.xmod)
    e = _load_cocycle(run, args.cocycle, cm)
    if e.shape != (0, 3):
        raise InputError("--cocycle must be a 3-cochain on Gamma")
    if not run.residual("cocycle", d_gamma(e)):
        return
    m = make_multiplicator(e, check=False)
    rep = verify_multiplicator(m)
    for name, res in rep.residuals.items():
        run.residual(name, res)
    for name, coch in (("c", m.c), ("b", m.b), ("a", m.a)):
        run.write_cochain(name, coch)


def cmd_tau(run, args):
    cm = _load_xmod(run, args.xmod)
    c = _load_cocycle(run, args.cocycle, cm)
    if c.shape != (0, 2):
        raise InputError("--cocycle must be a 2-cochain on Gamma")
    if not run.residual("cocycle", d_gamma(c)):
        return
    if len(np.unique(cm.phi)) != cm.N.order:
        raise InputError("tau needs an injective phi")
    tau = tau_map(c, check=False)
    run.residual("tau_plus_T1", tau + transgress(c, 1))
    run.write_cochain("tau", tau)


def cmd_extend(run, args):
    if args.grp is not None:
        G = _load_group(run, args.grp)
        cm = trivial_crossed_module(G)
    else:
        cm = _load_xmod(run, args.xmod)
    c = _load_cocycle(run, args.cocycle, cm)
    if c.shape == (0, 2):
        try:
            E = build_extension(cm.Gamma, c)
        except ExtensionError as exc:
            run.check("cocycle", False, {"message": str(exc), "triple": list(exc.witness)})
            return
        run.check("cocycle", True)
        run.results["extension"] = {"order": E.group.order, "exponent": E.group.exponent()}
        header = [f"central extension by Z/{c.n}", f"cocycle: {args.cocycle}"]
        run.write_text("extension.grp", io.format_grp(E.group, header))
    elif c.shape == (1, 2):
        if not run.residual("cocycle", d_gamma(c)):
            return
        X = equivariant_extension(cm, c)
        run.results["equivariant"] = {"H_arrows": X.H.num_arrows,
                                      "crossed_arrows": X.crossed.num_arrows,
                                      "crossed_pairs": X.crossed.num_pairs}
        for name, entry in X.checks.items():
            run.check(name, entry["passed"], entry.get("witness"), cases=entry["cases"])
    else:
        raise InputError("--cocycle must have shape (0, 2) or (1, 2)")


def cmd_identity_suite(run, args):
    cm = _load_xmod(run, args.xmod)
    n = _need_n(args)
    depth = 2 if args.depth is None else args.depth
    seed = 0 if args.seed is None else args.seed
    if args.inject_fault:
        cm, fault = _inject(cm)
        run.results["fault"] = fault
    rng = np.random.default_rng(seed)

    def draw(k, l):
        return random_cochain(SimplexSpace(cm, k, l), n, int(rng.integers(2**31)))

    for k in range(depth + 1):
        for l in range(depth + 1 - k):
            w = draw(k, l)
            run.residual(f"dd=0 ({k},{l})", d_gamma(d_gamma(w)))
            run.residual(f"d'd'=0 ({k},{l})", d_n(d_n(w)))
            run.residual(f"dd'=d'd ({k},{l})", d_gamma(d_n(w)) - d_n(d_gamma(w)))
    for k in range(depth + 1):
        for p in range(k, depth + 2):
            run.residual(f"chain_identity k={k} p={p}", check_chain_identity(draw(0, p), k))
    for p in range(1, depth + 2):
        run.residual(f"T1d+dT1=0 p={p}", check_T1_anticommutes(draw(0, p)))
    if len(np.unique(cm.phi)) == cm.N.order:
        c = random_cocycle(cm, 0, 2, n, seed)
        run.residual("tau+T1=0", tau_map(c, check=False) + transgress(c, 1))
    e = random_cocycle(cm, 0, 3, n, seed)
    rep = verify_multiplicator(make_multiplicator(e, check=False))
    for name, res in rep.residuals.items():
        run.residual(f"multiplicator {name}", res)


COMMANDS = {
    "check": cmd_check,
    "cohomology": cmd_cohomology,
    "transgress": cmd_transgress,
    "multiplicator": cmd_multiplicator,
    "tau": cmd_tau,
    "extend": cmd_extend,
    "identity-suite": cmd_identity_suite,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="transgressor",
                                     description="Exact cochain computations for finite crossed modules.")
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("--xmod", help="crossed module file, or inertia:<preset> (e.g. inertia:S3)")
    parser.add_argument("--grp", help="group file or preset name (Z4, S3, D4, Q8, ...)")
    parser.add_argument("--cocycle", help="cochain file (.cch)")
    parser.add_argument("--n", type=int, help="coefficient modulus")
    parser.add_argument("--k", type=int, help="N-degree")
    parser.add_argument("--depth", type=int, help="degree bound")
    parser.add_argument("--seed", type=int, help="seed for random cochains")
    parser.add_argument("--max-cells", type=int, help=f"size ceiling (overrides ${MAX_CELLS_ENV})")
    parser.add_argument("--out", help="directory for report.json and artifacts")
    parser.add_argument("--inject-fault", action="store_true",
                        help="corrupt one action-table entry before running")
    return parser


def run(argv=None):
    """Run one command; returns ``(report, exit_code)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, 2 if exc.code else 0
    if args.max_cells is not None and args.max_cells < 1:
        return {"verb": args.verb, "status": "ERROR", "error": "--max-cells must be positive"}, 2
    saved = os.environ.get(MAX_CELLS_ENV)
    if args.max_cells is not None:
        os.environ[MAX_CELLS_ENV] = str(args.max_cells)
    try:
        return _dispatch(args)
    finally:
        if args.max_cells is not None:
            if saved is None:
                del os.environ[MAX_CELLS_ENV]
            else:
                os.environ[MAX_CELLS_ENV] = saved


def _dispatch(args):
    r = Run(args.verb, args.out)
    try:
        COMMANDS[args.verb](r, args)
    except (InputError, io.FormatError, OSError, CellLimitError, AxiomError, ValueError) as exc:
        report = r.report()
        report["status"] = "ERROR"
        report["error"] = f"{type(exc).__name__}: {exc}"
        return report, 2
    report = r.report()
    if r.out_dir is not None:
        r.out_dir.mkdir(parents=True, exist_ok=True)
        report["outputs"].append(str(r.out_dir / "report.json"))
        (r.out_dir / "report.json").write_text(json.dumps(report, indent=2) + "\n")
    return report, 0 if r.passed else 1


def main(argv=None):
    report, code = run(argv)
    if report is not None:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
