"""Command-line front end.

Subcommands ``verify``, ``character``, ``critical``, ``cohomology`` and
``probe``.  Options may also come from a JSON config (``--config``) whose
keys are the long option names; rationals are ``"p/q"`` strings.  Exit
codes: 0 success, 1 a verification failure was found, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time

from .action import DKAction, structure_suite
from .affine import FermionicRealization, IrreducibleRealization, VermaRealization
from .chiral import ChiralComplex, chiral_generators
from .core import Q, qstr
from .critical import critical_solve, is_exceptional
from .fermion import embed_virasoro_check
from .fock import FockSpace
from .glrep import GlModule, beta_value, exterior_power, h_from_beta, trivial_module
from .pairing import character_certify
from .suites import (clifford_suite, glbrak_suite, heis_suite, omega_fer_suite, omega_gl_suite,
                     omega_hyp_suite, omega_total_suite, relvir_suite)
from .tensmod import probe_closure, submodule_probe


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------- config

def _rational(field: str, text) -> object:
    try:
        return Q(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"{field}: not a rational: {text!r}") from exc


def _range(field: str, text) -> list:
    """``"a..b"``, ``"a"`` or ``"a,b,c"`` as a list of ints."""
    text = str(text).strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"{field}: expected a range like 0..2, got {text!r}") from exc


class Session:
    """Validated session configuration."""

    def __init__(self, args):
        if args.n is None or args.n < 1:
            raise ConfigError(f"n: must be a positive integer, got {args.n!r}")
        self.N = N = args.n
        if args.gamma is None:
            self.gamma = tuple(Q(0) for _ in range(N))
        else:
            parts = [p for p in str(args.gamma).split(",") if p.strip()]
            if len(parts) == 1:
                parts = parts * N
            if len(parts) != N:
                raise ConfigError(f"gamma: expected {N} entries, got {len(parts)}")
            self.gamma = tuple(_rational("gamma", p) for p in parts)
        for name in ("degree", "rcut"):
            v = getattr(args, name, None)
            if v is not None and v < 0:
                raise ConfigError(f"{name}: must be >= 0, got {v}")
        if getattr(args, "workers", None) is not None and args.workers < 1:
            raise ConfigError(f"workers: must be >= 1, got {args.workers}")
        self.realization_name, self.fer_k = self._realization(args.realization)
        self.W = self._module(args)
        if args.h is not None and args.beta is not None:
            raise ConfigError("h, beta: give exactly one of them")
        if self.fer_k is not None:
            self.h = Q(0)
        elif args.beta is not None:
            self.h = h_from_beta(self.W, _rational("beta", args.beta))
        else:
            self.h = _rational("h", args.h if args.h is not None else 0)
        self.beta = beta_value(self.W, self.h)
        self.degree = args.degree
        self.rcut = args.rcut

    @staticmethod
    def _realization(text):
        text = (text or "verma").strip()
        if text in ("verma", "irreducible"):
            return text, None
        if text.startswith("fermionic"):
            _, _, k = text.partition(":")
            try:
                return "fermionic", int(k) if k else 0
            except ValueError as exc:
                raise ConfigError(f"realization: bad fermionic degree {k!r}") from exc
        raise ConfigError(f"realization: expected verma, irreducible or fermionic:k, got {text!r}")

    def _module(self, args) -> GlModule:
        N = self.N
        if self.fer_k is not None:
            return FermionicRealization(N, self.fer_k).top_module()
        spec = (args.w or "ext:0").strip()
        alpha = _rational("alpha", args.alpha) if args.alpha is not None else None
        if spec.startswith("ext:"):
            try:
                k = int(spec[4:])
            except ValueError as exc:
                raise ConfigError(f"w: bad exterior degree in {spec!r}") from exc
            if not 0 <= k <= N:
                raise ConfigError(f"w: exterior degree must be in 0..{N}")
            if k == 0:
                return trivial_module(N, alpha if alpha is not None else 0)
            return exterior_power(N, k, alpha)
        try:
            with open(spec) as fh:
                obj = json.load(fh)
            W = GlModule.from_json(obj)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"w: cannot read module file {spec!r}: {exc}") from exc
        if W.N != N:
            raise ConfigError(f"w: module has rank {W.N}, expected {N}")
        return W

    def realization(self):
        if self.fer_k is not None:
            return FermionicRealization(self.N, self.fer_k)
        if self.realization_name == "irreducible":
            return IrreducibleRealization(self.W, self.h)
        return VermaRealization(self.W, self.h)

    def as_dict(self) -> dict:
        return {"n": self.N, "gamma": [qstr(g) for g in self.gamma], "alpha": qstr(self.W.alpha),
                "w_dim": self.W.d, "h": qstr(self.h), "beta": qstr(self.beta),
                "realization": self.realization_name + ("" if self.fer_k is None else f":{self.fer_k}")}


# ---------------------------------------------------------------- commands

def run_verify(session: Session, args) -> tuple:
    N, D = session.N, session.degree if session.degree is not None else 2
    suites = []

    def record(rep, t0):
        rep = dict(rep)
        rep["failed"] = len(rep["failures"])
        rep["failures"] = rep["failures"][:20]
        if args.timing:
            rep["seconds"] = round(time.time() - t0, 3)
        suites.append(rep)

    t0 = time.time()
    record(heis_suite(N, min(D + 1, 4), gamma=session.gamma), t0)
    t0 = time.time()
    record(clifford_suite(N, D), t0)
    t0 = time.time()
    record(relvir_suite(session.h, D), t0)
    t0 = time.time()
    record(omega_hyp_suite(N, D), t0)
    t0 = time.time()
    record(omega_fer_suite(N, D), t0)
    if session.fer_k is None:
        t0 = time.time()
        C = VermaRealization(session.W, session.h)
        record(glbrak_suite(C, N, [k for d in range(D + 1) for k in C.basis(d)]), t0)
        t0 = time.time()
        record(omega_gl_suite(session.W, session.h, D), t0)
        t0 = time.time()
        record(omega_total_suite(session.W, session.h, D), t0)
    t0 = time.time()
    ok = embed_virasoro_check(N)
    record({"suite": "embed_virasoro", "cases": 1, "failures": [] if ok else [{"n": N}]}, t0)
    t0 = time.time()
    action = DKAction(FockSpace(N, session.gamma), session.realization())
    rep = structure_suite(action, D, workers=args.workers or 1)
    record({"suite": "structure_constants", "cases": rep["cases"], "failures": rep["failures"]}, t0)
    if session.fer_k is not None:
        t0 = time.time()
        cx = ChiralComplex(N, session.gamma)
        keys = [k for kk in range(-N - 1, N + 2) for m in range(D + 1) for k in cx.basis(kk, m)]
        rep = cx.d_squared_check(keys)
        record({"suite": "chiral_d_squared", "cases": rep["cases"], "failures": rep["failures"]}, t0)
        t0 = time.time()
        rep = cx.homomorphism_check(chiral_generators(N), keys)
        record({"suite": "chiral_homomorphism", "cases": rep["cases"], "failures": rep["failures"]}, t0)
    passed = all(not s["failed"] for s in suites)
    report = {"command": "verify", "config": session.as_dict(), "degree": D, "suites": suites, "passed": passed}
    rows = [{"suite": s["suite"], "cases": s["cases"], "failures": s["failed"]} for s in suites]
    return report, rows, (0 if passed else 1)


def run_character(session: Session, args) -> tuple:
    window = _range("window", args.window or "0..2")
    mus = _range("mu-window", args.mu_window or "-2..2")
    R = session.rcut
    real = session.realization() if session.fer_k is not None else IrreducibleRealization(session.W, session.h)
    rows = []
    from .pairing import DualPair
    pair = DualPair(session.W, session.gamma, session.h)
    from itertools import product
    for m in window:
        for mu in product(mus, repeat=session.N):
            cert = character_certify(session.W, session.gamma, session.h, m, mu,
                                     R=R if R is not None else m + 2, realization=real, pair=pair)
            row = {"m": m, "mu": ",".join(str(x) for x in mu), "fock_dim": cert.fock_dim,
                   "gram_rank": cert.rank, "certified": cert.certified, "status": cert.status,
                   "cutoff": cert.cutoff}
            if cert.witness is not None:
                row["witness"] = cert.witness["side"]
            rows.append(row)
    config = session.as_dict()
    if session.fer_k is None:
        config["realization"] = "irreducible"
    report = {"command": "character", "config": config,
              "exceptional": is_exceptional(session.W, session.h), "rows": rows}
    return report, rows, 0


def run_critical(session: Session, args) -> tuple:
    ms = _range("m", args.m or "1")
    mu = tuple(_range("mu", args.mu)) if args.mu else (0,) * session.N
    if len(mu) != session.N:
        raise ConfigError(f"mu: expected {session.N} entries")
    real = session.realization() if args.realization else IrreducibleRealization(session.W, session.h)
    rows = []
    for m in ms:
        if m < 1:
            raise ConfigError("m: critical search needs m >= 1")
        res = critical_solve(real, m, mu, session.gamma)
        rows.append({"m": m, "mu": ",".join(str(x) for x in mu), "space_dim": len(res.basis_keys),
                     "dim": res.dim, "vectors": " | ".join(res.readable(i) for i in range(res.dim))})
    config = session.as_dict()
    if not args.realization:
        config["realization"] = "irreducible"
    report = {"command": "critical", "config": config, "realization": real.name,
              "exceptional": is_exceptional(session.W, session.h), "rows": rows}
    return report, rows, 0


def run_cohomology(session: Session, args) -> tuple:
    window = _range("window", args.window or "0..1")
    N = session.N
    ks = _range("k", args.k) if args.k else list(range(-1, N + 2))
    mu = tuple(_range("mu", args.mu)) if args.mu else (0,) * N
    if len(mu) != N:
        raise ConfigError(f"mu: expected {N} entries")
    cx = ChiralComplex(N, session.gamma)
    rows = []
    for m in window:
        for k in ks:
            rec = cx.cohomology_dims(k, m, mu)
            rows.append({"k": k, "m": m, "mu": ",".join(str(x) for x in mu), "dim": rec.dim,
                         "dim_ker": rec.dim_ker, "dim_im": rec.dim_im, "betti": rec.betti})
    totals = {str(k): sum(r["betti"] for r in rows if r["k"] == k) for k in ks}
    report = {"command": "cohomology", "config": session.as_dict(),
              "window": [window[0], window[-1]], "rows": rows, "betti_totals": totals}
    return report, rows, 0


def run_probe(session: Session, args) -> tuple:
    sols = submodule_probe(session.W)
    closed = probe_closure(session.W, sols, session.gamma) if sols else True
    rows = [{"index": i, "solution": "; ".join(",".join(qstr(x) for x in wb) for wb in sol)}
            for i, sol in enumerate(sols)]
    report = {"command": "probe", "config": session.as_dict(), "dim": len(sols), "closed": closed, "rows": rows}
    return report, rows, 0 if closed else 1


COMMANDS = {"verify": run_verify, "character": run_character, "critical": run_critical,
            "cohomology": run_cohomology, "probe": run_probe}


# ---------------------------------------------------------------- output

def render(report: dict, rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            fields = []
            for r in rows:
                fields += [k for k in r if k not in fields]
            w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow(r)
        return buf.getvalue()
    lines = [f"{report['command']}: " + " ".join(f"{k}={v}" for k, v in sorted(report["config"].items()))]
    for r in rows:
        lines.append("  " + "  ".join(f"{k}={v}" for k, v in r.items()))
    if "passed" in report:
        lines.append("PASS" if report["passed"] else "FAIL")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torusrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file with option values")
        p.add_argument("--n", type=int)
        p.add_argument("--gamma", help="comma-separated rationals (one value is broadcast)")
        p.add_argument("--w", help="ext:k or a JSON module file")
        p.add_argument("--alpha", help="identity scalar of an exterior-power top")
        p.add_argument("--h")
        p.add_argument("--beta")
        p.add_argument("--realization", help="verma | irreducible | fermionic:k")
        p.add_argument("--degree", type=int)
        p.add_argument("--rcut", type=int)
        p.add_argument("--window", help="degree range a..b")
        p.add_argument("--mu-window", dest="mu_window", help="weight offset range a..b")
        p.add_argument("--m", help="degree or range for critical search")
        p.add_argument("--mu", help="comma-separated weight offset")
        p.add_argument("--k", help="fermionic degrees for cohomology")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=["json", "csv", "text"], default="json")
        p.add_argument("--timing", action="store_true", help="include wall times (not deterministic)")
        p.add_argument("--workers", type=int, help="processes for the structure-constant suite")
    return parser


def _apply_config(args, parser) -> None:
    if not args.config:
        return
    try:
        with open(args.config) as fh:
            obj = json.load(fh)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"config: cannot read {args.config!r}: {exc}") from exc
    if not isinstance(obj, dict):
        raise ConfigError("config: top level must be an object")
    known = {a.dest for a in parser._subparsers._group_actions[0].choices[args.command]._actions}
    for key, value in obj.items():
        dest = key.replace("-", "_")
        if dest not in known or dest in ("config", "help"):
            raise ConfigError(f"config: unknown field {key!r}")
        if getattr(args, dest) is None:
            if dest in ("n", "degree", "rcut", "workers"):
                if not isinstance(value, int) or isinstance(value, bool):
                    raise ConfigError(f"config field {key!r}: expected an integer")
            elif isinstance(value, list):
                value = ",".join(str(v) for v in value)
            elif not isinstance(value, bool):
                value = str(value)
            setattr(args, dest, value)


_NEG_RATIONAL = re.compile(r"^-\d+(/\d+)?$")


def _join_negative_values(argv: list) -> list:
    """``--beta -1/2`` becomes ``--beta=-1/2`` (argparse only accepts plain negative ints)."""
    out = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEG_RATIONAL.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else 2
    try:
        _apply_config(args, parser)
        session = Session(args)
        report, rows, code = COMMANDS[args.command](session, args)
    except ConfigError as exc:
        print(f"torusrep: error: {exc}", file=sys.stderr)
        return 2
    text = render(report, rows, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
