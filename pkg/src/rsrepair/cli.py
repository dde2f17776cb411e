"""Command-line harness: build a code, inject failures, run repair schemes, report bandwidth.

Exit status: 0 when every verdict passes, 1 on any failed verdict or
cross-scheme disagreement, 2 when the chosen scheme does not apply to the
code, 64 on bad usage.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass

from . import dual_erasure as de
from .cluster_sim import Cluster
from .errors import RepairError, SchemeInapplicable
from .rs_code import CodeParams
from .single_repair import check_eligible
from .tower import make_tower

EX_USAGE = 64
SCHEME_CHOICES = ("naive", "gw", "depth1", "depth2", "all")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    p: int = 2
    m: int = 1
    t: int = 2
    irr: tuple[int, ...] | None = None
    n: int | None = None
    k: int | None = None
    erase: tuple[int, ...] | str = "random"
    scheme: str = "all"
    message: tuple[int, ...] | str = "random"
    seed: int = 0
    trials: int = 1
    json: bool = False

    def to_argv(self) -> list[str]:
        def csv(v):
            return v if isinstance(v, str) else ",".join(map(str, v))

        argv = ["--p", str(self.p), "--m", str(self.m), "--t", str(self.t)]
        if self.irr is not None:
            argv += ["--irr", csv(self.irr)]
        if self.n is not None:
            argv += ["--n", str(self.n)]
        if self.k is not None:
            argv += ["--k", str(self.k)]
        argv += ["--erase", csv(self.erase), "--scheme", self.scheme,
                 "--message", csv(self.message), "--seed", str(self.seed),
                 "--trials", str(self.trials)]
        if self.json:
            argv.append("--json")
        return argv


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _keyword_or_list(*keywords):
    def convert(text):
        return text if text in keywords else _int_list(text)
    return convert


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rsrepair", description="Trace repair of Reed-Solomon codes with one or two erasures.")
    ap.add_argument("--p", type=int, default=2, help="characteristic")
    ap.add_argument("--m", type=int, default=1, help="B = GF(p^m)")
    ap.add_argument("--t", type=int, default=2, help="F = GF(p^(m t))")
    ap.add_argument("--irr", type=_int_list, help="modulus of F, coefficients low-to-high")
    ap.add_argument("--n", type=int, help="code length (default |F|)")
    ap.add_argument("--k", type=int, help="dimension (default n - |B|^(t-1))")
    ap.add_argument("--erase", type=_keyword_or_list("random"), default="random",
                    help="1-based node ids, e.g. 2,3, or 'random'")
    ap.add_argument("--scheme", choices=SCHEME_CHOICES, default="all")
    ap.add_argument("--message", type=_keyword_or_list("random", "zero"), default="random",
                    help="file as k*m*t GF(p) digits (symbol by symbol, low-to-high), 'random' or 'zero'")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=1)
    ap.add_argument("--json", action="store_true", help="one JSON report per line")
    ap.add_argument("--log", metavar="FILE", help="append every run's message log as JSON lines")
    return ap


def parse_config(argv) -> tuple[RunConfig, argparse.Namespace]:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(ns.p, ns.m, ns.t, ns.irr, ns.n, ns.k, ns.erase, ns.scheme,
                    ns.message, ns.seed, ns.trials, ns.json)
    if cfg.seed < 0 or cfg.trials < 1:
        raise UsageError("--seed must be unsigned and --trials positive")
    return cfg, ns


def make_code(cfg: RunConfig) -> CodeParams:
    tower = make_tower(cfg.p, cfg.m, cfg.t, cfg.irr)
    n = tower.q if cfg.n is None else cfg.n
    if not 2 <= n <= tower.q:
        raise UsageError(f"--n must lie in 2..{tower.q}")
    k = n - tower.Q ** (tower.t - 1) if cfg.k is None else cfg.k
    if not 1 <= k < n:
        raise UsageError(f"--k must lie in 1..{n - 1} (default n - |B|^(t-1) = {k} is not usable)")
    return CodeParams(tower, tuple(range(n)), k)


def applicable(code: CodeParams, scheme: str, erasures: int) -> str | None:
    """None when ``scheme`` can repair ``erasures`` failures on ``code``, else the reason."""
    try:
        if scheme == "naive":
            return None if erasures in (1, 2) else "naive repairs one or two failures"
        if scheme == "gw":
            if erasures != 1:
                return "gw repairs exactly one failure"
            check_eligible(code)
            return None
        if erasures != 2:
            return f"{scheme} repairs exactly two failures"
        de.check_applicable(code, scheme)
    except SchemeInapplicable as exc:
        return str(exc)
    return None


def _message(cfg: RunConfig, code: CodeParams, rng: random.Random):
    tower = code.tower
    if cfg.message == "zero":
        return [0] * code.k
    if cfg.message == "random":
        return [rng.randrange(tower.q) for _ in range(code.k)]
    d = tower.m * tower.t
    digits = cfg.message
    if len(digits) != code.k * d or any(not 0 <= x < tower.p for x in digits):
        raise UsageError(f"--message needs {code.k * d} digits in 0..{tower.p - 1}")
    return [tower.F.from_coords(digits[i * d:(i + 1) * d]) for i in range(code.k)]


def _erasures(cfg: RunConfig, code: CodeParams, count: int, rng: random.Random):
    if cfg.erase == "random":
        return sorted(rng.sample(range(1, code.n + 1), count))
    return sorted(cfg.erase)


def _format_row(trial, rep):
    per_rn = "/".join(map(str, rep.total))
    verdict = "pass" if rep.passed else "FAIL"
    erased = ",".join(map(str, rep.erased))
    return (f"{trial:>5}  {rep.scheme:<7} {erased:<9} {per_rn:<11} {rep.scheme_bandwidth:>6} "
            f"{rep.naive_baseline:>6}  {verdict}")


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        cfg, ns = parse_config(argv)
        code = make_code(cfg)
    except SystemExit as exc:
        return exc.code
    except (UsageError, RepairError, ValueError) as exc:
        print(f"rsrepair: {exc}", file=err)
        return EX_USAGE

    if cfg.erase != "random":
        count = len(cfg.erase)
        if count not in (1, 2) or len(set(cfg.erase)) != count or any(
                not 1 <= i <= code.n for i in cfg.erase):
            print(f"rsrepair: --erase needs one or two distinct ids in 1..{code.n}", file=err)
            return EX_USAGE
    else:
        count = 1 if cfg.scheme == "gw" else 2

    if cfg.scheme == "all":
        schemes = [s for s in ("naive", "gw", "depth1", "depth2") if applicable(code, s, count) is None]
    else:
        reason = applicable(code, cfg.scheme, count)
        if reason is not None:
            print(f"rsrepair: scheme {cfg.scheme} inapplicable: {reason}", file=err)
            return 2
        schemes = [cfg.scheme]

    rng = random.Random(cfg.seed)
    log_file = open(ns.log, "a") if ns.log else None
    if not cfg.json:
        print(f"# {code.header()}", file=out)
        print(f"{'trial':>5}  {'scheme':<7} {'erased':<9} {'per-RN':<11} {'total':>6} {'naive':>6}  verdict",
              file=out)
    ok = True
    try:
        for trial in range(cfg.trials):
            try:
                message = _message(cfg, code, rng)
            except UsageError as exc:
                print(f"rsrepair: {exc}", file=err)
                return EX_USAGE
            erased = _erasures(cfg, code, count, rng)
            restored = {}
            for scheme in schemes:
                cluster = Cluster.spawn(code, message)
                cluster.fail(erased)
                rep = cluster.repair(scheme)
                restored[scheme] = tuple(cluster.symbols)
                ok &= rep.passed
                print(rep.to_json() if cfg.json else _format_row(trial, rep), file=out)
                if log_file:
                    log_file.write(cluster.export_log())
            if len(set(restored.values())) > 1:
                ok = False
                print(f"rsrepair: trial {trial}: schemes disagree on recovered symbols", file=err)
    finally:
        if log_file:
            log_file.close()
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
