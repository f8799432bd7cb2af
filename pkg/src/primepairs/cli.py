"""Command-line front end: ``primepairs <subcommand> ...``.

Data goes to stdout, diagnostics to stderr. Exit status is 0 on success,
2 on argument errors and 3 when a value does not fit the 128-bit range.
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

from . import constants as K
from .cache import ConstantCache, default_cache_dir
from .counting import count_pairs, table_report, theta
from .meanvalue import mean_S, residual_R
from .primes import RepresentationError
from .residues import OffsetPolynomial, PairFamily, three_primes_below

EXIT_OK, EXIT_USAGE, EXIT_OVERFLOW = 0, 2, 3

TABLE1_XS = [10**i for i in range(1, 9)]
TABLE1_CONSTANT = 1.6916
TABLE3_QS = [2, 4, 8, 16, 3, 9, 24, 6, 10, 12, 18, 14, 20, 22]
TABLE4_QS = [2, 4, 16, 6, 8, 10, 12, 18, 14, 20, 22, 24]


@dataclass
class RunConfig:
    truncation: int = K.DEFAULT_TRUNCATION
    sieve_limit: int = 10**8
    output_format: str = "csv"
    cache_dir: Path | None = None
    threads: int = 1
    use_cache: bool = True

    def __post_init__(self):
        if self.truncation < 3:
            raise ValueError("truncation bound P must be >= 3")
        if self.sieve_limit < 2:
            raise ValueError("sieve limit must be >= 2")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


class _Session:
    def __init__(self, cfg: RunConfig, out):
        self.cfg = cfg
        self.out = out
        self.cache = ConstantCache(cfg.cache_dir) if cfg.use_cache else None

    def c(self, k, two_r, P=None):
        P = P or self.cfg.truncation
        compute = lambda: K.c_constant(PairFamily(k, two_r), P)  # noqa: E731
        return self.cache.get_or_compute("C", k, two_r, P, compute) if self.cache is not None else compute()

    def gamma(self, k, q, P=None):
        P = P or self.cfg.truncation
        compute = lambda: K.gamma_constant(OffsetPolynomial(k, q), P)  # noqa: E731
        return self.cache.get_or_compute("gamma", k, q, P, compute) if self.cache is not None else compute()

    def emit(self, header, rows):
        fmt = self.cfg.output_format
        if fmt == "markdown":
            self.out.write("| " + " | ".join(header) + " |\n")
            self.out.write("|" + "|".join("---" for _ in header) + "|\n")
            for row in rows:
                self.out.write("| " + " | ".join(str(v) for v in row) + " |\n")
            return
        writer = csv.writer(self.out, delimiter="\t" if fmt == "tsv" else ",", lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _fmt(x: float, digits: int) -> str:
    return "0" if x == 0 else f"{x:.{digits}f}"


def _estimate_row(est):
    return [repr(est.value), est.factors_used, int(est.vanished), int(est.reducible)]


def cmd_constant(s: _Session, a):
    f = PairFamily(a.k, a.two_r)
    est = s.c(f.k, f.two_r)
    s.emit(
        ["k", "two_r", "P", "value", "factors_used", "vanished", "reducible", "bh"],
        [[f.k, f.two_r, est.truncation_bound, *_estimate_row(est), repr(2.0 / f.k * est.value)]],
    )


def cmd_gamma(s: _Session, a):
    g = OffsetPolynomial(a.k, a.q)
    est = s.gamma(g.k, g.q)
    s.emit(
        ["k", "q", "P", "value", "factors_used", "vanished", "reducible"],
        [[g.k, g.q, est.truncation_bound, *_estimate_row(est)]],
    )


def cmd_count(s: _Session, a):
    f = PairFamily(a.k, a.two_r)
    n = count_pairs(f, a.x, workers=s.cfg.threads)
    s.emit(["k", "two_r", "x", "pair_count", "theta"], [[f.k, f.two_r, a.x, n, repr(theta(f, a.x))]])


def cmd_table(s: _Session, a):
    P = s.cfg.truncation
    if a.name == "1":
        xs = [x for x in TABLE1_XS if x <= s.cfg.sieve_limit]
        recs = table_report(PairFamily(2, -2), xs, TABLE1_CONSTANT)
        s.emit(
            ["x", "pi^2_{-2}(x)", "L_2(x)", "rho(x)"],
            [[r.x, r.pair_count, r.predicted, f"{r.ratio:.3f}"] for r in recs],
        )
    elif a.name == "2":
        rows = []
        for two_r in range(2, 31, 2):
            rows.append([
                two_r,
                _fmt(s.gamma(2, two_r).value, 2),
                _fmt(s.c(2, two_r).value, 3),
                _fmt(s.gamma(2, -two_r).value, 2),
                _fmt(s.c(2, -two_r).value, 3),
            ])
        s.emit(["2r", "gamma^2_{2r}", "C^2_{2r}", "gamma^2_{-2r}", "C^2_{-2r}"], rows)
    elif a.name == "3":
        bound = a.bound
        rows = [[q, " ".join(map(str, three_primes_below(q, bound)))] for q in TABLE3_QS]
        s.emit(["q", f"3-primes p<{bound}"], rows)
    else:
        rows = [[q, _fmt(s.gamma(3, q).value, 3), _fmt(s.c(3, q).value, 3)] for q in TABLE4_QS]
        s.emit(["q=2r", "gamma^3_q", "C^3_{2r}"], rows)
    if a.name in ("2", "4"):
        print(f"truncation bound P={P}", file=sys.stderr)


def _constant_fn(s: _Session, k):
    return lambda two_r: s.c(k, two_r).value


def cmd_mean(s: _Session, a):
    rep = mean_S(a.k, a.lam, s.cfg.truncation, a.window, constant_fn=_constant_fn(s, a.k))
    s.emit(
        ["k", "lambda", "P", "window", "terms", "sum", "mean", "residual"],
        [[rep.k, rep.lam, rep.truncation_bound, rep.window, rep.terms,
          repr(rep.sum), repr(rep.mean), repr(rep.residual)]],
    )


def cmd_residual(s: _Session, a):
    r = residual_R(a.k, a.lam, s.cfg.truncation, constant_fn=_constant_fn(s, a.k))
    s.emit(["k", "lambda", "P", "residual"], [[a.k, a.lam, s.cfg.truncation, repr(r)]])


def cmd_sweep(s: _Session, a):
    rows = []
    for lam in a.lambdas:
        rep = mean_S(a.k, lam, s.cfg.truncation, constant_fn=_constant_fn(s, a.k))
        rows.append([lam, repr(rep.sum), repr(rep.mean), repr(rep.residual)])
    s.emit(["lambda", "S", "S/lambda", "R"], rows)


def cmd_three_primes(s: _Session, a):
    ps = three_primes_below(a.q, a.bound)
    if s.cfg.output_format == "markdown":
        s.emit(["q", f"3-primes p<{a.bound}"], [[a.q, ", ".join(map(str, ps))]])
    else:
        sep = "\t" if s.cfg.output_format == "tsv" else ","
        s.out.write(sep.join(map(str, ps)) + "\n")


def cmd_cache(s: _Session, a):
    cache = ConstantCache(s.cfg.cache_dir)
    if a.action == "path":
        s.out.write(f"{cache.path}\n")
    elif a.action == "clear":
        n = len(cache)
        cache.clear()
        print(f"removed {n} cached constants", file=sys.stderr)
    elif cache.path.exists():
        s.out.write(cache.path.read_text())


def _int(text: str) -> int:
    """Integer argument that also accepts 1e6 and 10**6."""
    text = text.strip()
    try:
        if "**" in text:
            b, e = text.split("**")
            return int(b) ** int(e)
        if "e" in text.lower():
            mant, exp = text.lower().split("e")
            return int(mant) * 10 ** int(exp)
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _int_list(text: str) -> list[int]:
    return [_int(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-P", "--truncation", type=_int, default=argparse.SUPPRESS,
                        help="largest prime in truncated Euler products (default 10**6)")
    common.add_argument("--sieve-limit", type=_int, default=argparse.SUPPRESS)
    common.add_argument("--format", dest="output_format", choices=["csv", "tsv", "markdown"],
                        default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", type=Path, default=argparse.SUPPRESS)
    common.add_argument("--no-cache", dest="use_cache", action="store_false", default=argparse.SUPPRESS)
    common.add_argument("--threads", type=_int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="primepairs", parents=[common],
                                     description="Prime-pair constants and counts for (p, p^k + 2r).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constant", parents=[common], help="C^k_{2r} for the pair (p, p^k+2r)")
    p.add_argument("--k", type=_int, required=True)
    p.add_argument("--two-r", type=_int, required=True)
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("gamma", parents=[common], help="gamma^k_q for n^k + q")
    p.add_argument("--k", type=_int, required=True)
    p.add_argument("--q", type=_int, required=True)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("count", parents=[common], help="count primes p <= x with p^k+2r prime")
    p.add_argument("--k", type=_int, required=True)
    p.add_argument("--two-r", type=_int, required=True)
    p.add_argument("--x", type=_int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", parents=[common], help="reproduce one of the four tables")
    p.add_argument("--name", choices=["1", "2", "3", "4"], required=True)
    p.add_argument("--bound", type=_int, default=500, help="prime bound for table 3")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("mean", parents=[common], help="windowed mean of C^k_{2r}")
    p.add_argument("--k", type=_int, required=True)
    p.add_argument("--lambda", dest="lam", type=_int, required=True)
    p.add_argument("--window", choices=["both", "positive"], default="both")
    p.set_defaults(func=cmd_mean)

    p = sub.add_parser("three-primes", parents=[common], help="primes p < bound where q is a nonzero cube")
    p.add_argument("--q", type=_int, required=True)
    p.add_argument("--bound", type=_int, required=True)
    p.set_defaults(func=cmd_three_primes)

    p = sub.add_parser("residual", parents=[common], help="kernel-weighted residual R_k(lambda)")
    p.add_argument("--k", type=_int, required=True)
    p.add_argument("--lambda", dest="lam", type=_int, required=True)
    p.set_defaults(func=cmd_residual)

    p = sub.add_parser("sweep", parents=[common], help="(lambda, S, S/lambda, R) rows for plotting")
    p.add_argument("--k", type=_int, required=True)
    p.add_argument("--lambdas", type=_int_list, required=True, help="comma-separated")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("cache", parents=[common], help="inspect or clear the constants cache")
    p.add_argument("action", choices=["show", "clear", "path"])
    p.set_defaults(func=cmd_cache)
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    cache_dir = getattr(ns, "cache_dir", None) or default_cache_dir()
    return RunConfig(
        truncation=getattr(ns, "truncation", K.DEFAULT_TRUNCATION),
        sieve_limit=getattr(ns, "sieve_limit", 10**8),
        output_format=getattr(ns, "output_format", "csv"),
        cache_dir=cache_dir,
        threads=getattr(ns, "threads", 1),
        use_cache=getattr(ns, "use_cache", True),
    )


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        session = _Session(_config(ns), out)
        ns.func(session, ns)
    except RepresentationError as exc:
        print(f"primepairs: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (ValueError, TypeError) as exc:
        print(f"primepairs: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
