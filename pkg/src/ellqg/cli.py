"""Command-line interface.

    ellqg eval  <subject> [args]   single evaluations (theta, bracket,
                                   series, rmat, phi_l, cg)
    ellqg suite <names> [flags]    run verification suites, write reports
    ellqg bench [flags]            compare the numba and numpy kernel paths

Exit codes: 0 success / all suites pass, 1 suite failure, 2 usage error,
3 domain error, 4 I/O error.  Reports are deterministic for fixed flags
and seed; wall times go to the console only.
"""

import argparse
import sys
import time

from .errors import DomainError, EllqgError, NonTerminatingError, PoleError
from .params import ModularParams, default_trunc
from .report import fmt_complex, parse_complex

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3, 4


def _cx(text):
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad complex literal {text!r}") from exc


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ellqg",
        description="Elliptic quantum group numerics and verification suites.")
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a single quantity")
    ev.add_argument("subject",
                    choices=["theta", "bracket", "series", "rmat", "phi_l", "cg"])
    ev.add_argument("--q", type=_cx, default=0.5)
    ev.add_argument("--r", type=_cx, default=3.0)
    ev.add_argument("--r-star", type=_cx, default=None)
    ev.add_argument("--trunc", type=int, default=None)
    ev.add_argument("--tol", type=float, default=1e-8)
    ev.add_argument("--u", type=_cx, default=None)
    ev.add_argument("--z", type=_cx, default=None)
    ev.add_argument("--s-dyn", type=_cx, default=None,
                    help="dynamical parameter of the R-matrix")
    ev.add_argument("--starred", action="store_true")
    ev.add_argument("--m", type=int, default=None)
    ev.add_argument("--l", type=int, default=None)
    ev.add_argument("--kind", default=None, help="series kind: 10V9 | ft-check")
    ev.add_argument("--ft-check", action="store_true",
                    help="print both sides of the terminating 10V9 summation")
    ev.add_argument("--alpha", type=_cx, default=0.31 + 0.137j)
    ev.add_argument("--beta", type=_cx, default=-0.82 + 0.274j)
    ev.add_argument("--gamma", type=_cx, default=1.13 + 0.09j)
    ev.add_argument("--delta", type=_cx, default=0.57 - 0.21j)
    ev.add_argument("--s", type=int, default=2)
    ev.add_argument("--l1", type=int, default=None)
    ev.add_argument("--l2", type=int, default=None)
    ev.add_argument("--k", type=int, default=None)
    ev.add_argument("--a", type=_cx, default=0.27 - 0.11j)
    ev.add_argument("--P", type=_cx, default=None)

    su = sub.add_parser("suite", help="run verification suites")
    su.add_argument("names", nargs="+",
                    help="suite names or 'all'")
    su.add_argument("--q", type=_cx, default=0.5)
    su.add_argument("--r", type=_cx, default=3.0)
    su.add_argument("--trunc", type=int, default=None)
    su.add_argument("--tol", type=float, default=1e-8)
    su.add_argument("--samples", type=int, default=None)
    su.add_argument("--seed", type=int, default=0)
    su.add_argument("--out", default=None, help="report file path")
    su.add_argument("--format", choices=["json", "csv", "table"], default="json")

    be = sub.add_parser("bench", help="benchmark the kernel backends")
    be.add_argument("--n", type=int, default=20000, help="calls per kernel")
    be.add_argument("--trunc", type=int, default=None)
    return ap


def _params(args):
    trunc = args.trunc if args.trunc is not None else default_trunc()
    return ModularParams(args.q, args.r, getattr(args, "r_star", None),
                         trunc, args.tol)


class _UsageError(Exception):
    pass


def _require(cond, message):
    if not cond:
        raise _UsageError(message)


def cmd_eval(args):
    from . import cgkit, rmatrix, series
    from .evalrep import phi_l
    from .theta import bracket, theta_big

    pa = _params(args)
    if args.subject == "theta":
        _require(args.z is not None, "eval theta needs --z")
        print(fmt_complex(theta_big(args.z, pa, starred=args.starred)))
    elif args.subject == "bracket":
        _require(args.u is not None, "eval bracket needs --u")
        print(fmt_complex(bracket(args.u, pa, starred=args.starred)))
    elif args.subject == "phi_l":
        _require(args.u is not None and args.l is not None,
                 "eval phi_l needs --u and --l")
        print(fmt_complex(phi_l(args.u, args.l, pa)))
    elif args.subject == "rmat":
        _require(args.u is not None and args.s_dyn is not None,
                 "eval rmat needs --u and --s-dyn")
        b, c, cb, bb = rmatrix.r_entries(args.u, args.s_dyn, pa)
        print("b  =", fmt_complex(b))
        print("c  =", fmt_complex(c))
        print("cb =", fmt_complex(cb))
        print("bb =", fmt_complex(bb))
        print("rho+ =", fmt_complex(rmatrix.rho_plus(args.u, pa)))
    elif args.subject == "series":
        kind = args.kind or "10V9"
        _require(kind == "10V9", f"unknown series kind {kind!r}")
        spec = series.frenkel_turaev_spec(args.alpha, args.beta, args.gamma,
                                          args.delta, args.s, pa)
        lhs = series.elliptic_V(spec)
        print("10V9  =", fmt_complex(lhs))
        if args.ft_check or kind == "10V9":
            rhs = series.frenkel_turaev_rhs(args.alpha, args.beta, args.gamma,
                                            args.delta, args.s, pa)
            print("product =", fmt_complex(rhs))
            print("residual =", repr(abs(lhs - rhs) / max(1.0, abs(rhs))))
    elif args.subject == "cg":
        need = (args.l1, args.l2, args.m, args.k, args.u, args.P)
        _require(all(x is not None for x in need),
                 "eval cg needs --l1 --l2 --s --m --k --u --P")
        spec = cgkit.SingularVectorSpec(args.l1, args.l2, args.s, args.a, pa)
        val = cgkit.cg_closed_form(spec, args.m, args.k, args.u, args.P)
        print(fmt_complex(val))
    return EXIT_OK


def cmd_suite(args):
    from .suites import SUITE_NAMES, run_suite

    names = list(args.names)
    if names == ["all"]:
        names = list(SUITE_NAMES)
    for nm in names:
        if nm not in SUITE_NAMES:
            print(f"error: unknown suite {nm!r}; choose from "
                  f"{', '.join(SUITE_NAMES)} or 'all'", file=sys.stderr)
            return EXIT_USAGE
    trunc = args.trunc if args.trunc is not None else default_trunc()
    reports = []
    for nm in names:
        rep = run_suite(nm, q=args.q, r=args.r, trunc_N=trunc, tol=args.tol,
                        samples=args.samples, seed=args.seed)
        reports.append(rep)
        status = "PASS" if rep.passed else "FAIL"
        print(f"[{status}] {nm}: {len(rep.cases)} cases, {rep.wall_s:.2f}s",
              file=sys.stderr)

    if args.format == "table":
        payload = "".join(rep.to_table() for rep in reports)
    elif args.format == "csv":
        chunks = [reports[0].to_csv()]
        for rep in reports[1:]:
            chunks.append("".join(rep.to_csv().splitlines(True)[1:]))
        payload = "".join(chunks)
    else:
        import json

        payload = json.dumps([rep.as_dict() for rep in reports],
                             indent=2) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(payload)
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_FAIL


def cmd_bench(args):
    from . import backend

    trunc = args.trunc if args.trunc is not None else default_trunc()
    n = args.n
    rows = []
    for name in ("numba", "numpy"):
        try:
            k = backend.load(name)
        except ImportError:
            rows.append((name, None, None))
            continue
        z, p, q4 = 0.3 + 0.1j, 0.015625 + 0j, 0.0625 + 0j
        k.theta_pair(z, p, trunc)  # warm any jit
        k.qpoch2(z, p, q4, trunc)
        t0 = time.perf_counter()
        for _ in range(n):
            k.theta_pair(z, p, trunc)
        t1 = time.perf_counter()
        for _ in range(max(1, n // 20)):
            k.qpoch2(z, p, q4, trunc)
        t2 = time.perf_counter()
        rows.append((name, (t1 - t0) / n * 1e6,
                     (t2 - t1) / max(1, n // 20) * 1e6))
    print(f"kernel timings, trunc_N={trunc} ({args.n} calls)")
    print(f"{'backend':8s} {'theta_pair us':>14s} {'qpoch2 us':>12s}")
    for name, t_theta, t_q2 in rows:
        if t_theta is None:
            print(f"{name:8s} {'unavailable':>14s}")
        else:
            print(f"{name:8s} {t_theta:14.2f} {t_q2:12.2f}")
    return EXIT_OK


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "suite":
            return cmd_suite(args)
        if args.command == "bench":
            return cmd_bench(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, PoleError, NonTerminatingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except EllqgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
