"""Command-line front end.

Exit status: 0 success, 1 usage or domain error, 2 a verification failed.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import grid, mub, propagator, report, weyl
from .exceptions import DomainError, VerificationError

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_n_list(text: str) -> list[int]:
    """``7``, ``3,5,7`` or an inclusive range ``2:64``."""
    out = []
    for part in text.split(","):
        if ":" in part:
            lo, hi = part.split(":")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def parse_potential(text: str | None, n: int | None = None):
    """``free``, ``harmonic[:k]``, ``quartic[:g]`` or ``file:PATH``.

    A sample file holds N lines, one real per line, for labels
    ``-(N-1)/2`` upward.
    """
    if text is None or text == "free":
        return None
    tag, _, arg = text.partition(":")
    if tag == "harmonic":
        return grid.harmonic(float(arg) if arg else 1.0)
    if tag == "quartic":
        return grid.quartic(float(arg) if arg else 1.0)
    if tag == "file":
        with open(arg) as fh:
            vals = [float(line) for line in fh if line.strip()]
        if n is not None and len(vals) != n:
            raise DomainError(f"potential file {arg} has {len(vals)} values, expected {n}")
        return np.array(vals)
    raise DomainError(f"unknown potential {text!r}")


def _complex_cols(prefix: str, z: complex) -> dict:
    return {f"{prefix}_re": z.real, f"{prefix}_im": z.imag}


def _units(args) -> dict:
    return {"a": args.a, "m": args.m, "hbar": args.hbar}


def _write(args, rows, doc=None) -> None:
    text = report.render_json(doc if doc is not None else rows) if args.out == "json" else report.render_csv(rows)
    report.emit(text, args.output, sys.stdout)


def _gnuplot_script(rows: list[dict], xcol: str, ycols: list[str], logy: bool) -> str:
    lines = ["# generated by weylpath", "$data << EOD"]
    for row in rows:
        lines.append(" ".join(report.fmt_real(row[c]) for c in [xcol, *ycols]))
    lines.append("EOD")
    if logy:
        lines.append("set logscale y")
    lines.append(f"set xlabel '{xcol}'")
    plots = [f"$data using 1:{i + 2} with linespoints title '{c}'" for i, c in enumerate(ycols)]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_weyl(args) -> bool:
    rows = []
    for n in parse_n_list(args.n):
        q, p, s = weyl.build_generators(n)
        w = weyl.omega(n)
        eye = np.eye(n)
        rows.append(
            {
                "n": n,
                "commutator_dev": float(np.max(np.abs(p @ q - w * q @ p))),
                "p_power_dev": float(np.max(np.abs(np.linalg.matrix_power(p, n) - eye))),
                "q_power_dev": float(np.max(np.abs(np.linalg.matrix_power(q, n) - eye))),
                "dft_dev": float(np.max(np.abs(s.conj().T @ p @ s - q))),
            }
        )
        rows[-1]["pass"] = max(v for k, v in rows[-1].items() if k != "n") <= args.tol
    _write(args, rows)
    return all(r["pass"] for r in rows)


def cmd_gauss(args) -> bool:
    spec = propagator.GaussSumSpec(args.a, args.b, args.c)
    direct = propagator.gauss_sum_direct(spec)
    recip = propagator.gauss_sum_reciprocal(spec)
    diff = abs(direct - recip)
    ok = diff <= args.tol
    row = {"a": spec.a, "b": spec.b, "c": spec.c}
    row |= _complex_cols("direct", direct) | _complex_cols("reciprocal", recip)
    row |= {"abs_diff": diff, "pass": ok}
    _write(args, [row])
    return ok or not args.verify


def cmd_propagate(args) -> bool:
    n = args.n
    kind = propagator.EvolutionKind.parse(args.kind)
    pot = parse_potential(args.potential, n)
    targets = [args.rhot] if args.rhot is not None else list(range(n))
    if pot is None:
        step = propagator.step_position_matrix(n, kind)
    else:
        if kind.tag != "CN2":
            raise DomainError("a potential requires --kind cn2")
        g = grid.GridSpec(n, **_units(args))
        w = grid.sample_potential(g, pot).by_position_label()
        step = propagator.potential_step_matrix(n, w)
    step_dev = float(np.max(np.abs(np.abs(step) - 1 / np.sqrt(n))))
    power = np.linalg.matrix_power(step, args.tau)
    rows = []
    for rt in targets:
        if pot is None:
            routes = propagator.multi_step_methods(n, args.tau, args.rho0, rt, kind)
        else:
            propagator._check_labels(n, args.rho0, rt)
            routes = {"matrix_power": complex(power[rt, args.rho0])}
            if args.tau <= propagator.NESTED_MAX_TAU:
                routes["nested_sum"] = propagator.nested_path_sum(step, args.tau, args.rho0, rt)
        value = routes["matrix_power"]
        dev = propagator.max_disagreement(routes)
        rows.append(
            {
                "n": n,
                "kind": str(kind),
                "tau": args.tau,
                "rho0": args.rho0,
                "rhot": rt,
                **_complex_cols("amp", value),
                "abs": abs(value),
                "routes": len(routes),
                "route_dev": dev,
                "step_unbiased_dev": step_dev,
                "pass": dev <= args.tol,
            }
        )
    _write(args, rows)
    return all(r["pass"] for r in rows)


def cmd_lagrangian(args) -> bool:
    g = grid.GridSpec(args.n, **_units(args))
    pref = abs(grid.prefactor_ratio(g) - np.exp(-0.25j * np.pi) / np.sqrt(g.n))
    rows = grid.lagrangian_rows(g)
    for r in rows:
        r["prefactor_dev"] = pref
        r["pass"] = bool(r["rel_dev"] <= args.tol and pref <= args.tol)
    _write(args, rows)
    if args.plot:
        from .plotting import plot_lagrangian

        plot_lagrangian(
            [r["drho"] for r in rows],
            [r["dimensionless_phase"] for r in rows],
            [r["unitful_phase"] for r in rows],
            report.resolve_path(args.plot),
        )
    return all(r["pass"] for r in rows)


def cmd_mub_chain(args) -> bool:
    bases = mub.mub_chain(args.n)
    checks = [mub.eigenbasis_check(b) for b in bases]
    pairs = mub.pairwise_unbiasedness(bases, args.tol)
    ok = all(c.passed for c in checks) and all(u.is_mub for *_, u in pairs)
    pair_rows = []
    for i, j, u in pairs:
        (ji, si), (jj, sj) = bases[i].label.as_tuple(), bases[j].label.as_tuple()
        pair_rows.append(
            {
                "i": i, "j": j,
                "label_i_j": ji, "label_i_sigma": si,
                "label_j_j": jj, "label_j_sigma": sj,
                "max_dev": u.max_dev, "is_mub": u.is_mub,
            }
        )
    doc = {
        "n": args.n,
        "tol": args.tol,
        "bases": [
            {
                "index": k,
                "label": list(b.label.as_tuple()),
                "max_residual": c.max_residual,
                "eigen_pass": c.passed,
            }
            for k, (b, c) in enumerate(zip(bases, checks))
        ],
        "pairs": pair_rows,
        "pass": ok,
    }
    _write(args, pair_rows, doc)
    return ok


def cmd_spectrum(args) -> bool:
    g = grid.GridSpec(args.n, **_units(args))
    pot = parse_potential(args.potential, args.n)
    vals = grid.spectrum(grid.build_hamiltonian(g, pot), args.k)
    exact = None
    if args.potential and args.potential.startswith("harmonic"):
        exact = grid.oscillator_levels(g, args.k, pot.stiffness)
    rows = []
    for i, v in enumerate(vals):
        row = {"level": i, "eigenvalue": float(v)}
        if exact is not None:
            row |= {"exact": float(exact[i]), "error": abs(float(v - exact[i]))}
        rows.append(row)
    _write(args, rows)
    if args.plot:
        from .plotting import plot_spectrum

        plot_spectrum(vals, report.resolve_path(args.plot), exact)
    return True


def cmd_converge(args) -> bool:
    ns = parse_n_list(args.n_list)
    for n in ns:
        grid.GridSpec(n)

    def one(n):
        return grid.harmonic_errors(n, args.k, args.dps)

    with ThreadPoolExecutor(max_workers=max(args.jobs, 1)) as pool:
        errors = list(pool.map(one, ns))
    rows = []
    for n, errs in zip(ns, errors):
        row = {"n": n, "max_error": float(np.max(errs))}
        row |= {f"err_{i}": float(e) for i, e in enumerate(errs)}
        rows.append(row)
    maxes = [r["max_error"] for r in rows]
    decreasing = all(x > y for x, y in zip(maxes, maxes[1:]))
    ok = maxes[-1] <= args.tol
    doc = {"k": args.k, "dps": args.dps, "rows": rows, "strictly_decreasing": decreasing, "pass": ok}
    _write(args, rows, doc)
    if args.plot:
        from .plotting import plot_convergence

        plot_convergence(ns, [[r[f"err_{i}"] for i in range(args.k)] for r in rows],
                         report.resolve_path(args.plot))
    if args.emit_gnuplot:
        script = _gnuplot_script(rows, "n", ["max_error"], logy=True)
        report.resolve_path(args.emit_gnuplot).write_text(script)
    return ok


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weylpath", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, tol):
        p.add_argument("--out", choices=("csv", "json"), default="csv", help="output format")
        p.add_argument("--output", default="-", help="output file (default stdout)")
        p.add_argument("--tol", type=float, default=tol)

    def units(p):
        p.add_argument("--a", type=float, default=1.0, help="length unit")
        p.add_argument("--m", type=float, default=1.0, help="mass")
        p.add_argument("--hbar", type=float, default=1.0)

    p = sub.add_parser("weyl", help="verify the Weyl pair and the DFT")
    p.add_argument("--n", default="2:16", help="N, a list 3,5,7 or a range 2:64")
    common(p, 1e-12)
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("gauss", help="evaluate a generalized Gauss sum")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="fail unless both evaluations agree")
    common(p, 1e-10)
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("propagate", help="lattice propagator amplitudes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", default="cn2", help="cn1, cn2 or tn:<tau>")
    p.add_argument("--tau", type=int, default=1, help="number of steps")
    p.add_argument("--rho0", type=int, default=0)
    p.add_argument("--rhot", type=int, default=None, help="final label (default: all)")
    p.add_argument("--potential", default=None)
    units(p)
    common(p, 1e-10)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("lagrangian", help="dimensionless vs unit-ful phase table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--plot", default=None, help="figure file")
    units(p)
    common(p, 1e-12)
    p.set_defaults(func=cmd_lagrangian)

    p = sub.add_parser("mub-chain", help="build and verify the N+1 MUB chain")
    p.add_argument("--n", type=int, required=True)
    common(p, 1e-10)
    p.set_defaults(func=cmd_mub_chain)

    p = sub.add_parser("spectrum", help="lowest eigenvalues of the N x N Hamiltonian")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--potential", default="harmonic")
    p.add_argument("--plot", default=None, help="figure file")
    units(p)
    common(p, 1e-10)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("converge", help="harmonic-oscillator eigenvalue errors over N")
    p.add_argument("--n-list", default="21,41,81,101")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--dps", type=int, default=None, help="mpmath digits (default: float64)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--plot", default=None, help="figure file")
    p.add_argument("--emit-gnuplot", default=None, metavar="SCRIPT", help="write a gnuplot script")
    common(p, 1e-6)
    p.set_defaults(func=cmd_converge)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0:
        parser.error("--tol must be positive")
    try:
        ok = args.func(args)
    except (DomainError, ValueError) as exc:
        print(f"weylpath {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"weylpath {args.command}: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
