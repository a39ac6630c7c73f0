"""Command-line surface: verification runs, datasets and static SVG plots.

Exit codes: 0 on success, 1 on a verification failure (with a JSON failure
report on stdout), 2 on usage or configuration errors.  Every CSV starts
with '#' comment lines naming the subcommand, its parameters and the seed,
so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import besselfn, geomfront, huygens, specops, verify, waveforms
from .domains import (
    SimplicialComplex,
    build_circle_domain,
    build_simplicial_domain,
    build_torus_domain,
    domain_spectra_json,
)
from .svgfig import polyline_chart

__all__ = ["main", "console_main"]


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _csv(comments: list[str], header: list[str], rows: list[list]) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _plot_path(args) -> str:
    if args.out:
        stem = args.out.rsplit(".", 1)[0]
        return stem + ".svg"
    return f"besselwave_{args.command}.svg"


def _param_comment(args, keys: list[str]) -> str:
    return " ".join(f"{k}={getattr(args, k.replace('-', '_'))}" for k in keys)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_bessel(args) -> int:
    if args.r is not None:
        rs = [args.r]
    else:
        rs = list(np.linspace(args.r_min, args.r_max, args.points))
    rows = []
    for r in rs:
        residual = besselfn.ode_residual(args.n, r) if r > 0 else 0.0
        rows.append(
            [r, besselfn.phi(args.n, r), besselfn.psi(args.n, r), besselfn.phi_derivative(args.n, r), residual]
        )
    comments = [
        f"subcommand=bessel n={args.n} "
        + _param_comment(args, ["r", "r_min", "r_max", "points"])
        + f" seed={args.seed}"
    ]
    text = _csv(comments, ["r", "phi", "psi", "phi_derivative", "ode_residual"], rows)
    _emit(text, args.out)
    if args.plot:
        polyline_chart(
            _plot_path(args),
            [("phi", [row[0] for row in rows], [row[1] for row in rows]),
             ("psi", [row[0] for row in rows], [row[2] for row in rows])],
            title=f"Bessel profile n={args.n}",
            x_label="r",
            y_label="value",
        )
    return 0


def _build_domain(args):
    if args.domain == "circle":
        return build_circle_domain(args.max_freq)
    if args.domain == "torus2":
        return build_torus_domain(2, args.max_freq)
    if args.domain == "torus3":
        return build_torus_domain(3, args.max_freq)
    if args.domain == "simplicial":
        if not args.complex:
            raise ValueError("--complex FILE.json is required for the simplicial domain")
        return build_simplicial_domain(SimplicialComplex.from_json(args.complex))
    raise ValueError(f"unknown domain {args.domain!r}")


def _cmd_spectral(args) -> int:
    domain = _build_domain(args)
    payload = {
        "domain": domain.name,
        "grading": list(domain.grading),
        "spectra": domain_spectra_json(domain),
    }
    if args.t is not None:
        payload["betti"] = {
            "t": args.t,
            "by_degree": [specops.betti(domain, args.t, k, tol=args.tol)
                          for k in range(domain.top_degree + 1)],
        }
    if args.symmetry:
        if args.symmetry == "translation":
            unitary = specops.torus_translation(domain, [args.shift] * domain.q)
        else:
            unitary = specops.torus_quarter_turn(domain)
        t_val = args.t if args.t is not None else 0.3
        payload["symmetry"] = {
            "kind": args.symmetry,
            "t": t_val,
            "commutator": specops.symmetry_commutator(domain, unitary, t_val),
        }
    if args.wave_steps:
        rng = np.random.default_rng(np.random.Philox(args.seed))
        state = rng.standard_normal(2 * domain.total_dim)
        state /= np.linalg.norm(state)
        h = math.asin(args.wave_norm) / (2.0 * math.pi * args.max_freq)
        orbit = specops.discrete_wave_orbit(
            domain, h, state[: domain.total_dim], state[domain.total_dim :], args.wave_steps
        )
        payload["wave_orbit"] = {
            "h": h,
            "steps": args.wave_steps,
            "dirac_norm": orbit["dirac_norm"],
            "max_norm": orbit["max_norm"],
            "bound": orbit["bound"],
        }
    if args.format == "json":
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        rows = [
            [entry["degree"], i, v]
            for entry in payload["spectra"]
            for i, v in enumerate(entry["eigenvalues"])
        ]
        comments = [
            f"subcommand=spectral domain={args.domain} max-freq={args.max_freq} seed={args.seed}"
        ]
        if "betti" in payload:
            comments.append(f"betti t={args.t} by_degree={payload['betti']['by_degree']}")
        if "symmetry" in payload:
            comments.append(
                f"symmetry {payload['symmetry']['kind']} commutator={payload['symmetry']['commutator']!r}"
            )
        if "wave_orbit" in payload:
            o = payload["wave_orbit"]
            comments.append(f"wave_orbit max_norm={o['max_norm']!r} bound={o['bound']!r}")
        _emit(_csv(comments, ["degree", "index", "laplacian_eigenvalue"], rows), args.out)
    return 0


def _cmd_wave(args) -> int:
    domain = _build_domain(args)
    rng = np.random.default_rng(np.random.Philox(args.seed))
    raw = rng.standard_normal(domain.grading[0])
    df = domain.d_blocks[0] @ raw
    f = domain.cochain(0, raw / np.linalg.norm(df))
    if args.kind == "classical":
        solution = waveforms.classical_wave(domain, domain.zero_cochain(1), domain.cochain(1, df / np.linalg.norm(df)))
    elif args.kind == "velocity":
        solution = waveforms.velocity_solution(domain, f, q=args.q)
    else:
        solution = waveforms.position_solution(domain, f, q=args.q)
    t_values = [float(s) for s in args.t_values.split(",")]
    rows = []
    n_amp = min(domain.grading[solution.degree], args.amplitudes)
    for t in t_values:
        u = solution.at(t)
        residual = waveforms.pde_residual(solution, t, args.dt) if t >= 5 * args.dt else math.nan
        rows.append([t, residual, u.norm()] + [float(a) for a in np.abs(u.coefficients[:n_amp])])
    comments = [
        f"subcommand=wave domain={args.domain} kind={args.kind} q={args.q} "
        f"max-freq={args.max_freq} dt={args.dt} seed={args.seed}"
    ]
    header = ["t", "residual", "norm"] + [f"amp_{i}" for i in range(n_amp)]
    _emit(_csv(comments, header, rows), args.out)
    if args.plot:
        polyline_chart(
            _plot_path(args),
            [("norm", [r[0] for r in rows], [r[2] for r in rows])],
            title=f"{args.kind} solution, {args.domain}",
            x_label="t",
            y_label="norm",
        )
    return 0


def _cmd_pizzetti(args) -> int:
    from .polyforms import random_multipoly

    rng = np.random.default_rng(np.random.Philox(args.seed))
    rows = []
    failures = 0
    for i in range(args.count):
        q = (1, 2, 3)[i % 3]
        g = random_multipoly(rng, q, args.degree)
        ball_ok = huygens.pizzetti_ball(g, q) == huygens.ball_average_exact(g, q)
        sphere_ok = huygens.pizzetti_sphere(g, q) == huygens.sphere_average_exact(g, q)
        failures += (not ball_ok) + (not sphere_ok)
        rows.append([i, q, g.degree(), int(ball_ok), int(sphere_ok)])
    comments = [
        f"subcommand=pizzetti count={args.count} degree={args.degree} seed={args.seed}",
        f"failures={failures}",
    ]
    _emit(_csv(comments, ["index", "q", "poly_degree", "ball_exact", "sphere_exact"], rows), args.out)
    return 0 if failures == 0 else 1


def _cmd_polarize(args) -> int:
    exponents = tuple(int(s) for s in args.exponents.split(","))
    terms = huygens.polarization_expand(exponents)
    from .polyforms import MultiPoly

    verified = huygens.polarization_reconstruct(exponents) == MultiPoly.monomial(len(exponents), exponents)
    n = sum(exponents)
    rows = [[sign] + list(coeffs) + [power] for sign, coeffs, power in terms]
    comments = [
        f"subcommand=polarize exponents={args.exponents} seed={args.seed}",
        f"normalization=1/(n!*2^n) with n={n}; combination reproduces the monomial: {verified}",
    ]
    header = ["sign"] + [f"a_{i}" for i in range(len(exponents))] + ["power"]
    _emit(_csv(comments, header, rows), args.out)
    return 0 if verified else 1


def _cmd_probe(args) -> int:
    result = huygens.locality_probe(
        args.q, args.max_freq, args.sigma, args.t, args.w, grid_points=args.grid
    )
    if not result.resolved:
        _emit(json.dumps({"status": "unresolved", "reason": result.reason,
                          "spectral_tail": result.spectral_tail}, indent=2) + "\n", args.out)
        return 1
    comments = [
        f"subcommand=huygens-probe q={args.q} max-freq={args.max_freq} sigma={args.sigma} "
        f"t={args.t} w={args.w} grid={args.grid} seed={args.seed}",
        f"deformed_leakage={result.deformed_leakage!r} classical_leakage={result.classical_leakage!r}",
        f"spectral_tail={result.spectral_tail!r}",
    ]
    rows = [
        [float(r), float(d), float(c)]
        for r, d, c in zip(result.radii, result.deformed_profile, result.classical_profile)
    ]
    _emit(_csv(comments, ["radius", "deformed_mass", "classical_mass"], rows), args.out)
    if args.plot:
        polyline_chart(
            _plot_path(args),
            [("deformed", [r[0] for r in rows], [r[1] for r in rows]),
             ("classical", [r[0] for r in rows], [r[2] for r in rows])],
            title=f"interior leakage profile, q={args.q}, t={args.t}",
            x_label="torus radius",
            y_label="mass fraction",
        )
    return 0


def _cmd_curvature(args) -> int:
    chart = _chart_from_args(args)
    point = tuple(float(s) for s in args.point.split(",")) if args.point else _default_point(chart)
    hs = [args.h] if args.h else [0.05 * (i + 1) for i in range(6)]
    rows = []
    for h in hs:
        rows.append([
            h,
            geomfront.r2d2_curvature(chart, point, h, args.ntheta),
            geomfront.puiseux_curvature(chart, point, h, args.ntheta),
        ])
    comments = [
        f"subcommand=curvature chart={chart.name} point={point} ntheta={args.ntheta} seed={args.seed}"
    ]
    _emit(_csv(comments, ["h", "r2d2", "puiseux"], rows), args.out)
    if args.plot:
        polyline_chart(
            _plot_path(args),
            [("r2d2", [r[0] for r in rows], [r[1] for r in rows]),
             ("puiseux", [r[0] for r in rows], [r[2] for r in rows])],
            title=f"curvature estimates on {chart.name}",
            x_label="h",
            y_label="K",
        )
    return 0


def _cmd_front(args) -> int:
    chart = _chart_from_args(args)
    point = tuple(float(s) for s in args.point.split(",")) if args.point else _default_point(chart)
    front = geomfront.wavefront(chart, point, args.t, args.ntheta)
    comments = [
        f"subcommand=front chart={chart.name} point={point} t={args.t} "
        f"ntheta={args.ntheta} seed={args.seed}",
        f"front_length={float(np.mean(np.abs(front.jacobi)) * 2 * math.pi)!r}",
    ]
    if args.oneform:
        p_src, q_src = args.oneform.split(";")
        from .exprgrammar import compile_expression

        oneform = (compile_expression(p_src), compile_expression(q_src))
        res = geomfront.wavefront_line_integral(chart, oneform, point, args.t, args.ntheta)
        comments.append(
            f"line_integral={res.value!r} self_intersection_warning={res.front_self_intersects}"
        )
    rows = [
        [float(th), float(x), float(y), float(j)]
        for th, (x, y), j in zip(front.angles, front.points, front.jacobi)
    ]
    _emit(_csv(comments, ["theta", "x", "y", "jacobi"], rows), args.out)
    if args.plot:
        polyline_chart(
            _plot_path(args),
            [("front", [r[1] for r in rows] + [rows[0][1]], [r[2] for r in rows] + [rows[0][2]])],
            title=f"wave front on {chart.name}, t={args.t}",
            x_label="x",
            y_label="y",
        )
    return 0


def _cmd_verify_all(args) -> int:
    report = verify.run_all(seed=args.seed, quick=args.quick)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    _emit(text, args.out)
    if args.out:
        sys.stdout.write(text)
    return 0 if report["status"] == "pass" else 1


def _chart_from_args(args):
    if args.chart == "custom":
        if not (args.g11 and args.g12 is not None and args.g22):
            raise ValueError("custom charts need --g11, --g12, --g22 expressions")
        bounds = tuple(float(s) for s in args.bounds.split(","))
        return geomfront.chart_from_expressions(args.g11, args.g12, args.g22, bounds, args.curvature)
    return geomfront.chart_by_name(args.chart)


def _default_point(chart):
    defaults = {
        "sphere": (math.pi / 2, 0.0),
        "hyperbolic": (0.0, 1.0),
        "torus": (0.5, 0.5),
        "flat": (0.0, 0.0),
    }
    if chart.name in defaults:
        return defaults[chart.name]
    x_min, x_max, y_min, y_max = chart.bounds
    return (0.5 * (x_min + x_max), 0.5 * (y_min + y_max))


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="besselwave",
        description="Bounded smoothed exterior derivative: verification runs and datasets.",
    )
    parser.add_argument("--config", help="JSON file with default values for the flags")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--out", help="output path (stdout when omitted)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--plot", action="store_true", help="write an SVG next to --out")

    p = sub.add_parser("bessel", help="profile tables and identity checks")
    common(p)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--r", type=float)
    p.add_argument("--r-min", type=float, default=0.1)
    p.add_argument("--r-max", type=float, default=20.0)
    p.add_argument("--points", type=int, default=100)
    p.set_defaults(func=_cmd_bessel)

    p = sub.add_parser("spectral", help="domain spectra, Betti tables, symmetries, wave orbits")
    common(p)
    p.add_argument("--domain", choices=("circle", "torus2", "torus3", "simplicial"), default="circle")
    p.add_argument("--max-freq", type=int, default=3)
    p.add_argument("--complex", help="JSON file with {\"simplices\": [...]}")
    p.add_argument("--t", type=float, help="deformation parameter for the Betti table")
    p.add_argument("--tol", type=float, help="kernel threshold override")
    p.add_argument("--symmetry", choices=("translation", "quarter-turn"))
    p.add_argument("--shift", type=float, default=1.0 / 3.0)
    p.add_argument("--wave-steps", type=int, default=0)
    p.add_argument("--wave-norm", type=float, default=0.9)
    p.set_defaults(func=_cmd_spectral)

    p = sub.add_parser("wave", help="solution snapshots and residual sweeps")
    common(p)
    p.add_argument("--domain", choices=("circle", "torus2", "torus3", "simplicial"), default="circle")
    p.add_argument("--max-freq", type=int, default=3)
    p.add_argument("--complex")
    p.add_argument("--kind", choices=("velocity", "position", "classical"), default="velocity")
    p.add_argument("--q", type=int, default=None, help="Bessel index override")
    p.add_argument("--t-values", default="0.5,1.0,2.0")
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--amplitudes", type=int, default=8)
    p.set_defaults(func=_cmd_wave)

    p = sub.add_parser("pizzetti", help="random-polynomial averaging verification report")
    common(p)
    p.add_argument("--count", type=int, default=60)
    p.add_argument("--degree", type=int, default=8)
    p.set_defaults(func=_cmd_pizzetti)

    p = sub.add_parser("polarize", help="polarization identity expansion")
    common(p)
    p.add_argument("--exponents", default="1,1", help="comma-separated monomial exponents")
    p.set_defaults(func=_cmd_polarize)

    p = sub.add_parser("huygens-probe", help="interior-leakage comparison on the flat torus")
    common(p)
    p.add_argument("--q", type=int, default=2, choices=(2, 3))
    p.add_argument("--max-freq", type=int, default=64)
    p.add_argument("--sigma", type=float, default=0.02)
    p.add_argument("--t", type=float, default=0.3)
    p.add_argument("--w", type=float, default=0.05)
    p.add_argument("--grid", type=int, default=256)
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("curvature", help="two-radius and circumference-defect curvature sweeps")
    common(p)
    p.add_argument("--chart", default="sphere")
    p.add_argument("--h", type=float)
    p.add_argument("--point")
    p.add_argument("--ntheta", type=int, default=64)
    p.add_argument("--g11")
    p.add_argument("--g12")
    p.add_argument("--g22")
    p.add_argument("--curvature")
    p.add_argument("--bounds", default="-2,2,-2,2")
    p.set_defaults(func=_cmd_curvature)

    p = sub.add_parser("front", help="wave-front polylines and line integrals")
    common(p)
    p.add_argument("--chart", default="flat")
    p.add_argument("--point")
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--ntheta", type=int, default=256)
    p.add_argument("--oneform", help='pair of expressions "P;Q"')
    p.add_argument("--g11")
    p.add_argument("--g12")
    p.add_argument("--g22")
    p.add_argument("--curvature")
    p.add_argument("--bounds", default="-2,2,-2,2")
    p.set_defaults(func=_cmd_front)

    p = sub.add_parser("verify-all", help="run every property suite, JSON pass/fail report")
    common(p)
    p.add_argument("--quick", action="store_true")
    p.set_defaults(func=_cmd_verify_all)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    if "--config" in argv:
        idx = argv.index("--config")
        try:
            with open(argv[idx + 1], "r", encoding="utf-8") as fh:
                defaults = json.load(fh)
        except (OSError, json.JSONDecodeError, IndexError) as exc:
            sys.stderr.write(f"error: cannot read config: {exc}\n")
            return 2
        del argv[idx : idx + 2]
        for key, value in defaults.items():
            flag = f"--{key.replace('_', '-')}"
            if flag not in argv and not any(a.startswith(flag + "=") for a in argv):
                if isinstance(value, bool):
                    if value:
                        argv.append(flag)
                else:
                    argv += [flag, str(value)]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
