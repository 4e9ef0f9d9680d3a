"""Command-line front end.

Every subcommand accepts ``--config FILE`` (JSON object keyed by option
destination names, e.g. ``{"J": 5, "degree": "60"}``). Precedence is
flags > config file > built-in defaults.

Exit codes: 0 ok, 1 usage, 2 bad data, 3 numerical failure.

Synthetic data is drawn from numpy's PCG64 generator seeded with
``--seed``, so results are reproducible across platforms.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import io
from .chebyshev import compute_coefficients, eval_scalar
from .graph import (
    GraphError,
    NORMALIZED,
    UNNORMALIZED,
    build_from_grid_mask,
    build_from_point_cloud,
    connected_components,
    laplacian,
    swiss_roll_points,
)
from .kernels import KernelSpec, frame_bounds, make_design, partition_function
from .spectral import estimate_lambda_max, full_eigendecomposition
from .transform import forward, prepare, pseudoinverse

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class NumericalError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _degrees(text: str):
    parts = [p for p in str(text).split(",") if p.strip()]
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree list {text!r}") from None
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("degrees must be non-negative integers")
    return values[0] if len(values) == 1 else values


def _positive(kind):
    def parse(text):
        try:
            value = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid value {text!r}") from None
        if value <= 0:
            raise argparse.ArgumentTypeError(f"{text!r} must be positive")
        return value
    return parse


def _add_common(p):
    p.add_argument("--config", help="JSON file of option defaults")
    p.add_argument("--summary", help="run summary JSON path "
                   "(default: next to the main output, '<stem>.summary.json')")


def _add_graph_input(p):
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--laplacian", choices=[UNNORMALIZED, NORMALIZED],
                   default=UNNORMALIZED)


def _add_design(p, lambda_max_required=False):
    p.add_argument("--J", type=_positive(int), default=4, help="number of wavelet scales")
    p.add_argument("--K", type=float, default=20.0,
                   help="lambda_max / lambda_min ratio (> 1)")
    p.add_argument("--alpha", type=_positive(int), default=2)
    p.add_argument("--beta", type=_positive(int), default=2)
    p.add_argument("--x1", type=_positive(float), default=1.0)
    p.add_argument("--x2", type=_positive(float), default=2.0)
    p.add_argument("--lambda-max", dest="lambda_max", type=_positive(float),
                   required=lambda_max_required,
                   help="spectrum upper bound (default: power-iteration estimate)")


def _add_degree(p):
    p.add_argument("--degree", type=_degrees, default=50,
                   help="Chebyshev degree, or comma list with one per band (J + 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sgwt", description="Spectral graph wavelet transform toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build-graph", help="build an edge-list graph file")
    _add_common(p)
    p.add_argument("--source", required=True,
                   choices=["edges", "pointcloud", "gridmask", "swissroll"])
    p.add_argument("--input", help="input file (not used for swissroll)")
    p.add_argument("--output", required=True, help="edge-list output path")
    p.add_argument("--sigma", type=_positive(float), default=0.1,
                   help="Gaussian width for point clouds")
    p.add_argument("--threshold", type=float, default=None,
                   help="drop point-cloud edges lighter than this")
    p.add_argument("--num-points", dest="num_points", type=_positive(int), default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points-out", dest="points_out",
                   help="also write the sampled Swiss-roll points as CSV")

    p = sub.add_parser("eig", help="dense eigenvalues of the Laplacian (small graphs)")
    _add_common(p)
    _add_graph_input(p)
    p.add_argument("--method", choices=["ql", "lapack"], default="ql")
    p.add_argument("--output", required=True, help="CSV of index,eigenvalue")

    p = sub.add_parser("forward", help="fast forward transform of a signal")
    _add_common(p)
    _add_graph_input(p)
    _add_design(p)
    _add_degree(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--signal", help="signal file, one value per vertex")
    src.add_argument("--random-signal", dest="random_signal", action="store_true",
                     help="use a standard normal signal drawn with --seed")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--signal-out", dest="signal_out",
                   help="write the input signal here (useful with --random-signal)")
    p.add_argument("--output", required=True,
                   help="coefficient file (.csv, or .sgwt/.bin for binary)")

    p = sub.add_parser("inverse", help="least-squares reconstruction from coefficients")
    _add_common(p)
    _add_graph_input(p)
    _add_design(p)
    _add_degree(p)
    p.add_argument("--coeffs", required=True, help="coefficient file")
    p.add_argument("--tol", type=_positive(float), default=1e-8)
    p.add_argument("--max-iter", dest="max_iter", type=_positive(int), default=500)
    p.add_argument("--reference", help="original signal, to report reconstruction error")
    p.add_argument("--output", required=True, help="reconstructed signal path")

    p = sub.add_parser("framebounds", help="frame bounds of a design")
    _add_common(p)
    _add_design(p)
    p.add_argument("--graph", help="edge-list file (estimates lambda_max, enables --exact)")
    p.add_argument("--laplacian", choices=[UNNORMALIZED, NORMALIZED], default=UNNORMALIZED)
    p.add_argument("--n-grid", dest="n_grid", type=_positive(int), default=10_000)
    p.add_argument("--exact", action="store_true",
                   help="also evaluate G on the true spectrum (needs --graph)")
    p.add_argument("--output", required=True, help="JSON output path")

    p = sub.add_parser("kernel-table", help="CSV of h, g(t_j x) and G over [0, lambda_max]")
    _add_common(p)
    _add_design(p, lambda_max_required=True)
    p.add_argument("--n-points", dest="n_points", type=_positive(int), default=1001)
    p.add_argument("--output", required=True)

    p = sub.add_parser("cheb-table", help="CSV comparing a kernel with its Chebyshev polynomial")
    _add_common(p)
    _add_design(p, lambda_max_required=True)
    p.add_argument("--degree", type=int, default=20)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--scale", type=_positive(float), default=None,
                       help="approximate g(scale * x) (default 1)")
    which.add_argument("--band", type=int, default=None,
                       help="approximate band j of the design (0 is h)")
    p.add_argument("--n-points", dest="n_points", type=_positive(int), default=1001)
    p.add_argument("--output", required=True)
    return parser


def _config_path(argv):
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _apply_config(parser, command, path):
    try:
        cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        parser.exit(EXIT_USAGE, f"sgwt: error: cannot read config: {exc}\n")
    if not isinstance(cfg, dict):
        parser.exit(EXIT_USAGE, "sgwt: error: config must be a JSON object\n")
    sub = parser._subparsers._group_actions[0].choices[command]
    actions = {a.dest: a for a in sub._actions if a.dest not in ("help", "config")}
    unknown = sorted(set(cfg) - set(actions))
    if unknown:
        parser.exit(EXIT_USAGE, f"sgwt: error: unknown config keys: {', '.join(unknown)}\n")
    values = {}
    for key, value in cfg.items():
        action = actions[key]
        if action.type is not None and not isinstance(value, (bool, list, dict)):
            try:
                value = action.type(str(value))
            except (argparse.ArgumentTypeError, ValueError) as exc:
                parser.exit(EXIT_USAGE, f"sgwt: error: config {key}: {exc}\n")
        if action.choices is not None and value not in action.choices:
            parser.exit(EXIT_USAGE, f"sgwt: error: config {key}: invalid choice {value!r}\n")
        values[key] = value
        # a required option satisfied by the config is no longer required
        action.required = False
    sub.set_defaults(**values)


def _parse(argv):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    path = _config_path(argv)
    if path is not None:
        commands = parser._subparsers._group_actions[0].choices
        command = next((tok for tok in argv if tok in commands), None)
        if command is not None:
            _apply_config(parser, command, path)
    return parser.parse_args(argv)


def _summary_path(args, output) -> Path:
    if args.summary:
        return Path(args.summary)
    out = Path(output)
    return out.with_name(out.stem + ".summary.json")


def _write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _kernel(args) -> KernelSpec:
    return KernelSpec(alpha=args.alpha, beta=args.beta, x1=args.x1, x2=args.x2)


def _check_design_args(args):
    if args.K <= 1:
        raise UsageError("--K must exceed 1")
    if not args.x1 < args.x2:
        raise UsageError("--x1 must be smaller than --x2")


def _laplacian_and_bound(args):
    g = io.read_edge_list(args.graph)
    L = laplacian(g, args.laplacian)
    if args.lambda_max is not None:
        return g, L, {"lambda_max": args.lambda_max, "lambda_max_method": "user"}
    with warnings.catch_warnings():
        warnings.simplefilter("error", RuntimeWarning)
        try:
            bound = estimate_lambda_max(L)
        except RuntimeWarning as exc:
            raise NumericalError(str(exc)) from None
    return g, L, {
        "lambda_max": bound.lambda_max,
        "lambda_max_method": bound.method,
        "lambda_max_iterations": bound.iterations,
    }


def _prepared(args, L, lambda_max):
    _check_design_args(args)
    design = make_design(lambda_max, J=args.J, K=args.K, kernel=_kernel(args))
    return design, prepare(design, L, args.degree)


def _design_summary(design, pt):
    A, B = frame_bounds(design, "interval_grid")
    return {
        "J": design.J,
        "K": design.K,
        "scales": [float(t) for t in design.scales],
        "degrees": pt.degrees,
        "sup_errors": pt.sup_errors(),
        "frame_bounds_grid": [A, B],
        "gamma": design.scaling.gamma,
    }


def cmd_build_graph(args):
    if args.source == "swissroll":
        rng = np.random.default_rng(args.seed)
        points = swiss_roll_points(args.num_points, rng)
        if args.points_out:
            io.write_point_cloud(points, args.points_out)
        g = build_from_point_cloud(points, args.sigma, args.threshold)
    else:
        if not args.input:
            raise UsageError(f"--input is required for --source {args.source}")
        if args.source == "edges":
            g = io.read_edge_list(args.input)
        elif args.source == "pointcloud":
            g = build_from_point_cloud(io.read_point_cloud(args.input), args.sigma,
                                       args.threshold)
        else:
            g = build_from_grid_mask(io.read_grid_mask(args.input))
    io.write_edge_list(g, args.output)
    _write_json({
        "command": "build-graph",
        "source": args.source,
        "num_vertices": g.num_vertices,
        "num_edges": g.num_edges,
        "connected_components": connected_components(g),
        "seed": args.seed if args.source == "swissroll" else None,
    }, _summary_path(args, args.output))


def cmd_eig(args):
    g = io.read_edge_list(args.graph)
    L = laplacian(g, args.laplacian)
    eig = full_eigendecomposition(L, method=args.method)
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("index,eigenvalue\n")
        for i, lam in enumerate(eig.eigenvalues):
            fh.write(f"{i},{io.fmt(lam)}\n")
    _write_json({"command": "eig", "num_vertices": g.num_vertices, "method": args.method,
                 "lambda_max": float(eig.eigenvalues[-1])},
                _summary_path(args, args.output))


def cmd_forward(args):
    g, L, bound = _laplacian_and_bound(args)
    if args.random_signal:
        f = np.random.default_rng(args.seed).standard_normal(g.num_vertices)
    else:
        f = io.read_signal(args.signal)
        if f.size != g.num_vertices:
            raise io.DataFormatError(
                f"{args.signal}: {f.size} values for a graph with {g.num_vertices} vertices")
    if args.signal_out:
        io.write_signal(f, args.signal_out)
    design, pt = _prepared(args, L, bound["lambda_max"])
    c = forward(pt, f)
    io.write_coefficients(c, args.output)
    summary = {"command": "forward", "num_vertices": g.num_vertices,
               "signal_norm": float(np.linalg.norm(f)), **bound,
               **_design_summary(design, pt)}
    _write_json(summary, _summary_path(args, args.output))


def cmd_inverse(args):
    g, L, bound = _laplacian_and_bound(args)
    c = io.read_coefficients(args.coeffs)
    design, pt = _prepared(args, L, bound["lambda_max"])
    if c.bands.shape != (design.J + 1, g.num_vertices):
        raise io.DataFormatError(
            f"{args.coeffs}: coefficients have shape {c.bands.shape}, expected "
            f"{(design.J + 1, g.num_vertices)}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        f, info = pseudoinverse(pt, c, tol=args.tol, max_iter=args.max_iter)
    for w in caught:
        print(f"sgwt: warning: {w.message}", file=sys.stderr)
    io.write_signal(f, args.output)
    summary = {"command": "inverse", "num_vertices": g.num_vertices, **bound,
               **_design_summary(design, pt),
               "cg_iterations": info.iterations, "cg_residual": info.residual,
               "cg_converged": info.converged,
               "coefficient_residual": float(np.linalg.norm(
                   forward(pt, f).bands - c.bands))}
    if args.reference:
        ref = io.read_signal(args.reference)
        if ref.size != f.size:
            raise io.DataFormatError(f"{args.reference}: length {ref.size}, expected {f.size}")
        summary["relative_error"] = float(np.linalg.norm(f - ref) / np.linalg.norm(ref))
    _write_json(summary, _summary_path(args, args.output))
    if not info.converged:
        raise NumericalError(f"conjugate gradients did not converge "
                             f"(residual {info.residual:.3g})")


def cmd_framebounds(args):
    _check_design_args(args)
    if args.graph:
        _, L, bound = _laplacian_and_bound(args)
    elif args.lambda_max is not None:
        L, bound = None, {"lambda_max": args.lambda_max, "lambda_max_method": "user"}
    else:
        raise UsageError("give --lambda-max or --graph")
    design = make_design(bound["lambda_max"], J=args.J, K=args.K, kernel=_kernel(args))
    A, B = frame_bounds(design, "interval_grid", n_grid=args.n_grid)
    out = {"command": "framebounds", **bound, "J": design.J, "K": design.K,
           "scales": [float(t) for t in design.scales],
           "A": A, "B": B, "ratio": B / A if A > 0 else None, "n_grid": args.n_grid}
    if args.exact:
        if L is None:
            raise UsageError("--exact needs --graph")
        eig = full_eigendecomposition(L)
        Ae, Be = frame_bounds(design, "exact_spectrum", eig=eig)
        out.update({"A_exact": Ae, "B_exact": Be})
    _write_json(out, args.output)
    print(f"A = {A!r}\nB = {B!r}")


def cmd_kernel_table(args):
    _check_design_args(args)
    design = make_design(args.lambda_max, J=args.J, K=args.K, kernel=_kernel(args))
    lam = np.linspace(0.0, design.lambda_max, args.n_points)
    columns = [k(lam) for k in design.band_kernels()]
    G = partition_function(design, lam)
    header = ["lambda", "h"] + [f"g{j}" for j in range(1, design.J + 1)] + ["G"]
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for i, x in enumerate(lam):
            row = [x] + [col[i] for col in columns] + [G[i]]
            fh.write(",".join(io.fmt(v) for v in row) + "\n")


def cmd_cheb_table(args):
    _check_design_args(args)
    if args.degree < 0:
        raise UsageError("--degree must be non-negative")
    design = make_design(args.lambda_max, J=args.J, K=args.K, kernel=_kernel(args))
    if args.band is not None:
        kernels = design.band_kernels()
        if not 0 <= args.band < len(kernels):
            raise UsageError(f"--band must lie in [0, {len(kernels) - 1}]")
        func = kernels[args.band]
    else:
        t = 1.0 if args.scale is None else args.scale
        func = lambda x: design.kernel(t * x)  # noqa: E731
    exp = compute_coefficients(func, args.degree, design.lambda_max)
    x = np.linspace(0.0, design.lambda_max, args.n_points)
    fx = np.asarray(func(x))
    px = eval_scalar(exp, x)
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("x,func,approx,error\n")
        for row in zip(x, fx, px, px - fx):
            fh.write(",".join(io.fmt(v) for v in row) + "\n")
    _write_json({"command": "cheb-table", "degree": args.degree,
                 "lambda_max": design.lambda_max,
                 "sup_error": float(np.max(np.abs(px - fx)))},
                _summary_path(args, args.output))


COMMANDS = {
    "build-graph": cmd_build_graph,
    "eig": cmd_eig,
    "forward": cmd_forward,
    "inverse": cmd_inverse,
    "framebounds": cmd_framebounds,
    "kernel-table": cmd_kernel_table,
    "cheb-table": cmd_cheb_table,
}


def main(argv=None) -> int:
    args = _parse(argv)
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"sgwt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"sgwt: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except np.linalg.LinAlgError as exc:
        print(f"sgwt: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (io.DataFormatError, GraphError, ValueError, OSError) as exc:
        print(f"sgwt: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
