"""Command-line interface.

Subcommands: gen, tau, hmat, spectrum, law, alpha, figure, experiment.
Output root: --out, else the KS_OUT_DIR environment variable, else ./out.
Exit codes: 0 success, 1 failed experiment assertions (report still
written), 2 usage, 3 validation error, 4 numerical failure.

--threads caps the numba worker pool; kernels assign one writer per output
entry, so the flag changes wall time only, never numerical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import _backend, fileio
from .datagen import MARGINALS, DataMatrix, TieError, generate
from .experiments import EXPERIMENTS, make_figure1, make_figure2, seed_list
from .hoeffding import KERNEL_TAGS, MODES, alpha_coefficient, builtin_kernel, h_matrix, hoeffding_parts
from .kendall import pair_signs, tau_fast, tau_from_signs, tau_naive
from .laws import REGIMES, MPLawSpec, law_for_regime
from .spectral import eigen_symmetric

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4


def _outdir(args) -> str:
    out = args.out or os.environ.get("KS_OUT_DIR") or "out"
    os.makedirs(out, exist_ok=True)
    return out


def _atomic_save(save_fn, path: str) -> None:
    tmp = path + ".part"
    save_fn(tmp)
    os.replace(tmp, path)


def _matrix_summary(label: str, matrix, n: int) -> None:
    p = matrix.order
    eigs = np.linalg.eigvalsh(matrix.to_dense())
    q = p / n
    q_prime = 2.0 * p / (n * (n - 1))
    print(
        f"{label}: n={n} p={p} q={q:.6g} q_prime={q_prime:.6g} "
        f"trace/p={matrix.trace() / p:.6g} min_eig={eigs[0]:.6g} max_eig={eigs[-1]:.6g}"
    )
    if p <= 6:
        for row in matrix.to_dense():
            print("  " + "  ".join(f"{x: .6f}" for x in row))


def _load_or_generate(args) -> DataMatrix:
    if getattr(args, "data", None):
        return DataMatrix.load_csv(args.data)
    return generate(args.p, args.n, args.marginal, seed=args.seed)


def cmd_gen(args) -> int:
    data = generate(args.p, args.n, args.marginal, seed=args.seed)
    path = os.path.join(_outdir(args), f"data_{args.n}_{args.p}_{args.seed}.csv")
    _atomic_save(data.save_csv, path)
    print(f"gen: n={data.n} p={data.p} marginal={data.marginal} seed={args.seed}")
    print(path)
    return EXIT_OK


def cmd_tau(args) -> int:
    data = _load_or_generate(args)
    if args.method == "naive":
        tau = tau_naive(data)
    elif args.method == "signs":
        tau = tau_from_signs(pair_signs(data))
    else:
        tau = tau_fast(data)
    seed = data.seed if data.seed is not None else "file"
    ext = "symm" if args.format == "bin" else "csv"
    path = os.path.join(_outdir(args), f"tau_{data.n}_{data.p}_{seed}.{ext}")
    save = tau.save_binary if args.format == "bin" else tau.save_csv
    _atomic_save(save, path)
    _matrix_summary("tau", tau, data.n)
    print(path)
    return EXIT_OK


def cmd_hmat(args) -> int:
    data = _load_or_generate(args)
    h = h_matrix(hoeffding_parts(data, mode=args.mode))
    seed = data.seed if data.seed is not None else "file"
    ext = "symm" if args.format == "bin" else "csv"
    path = os.path.join(_outdir(args), f"hmat_{data.n}_{data.p}_{seed}.{ext}")
    save = h.save_binary if args.format == "bin" else h.save_csv
    _atomic_save(save, path)
    _matrix_summary("hmat", h, data.n)
    print(path)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    data = _load_or_generate(args)
    if args.matrix == "tau":
        matrix = tau_fast(data)
    else:
        matrix = h_matrix(hoeffding_parts(data, mode=args.mode))
    spectrum = eigen_symmetric(matrix, n=data.n, source=args.matrix)
    seed = data.seed if data.seed is not None else "file"
    out = _outdir(args)
    stem = f"spectrum_{args.matrix}_{data.n}_{data.p}_{seed}"
    csv_path = os.path.join(out, stem + ".csv")
    _atomic_save(spectrum.save_csv, csv_path)
    hist_path = os.path.join(out, stem + "_hist.json")
    fileio.write_histogram_json(hist_path, spectrum, args.bins)
    eigs = spectrum.eigenvalues
    print(
        f"spectrum[{args.matrix}]: n={data.n} p={data.p} q={spectrum.q:.6g} "
        f"q_prime={spectrum.q_prime:.6g} mean={spectrum.mean():.6g} "
        f"min_eig={eigs[0]:.6g} max_eig={eigs[-1]:.6g}"
    )
    print(csv_path)
    print(hist_path)
    return EXIT_OK


def cmd_law(args) -> int:
    if args.q is not None:
        spec = MPLawSpec(q=args.q, scale=args.scale, shift=args.shift)
    else:
        spec = law_for_regime(args.n, args.p, args.regime)
    path = os.path.join(
        _outdir(args), f"law_{args.regime}_{args.n}_{args.p}.csv"
    )
    fileio.write_law_grid_csv(path, spec, points=args.grid_points)
    lo, hi = spec.support
    print(
        f"law: q={spec.q:.6g} scale={spec.scale:.6g} shift={spec.shift:.6g} "
        f"support=[{lo:.6g}, {hi:.6g}] atom={spec.atom_mass:.6g} mean={spec.moment(1):.6g}"
    )
    print(path)
    return EXIT_OK


def cmd_alpha(args) -> int:
    estimate = alpha_coefficient(
        builtin_kernel(args.kernel),
        marginal=args.marginal,
        mc_samples=args.samples,
        seed=args.seed,
    )
    print(
        f"alpha[{args.kernel}]: {estimate.value:.6g} +- {estimate.stderr:.2g} "
        f"({estimate.samples} samples)"
    )
    if args.out:
        path = os.path.join(_outdir(args), f"alpha_{args.kernel}_{args.seed}.json")
        fileio.write_json(
            path,
            {
                "kernel": args.kernel,
                "marginal": args.marginal,
                "samples": estimate.samples,
                "seed": args.seed,
                "value": estimate.value,
                "stderr": estimate.stderr,
            },
        )
        print(path)
    return EXIT_OK


def cmd_figure(args) -> int:
    out = _outdir(args)
    if args.which == "fig1":
        report = make_figure1(
            n=args.n or 70,
            p=args.p or 1225,
            seed=args.seed,
            mode=args.mode,
            bins=args.bins,
            outdir=out,
        )
    else:
        p_list = args.p_list or ((args.p,) if args.p else (300, 400, 500, 600))
        report = make_figure2(
            n=args.n or 70, p_list=p_list, seed=args.seed, bins=args.bins, outdir=out
        )
    report.save(os.path.join(out, f"{report.name}_summary.json"))
    for line in report.summary_lines():
        print(line)
    for path in report.artifacts:
        print(path)
    return EXIT_OK


def _experiment_kwargs(args) -> dict:
    kwargs = {}
    name = args.name
    if args.seeds is not None:
        kwargs["seeds"] = seed_list(args.seeds, args.seed)
    if args.marginal != "uniform01":
        kwargs["marginal"] = args.marginal
    if name in ("quadratic-lsd", "linear-lsd", "kernel-lsd", "resolvent-identity"):
        if args.n is not None:
            kwargs["n"] = args.n
        if args.p is not None:
            kwargs["p"] = args.p
    if name in ("quadratic-lsd", "resolvent-identity", "rank-bound", "concentration"):
        if args.mode != "exact_cdf":
            kwargs["mode"] = args.mode
    if name == "tau-quadratic":
        if args.n is not None:
            kwargs["n"] = args.n
        if args.p_list is not None:
            kwargs["p_list"] = args.p_list
    if name == "concentration":
        if args.n_list is not None:
            kwargs["n_list"] = args.n_list
        if args.q_prime is not None:
            kwargs["q_prime"] = args.q_prime
        if args.z is not None:
            kwargs["z"] = args.z
    if name == "resolvent-identity" and args.z is not None:
        kwargs["z_values"] = (args.z,)
    if name == "rank-bound" and args.pairs is not None:
        kwargs["pairs"] = args.pairs
    if name == "covariance-table":
        if args.n is not None:
            kwargs["n"] = args.n
        if args.p is not None:
            kwargs["p"] = args.p
    if name == "kernel-lsd":
        kwargs["kernel"] = args.kernel
    return kwargs


def cmd_experiment(args) -> int:
    runner = EXPERIMENTS[args.name]
    out = _outdir(args)
    kwargs = _experiment_kwargs(args)
    report = runner(outdir=out if args.artifacts else None, **kwargs)
    inputs = report.inputs
    if "pairs" in inputs:
        n_tag, p_tag = inputs["pairs"][0]
    else:
        n_tag = inputs.get("n", inputs["n_list"][0] if "n_list" in inputs else "x")
        p_tag = inputs.get("p", inputs["p_list"][0] if "p_list" in inputs else "x")
    seeds = inputs.get("seeds", [0])
    path = os.path.join(out, f"{report.name}_{n_tag}_{p_tag}_{seeds[0]}.json")
    report.save(path)
    for line in report.summary_lines():
        print(line)
    print(path)
    return EXIT_OK if report.passed else EXIT_FAIL


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _pair_list(text: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    for chunk in text.split(","):
        n_str, p_str = chunk.split("x")
        pairs.append((int(n_str), int(p_str)))
    return tuple(pairs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kendall-rmt",
        description="Kendall correlation-matrix spectra and their limit laws",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, n_default=None, p_default=None):
        sp.add_argument("--n", type=int, default=n_default, help="sample count")
        sp.add_argument("--p", type=int, default=p_default, help="variable count")
        sp.add_argument("--seed", type=int, default=1)
        sp.add_argument("--marginal", choices=MARGINALS, default="uniform01")
        sp.add_argument("--out", default=None, help="output directory (default $KS_OUT_DIR or ./out)")
        sp.add_argument("--threads", type=int, default=None)

    sp = sub.add_parser("gen", help="write a seeded data matrix CSV")
    common(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("tau", help="Kendall correlation matrix")
    common(sp)
    sp.add_argument("--data", default=None, help="read the data matrix from a CSV instead of generating")
    sp.add_argument("--method", choices=("fast", "naive", "signs"), default="fast")
    sp.add_argument("--format", choices=("csv", "bin"), default="csv")
    sp.set_defaults(func=cmd_tau)

    sp = sub.add_parser("hmat", help="residual Gram matrix of the sign decomposition")
    common(sp)
    sp.add_argument("--data", default=None)
    sp.add_argument("--mode", choices=MODES, default="exact_cdf")
    sp.add_argument("--format", choices=("csv", "bin"), default="csv")
    sp.set_defaults(func=cmd_hmat)

    sp = sub.add_parser("spectrum", help="eigenvalues of tau or the residual Gram matrix")
    common(sp)
    sp.add_argument("--data", default=None)
    sp.add_argument("--matrix", choices=("tau", "h"), default="tau")
    sp.add_argument("--mode", choices=MODES, default="exact_cdf")
    sp.add_argument("--bins", type=int, default=None)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("law", help="density/CDF grid of a limit law")
    common(sp, n_default=70, p_default=1225)
    sp.add_argument("--regime", choices=REGIMES, default="quadratic")
    sp.add_argument("--q", type=float, default=None, help="explicit parameter overriding the regime")
    sp.add_argument("--scale", type=float, default=1.0)
    sp.add_argument("--shift", type=float, default=0.0)
    sp.add_argument("--grid-points", type=int, default=513)
    sp.set_defaults(func=cmd_law)

    sp = sub.add_parser("alpha", help="residual-variance coefficient of a kernel")
    common(sp)
    sp.add_argument("--kernel", choices=KERNEL_TAGS, default="sign")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.set_defaults(func=cmd_alpha)

    sp = sub.add_parser("figure", help="figure-ready histogram + law-overlay data")
    common(sp)
    sp.add_argument("which", choices=("fig1", "fig2"))
    sp.add_argument("--p-list", type=_int_list, default=None)
    sp.add_argument("--mode", choices=MODES, default="exact_cdf")
    sp.add_argument("--bins", type=int, default=None)
    sp.set_defaults(func=cmd_figure)

    sp = sub.add_parser("experiment", help="run a named verification campaign")
    common(sp)
    sp.add_argument("name", choices=sorted(EXPERIMENTS))
    sp.add_argument("--seeds", type=int, default=None, help="number of seeds (base --seed)")
    sp.add_argument("--mode", choices=MODES, default="exact_cdf")
    sp.add_argument("--kernel", choices=KERNEL_TAGS, default="sine")
    sp.add_argument("--p-list", type=_int_list, default=None)
    sp.add_argument("--n-list", type=_int_list, default=None)
    sp.add_argument("--pairs", type=_pair_list, default=None, help="e.g. 20x100,30x300")
    sp.add_argument("--q-prime", type=float, default=None)
    sp.add_argument("--z", type=complex, default=None)
    sp.add_argument("--artifacts", action="store_true", help="also write spectra/histograms")
    sp.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None):
        _backend.set_num_threads(args.threads)
    try:
        return args.func(args)
    except (ValueError, TieError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
