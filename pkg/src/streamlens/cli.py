"""Command-line front door: ingest CSV, run analyses, emit CSV/JSON and SVG.

Exit codes: 0 success, 1 data error (bad cells, degenerate inputs),
2 usage error (unknown flags, missing files). Outputs are deterministic:
re-running a command on the same inputs reproduces every file byte for
byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import core, deltal, hurst, kernels, multifractal, spectral, stats, svgplot
from . import cwt as cwt_mod
from . import synth as synth_mod
from . import xwt as xwt_mod
from .errors import DataError

FMT = core.FLOAT_FMT


def _fmt_cell(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return FMT % v


def write_table(path, columns, rows, fmt="csv"):
    """Write a rectangular numeric table as CSV (17 sig digits) or JSON."""
    if fmt == "json":
        payload = {
            "columns": list(columns),
            "rows": [[float(v) for v in row] for row in rows],
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
            fh.write("\n")
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt_cell(v) for v in row) + "\n")


def read_table(path):
    """Read back a table written by write_table; returns (columns, 2d array)."""
    with open(path, encoding="utf-8") as fh:
        first = fh.read(1)
        fh.seek(0)
        if first == "{":
            payload = json.load(fh)
            return payload["columns"], np.asarray(payload["rows"], dtype=np.float64)
        lines = [ln for ln in fh.read().splitlines() if ln]
    columns = lines[0].split(",")
    data = np.asarray(
        [[float(c) for c in ln.split(",")] for ln in lines[1:]], dtype=np.float64
    )
    return columns, data


def _table_ext(fmt):
    return "json" if fmt == "json" else "csv"


def _load_series(args, attr="input"):
    path = getattr(args, attr)
    return core.read_csv(path, column=args.column, start=args.start, step=args.step)


def _add_reader_opts(p):
    p.add_argument("--column", default=None,
                   help="value column name or 0-based index (default: last)")
    p.add_argument("--start", type=float, default=0.0, help="time origin")
    p.add_argument("--step", type=float, default=1.0, help="sampling interval")


def _add_common_opts(p):
    p.add_argument("--outdir", default=".", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="table output format")
    p.add_argument("--plot", action="store_true", help="also write SVG plots")
    p.add_argument("--config", default=None,
                   help="key=value file supplying flag defaults")


def _parse_range(text, geometric=True):
    """Parse 'a:b:n' into a grid of n values from a to b."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected a:b:n")
    a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    return np.geomspace(a, b, n) if geometric else np.linspace(a, b, n)


def _parse_qgrid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected lo:hi:step")
    lo, hi, step = float(parts[0]), float(parts[1]), float(parts[2])
    return multifractal.default_q_grid(lo, hi, step)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="streamlens",
        description="Nonlinear time-series analysis for information streams",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("acf", help="autocorrelation function")
    p.add_argument("input")
    p.add_argument("--max-lag", type=int, default=None)
    p.add_argument("--covariance", action="store_true",
                   help="emit autocovariance instead of autocorrelation")
    _add_reader_opts(p)
    _add_common_opts(p)

    p = sub.add_parser("ccf", help="cross-correlation function")
    p.add_argument("input")
    p.add_argument("input2")
    p.add_argument("--max-lag", type=int, default=None)
    p.add_argument("--normalization", choices=("standard", "paper"),
                   default="standard")
    _add_reader_opts(p)
    _add_common_opts(p)

    p = sub.add_parser("spectrum", help="one-sided Fourier spectrum")
    p.add_argument("input")
    p.add_argument("--scaled", action="store_true",
                   help="apply the 2/T display scaling to amplitudes")
    _add_reader_opts(p)
    _add_common_opts(p)

    p = sub.add_parser("gabor", help="windowed Gabor transform")
    p.add_argument("input")
    p.add_argument("--window-width", type=float, default=None,
                   help="Gaussian window width in samples (default T/10)")
    _add_reader_opts(p)
    _add_common_opts(p)

    p = sub.add_parser("cwt", help="continuous wavelet transform")
    p.add_argument("input")
    p.add_argument("--wavelet", default="mexican_hat",
                   choices=sorted(cwt_mod._WAVELETS))
    p.add_argument("--scales", type=lambda t: _parse_range(t), default=None,
                   metavar="a:b:n", help="log-spaced scale grid")
    _add_reader_opts(p)
    _add_common_opts(p)

    p = sub.add_parser("xwt", help="compare two series in wavelet space")
    p.add_argument("input")
    p.add_argument("input2")
    p.add_argument("--metric", choices=("diffmod", "phase", "crwt"),
                   default="diffmod")
    p.add_argument("--wavelet", default="morlet", choices=sorted(cwt_mod._WAVELETS))
    p.add_argument("--scales", type=lambda t: _parse_range(t), default=None,
                   metavar="a:b:n")
    _add_reader_opts(p)
    _add_common_opts(p)

    p = sub.add_parser("deltal", help="deviation-from-local-fits diagram")
    p.add_argument("input")
    p.add_argument("--raw", action="store_true",
                   help="analyze raw values instead of the accumulated profile")
    p.add_argument("--e-matrix", action="store_true",
                   help="also write the full E(j,s) table")
    _add_reader_opts(p)
    _add_common_opts(p)

    p = sub.add_parser("hurst", help="R/S Hurst estimation")
    p.add_argument("input")
    p.add_argument("--min-prefix", type=int, default=64)
    p.add_argument("--no-rolling", action="store_true",
                   help="skip the prefix-time H(t) trajectory")
    _add_reader_opts(p)
    _add_common_opts(p)

    p = sub.add_parser("mf", help="multifractal spectrum estimation")
    p.add_argument("input")
    p.add_argument("--method", choices=("oscillation", "mfdfa", "wtmm"),
                   default="oscillation")
    p.add_argument("--q", type=_parse_qgrid, default=None, metavar="lo:hi:step")
    p.add_argument("--convention", choices=("unnormalized", "normalized"),
                   default="unnormalized", help="oscillation only")
    p.add_argument("--wavelet", default="mexican_hat",
                   choices=sorted(cwt_mod._WAVELETS), help="wtmm only")
    p.add_argument("--poly-order", type=int, default=1, help="mfdfa only")
    _add_reader_opts(p)
    _add_common_opts(p)

    p = sub.add_parser("synth", help="synthetic oracle processes")
    p.add_argument("--kind", choices=synth_mod.KINDS, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hurst", type=float, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("-o", "--output", default=None,
                   help="output CSV path (default <outdir>/synth.csv)")
    _add_common_opts(p)

    return parser


def _apply_config(argv):
    """Inject key=value pairs from a --config file as defaults.

    They are inserted right after the subcommand, so explicit flags win.
    """
    cfg_path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            cfg_path = argv[i + 1]
        elif tok.startswith("--config="):
            cfg_path = tok.split("=", 1)[1]
    if cfg_path is None:
        return argv
    if not os.path.exists(cfg_path):
        raise FileNotFoundError(cfg_path)
    injected = []
    with open(cfg_path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, value = (part.strip() for part in line.split("=", 1))
            flag = "--" + key.replace("_", "-")
            if value.lower() in ("true", "yes", "on"):
                injected.append(flag)
            elif value.lower() in ("false", "no", "off"):
                continue
            else:
                injected.extend([flag, value])
    return argv[:1] + injected + argv[1:]


def _check_inputs(args):
    for attr in ("input", "input2"):
        path = getattr(args, attr, None)
        if path is not None and not os.path.exists(path):
            print(f"error: input file not found: {path}", file=sys.stderr)
            return False
    return True


def _out(args, name):
    os.makedirs(args.outdir, exist_ok=True)
    return os.path.join(args.outdir, name)


def _run_acf(args):
    series = _load_series(args)
    fn = stats.autocovariance if args.covariance else stats.autocorrelation
    cf = fn(series, args.max_lag)
    ext = _table_ext(args.format)
    write_table(_out(args, f"acf.{ext}"), ["lag", "value"],
                list(zip(cf.lags, cf.values)), args.format)
    if args.plot:
        svgplot.line_plot(_out(args, "acf.svg"), cf.lags, [cf.values],
                          title=f"Autocorrelation: {series.label}",
                          xlabel="lag", ylabel="value")


def _run_ccf(args):
    x = _load_series(args)
    y = _load_series(args, "input2")
    cf = stats.cross_correlation(x, y, args.max_lag,
                                 normalization=args.normalization)
    ext = _table_ext(args.format)
    write_table(_out(args, f"ccf.{ext}"), ["lag", "value"],
                list(zip(cf.lags, cf.values)), args.format)
    if args.plot:
        svgplot.line_plot(_out(args, "ccf.svg"), cf.lags, [cf.values],
                          title=f"Cross-correlation: {x.label} vs {y.label}",
                          xlabel="lag", ylabel="value")


def _run_spectrum(args):
    series = _load_series(args)
    spec = spectral.dft(series)
    amps = spec.scaled_amplitudes() if args.scaled else spec.amplitudes
    ext = _table_ext(args.format)
    write_table(_out(args, f"spectrum.{ext}"),
                ["frequency", "amplitude", "phase"],
                list(zip(spec.frequencies, amps, spec.phases)), args.format)
    if args.plot:
        svgplot.line_plot(_out(args, "spectrum.svg"), spec.frequencies, [amps],
                          title=f"Spectrum: {series.label}",
                          xlabel="frequency", ylabel="amplitude")


def _run_gabor(args):
    series = _load_series(args)
    fld = spectral.gabor(series, window_width=args.window_width)
    ext = _table_ext(args.format)
    rows = []
    for fi, f in enumerate(fld.frequencies):
        for li, l in enumerate(fld.locations):
            c = fld.coefficients[fi, li]
            rows.append((f, l, c.real, c.imag))
    write_table(_out(args, f"gabor.{ext}"), ["frequency", "location", "re", "im"],
                rows, args.format)
    if args.plot:
        svgplot.heatmap(_out(args, "gabor.svg"), np.abs(fld.coefficients),
                        fld.locations, fld.frequencies,
                        title=f"Gabor modulus: {series.label}",
                        xlabel="location", ylabel="frequency")


def _field_rows(fld):
    rows = []
    for si, s in enumerate(fld.scales):
        for li, l in enumerate(fld.locations):
            c = fld.coefficients[si, li]
            rows.append((s, l, c.real, c.imag))
    return rows


def _run_cwt(args):
    series = _load_series(args)
    wavelet = cwt_mod.make_wavelet(args.wavelet)
    fld = cwt_mod.cwt(series, wavelet, args.scales)
    ext = _table_ext(args.format)
    write_table(_out(args, f"cwt.{ext}"), ["scale", "location", "re", "im"],
                _field_rows(fld), args.format)
    if args.plot:
        svgplot.heatmap(_out(args, "cwt.svg"), np.abs(fld.coefficients),
                        fld.locations, fld.scales, logy=True, coi=fld.coi,
                        title=f"CWT modulus ({wavelet.name}): {series.label}",
                        xlabel="location", ylabel="scale")


def _run_xwt(args):
    x = _load_series(args)
    y = _load_series(args, "input2")
    wavelet = cwt_mod.make_wavelet(args.wavelet)
    scales = args.scales
    wx = cwt_mod.cwt(x, wavelet, scales)
    wy = cwt_mod.cwt(y, wavelet, wx.scales)
    ext = _table_ext(args.format)
    if args.metric == "diffmod":
        cf = xwt_mod.diffmod(wx, wy)
    elif args.metric == "phase":
        cf = xwt_mod.phase_diff(wx, wy)
    else:
        cf = xwt_mod.crwt(wx, wy)
    rows = []
    if args.metric == "crwt":
        columns = ["scale", "location", "re", "im"]
        for si, s in enumerate(cf.scales):
            for li, l in enumerate(cf.locations):
                v = cf.values[si, li]
                rows.append((s, l, v.real, v.imag))
        display = np.abs(cf.values)
    else:
        columns = ["scale", "location", "value"]
        for si, s in enumerate(cf.scales):
            for li, l in enumerate(cf.locations):
                rows.append((s, l, cf.values[si, li]))
        display = np.abs(cf.values)
    write_table(_out(args, f"xwt.{ext}"), columns, rows, args.format)
    if args.plot:
        svgplot.heatmap(_out(args, "xwt.svg"), display, cf.locations, cf.scales,
                        logy=True,
                        title=f"{args.metric}: {x.label} vs {y.label}",
                        xlabel="location", ylabel="scale")


def _run_deltal(args):
    series = _load_series(args)
    diagram = deltal.delta_l(series, on_profile=not args.raw)
    ext = _table_ext(args.format)
    write_table(_out(args, f"deltal_f.{ext}"), ["s", "F"],
                list(zip(diagram.segment_sizes, diagram.F)), args.format)
    if args.e_matrix:
        rows = []
        for si, s in enumerate(diagram.segment_sizes):
            for j in range(diagram.E.shape[0]):
                rows.append((j, s, diagram.E[j, si]))
        write_table(_out(args, f"deltal_e.{ext}"), ["location", "s", "E"],
                    rows, args.format)
    if args.plot:
        svgplot.line_plot(_out(args, "deltal_f.svg"), diagram.segment_sizes,
                          [diagram.F], title=f"F(s): {series.label}",
                          xlabel="segment size", ylabel="F", logx=True, logy=True)
        svgplot.heatmap(_out(args, "deltal_e.svg"), diagram.E.T,
                        np.arange(diagram.E.shape[0]), diagram.segment_sizes,
                        title=f"E(j, s): {series.label}",
                        xlabel="location", ylabel="segment size")


def _run_hurst(args):
    series = _load_series(args)
    curve = hurst.rs_curve(series)
    fit = hurst.fit_hurst(curve)
    ext = _table_ext(args.format)
    payload = {
        "H": fit.H,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "fit_range": list(fit.fit_range),
        "warning": fit.warning,
    }
    with open(_out(args, "hurst.json"), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")
    write_table(_out(args, f"hurst_curve.{ext}"), ["n", "rs"],
                list(zip(curve.window_sizes, curve.rs)), args.format)
    rolling = None
    if not args.no_rolling and len(series) >= args.min_prefix:
        rolling = hurst.rolling_hurst(series, min_prefix=args.min_prefix)
        times = series.start + (rolling.prefix_lengths - 1) * series.step
        write_table(_out(args, f"hurst_rolling.{ext}"), ["t", "H"],
                    list(zip(times, rolling.values)), args.format)
    if args.plot:
        fitted = np.exp(fit.intercept) * curve.window_sizes.astype(float) ** fit.H
        svgplot.line_plot(_out(args, "hurst_rs.svg"), curve.window_sizes,
                          [curve.rs, fitted], labels=["R/S", f"fit H={fit.H:.3f}"],
                          title=f"Rescaled range: {series.label}",
                          xlabel="window size", ylabel="R/S", logx=True, logy=True)
        if rolling is not None:
            times = series.start + (rolling.prefix_lengths - 1) * series.step
            vline = None
            if rolling.break_time is not None:
                vline = series.start + (rolling.break_time - 1) * series.step
            svgplot.line_plot(_out(args, "hurst_rolling.svg"), times,
                              [rolling.values], title=f"H(t): {series.label}",
                              xlabel="t", ylabel="H", vline=vline)


def _run_mf(args):
    series = _load_series(args)
    ext = _table_ext(args.format)
    skeleton = None
    if args.method == "oscillation":
        fit = multifractal.oscillation_structure(series, q_grid=args.q,
                                                 convention=args.convention)
        spectrum = multifractal.legendre_spectrum(fit)
    elif args.method == "mfdfa":
        fit, spectrum = multifractal.mfdfa(series, q_grid=args.q,
                                           poly_order=args.poly_order)
    else:
        wavelet = cwt_mod.make_wavelet(args.wavelet)
        fld = cwt_mod.cwt(series, wavelet)
        skeleton = multifractal.build_skeleton(fld)
        fit, spectrum = multifractal.wtmm_spectrum(series, wavelet,
                                                   q_grid=args.q)
    write_table(_out(args, f"mf_tau.{ext}"), ["q", "tau", "r2"],
                list(zip(fit.q_grid, fit.tau, fit.fit_r2)), args.format)
    write_table(_out(args, f"mf_spectrum.{ext}"), ["h", "d", "q"],
                list(zip(spectrum.hs, spectrum.ds, spectrum.qs)), args.format)
    if skeleton is not None:
        rows = []
        for line_id, line in enumerate(skeleton.lines):
            for si, loc in zip(line.scale_indices, line.locations):
                rows.append((line_id, skeleton.source.scales[si], loc))
        write_table(_out(args, f"mf_skeleton.{ext}"),
                    ["line", "scale", "location"], rows, args.format)
    if args.plot:
        svgplot.line_plot(_out(args, "mf_tau.svg"), fit.q_grid, [fit.tau],
                          title=f"Scaling function ({args.method}): {series.label}",
                          xlabel="q", ylabel="tau(q)")
        svgplot.line_plot(_out(args, "mf_spectrum.svg"), spectrum.hs,
                          [spectrum.ds],
                          title=f"Multifractal spectrum ({args.method})",
                          xlabel="h", ylabel="d(h)")
        if skeleton is not None:
            pts = []
            for line in skeleton.lines:
                for si, loc in zip(line.scale_indices, line.locations):
                    pts.append((loc, skeleton.source.scales[si]))
            svgplot.heatmap(_out(args, "mf_skeleton.svg"),
                            np.abs(skeleton.source.coefficients),
                            skeleton.source.locations, skeleton.source.scales,
                            logy=True, points=pts,
                            title=f"Skeleton: {series.label}",
                            xlabel="location", ylabel="scale")


def _run_synth(args):
    spec = synth_mod.GeneratorSpec(kind=args.kind, length=args.length,
                                   seed=args.seed, hurst=args.hurst, p=args.p)
    series = synth_mod.generate(spec)
    path = args.output or _out(args, "synth.csv")
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    core.write_csv(series, path)


_RUNNERS = {
    "acf": _run_acf,
    "ccf": _run_ccf,
    "spectrum": _run_spectrum,
    "gabor": _run_gabor,
    "cwt": _run_cwt,
    "xwt": _run_xwt,
    "deltal": _run_deltal,
    "hurst": _run_hurst,
    "mf": _run_mf,
    "synth": _run_synth,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    threads = os.environ.get("STREAMLENS_THREADS")
    if threads is not None:
        try:
            kernels.set_threads(int(threads))
        except ValueError:
            pass
    try:
        argv = _apply_config(argv)
    except FileNotFoundError as exc:
        print(f"error: config file not found: {exc}", file=sys.stderr)
        return 2
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not _check_inputs(args):
        return 2
    try:
        _RUNNERS[args.command](args)
    except (DataError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
