"""Command-line front end.

Subcommands: spectrum | steady | dynamics | gap | optimize | verify, each
taking --config <json>, repeatable --set key=value overrides (flags win),
and --out <dir>.  All emitted CSV/SVG files are deterministic: floats are
written with shortest round-trip formatting and files are written
atomically (temp + rename).  Exit codes: 0 success, 1 check/degeneracy
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

import numpy as np

from . import blockstruct, closedform, dynamics, gapopt, model as model_mod
from . import spectral, superop, svgplot
from .errors import DegenerateSteadySpaceError, LindladderError, WindowNotReachedError
from .model import OBC, PBC, build_model
from .operators import basis_state, effective_hamiltonian

DEFAULT_CONFIG = {
    "l_max": 30,
    "omega": 0.0,
    "rabi_pattern": "uniform",
    "rabi": 0.25,
    "gamma0": 0.0,
    "gamma1": 1.0,
    "gamma2": 0.0,
    "boundary": "obc",
}


def fmt(x) -> str:
    """Shortest decimal that round-trips; complex parts formatted separately."""
    return repr(float(x))


def load_config(path: str | None) -> dict:
    config = dict(DEFAULT_CONFIG)
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ValueError("config file must hold a flat JSON object")
        config.update(loaded)
    return config


def apply_overrides(config: dict, overrides) -> dict:
    config = dict(config)
    for item in overrides or ():
        if "=" not in item:
            raise ValueError(f"--set expects key=value, got {item!r}")
        key, raw = item.split("=", 1)
        try:
            config[key] = json.loads(raw)
        except json.JSONDecodeError:
            config[key] = raw
    return config


def write_atomic(path: str, text: str):
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_csv(path: str, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(row))
    write_atomic(path, "\n".join(lines) + "\n")


def _model_spectrum(config: dict, boundary: str):
    """Eigenvalues for the configured model at the given boundary.

    Uses the block path whenever it applies (always for large N); dense
    otherwise.
    """
    cfg = dict(config)
    cfg["boundary"] = boundary
    mdl = build_model(cfg)
    if mdl.gamma2 == 0:
        values = blockstruct.block_spectrum(mdl).eigenvalues
        values, _ = spectral.sort_spectrum(values)
        return mdl, values, "block"
    spec = spectral.full_spectrum(superop.liouvillian_matrix(mdl))
    return mdl, spec.eigenvalues, "dense"


def cmd_spectrum(config: dict, out_dir: str) -> int:
    which = str(config.get("boundaries", "both")).lower()
    boundaries = [OBC, PBC] if which == "both" else [which]
    rows = []
    series = {}
    for boundary in boundaries:
        _, values, _ = _model_spectrum(config, boundary)
        series[boundary] = values
        for i, z in enumerate(values):
            rows.append((boundary, str(i), fmt(z.real), fmt(z.imag)))
    write_csv(os.path.join(out_dir, "spectrum.csv"),
              ("boundary", "index", "re", "im"), rows)

    plot_series = []
    if PBC in series:
        plot_series.append(("PBC", np.real(series[PBC]), np.imag(series[PBC]),
                            svgplot.PBC_COLOR, "circle"))
    if OBC in series:
        plot_series.append(("OBC", np.real(series[OBC]), np.imag(series[OBC]),
                            svgplot.OBC_COLOR, "diamond"))
    write_atomic(
        os.path.join(out_dir, "spectrum.svg"),
        svgplot.scatter_svg(plot_series, title="Liouvillian spectrum",
                            xlabel="Re", ylabel="Im"),
    )

    if OBC in series and PBC in series:
        eps = float(config.get("enclosure_eps", 1e-6))
        report = spectral.spectrum_encloses(series[PBC], series[OBC], eps=eps)
        print(
            f"enclosure: inside={report.inside} outside={report.outside} "
            f"excluded={report.excluded} loop={report.loop_size} "
            f"dropped_center={report.dropped_center_points}"
        )
    return 0


def cmd_steady(config: dict, out_dir: str) -> int:
    mdl = build_model(config)
    sop = superop.liouvillian_matrix(mdl)
    try:
        rho = spectral.steady_state(sop)
    except DegenerateSteadySpaceError as exc:
        print(f"degenerate steady space (dimension {exc.dimension})")
        return 1
    rows = []
    N = mdl.dim
    for i in range(N):
        for j in range(N):
            rows.append((str(i + 1), str(j + 1), fmt(rho[i, j].real),
                         fmt(rho[i, j].imag)))
    write_csv(os.path.join(out_dir, "steady.csv"), ("row", "col", "re", "im"), rows)
    mag = np.abs(rho)
    edges = [x + 0.5 for x in range(N + 1)]
    write_atomic(
        os.path.join(out_dir, "steady.svg"),
        svgplot.heatmap_svg(mag, edges, edges, title="|rho_ss|",
                            xlabel="column n", ylabel="row n", vmin=0.0),
    )
    return 0


def cmd_dynamics(config: dict, out_dir: str) -> int:
    mdl = build_model(config)
    l0 = int(config.get("initial_l", 15))
    sector = str(config.get("initial_sector", model_mod.GROUND))
    rho0 = basis_state(mdl, l0, sector)
    t_max = float(config.get("t_max", 200.0))
    n_times = int(config.get("num_times", 1001))
    times = np.linspace(0.0, t_max, n_times)

    method = str(config.get("evolve_method", "ode")).lower()
    if method == "spectral":
        trace = dynamics.evolve_spectral(mdl, rho0, times)
    else:
        trace = dynamics.evolve_ode(mdl, rho0, times)

    if mdl.boundary == OBC and mdl.rabi[0] > 0 and mdl.gamma1 > 0:
        rho_ss = basis_state(mdl, 1, model_mod.GROUND)
    else:
        rho_ss = spectral.steady_state(superop.liouvillian_matrix(mdl))
    trace = dynamics.observables(trace, rho_ss)

    rows = []
    for i, t in enumerate(trace.times):
        for n in range(mdl.dim):
            rows.append((
                fmt(t), str(n + 1), fmt(trace.populations[i, n]),
                fmt(trace.mean_index[i]), fmt(trace.ntilde[i]),
            ))
    write_csv(os.path.join(out_dir, "dynamics.csv"),
              ("t", "n", "population", "mean_index", "ntilde"), rows)

    # heatmap columns decimated to <= 200 samples for plot size
    stride = max(1, (trace.times.size - 1) // 200 + 1)
    sub = trace.populations[::stride]
    sub_t = trace.times[::stride]
    t_edges = list(sub_t) + [sub_t[-1] + (sub_t[-1] - sub_t[0]) / max(len(sub_t) - 1, 1)]
    n_edges = [x + 0.5 for x in range(mdl.dim + 1)]
    write_atomic(
        os.path.join(out_dir, "dynamics.svg"),
        svgplot.heatmap_svg(
            sub.T, t_edges, n_edges, title="populations rho_nn(t)",
            xlabel="t", ylabel="state index n", vmin=0.0,
            overlay=(list(trace.times), list(trace.mean_index), "mean index"),
        ),
    )
    try:
        fit = dynamics.fit_asymptotic_rate(trace.times, trace.ntilde)
        print(f"fitted asymptotic rate: {fit.rate:.6f} "
              f"(window t=[{fit.window[0]:g}, {fit.window[1]:g}], "
              f"{fit.n_points} points)")
    except WindowNotReachedError:
        print("fitted asymptotic rate: window not reached over this horizon")
    return 0


def cmd_gap(config: dict, out_dir: str) -> int:
    scan = str(config.get("scan", "size")).lower()
    rows = []
    svg_text = None

    if scan == "surface":
        rabi_grid = np.asarray(config.get(
            "rabi_values", np.round(np.linspace(0.05, 0.5, 10), 10).tolist()
        ), dtype=float)
        omega_grid = np.asarray(config.get(
            "omega_values", np.round(np.linspace(0.0, 1.0, 11), 10).tolist()
        ), dtype=float)
        surface = gapopt.gap_surface(rabi_grid, omega_grid,
                                     float(config.get("gamma1", 1.0)))
        for i, om in enumerate(omega_grid):
            for j, rb in enumerate(rabi_grid):
                rows.append((f"omega[rabi={fmt(rb)}]", fmt(om),
                             fmt(surface.gaps[i, j]), "block"))
        r_edges = _edges(rabi_grid)
        o_edges = _edges(omega_grid)
        svg_text = svgplot.heatmap_svg(
            surface.gaps, r_edges, o_edges, title="Liouvillian gap",
            xlabel="rabi", ylabel="omega", vmin=0.0,
        )
    elif scan == "size":
        grid = [int(v) for v in config.get("scan_values", (8, 16, 24, 32, 40))]
        which = str(config.get("boundaries", "both")).lower()
        boundaries = [OBC, PBC] if which == "both" else [which]
        series = []
        for boundary in boundaries:
            cfg = dict(config)
            cfg["boundary"] = boundary
            points = gapopt.gap_scan(cfg, "size", grid)
            series.append((boundary.upper(), [p.value for p in points],
                           [p.gap for p in points]))
            for p in points:
                rows.append((f"size[{boundary}]", fmt(p.value), fmt(p.gap),
                             p.method))
        svg_text = svgplot.line_svg(series, title="gap vs system size",
                                    xlabel="N", ylabel="gap")
    else:
        if "scan_values" in config:
            grid = [float(v) for v in config["scan_values"]]
        else:
            lo = float(config.get("scan_min", 0.0))
            hi = float(config.get("scan_max", 1.0))
            num = int(config.get("scan_num", 21))
            grid = np.linspace(lo, hi, num).tolist()
        points = gapopt.gap_scan(config, scan, grid)
        for p in points:
            rows.append((scan, fmt(p.value), fmt(p.gap), p.method))
        svg_text = svgplot.line_svg(
            [(scan, [p.value for p in points], [p.gap for p in points])],
            title=f"gap vs {scan}", xlabel=scan, ylabel="gap",
        )

    write_csv(os.path.join(out_dir, "gap_scan.csv"),
              ("scan_parameter", "value", "gap", "method"), rows)
    write_atomic(os.path.join(out_dir, "gap_scan.svg"), svg_text)
    return 0


def _edges(grid):
    grid = list(grid)
    if len(grid) == 1:
        return [grid[0] - 0.5, grid[0] + 0.5]
    mids = [(a + b) / 2 for a, b in zip(grid, grid[1:])]
    return ([grid[0] - (mids[0] - grid[0])] + mids
            + [grid[-1] + (grid[-1] - mids[-1])])


def cmd_optimize(config: dict, out_dir: str) -> int:
    rabi_values = [float(v) for v in config.get("rabi_values", (0.1, 0.27, 0.3))]
    omega_values = [float(v) for v in config.get("omega_values", (0.0,))]
    gamma1 = float(config.get("gamma1", 1.0))
    header = ("rabi", "omega", "gamma0_star", "gap_star", "classification",
              "closedform_gamma0", "closedform_gap")
    rows = []
    print(" ".join(f"{h:>16s}" for h in header))
    for om in omega_values:
        for rb in rabi_values:
            res = gapopt.maximize_gap_gamma0(rb, om, gamma1)
            if om == 0.0:
                cf_g0 = closedform.gamma0_optimal(rb, gamma1).value
                cf_gap = closedform.gap_max(rb, gamma1).value
                cf = (fmt(cf_g0), fmt(cf_gap))
            else:
                cf = ("", "")
            row = (fmt(rb), fmt(om), fmt(res.gamma0_star), fmt(res.gap_star),
                   res.classification) + cf
            rows.append(row)
            print(" ".join(f"{c:>16s}" for c in row))
    write_csv(os.path.join(out_dir, "optimize.csv"), header, rows)
    return 0


def _check(name, ok, detail) -> bool:
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return ok


def cmd_verify(config: dict, out_dir: str) -> int:
    """Run the oracle suite; nonzero exit on any failed invariant."""
    del out_dir
    rng = np.random.default_rng(20240801)
    ok = True

    # vectorization identity vec(A rho B) = (A kron B^T) vec(rho)
    n = 3
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    lhs = superop.vectorize(a @ rho @ b)
    rhs = np.kron(a, b.T) @ superop.vectorize(rho)
    err = float(np.max(np.abs(lhs - rhs)))
    ok &= _check("vectorization-identity", err < 1e-13, f"max err {err:.2e}")

    # trace preservation across channels and boundaries
    worst = 0.0
    for boundary in (OBC, PBC):
        mdl = build_model({"l_max": 4, "omega": 0.1, "rabi": 0.3,
                           "gamma0": 0.2, "gamma1": 0.8, "gamma2": 0.15,
                           "boundary": boundary})
        worst = max(worst, superop.trace_preservation_residual(
            superop.liouvillian_matrix(mdl)))
    ok &= _check("trace-preservation", worst < 1e-10, f"max residual {worst:.2e}")

    # block path equals dense path (both boundaries)
    worst = 0.0
    for boundary in (OBC, PBC):
        mdl = build_model({"l_max": 4, "omega": 0.12, "rabi": 0.27,
                           "gamma0": 0.1, "gamma1": 0.9, "boundary": boundary})
        dense = spectral.full_spectrum(superop.liouvillian_matrix(mdl))
        block = blockstruct.block_spectrum(mdl).eigenvalues
        worst = max(worst, _matched_distance(dense.eigenvalues, block))
    ok &= _check("block-vs-dense", worst < 1e-8, f"max matched dist {worst:.2e}")

    # spectrum union property of the diagonal-sector generator
    mdl = build_model({"l_max": 6, "omega": 0.07, "rabi_pattern": "sqrt_l",
                       "rabi": 0.2, "gamma0": 0.15, "gamma1": 1.0})
    decomp = blockstruct.decompose_subsystems(effective_hamiltonian(mdl))
    l0 = blockstruct.build_L0(mdl, decomp)
    union = np.concatenate([
        np.linalg.eigvals(blockstruct.sector_diagonal_block(mdl, decomp, j))
        for j in range(len(decomp.blocks))
    ])
    err = _matched_distance(np.linalg.eigvals(l0), union)
    ok &= _check("triangular-union", err < 1e-8, f"max matched dist {err:.2e}")

    # band matrices reproduce the PBC diagonal-sector spectrum
    mdl = build_model({"l_max": 6, "rabi": 0.25, "gamma1": 1.0, "boundary": PBC})
    dense_l0 = np.linalg.eigvals(blockstruct.build_L0(mdl))
    bands = blockstruct.pbc_band_spectrum(mdl)
    err = _matched_distance(dense_l0, bands)
    ok &= _check("pbc-band-vs-dense", err < 1e-8, f"max matched dist {err:.2e}")

    # closed forms against the numeric gap
    worst = 0.0
    for rb in (0.05, 0.1, 0.15, 0.2, 0.25, 0.4):
        worst = max(worst, abs(closedform.gap_obc(rb, 1.0).value
                               - gapopt.uniform_gap(rb, 0.0, 1.0)))
    ok &= _check("closedform-gap-obc", worst < 1e-6, f"max dev {worst:.2e}")
    try:
        worst = closedform.validate_omega_branch()
        ok &= _check("closedform-omega-branch", True, f"max dev {worst:.2e}")
    except LindladderError as exc:
        ok &= _check("closedform-omega-branch", False, str(exc))
    worst = 0.0
    for rb in (0.05, 0.1, 0.2, 0.3, 0.5):
        for g0 in (0.0, 0.05, 0.1, 0.2, 0.3):
            worst = max(worst, abs(closedform.gap_with_gamma0(rb, g0, 1.0).value
                                   - gapopt.uniform_gap(rb, g0, 1.0)))
    ok &= _check("closedform-gamma0", worst < 1e-6, f"max dev {worst:.2e}")

    # steady-state structure
    mdl = build_model({"l_max": 6, "rabi": 0.25, "gamma1": 1.0})
    rho = spectral.steady_state(superop.liouvillian_matrix(mdl))
    dev = abs(rho[0, 0] - 1.0) + float(np.max(np.abs(rho))) - float(np.abs(rho[0, 0]))
    ok &= _check("steady-obc-localized", dev < 1e-8, f"deviation {dev:.2e}")

    print("verify:", "all checks passed" if ok else "CHECKS FAILED")
    return 0 if ok else 1


def _matched_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max distance of the optimal eigenvalue pairing (Hungarian assignment)."""
    from scipy.optimize import linear_sum_assignment

    if a.size != b.size:
        return float("inf")
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


COMMANDS = {
    "spectrum": cmd_spectrum,
    "steady": cmd_steady,
    "dynamics": cmd_dynamics,
    "gap": cmd_gap,
    "optimize": cmd_optimize,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lindladder",
        description="Liouvillian spectra, gaps, steady states and dynamics "
                    "of the dissipative two-band ladder",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="flat JSON config file")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a config key (repeatable; flags win)")
        p.add_argument("--out", default=".", help="output directory")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = apply_overrides(load_config(args.config), args.set)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    os.makedirs(args.out, exist_ok=True)
    try:
        return COMMANDS[args.command](config, args.out)
    except LindladderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
