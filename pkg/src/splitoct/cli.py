"""Command-line harness over the verification suites and numeric reports.

Subcommands: verify (module invariant suites), table (multiplication table),
spectrum (multiplet rows per helicity sector), twopoint (flat, vertex, and
de Sitter kernels).  Reports are deterministic for a fixed RunConfig up to
the elapsed fields; exit codes are 0 all-pass, 1 any-fail, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import clifford, composition, geometry, oscillator, vertex
from .reporting import Check, Report, run_check

__all__ = [
    "RunConfig",
    "cmd_verify",
    "cmd_table",
    "cmd_spectrum",
    "cmd_twopoint",
    "main",
]

MODULES = ("composition", "clifford", "oscillator", "geometry", "vertex")
FORMATS = ("json", "csv", "text")
TWOPOINT_MODES = ("flat", "vertex", "ds")
DEFAULT_SEED = 20406
DEFAULT_LAMBDAS = (Fraction(0), Fraction(1))

# gated convergent sample used when twopoint --mode vertex gets no points
VERTEX_Z = (0.1 + 0.05j, -0.2j, 0.15, 1.1 + 0.1j)
VERTEX_U = (0.05, 0.02 + 0.01j, -0.04, 0.06j)


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: subcommand plus every tunable the suites accept."""

    subcommand: str
    modules: tuple[str, ...] = MODULES
    lambdas: tuple[Fraction, ...] = DEFAULT_LAMBDAS
    e_max: Fraction | None = None
    n_max: int = 40
    tol: float | None = None
    fmt: str = "text"
    out: str | None = None
    seed: int = DEFAULT_SEED
    mode: str = "flat"
    z: tuple[complex, ...] | None = None
    u: tuple[complex, ...] | None = None
    radius: float = 1.0

    def __post_init__(self) -> None:
        unknown = [m for m in self.modules if m not in MODULES]
        if unknown:
            raise ValueError(f"unknown module {unknown[0]!r}")
        if self.e_max is not None and self.e_max < 1:
            raise ValueError("emax must be at least 1")
        if self.n_max < 0:
            raise ValueError("nmax must be nonnegative")
        if self.tol is not None and self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.mode not in TWOPOINT_MODES:
            raise ValueError(f"mode must be one of {TWOPOINT_MODES}")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        for point in (self.z, self.u):
            if point is not None and len(point) != 4:
                raise ValueError("points need four comma-separated components")


# ---------------------------------------------------------------------------
# verify


def _verify_runner(name: str, cfg: RunConfig):
    if name == "composition":
        return lambda: composition.composition_suite(seed=cfg.seed)
    if name == "clifford":
        return lambda: (
            clifford.clifford_relations_check()
            + [clifford.so42_commutator_check()]
            + clifford.trace_identity_suite()
        )
    if name == "oscillator":

        def run_oscillator() -> list[Check]:
            checks = oscillator.zero_mode_suite(oscillator.Truncation(3))
            for lam in cfg.lambdas:
                checks.extend(oscillator.sector_suite(lam, cfg.e_max))
            return checks

        return run_oscillator
    if name == "geometry":
        tol = cfg.tol if cfg.tol is not None else geometry.DEFAULT_TOL
        return lambda: geometry.geometry_suite(seed=cfg.seed, tol=tol)
    return lambda: vertex.vertex_suite(n_max=cfg.n_max)


def cmd_verify(cfg: RunConfig) -> Report:
    """Run the selected module suites on a worker pool, assemble in order."""
    report = Report("verify")
    runners = [_verify_runner(name, cfg) for name in cfg.modules]
    with ThreadPoolExecutor(max_workers=len(runners)) as pool:
        for future in [pool.submit(run) for run in runners]:
            report.extend(future.result())
    return report


# ---------------------------------------------------------------------------
# table


def cmd_table(cfg: RunConfig) -> str:
    if cfg.fmt == "text":
        return composition.table_text()
    csv = composition.table_csv()
    if cfg.fmt == "csv":
        return csv
    rows = [line.split(",") for line in csv.strip().split("\n")]
    return json.dumps({"schema": 1, "suite": "table", "rows": rows}, indent=2) + "\n"


# ---------------------------------------------------------------------------
# spectrum


def _spectrum_rows(lam: Fraction, e_max: Fraction) -> list[dict]:
    trunc = oscillator.Truncation(e_max)
    scalars = oscillator.casimirs(oscillator.Truncation(abs(lam) + 4), lam)
    rows = []
    for multiplet in oscillator.so4_decompose(trunc, lam):
        label = multiplet.label
        dim = int((2 * label.j_left + 1) * (2 * label.j_right + 1))
        rows.append(
            {
                "lambda": lam,
                "energy": label.energy,
                "j_left": label.j_left,
                "j_right": label.j_right,
                "multiplicity": multiplet.multiplicity,
                "dim": dim,
                "c2_su22": scalars["c2_su22"],
                "c2_sp22": scalars["c2_sp22"],
            }
        )
    return rows


def cmd_spectrum(cfg: RunConfig) -> tuple[Report, list[dict]]:
    """Multiplet rows (lambda, E, jL, jR, mult, dim, C2) plus their checks."""
    report = Report("spectrum")
    rows: list[dict] = []
    for lam in cfg.lambdas:
        e_max = cfg.e_max if cfg.e_max is not None else abs(lam) + 3
        sector = _spectrum_rows(lam, e_max)
        rows.extend(sector)
        tag = str(lam)

        def energies(sector=sector, lam=lam, e_max=e_max) -> bool:
            seen = sorted({r["energy"] for r in sector})
            want = []
            step = abs(lam) + 1
            while step <= e_max:
                want.append(step)
                step += 1
            return seen == want

        report.extend([run_check(f"spectrum-energies-{tag}", "Delta", energies)])

        def spin_bound(sector=sector) -> bool:
            return all(
                r["j_left"] <= r["energy"] - 1 and r["j_right"] <= r["energy"] - 1
                for r in sector
            )

        report.extend([run_check(f"spectrum-spin-bound-{tag}", "Delta", spin_bound)])

        def level_dims(sector=sector, lam=lam, e_max=e_max) -> bool:
            space = oscillator.build_space(oscillator.Truncation(e_max), lam)
            counts: dict = {}
            for state in space.states:
                counts[state.energy] = counts.get(state.energy, 0) + 1
            totals: dict = {}
            for r in sector:
                totals[r["energy"]] = (
                    totals.get(r["energy"], 0) + r["multiplicity"] * r["dim"]
                )
            return totals == counts

        report.extend([run_check(f"spectrum-dimension-{tag}", "d(Delta)", level_dims)])

        def casimir_scalars(sector=sector, lam=lam) -> bool:
            want_su = -3 * (lam * lam - 1)
            want_sp = -2 * (lam * lam - 1)
            return all(
                r["c2_su22"] == want_su and r["c2_sp22"] == want_sp for r in sector
            )

        report.extend(
            [run_check(f"spectrum-casimirs-{tag}", "TheormCasimirs", casimir_scalars)]
        )
    return report, rows


_SPECTRUM_COLUMNS = (
    "lambda",
    "energy",
    "j_left",
    "j_right",
    "multiplicity",
    "dim",
    "c2_su22",
    "c2_sp22",
)


def _spectrum_csv(rows: list[dict]) -> str:
    lines = [",".join(_SPECTRUM_COLUMNS)]
    for r in rows:
        lines.append(",".join(str(r[c]) for c in _SPECTRUM_COLUMNS))
    return "\n".join(lines) + "\n"


def _spectrum_text(report: Report, rows: list[dict]) -> str:
    header = "".join(f"{c:>14s}" for c in _SPECTRUM_COLUMNS)
    lines = [header]
    for r in rows:
        lines.append("".join(f"{str(r[c]):>14s}" for c in _SPECTRUM_COLUMNS))
    lines.append("")
    return "\n".join(lines) + report.to_text()


# ---------------------------------------------------------------------------
# twopoint


def _sample_ds_point(rng, R: float):
    zeta0 = float(rng.uniform(-0.8, 0.8)) * R
    direction = rng.normal(size=4)
    direction /= np.linalg.norm(direction)
    spatial = direction * math.sqrt(R * R + zeta0 * zeta0)
    return (zeta0, *(float(c) for c in spatial))


def _twopoint_flat(cfg: RunConfig) -> tuple[list[Check], list[dict]]:
    rng = np.random.default_rng(cfg.seed)
    rows: list[dict] = []
    pairs = []
    for k in range(8):
        p = tuple(float(c) for c in rng.uniform(-2, 2, size=6))
        q = tuple(float(c) for c in rng.uniform(-2, 2, size=6))
        try:
            value = geometry.sixd_twopoint(p, q)
            rows.append({"pair": k, "p": p, "q": q, "value": value, "status": "ok"})
            pairs.append((p, q, value))
        except geometry.LightconeSingularity:
            rows.append({"pair": k, "p": p, "q": q, "value": None, "status": "singular"})
    coincident = tuple(float(c) for c in rng.uniform(-1, 1, size=6))
    try:
        geometry.sixd_twopoint(coincident, coincident)
        singular_ok = False
    except geometry.LightconeSingularity:
        singular_ok = True
        rows.append(
            {"pair": 8, "p": coincident, "q": coincident, "value": None, "status": "singular"}
        )

    def symmetry() -> float:
        return max(
            abs(v - geometry.sixd_twopoint(q, p)) / abs(v) for p, q, v in pairs
        )

    def scaling() -> float:
        worst = 0.0
        for p, q, v in pairs:
            scaled = geometry.sixd_twopoint(
                tuple(3.0 * c for c in p), tuple(3.0 * c for c in q)
            )
            worst = max(worst, abs(scaled * 9.0 - v) / abs(v))
        return worst

    tol = cfg.tol if cfg.tol is not None else 1e-12
    checks = [
        run_check("flat-kernel-symmetry", "Conformal Massless Scalar Field in dS Space", symmetry, tol),
        run_check("flat-kernel-scaling", "Conformal Massless Scalar Field in dS Space", scaling, tol),
        run_check("flat-singular-row", "Conformal Massless Scalar Field in dS Space", lambda: singular_ok),
    ]
    return checks, rows


def _twopoint_ds(cfg: RunConfig) -> tuple[list[Check], list[dict]]:
    rng = np.random.default_rng(cfg.seed)
    R = cfg.radius
    rows: list[dict] = []

    antipode = _sample_ds_point(rng, R)
    opposite = tuple(-c for c in antipode)
    value = geometry.ds_twopoint(antipode, opposite, R)
    expected = 1.0 / (16 * math.pi**2 * R * R)
    rows.append(
        {
            "pair": 0,
            "zeta": antipode,
            "zeta_prime": opposite,
            "value": value,
            "expected": expected,
            "status": "ok",
        }
    )

    residuals = []
    for k in range(1, 9):
        zeta = _sample_ds_point(rng, R)
        zeta_prime = _sample_ds_point(rng, R)
        try:
            on_shell = geometry.ds_twopoint(zeta, zeta_prime, R)
        except geometry.LightconeSingularity:
            rows.append(
                {"pair": k, "zeta": zeta, "zeta_prime": zeta_prime, "value": None, "status": "singular"}
            )
            continue
        # lift to the quadric section zeta5 = R, where the 6d kernel restricts
        p = (zeta[0], R, *zeta[1:])
        q = (zeta_prime[0], R, *zeta_prime[1:])
        pulled = geometry.sixd_twopoint(p, q)
        residual = abs(pulled - on_shell) / abs(on_shell)
        residuals.append(residual)
        rows.append(
            {
                "pair": k,
                "zeta": zeta,
                "zeta_prime": zeta_prime,
                "value": on_shell,
                "pullback": pulled,
                "residual": residual,
                "status": "ok",
            }
        )

    tol = cfg.tol if cfg.tol is not None else 1e-12
    checks = [
        run_check(
            "ds-antipodal", "Conformal Massless Scalar Field in dS Space", lambda: abs(value - expected) / expected, tol
        ),
        run_check("ds-pullback", "Conformal Massless Scalar Field in dS Space", lambda: max(residuals), tol),
    ]
    return checks, rows


def _twopoint_vertex(cfg: RunConfig) -> tuple[list[Check], list[dict]]:
    z = cfg.z if cfg.z is not None else VERTEX_Z
    u = cfg.u if cfg.u is not None else VERTEX_U
    series_cfg = vertex.VertexSeriesConfig(n_max=cfg.n_max)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", vertex.DomainWarning)
            result = vertex.twopoint_series(z, u, series_cfg)
    except geometry.LightconeSingularity:
        return [], [{"z": _complex_pair_list(z), "u": _complex_pair_list(u), "status": "singular"}]
    row = {
        "z": _complex_pair_list(z),
        "u": _complex_pair_list(u),
        "series": _complex_pair(result.series),
        "closed": _complex_pair(result.closed),
        "residual": result.residual,
        "terms": [_complex_pair(t) for t in result.terms],
        "gate": result.gate,
        "flagged": result.flagged,
        "status": "ok",
    }
    tol = cfg.tol if cfg.tol is not None else 1e-8
    checks = [
        run_check("vertex-gate", "2.47", lambda: not result.flagged),
        run_check("vertex-series-residual", "2.47", lambda: result.residual, tol),
    ]
    return checks, [row]


def _complex_pair(value) -> list[float]:
    c = complex(value)
    return [c.real, c.imag]


def _complex_pair_list(values) -> list[list[float]]:
    return [_complex_pair(v) for v in values]


def cmd_twopoint(cfg: RunConfig) -> tuple[Report, list[dict]]:
    """Kernel rows for the selected mode; singular rows reported, not fatal."""
    runner = {
        "flat": _twopoint_flat,
        "ds": _twopoint_ds,
        "vertex": _twopoint_vertex,
    }[cfg.mode]
    checks, rows = runner(cfg)
    report = Report(f"twopoint-{cfg.mode}")
    report.extend(checks)
    return report, rows


def _twopoint_csv(rows: list[dict]) -> str:
    columns = sorted({key for row in rows for key in row})
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for c in columns:
            value = row.get(c, "")
            text = json.dumps(value) if isinstance(value, (list, type(None))) else str(value)
            cells.append('"' + text.replace('"', '""') + '"' if "," in text else text)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument plumbing


def _parse_lambdas(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(tok.strip()) for tok in text.split(",") if tok.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad lambda list {text!r}") from exc


def _parse_point(text: str) -> tuple[complex, ...]:
    try:
        return tuple(complex(tok.strip()) for tok in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad point {text!r}") from exc


def _parse_modules(text: str) -> tuple[str, ...]:
    if text == "all":
        return MODULES
    return tuple(tok.strip() for tok in text.split(",") if tok.strip())


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path) as handle:
        for raw in handle:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line {raw.strip()!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip().strip('"')
    return values


_FLAG_KEYS = ("module", "lambda", "emax", "nmax", "tol", "format", "out", "seed",
              "mode", "z", "u", "radius")


def _build_config(args: argparse.Namespace) -> RunConfig:
    merged: dict[str, str | None] = {key: None for key in _FLAG_KEYS}
    if args.config:
        for key, value in _read_config_file(args.config).items():
            if key not in merged:
                raise ValueError(f"unknown config key {key!r}")
            merged[key] = value
    for key in _FLAG_KEYS:
        flag = getattr(args, key.replace("-", "_"), None)
        if flag is not None:
            merged[key] = flag
    kwargs: dict = {"subcommand": args.subcommand}
    if merged["module"] is not None:
        kwargs["modules"] = _parse_modules(str(merged["module"]))
    if merged["lambda"] is not None:
        kwargs["lambdas"] = _parse_lambdas(str(merged["lambda"]))
    if merged["emax"] is not None:
        kwargs["e_max"] = Fraction(str(merged["emax"]))
    if merged["nmax"] is not None:
        kwargs["n_max"] = int(merged["nmax"])
    if merged["tol"] is not None:
        kwargs["tol"] = float(merged["tol"])
    if merged["format"] is not None:
        kwargs["fmt"] = str(merged["format"])
    if merged["out"] is not None:
        kwargs["out"] = str(merged["out"])
    if merged["seed"] is not None:
        kwargs["seed"] = int(merged["seed"])
    if merged["mode"] is not None:
        kwargs["mode"] = str(merged["mode"])
    if merged["z"] is not None:
        kwargs["z"] = _parse_point(str(merged["z"]))
    if merged["u"] is not None:
        kwargs["u"] = _parse_point(str(merged["u"]))
    if merged["radius"] is not None:
        kwargs["radius"] = float(merged["radius"])
    return RunConfig(**kwargs)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--module", help=f"comma list from {MODULES} or 'all'")
    common.add_argument("--lambda", dest="lam", help="comma list of helicities, e.g. 0,0.5,1")
    common.add_argument("--emax", help="energy truncation (half-integers allowed)")
    common.add_argument("--nmax", type=int, help="mode-sum truncation order")
    common.add_argument("--tol", type=float, help="tolerance override")
    common.add_argument("--format", choices=FORMATS, help="output format")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, help="seed for randomized checks")
    common.add_argument("--config", help="key=value file; flags win on conflict")

    parser = argparse.ArgumentParser(
        prog="splitoct",
        description="verification suites and reports for the conformal construction",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("verify", parents=[common], help="run module invariant suites")
    sub.add_parser("table", parents=[common], help="split-octonion multiplication table")
    sub.add_parser("spectrum", parents=[common], help="multiplet rows per sector")
    two = sub.add_parser("twopoint", parents=[common], help="two-point kernel reports")
    two.add_argument("--mode", choices=TWOPOINT_MODES, help="kernel family")
    two.add_argument("--z", help="four comma-separated complex components")
    two.add_argument("--u", help="four comma-separated complex components")
    two.add_argument("--radius", type=float, help="hyperboloid radius for ds mode")
    return parser


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _render_report(cfg: RunConfig, report: Report, rows: list[dict] | None = None) -> str:
    if cfg.fmt == "json":
        payload = report.as_dict()
        if rows is not None:
            payload["rows"] = [
                {k: str(v) if isinstance(v, Fraction) else v for k, v in row.items()}
                for row in rows
            ]
        return json.dumps(payload, indent=2) + "\n"
    if cfg.fmt == "csv":
        if cfg.subcommand == "spectrum":
            return _spectrum_csv(rows or [])
        if cfg.subcommand == "twopoint":
            return _twopoint_csv(rows or [])
        return report.to_csv()
    if cfg.subcommand == "spectrum":
        return _spectrum_text(report, rows or [])
    return report.to_text()


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    # twopoint-only flags exist on every Namespace the dispatch below touches
    for name in ("mode", "z", "u", "radius"):
        if not hasattr(args, name):
            setattr(args, name, None)
    args.__dict__["lambda"] = args.lam
    try:
        cfg = _build_config(args)
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    if cfg.subcommand == "table":
        _emit(cfg, cmd_table(cfg))
        return 0
    try:
        if cfg.subcommand == "verify":
            report = cmd_verify(cfg)
            rows = None
        elif cfg.subcommand == "spectrum":
            report, rows = cmd_spectrum(cfg)
        else:
            report, rows = cmd_twopoint(cfg)
    except (ValueError, oscillator.HeadroomError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    _emit(cfg, _render_report(cfg, report, rows))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
