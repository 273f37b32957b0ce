"""Command-line front end: ``casimir-lab <subcommand> [flags]``.

Configuration is layered: built-in defaults, then the JSON file named by
``CASIMIR_LAB_CONFIG``, then ``--config``, then explicit flags.

Exit codes: 0 success, 2 configuration error, 3 convergence error,
4 data error.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .constants import CM, EV, MV, PN, UM, parse_length
from .electrostatics import patch_force, patch_scale_window
from .errors import ConfigurationError, ConvergenceError, DataError, DomainError
from .fitstats import fit_two_param, relative_errors
from .io import (oscillators_from_config, read_dataset, read_imperfections, read_oscillators,
                 render_table, write_atomic)
from .lifshitz import LifshitzQuery, casimir_pressure, entropy_per_area
from .permittivity import DielectricCore, Drude, GeneralizedPlasma, Plasma
from .pfa import (SphereGeometry, find_masquerade, masquerade_deviation, pfa_force,
                  pfa_force_imperfect)

log = logging.getLogger("casimir_lab")

EXIT_OK, EXIT_CONFIG, EXIT_CONVERGENCE, EXIT_DATA = 0, 2, 3, 4
CONFIG_ENV = "CASIMIR_LAB_CONFIG"
MODELS = ("drude", "plasma", "gplasma", "dielectric")


@dataclass
class RunConfig:
    model: str = "drude"
    preset: str | None = "au"
    wp: float | None = None  # eV
    gamma: float | None = None  # eV
    oscillators: list = field(default_factory=list)  # [{"g_ev2", "omega_ev", "gamma_ev"}]
    oscillators_file: str | None = None
    include_dc: bool = False
    sigma0: float = 0.0  # eV-equivalent
    radius: float = 15.6  # cm
    temp: float = 300.0  # K
    dmin: str | None = None
    dmax: str | None = None
    points: int = 20
    log: bool = False
    sep: str = "1um"
    data: str | None = None
    attractive_magnitudes: bool = False
    imperfections: str | None = None
    vrms: float = 0.0  # mV
    offset: float = 0.0  # pN
    sigma_sys: float = 0.0  # pN
    fit_models: list = field(default_factory=lambda: ["drude", "plasma"])
    temps: list = field(default_factory=lambda: [1.0, 2.0, 5.0, 10.0, 50.0])
    target: str = "drude"
    candidate: str = "plasma"
    check_dmin: str = "3um"
    check_dmax: str = "7um"
    nuisance: bool = False
    out: str | None = None
    format: str = "csv"
    tol: float = 1e-7

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def validate(self) -> None:
        if self.model not in MODELS:
            raise ConfigurationError(f"unknown model {self.model!r}; choose from {MODELS}")
        if self.format not in ("csv", "json"):
            raise ConfigurationError("format must be csv or json")
        if not 0 < self.tol <= 1e-2:
            raise ConfigurationError("tol must lie in (0, 1e-2]")
        if self.radius <= 0:
            raise ConfigurationError("radius must be > 0")
        if self.temp < 0:
            raise ConfigurationError("temp must be >= 0")
        for name in ("data", "imperfections", "oscillators_file"):
            value = getattr(self, name)
            if value is not None and not Path(value).is_file():
                raise ConfigurationError(f"{name} file not found: {value}")

    def digest(self) -> str:
        # where the table goes does not change its content
        fields = {k: v for k, v in dataclasses.asdict(self).items() if k != "out"}
        blob = json.dumps(fields, sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def separation_grid(cfg: RunConfig, dmin_default: str, dmax_default: str) -> np.ndarray:
    lo = parse_length(cfg.dmin or dmin_default)
    hi = parse_length(cfg.dmax or dmax_default)
    if cfg.points < 2:
        raise ConfigurationError("separation grid needs at least 2 points")
    if not 0 < lo < hi:
        raise ConfigurationError(f"need 0 < dmin < dmax, got {lo}, {hi}")
    if cfg.log:
        return np.geomspace(lo, hi, cfg.points)
    return np.linspace(lo, hi, cfg.points)


def _plasma_params(cfg: RunConfig) -> tuple[float, float]:
    if cfg.preset not in (None, "au"):
        raise ConfigurationError(f"unknown preset {cfg.preset!r}")
    wp = cfg.wp if cfg.wp is not None else (9.0 if cfg.preset == "au" else None)
    gamma = cfg.gamma if cfg.gamma is not None else (0.035 if cfg.preset == "au" else None)
    if wp is None or gamma is None:
        raise ConfigurationError("without a preset both --wp and --gamma are required")
    return wp * EV, gamma * EV


def _oscillators(cfg: RunConfig):
    if cfg.oscillators_file:
        return read_oscillators(cfg.oscillators_file)
    return oscillators_from_config(cfg.oscillators)


def build_model(cfg: RunConfig, name: str | None = None):
    name = name or cfg.model
    wp, gamma = _plasma_params(cfg) if name != "dielectric" else (None, None)
    if name == "drude":
        return Drude(wp, gamma)
    if name == "plasma":
        return Plasma(wp)
    if name == "gplasma":
        osc = _oscillators(cfg)
        if not osc:
            raise ConfigurationError("gplasma needs oscillators from the config file")
        return GeneralizedPlasma(wp, osc)
    if name == "dielectric":
        osc = _oscillators(cfg)
        if not osc:
            raise ConfigurationError("dielectric needs oscillators from the config file")
        return DielectricCore(osc, cfg.include_dc, cfg.sigma0 * EV)
    raise ConfigurationError(f"unknown model {name!r}")


def _model_params(model) -> dict:
    out = {"type": type(model).__name__}
    for f in dataclasses.fields(model):
        v = getattr(model, f.name)
        if isinstance(v, float):
            out[f.name] = v
        elif isinstance(v, tuple):
            out[f.name] = [dataclasses.asdict(o) for o in v]
        else:
            out[f.name] = v
    return out


def provenance(cfg: RunConfig, command: str, models: dict) -> dict:
    return {
        "tool": f"casimir-lab {__version__}",
        "command": command,
        "config_hash": cfg.digest(),
        "models": {k: _model_params(m) for k, m in models.items()},
        "temperature_K": cfg.temp,
        "radius_m": cfg.radius * CM,
        "rel_tol": cfg.tol,
    }


def _geometry(cfg):
    return SphereGeometry(cfg.radius * CM)


def _casimir_force(cfg, model, d, imps):
    geom = _geometry(cfg)
    if imps:
        return pfa_force_imperfect(geom, imps, model, d, cfg.temp, cfg.tol)
    return pfa_force(geom, model, d, cfg.temp, cfg.tol)


def cmd_pressure(cfg: RunConfig):
    wp, gamma = _plasma_params(cfg)
    drude, plasma = Drude(wp, gamma), Plasma(wp)
    rows = []
    for d in separation_grid(cfg, "162nm", "746nm"):
        pd = casimir_pressure(drude, LifshitzQuery(d, cfg.temp, cfg.tol)).value
        pp = casimir_pressure(plasma, LifshitzQuery(d, cfg.temp, cfg.tol)).value
        rows.append([d / UM, pd, pp, pp / pd])
    cols = ["d_um", "P_drude_Pa", "P_plasma_Pa", "ratio_plasma_drude"]
    return cols, rows, {"drude": drude, "plasma": plasma}, {}


def cmd_force_curve(cfg: RunConfig):
    model = build_model(cfg)
    imps = read_imperfections(cfg.imperfections) if cfg.imperfections else None
    R = cfg.radius * CM
    path = "imperfect" if imps else "simple"
    rows = []
    for d in separation_grid(cfg, "0.7um", "7.3um"):
        fc = _casimir_force(cfg, model, d, imps)
        fp = patch_force(R, cfg.vrms * MV, d)
        off = -cfg.offset * PN
        tot = fc + fp + off
        rows.append([d / UM, fc / PN, fp / PN, off / PN, tot / PN, tot * d / (PN * UM),
                     fc * d / (PN * UM), path])
    cols = ["d_um", "F_C_pN", "F_patch_pN", "F_offset_pN", "F_total_pN",
            "Fd_total_pN_um", "Fd_C_pN_um", "pfa_path"]
    return cols, rows, {cfg.model: model}, {"pfa_path": path}


def cmd_fit(cfg: RunConfig):
    if not cfg.data:
        raise ConfigurationError("fit needs --data")
    data = read_dataset(cfg.data, attractive_magnitudes=cfg.attractive_magnitudes)
    dmin = parse_length(cfg.dmin) if cfg.dmin else None
    dmax = parse_length(cfg.dmax) if cfg.dmax else None
    if dmin is not None or dmax is not None:
        data = data.subset(dmin, dmax)
    if cfg.sigma_sys:
        data = data.with_systematic(cfg.sigma_sys * PN)
    imps = read_imperfections(cfg.imperfections) if cfg.imperfections else None
    R = cfg.radius * CM
    rows, models, results = [], {}, {}
    for name in cfg.fit_models:
        model = build_model(cfg, name)
        models[name] = model
        fc = np.array([_casimir_force(cfg, model, d, imps) for d in data.d])
        res = fit_two_param(data, fc, R)
        results[name] = res
        rows.append([name, res.V_rms / MV, res.a / PN, res.chi2, res.nu, res.chi2_red, res.Q,
                     math.sqrt(res.covariance[1, 1]) / PN])
    best = max(results, key=lambda k: results[k].Q)
    verdict = "; ".join(f"{k}: Q = {100 * r.Q:.1f}%" for k, r in results.items())
    verdict += f" -> best supported: {best}"
    rel = relative_errors(data)
    extra = {"n_points": len(data), "dataset": data.label, "verdict": verdict,
             "relative_error_pct_range": [float(np.nanmin(rel)), float(np.nanmax(rel))],
             "diagnostics": [m for r in results.values() for m in r.diagnostics]}
    cols = ["model", "V_rms_mV", "a_pN", "chi2", "nu", "chi2_red", "Q", "sigma_a_pN"]
    return cols, rows, models, extra


def cmd_entropy(cfg: RunConfig):
    temps = [float(t) for t in cfg.temps]
    if any(t <= 0 for t in temps):
        raise ConfigurationError("entropy temperatures must all be > 0")
    wp, gamma = _plasma_params(cfg)
    drude, plasma = Drude(wp, gamma), Plasma(wp)
    d = parse_length(cfg.sep)
    rows = []
    for T in temps:
        row, note = [T], ""
        for model in (drude, plasma):
            try:
                s = entropy_per_area(model, d, T)
                row += [s.value, s.est_error]
            except ConvergenceError as exc:
                row += [float("nan"), float("nan")]
                note = str(exc)
        rows.append(row + [note])
    cols = ["T_K", "S_drude_J_per_K_m2", "err_drude", "S_plasma_J_per_K_m2", "err_plasma", "note"]
    return cols, rows, {"drude": drude, "plasma": plasma}, {"separation_m": d}


def cmd_masquerade(cfg: RunConfig):
    target_m = build_model(cfg, cfg.target)
    cand_m = build_model(cfg, cfg.candidate)
    geom = _geometry(cfg)
    grid = separation_grid(cfg, "0.7um", "3um")
    target = np.array([pfa_force(geom, target_m, d, cfg.temp, cfg.tol) for d in grid])
    res = find_masquerade(target, cand_m, grid, cfg.temp, geom, rel_tol=cfg.tol,
                          nuisance=cfg.nuisance)
    check = np.linspace(parse_length(cfg.check_dmin), parse_length(cfg.check_dmax), cfg.points)
    check_target = np.array([pfa_force(geom, target_m, d, cfg.temp, cfg.tol) for d in check])
    check_dev = masquerade_deviation(res, check_target, cand_m, check, cfg.temp, geom, cfg.tol)
    threshold = 0.10
    rows = [[cfg.target, cfg.candidate, res.R1 / CM, res.D / UM, res.max_rel_dev,
             res.max_rel_dev < threshold, check_dev, check_dev < threshold]]
    cols = ["target", "candidate", "R1_cm", "D_um", "max_rel_dev_fit_range", "matched_fit_range",
            "max_rel_dev_check_range", "matched_check_range"]
    extra = {"match_threshold": threshold,
             "note": "match threshold is a reporting choice of this tool",
             "nuisance_absorbed": cfg.nuisance}
    return cols, rows, {"target": target_m, "candidate": cand_m}, extra


def cmd_patch_window(cfg: RunConfig):
    R = cfg.radius * CM
    rows = []
    for d in separation_grid(cfg, "0.7um", "7.3um"):
        w = patch_scale_window(R, d)
        rows.append([d / UM, w.r_eff / 1e-3, w.lambda_lo / UM, w.lambda_hi / UM,
                     w.lambda_geo / UM, w.admits(50 * UM)])
    cols = ["d_um", "r_eff_mm", "lambda_lo_um", "lambda_hi_um", "lambda_geo_um", "admits_50um"]
    return cols, rows, {}, {}


COMMANDS = {
    "pressure": cmd_pressure,
    "force-curve": cmd_force_curve,
    "fit": cmd_fit,
    "entropy": cmd_entropy,
    "masquerade": cmd_masquerade,
    "patch-window": cmd_patch_window,
}


def _csv_floats(text):
    return [float(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="casimir-lab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    shared = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    a = shared.add_argument
    a("--config", default=S, help="JSON config file (flat RunConfig object)")
    a("--model", choices=MODELS, default=S)
    a("--preset", choices=["au"], default=S)
    a("--wp", type=float, default=S, help="plasma frequency, eV")
    a("--gamma", type=float, default=S, help="relaxation parameter, eV")
    a("--oscillators", dest="oscillators_file", default=S, help="oscillator JSON file")
    a("--radius", type=float, default=S, help="lens curvature radius, cm")
    a("--temp", type=float, default=S, help="temperature, K")
    a("--dmin", default=S, help="minimum separation, e.g. 3um or 700nm")
    a("--dmax", default=S)
    a("--points", type=int, default=S)
    a("--log", action="store_true", default=S, help="log-spaced separation grid")
    a("--sep", default=S, help="single separation for entropy")
    a("--data", default=S, help="dataset CSV d_um,f_pn,sigma_pn")
    a("--attractive-magnitudes", dest="attractive_magnitudes", action="store_true", default=S)
    a("--imperfections", default=S, help="CSV r1_cm,d_offset_um")
    a("--vrms", type=float, default=S, help="patch voltage scale, mV")
    a("--offset", type=float, default=S, help="force offset a, pN")
    a("--sigma-sys", dest="sigma_sys", type=float, default=S, help="systematic error, pN")
    a("--models", dest="fit_models", type=lambda s: s.split(","), default=S)
    a("--temps", type=_csv_floats, default=S, help="comma-separated temperatures, K")
    a("--target", default=S)
    a("--candidate", default=S)
    a("--nuisance", action="store_true", default=S)
    a("--out", default=S)
    a("--format", choices=["csv", "json"], default=S)
    a("--tol", type=float, default=S)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[shared])
    return p


def load_config(ns: argparse.Namespace) -> RunConfig:
    merged: dict = {}
    for source in (os.environ.get(CONFIG_ENV), getattr(ns, "config", None)):
        if not source:
            continue
        try:
            merged.update(json.loads(Path(source).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot load config {source}: {exc}") from exc
    merged.update({k: v for k, v in vars(ns).items() if k not in ("command", "config")})
    cfg = RunConfig.from_mapping(merged)
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    ns = build_parser().parse_args(argv)
    try:
        cfg = load_config(ns)
        cols, rows, models, extra = COMMANDS[ns.command](cfg)
        text = render_table(cols, rows, provenance(cfg, ns.command, models), cfg.format, extra)
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ConfigurationError, DomainError, TypeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg.out:
        write_atomic(cfg.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
