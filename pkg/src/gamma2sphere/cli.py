"""
Command-line interface.

Every subcommand writes CSV (header row, floats at 17 significant digits)
or JSON to stdout or ``--out``. A JSON file given with ``--config`` supplies
defaults for any flag; explicit flags win. Exit status is 0 on success, 1
when a check fails or a ratio is undefined, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import bounds, heatflow, verify
from .exceptions import PositivityError, ResolutionError, UndefinedRatioError
from .families import from_descriptor
from .functionals import functional_report, gamma2_ratio, log_sobolev_ratio
from .quadrature import gauss_z_rule, product_sphere_rule
from .search import random_search

SUBCOMMANDS = ("bounds", "minimize", "ratio", "sweep", "heatflow", "search", "verify")
FAMILIES = ("quartic", "scaled_quartic", "constant", "even_poly")
SLACK_TOL = 1e-8

DEFAULTS = {
    "d": 3,
    "t": 0.69214,
    "t_min": 0.05,
    "t_max": 100.0,
    "t_steps": 50,
    "quad_n": 64,
    "seed": 0,
    "count": 1000,
    "amplitude": None,
    "mode": "log",
    "family": "quartic",
    "target": "lambda3",
    "final_time": 5.0,
    "lam": 5.5,
    "K": 8,
    "dt": 1e-4,
    "format": None,
    "out": None,
    "perturb_tau": 0.0,
}


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, msg, payload=""):
        super().__init__(msg)
        self.payload = payload


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def write_csv(header, rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for row in rows:
        wr.writerow([fmt(v) for v in row])
    return buf.getvalue()


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gamma2sphere", description=__doc__.strip().splitlines()[0])
    p.add_argument("command", choices=SUBCOMMANDS)
    # every default is None so that --config values can fill the gaps
    p.add_argument("--d", type=int)
    p.add_argument("--t", type=float, help="quartic parameter")
    p.add_argument("--t-min", dest="t_min", type=float)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--t-steps", dest="t_steps", type=int)
    p.add_argument("--quad-n", dest="quad_n", type=int, help="Gauss nodes in z")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--amplitude", type=float)
    p.add_argument("--mode", choices=("log", "density"))
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--target", help="minimize target: lambda3 or alpha3")
    p.add_argument("--final-time", dest="final_time", type=float, help="heat-flow horizon")
    p.add_argument("--lambda", dest="lam", type=float, help="constant in the integrated heat-flow inequality")
    p.add_argument("--K", dest="K", type=int, help="Legendre truncation degree for heatflow")
    p.add_argument("--dt", type=float, help="finite-difference step for dissipation checks")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out")
    p.add_argument("--config", help="JSON file of flag defaults")
    p.add_argument("--perturb-tau", dest="perturb_tau", type=float, help=argparse.SUPPRESS)
    return p


def resolve_config(ns: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if ns.config:
        try:
            with open(ns.config) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {ns.config}: {exc}") from exc
        if not isinstance(file_cfg, dict):
            raise UsageError("config must be a JSON object")
        for key, val in file_cfg.items():
            key = key.replace("-", "_")
            if key not in cfg:
                raise UsageError(f"unknown config key {key!r}")
            cfg[key] = val
    for key, val in vars(ns).items():
        if key in cfg and val is not None:
            cfg[key] = val
    cfg["command"] = ns.command
    if cfg["format"] is None:
        cfg["format"] = "json" if ns.command in ("search", "verify") else "csv"
    _validate(cfg)
    return cfg


def _validate(cfg):
    if cfg["d"] < 2:
        raise UsageError("--d must be at least 2")
    if cfg["quad_n"] < 2:
        raise UsageError("--quad-n must be at least 2")
    if cfg["count"] < 0:
        raise UsageError("--count must be non-negative")
    if cfg["amplitude"] is not None and cfg["amplitude"] < 0:
        raise UsageError("--amplitude must be non-negative")
    if not cfg["t_min"] > 0 or not cfg["t_max"] > cfg["t_min"] or cfg["t_steps"] < 2:
        raise UsageError("need 0 < t-min < t-max and t-steps >= 2")
    if cfg["target"] not in ("lambda3", "alpha3"):
        raise UsageError(f"unknown minimize target {cfg['target']!r}")
    if cfg["family"] not in FAMILIES:
        raise UsageError(f"unknown family {cfg['family']!r}")
    if cfg["format"] not in ("csv", "json"):
        raise UsageError(f"unknown format {cfg['format']!r}")


def _family_function(cfg):
    fam = cfg["family"]
    if fam in ("quartic", "scaled_quartic"):
        if not cfg["t"] > 0:
            raise UsageError("--t must be positive")
        return from_descriptor({"family": fam, "t": cfg["t"], "d": cfg["d"]})
    if fam == "constant":
        return from_descriptor({"family": "constant", "d": cfg["d"]})
    amp = 0.5 if cfg["amplitude"] is None else cfg["amplitude"]
    return from_descriptor(
        {"family": "even_poly", "seed": cfg["seed"], "amplitude": amp, "mode": cfg["mode"], "d": cfg["d"]}
    )


def _rule_for(f, cfg):
    if cfg["family"] == "even_poly":
        if cfg["d"] != 3:
            raise UsageError("random even polynomials are integrated on S^2 only (--d 3)")
        return product_sphere_rule(cfg["quad_n"], 2 * cfg["quad_n"])
    return gauss_z_rule(cfg["quad_n"], cfg["d"])


def cmd_bounds(cfg):
    rep = bounds.bound_report(cfg["d"])
    if cfg["format"] == "json":
        return dump_json(rep.to_dict())
    return ",".join(bounds.CSV_FIELDS) + "\n" + rep.to_csv_row()


def cmd_minimize(cfg):
    res = bounds.minimize_upper(cfg["target"])
    row = {"target": cfg["target"], **res.to_dict()}
    if cfg["format"] == "json":
        return dump_json(row)
    header = ("target", "t_star", "value", "evaluations", "bracket_lo", "bracket_hi")
    return write_csv(header, [(cfg["target"], res.t_star, res.value, res.evaluations, *res.bracket)])


def cmd_ratio(cfg):
    f = _family_function(cfg)
    rep = functional_report(f, _rule_for(f, cfg))
    row = {"family": cfg["family"], "t": cfg["t"] if "quartic" in cfg["family"] else None, **rep.to_dict()}
    if cfg["format"] == "json":
        return dump_json(row)
    return write_csv(tuple(row), [tuple(row.values())])


def cmd_sweep(cfg):
    if cfg["family"] not in ("quartic", "scaled_quartic"):
        raise UsageError("sweep runs over the quartic family only")
    ts = np.geomspace(cfg["t_min"], cfg["t_max"], cfg["t_steps"])
    rule = gauss_z_rule(cfg["quad_n"], cfg["d"])
    rows = []
    for t in ts:
        f = from_descriptor({"family": cfg["family"], "t": float(t), "d": cfg["d"]})
        g2, ls = gamma2_ratio(f, rule), log_sobolev_ratio(f, rule)
        row = {"t": float(t), "gamma2_ratio": g2, "log_sobolev_ratio": ls}
        if cfg["d"] == 3:
            u, a = bounds.upper_U(t), bounds.upper_alpha_expr(t)
            row.update(upper_U=u, upper_alpha=a, gamma2_error=abs(g2 - u), log_sobolev_error=abs(ls - a))
        rows.append(row)
    if cfg["format"] == "json":
        return dump_json(rows)
    return write_csv(tuple(rows[0]), [tuple(r.values()) for r in rows])


def _initial_spectrum(cfg):
    fam = cfg["family"]
    if fam == "even_poly":
        amp = 0.4 if cfg["amplitude"] is None else cfg["amplitude"]
        return heatflow.random_spectrum(cfg["seed"], cfg["K"], amp)
    if cfg["d"] != 3:
        raise UsageError("the heat flow is implemented on S^2 only (--d 3)")
    f = _family_function(cfg)
    return heatflow.decompose(f.profile, cfg["K"])


def cmd_heatflow(cfg):
    spec = _initial_spectrum(cfg)
    T = cfg["final_time"]
    if not T > 0:
        raise UsageError("--final-time must be positive")
    rule = gauss_z_rule(max(cfg["quad_n"], spec.K + 1), 3)
    times = np.linspace(0.0, T, cfg["t_steps"])
    trace = heatflow.trace_flow(spec, times, rule)
    t_check = min(0.1, T / 2)
    dt = min(cfg["dt"], t_check / 2)
    conv = heatflow.dissipation_convergence(spec, t_check, dt, rule)
    slack = heatflow.integrated_inequality(spec, T, cfg["lam"], rule)
    footer = {
        "dissipation": {"t": t_check, **conv},
        "integrated_inequality": {"lambda": cfg["lam"], "T": T, "slack": slack, "pass": slack >= -SLACK_TOL},
        "monotone": trace.is_monotone(),
    }
    if cfg["format"] == "json":
        text = dump_json({"trace": trace.to_dict(), "report": footer})
    else:
        text = trace.to_csv() + "# " + json.dumps(footer, sort_keys=True) + "\n"
    if not footer["integrated_inequality"]["pass"]:
        raise CheckFailed(f"integrated inequality slack {slack:.3e} < -{SLACK_TOL:g}", text)
    return text


def cmd_search(cfg):
    if cfg["d"] != 3:
        raise UsageError("random search runs on S^2 only (--d 3)")
    summ = random_search(cfg["seed"], cfg["count"], cfg["amplitude"])
    if cfg["format"] == "json":
        return dump_json(summ.to_dict())
    row = summ.to_dict()
    best = row.pop("best") or {}
    row["best_index"] = best.get("index")
    row["best_mode"] = best.get("mode")
    row["best_amplitude"] = best.get("amplitude")
    return write_csv(tuple(row), [tuple(row.values())])


def cmd_verify(cfg):
    summ = verify.run_suite(cfg["seed"], cfg["perturb_tau"])
    if cfg["format"] == "json":
        text = verify.suite_json(summ) + "\n"
    else:
        text = write_csv(
            ("check", "count", "max_residual", "pass"),
            [(k, v["count"], v["max_residual"], v["pass"]) for k, v in sorted(summ.items())],
        )
    if not verify.suite_passed(summ):
        failed = sorted(k for k, v in summ.items() if not v["pass"])
        raise CheckFailed("failed checks: " + ", ".join(failed), text)
    return text


COMMANDS = {
    "bounds": cmd_bounds,
    "minimize": cmd_minimize,
    "ratio": cmd_ratio,
    "sweep": cmd_sweep,
    "heatflow": cmd_heatflow,
    "search": cmd_search,
    "verify": cmd_verify,
}


def _emit(text, cfg):
    if cfg["out"]:
        with open(cfg["out"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(ns)
        _emit(COMMANDS[cfg["command"]](cfg), cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except CheckFailed as exc:
        _emit(exc.payload, cfg)
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except UndefinedRatioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (PositivityError, ResolutionError) as exc:
        print(f"constraint violated: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
