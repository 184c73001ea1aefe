"""Command-line front end.

Every output starts with the parameter echo block: the "config" object of
a JSON document, or "#@ key = value" lines of a CSV file.  Either form can
be passed back through --config to reproduce the run.

Exit status: 2 for configuration errors, 1 for computational errors, 0 otherwise.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import cache as cache_io
from . import config as cfgmod
from .config import KEYS, SUBCOMMANDS, ConfigError, RunConfig
from .correlate.estimators import (DEFAULT_BUDGET, AutoCalibration, auto_correlation,
                                   calibrate_auto, cross_correlation)
from .correlate.system import LinearSystem
from .divisor import CurveModel, divisor_of
from .errors import FFPrimesError
from .ffpoly import Poly, field_of_order
from .patterns import collect, is_prime_class, search, search_in_class
from .quotient import (CONDITION_TWO_NORMALIZATION, all_patterns, condition_one_estimate,
                       condition_two_estimate, edge, lift_measure, ring_make)
from .reduce import array_mean
from .report import dumps, fmt_float
from .sieve.bump import get_bump
from .sieve.measure import sieve_measure
from .sieve.transform import c_phi_details, c_phi_time_domain, phi_hat
from .sieve.weights import lambda_R, make_params


@contextmanager
def setup():
    """Failures while reading inputs count as configuration errors."""
    try:
        yield
    except ConfigError:
        raise
    except (FFPrimesError, ValueError) as exc:
        raise ConfigError(f"{type(exc).__name__}: {exc}") from exc


class Output:
    def __init__(self, cfg: RunConfig, params: dict | None = None):
        self.cfg = cfg
        self.params = params

    def json(self, result) -> str:
        doc = {"config": self.cfg.echo()}
        if self.params is not None:
            doc["params"] = self.params
        doc["result"] = result
        return dumps(doc)

    def csv(self, header: str, rows: list[str], extra: dict | None = None) -> str:
        lines = [f"#@ {k} = {cfgmod.format_value(v)}" for k, v in self.cfg.echo().items()]
        for block in (self.params or {}), (extra or {}):
            lines += [f"# {k} = {cfgmod.format_value(v)}" for k, v in block.items()]
        lines.append(header)
        lines.extend(rows)
        return "\n".join(lines) + "\n"


def _field(cfg):
    return field_of_order(cfg["q"])


def _poly(F, text, name):
    if text is None:
        raise ConfigError(f"missing polynomial {name}")
    return Poly.parse(F, text)


def _sieve_params(cfg, F, r=None):
    curve = CurveModel(F, _poly(F, cfg.get("g", "1"), "g"))
    return make_params(cfg["r"] if r is None else r, cfg.get("k", 1), curve,
                       alpha=_poly(F, cfg.get("alpha", "1"), "alpha"), bump=get_bump(cfg["bump"]),
                       w_override=cfg["w"], R_override=cfg["R"], normalization=cfg["normalization"])


def _quoted(text: str) -> str:
    return f"\"{text}\""


# --- subcommands ----------------------------------------------------------

def cmd_irreducibles(cfg: RunConfig) -> str:
    with setup():
        F = _field(cfg)
    path = cfg["cache"] or str(cache_io.default_path(F.q, cfg["max_deg"]))
    if cfg["mode"] == "build":
        cache_io.build(F, cfg["max_deg"], path)
    report = cache_io.verify(path, F.q, cfg["spot_checks"], cfg["seed"])
    if report["max_degree"] != cfg["max_deg"]:
        raise ConfigError(f"cache holds degrees <= {report['max_degree']}, asked for {cfg['max_deg']}")
    out = Output(cfg)
    if cfg["format"] == "csv":
        rows = [f"{d},{n}" for d, n in report["counts"].items()]
        return out.csv("degree,count", rows, {"spot_checked": report["spot_checked"]})
    report["counts"] = {str(d): n for d, n in report["counts"].items()}
    return out.json(report)


def cmd_lambda(cfg: RunConfig) -> str:
    with setup():
        F = _field(cfg)
        bump = get_bump(cfg["bump"])
        polys = [_poly(F, s, "poly") for s in cfg["poly"].split(";")]
        if any(f.is_zero() for f in polys):
            raise ConfigError("Lambda is undefined at the zero polynomial")
    vals = [lambda_R(divisor_of(f), cfg["R"], bump) for f in polys]
    out = Output(cfg)
    if cfg["format"] == "csv":
        return out.csv("poly,lambda", [f"{_quoted(f.text())},{fmt_float(v)}" for f, v in zip(polys, vals)])
    return out.json([{"poly": f.text(), "divisor": divisor_of(f).text(), "lambda": v}
                     for f, v in zip(polys, vals)])


def cmd_cphi(cfg: RunConfig) -> str:
    with setup():
        _field(cfg)
        bump = get_bump(cfg["bump"])
        xs = [float(x) for x in cfg.get("samples", "0,0.5,1,2,4").split(",")]
    hats = np.real(np.asarray(phi_hat(np.array(xs), bump)))
    det = c_phi_details(bump)
    oracle = c_phi_time_domain(bump)
    summary = {"c_phi": det.value, "imag_residue": det.imag_residue, "T": det.T,
               "last_change": det.last_change, "nodes": det.nodes, "c_phi_time_domain": oracle,
               "relative_agreement": abs(det.value - oracle) / abs(oracle)}
    out = Output(cfg)
    if cfg["format"] == "csv":
        return out.csv("x,phi_hat", [f"{fmt_float(x)},{fmt_float(h)}" for x, h in zip(xs, hats)], summary)
    summary["phi_hat"] = [{"x": x, "value": float(h)} for x, h in zip(xs, hats)]
    return out.json(summary)


def cmd_measure(cfg: RunConfig) -> str:
    with setup():
        F = _field(cfg)
        params = _sieve_params(cfg, F)
        window = cfg.get("window", params.r)
        if window > params.r:
            raise ConfigError("window must not exceed r")
    n = params.box_degree(window)
    table = sieve_measure(params).table(n)
    mean = array_mean(table, cfg["threads"])
    out = Output(cfg, params.echo())
    summary = {"box_degree": n, "count": int(table.shape[0]), "mean": mean,
               "min": float(table.min()), "max": float(table.max())}
    if cfg["format"] == "csv":
        rows = [f"{_quoted(Poly.from_index(F, i).text())},{fmt_float(v)}" for i, v in enumerate(table)]
        return out.csv("x,value", rows, summary)
    return out.json(summary)


def cmd_correlate(cfg: RunConfig) -> str:
    mode = cfg["mode"]
    with setup():
        F = _field(cfg)
        params = _sieve_params(cfg, F)
        window = cfg["window"]
        if mode == "cross":
            if cfg["forms"] is None:
                raise ConfigError("cross mode requires --forms")
            system = LinearSystem.parse(F, cfg["forms"], cfg["shifts"], cfg.get("k", 1))
        elif mode == "auto":
            if cfg["shifts"] is None or cfg["calibration"] is None:
                raise ConfigError("auto mode requires --shifts and --calibration")
            yvec = [_poly(F, y, "shift") for y in cfg["shifts"].split("|")]
            calibration = AutoCalibration.from_json(Path(cfg["calibration"]).read_text())
        elif cfg["s"] is None:
            raise ConfigError("calibrate mode requires --s")
    out = Output(cfg, params.echo())
    if mode == "cross":
        rep = cross_correlation(system, params, window, budget=cfg.get("budget", DEFAULT_BUDGET),
                                mode=cfg["estimator"], samples=cfg["draws"], seed=cfg["seed"],
                                threads=cfg["threads"])
        if cfg["format"] == "csv":
            return out.csv(rep.CSV_HEADER, [rep.csv_row()], {"system": rep.system, "mode": rep.mode})
        d = rep.to_dict()
        d.pop("params")
        return out.json(d)
    if mode == "auto":
        lhs, bound = auto_correlation(yvec, params, window, calibration)
        return out.json({"shifts": [y.text() for y in yvec], "lhs": lhs, "bound": bound,
                         "dominated": lhs <= bound, "C_fit": calibration.C_fit, "C_s": calibration.C_s})
    cal = calibrate_auto(params, cfg["s"], window, cfg["family_size"], cfg["seed"])
    d = {"q": cal.q, "s": cal.s, "window": cal.window, "C_fit": cal.C_fit, "C_s": cal.C_s,
         "family_size": cal.family_size, "seed": cal.seed, "params": cal.params}
    if cfg["calibration"]:
        Path(cfg["calibration"]).write_text(cal.to_json() + "\n")
    return out.json(d)


def _patterns(text: str | None, length: int) -> list[tuple[int, ...]]:
    if text is None:
        return all_patterns(length)
    pats = [tuple(int(c) for c in p.strip()) for p in text.split(";") if p.strip()]
    for p in pats:
        if len(p) != length or any(c not in (0, 1) for c in p):
            raise ConfigError(f"pattern {p} must be {length} digits 0/1")
    return pats


def cmd_lift(cfg: RunConfig) -> str:
    mode = cfg["mode"]
    with setup():
        F = _field(cfg)
        N = _poly(F, cfg["N"], "N")
        ring = ring_make(N, cfg.get("k", 1))
        params = _sieve_params(cfg, F, r=N.degree)
        J = ring.vertices()
        size_e = len(J) - 1
        if mode == "one":
            if not 0 <= cfg["j"] < len(J):
                raise ConfigError(f"j must index one of the {len(J)} vertices")
            omegas = _patterns(cfg["omegas"], size_e)
            x0 = ([_poly(F, x, "x0") % N for x in cfg["x0"].split("|")] if cfg["x0"]
                  else [Poly.zero(F)] * size_e)
            if len(x0) != size_e:
                raise ConfigError(f"x0 needs {size_e} entries")
        elif mode == "two":
            groups = cfg["omegas"].split("/") if cfg["omegas"] else [None] * len(J)
            if len(groups) != len(J):
                raise ConfigError(f"two mode needs {len(J)} '/'-separated pattern groups")
            omega_sets = {i: _patterns(g, size_e) for i, g in enumerate(groups)}
    lifted = lift_measure(sieve_measure(params), ring)
    out = Output(cfg, params.echo())
    budget = cfg.get("budget", DEFAULT_BUDGET)
    if mode == "table":
        if cfg["format"] == "csv":
            rows = [f"{_quoted(Poly.from_index(F, i).text())},{fmt_float(v)}" for i, v in enumerate(lifted)]
            return out.csv("residue,value", rows)
        return out.json({"residues": [Poly.from_index(F, i).text() for i in range(ring.size)],
                         "values": [float(v) for v in lifted]})
    if mode == "one":
        j = J[cfg["j"]]
        est = condition_one_estimate(j, omegas, ring, lifted, x0, budget, cfg["threads"])
        return out.json({"j": j.text(), "edge": [v.text() for v in edge(ring, j)],
                         "omegas": ["".join(map(str, o)) for o in omegas], "estimate": est})
    est = condition_two_estimate(omega_sets, ring, lifted, budget, cfg["threads"])
    return out.json({"omega_sets": {J[i].text(): ["".join(map(str, o)) for o in ps]
                                    for i, ps in omega_sets.items()},
                     "normalization": CONDITION_TWO_NORMALIZATION, "estimate": est})


def _search_output(cfg: RunConfig, report) -> str:
    revalidated = all(is_prime_class(c.cls, c.twist)[0] for c in report.certificates)
    out = Output(cfg)
    if cfg["format"] == "csv":
        rows = [f"{_quoted(c.cls.a.text())},{_quoted(c.cls.m.text())},{c.cls.s},{c.cls.field.q ** c.cls.s}"
                for c in report.certificates]
        extra = {"exhausted": report.exhausted, "classes_element_level": report.element_count,
                 "classes_divisor_level": report.divisor_count, "revalidated": revalidated}
        return out.csv("a,m,s,size", rows, extra)
    d = report.to_dict()
    d["revalidated"] = revalidated
    return out.json(d)


def cmd_search(cfg: RunConfig) -> str:
    with setup():
        F = _field(cfg)
        twist = None
        if cfg["W"] is not None:
            twist = (_poly(F, cfg["W"], "W"), _poly(F, cfg.get("alpha", "1"), "alpha"))
        deg_m_max = cfg.get("deg_m_max", max(cfg["deg_a_max"] - cfg["s"], 0))
        stream = search(F, deg_m_max, cfg["deg_a_max"], cfg["s"], twist, cfg["budget"],
                        cfg["deg_m_min"], cfg["guard"])
    return _search_output(cfg, collect(stream, cfg["budget"]))


def cmd_search_in_class(cfg: RunConfig) -> str:
    with setup():
        F = _field(cfg)
        M, W = _poly(F, cfg["M"], "M"), _poly(F, cfg["W"], "W")
        residue, alpha = _poly(F, cfg["residue"], "residue"), _poly(F, cfg.get("alpha", "1"), "alpha")
        stream = search_in_class(F, M, residue, W, alpha, cfg["r"], cfg["s"], cfg["budget"],
                                 cfg["deg_m_max"], cfg["guard"])
    return _search_output(cfg, collect(stream, cfg["budget"]))


HANDLERS = {
    "irreducibles": cmd_irreducibles,
    "lambda": cmd_lambda,
    "cphi": cmd_cphi,
    "measure": cmd_measure,
    "correlate": cmd_correlate,
    "lift": cmd_lift,
    "search": cmd_search,
    "search-in-class": cmd_search_in_class,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffprimes", description="Prime patterns in F_q[t] at desk scale.")
    subs = parser.add_subparsers(dest="subcommand", required=True)
    for name, sub in SUBCOMMANDS.items():
        sp = subs.add_parser(name)
        sp.add_argument("--config", help="key = value file, or a previous output")
        for key in cfgmod.COMMON + sub.keys:
            k = KEYS[key]
            if k.kind is bool:
                sp.add_argument(k.flag, dest=key, action=argparse.BooleanOptionalAction, default=None,
                                help=k.help)
            else:
                sp.add_argument(k.flag, dest=key, default=None, help=k.help)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    flags = {k: v for k, v in vars(ns).items() if k not in ("subcommand", "config")}
    try:
        file_values = cfgmod.parse_text(Path(ns.config).read_text()) if ns.config else {}
        cfg = cfgmod.build(ns.subcommand, file_values, flags)
        if cfg["q"] is not None:
            with setup():
                field_of_order(cfg["q"])
        text = HANDLERS[ns.subcommand](cfg)
    except (ConfigError, OSError) as exc:
        print(f"ffprimes: config error: {exc}", file=sys.stderr)
        return 2
    except FFPrimesError as exc:
        print(f"ffprimes: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if cfg["out"]:
        path = Path(cfg["out"])
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, newline="")
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    raise SystemExit(main())
