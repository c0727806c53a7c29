"""Command-line front end: classify channels, evaluate information
constants, trace rate regions, compute capacities, and run the coding
simulator.  All runs are deterministic given flags; outputs embed the
version and the invocation for reproducibility."""
from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import __version__
from .channel import channel_from_json, classify, gaussian_from_json, GaussianRelayParams
from .errors import RelaySecError
from .gaussian import cds_region, inner_region, outer_region, param_map, secrecy_capacity_gauss
from .info import (
    AuxInput,
    AuxInputStoch,
    build_joint,
    build_joint_stoch,
    delta_gap,
    mutual_info,
    zeta,
)
from .regions import (
    Family,
    OptBudget,
    region2d_to_dict,
    region_to_dict,
    r1e_region,
    secrecy_capacity,
    secrecy_capacity_region,
    trace_region,
)
from .sim import Rates, SimConfig, equivocation_plugin_bound, monte_carlo, simulate

FAMILY_FLAGS = {
    "tilde-in": Family.TILDE_IN,
    "tilde-out": Family.TILDE_OUT,
    "r-in": Family.R_IN,
    "r-out": Family.R_OUT,
    "hat-out": Family.HAT_OUT,
    "stoch-in": Family.STOCH_IN,
    "stoch-out": Family.STOCH_OUT,
}


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _aux_from_dict(data: dict) -> AuxInput | AuxInputStoch:
    if "p_usv" in data:
        return AuxInputStoch(
            p_usv=np.asarray(data["p_usv"], dtype=float),
            p_x_given_v=np.asarray(data["p_x_given_v"], dtype=float),
        )
    return AuxInput(
        p_us=np.asarray(data["p_us"], dtype=float),
        p_x_given_us=np.asarray(data["p_x_given_us"], dtype=float),
    )


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out is None or out == "-":
        print(text)
    else:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _emit_csv(rows: list[dict], columns: list[str], out: str) -> None:
    with open(out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)


def _with_meta(payload: dict, config: dict) -> dict:
    return {"version": __version__, "config": config, **payload}


def _budget_from_args(args) -> OptBudget:
    return OptBudget(
        restarts=args.restarts,
        maxiter=args.maxiter,
        nu=args.nu,
        nv=args.nv,
    )


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--maxiter", type=int, default=200)
    p.add_argument("--nu", type=int, default=None, help="auxiliary |U| (default: family cap)")
    p.add_argument("--nv", type=int, default=None, help="auxiliary |V| (default: family cap)")
    p.add_argument("--seed", type=int, default=0)


def _gaussian_params(args) -> GaussianRelayParams:
    if args.params:
        return gaussian_from_json(args.params)
    missing = [k for k in ("N1", "N2", "rho", "P1", "P2") if getattr(args, k) is None]
    if missing:
        raise RelaySecError(f"missing Gaussian parameters: {missing} (or use --params)")
    return GaussianRelayParams(n1=args.N1, n2=args.N2, rho=args.rho, p1=args.P1, p2=args.P2)


def _maybe_hull(points: list[dict], keys: list[str]) -> list[dict] | None:
    from scipy.spatial import ConvexHull, QhullError

    arr = np.array([[p[k] for k in keys] for p in points])
    if len(arr) <= len(keys) + 1:
        return None
    try:
        hull = ConvexHull(arr)
    except QhullError:
        return None
    return [points[i] for i in sorted(set(hull.vertices))]


def cmd_classify(args) -> int:
    ch = channel_from_json(args.channel)
    cls = classify(ch, tol=args.tol)
    payload = _with_meta(
        {"tag": cls.tag, "satisfied": list(cls.satisfied), "residuals": cls.residuals},
        {"command": "classify", "channel": args.channel, "tol": args.tol},
    )
    _emit(payload, args.out)
    return 0


def cmd_mi(args) -> int:
    ch = channel_from_json(args.channel)
    aux = _aux_from_dict(_load_json(args.aux))
    if isinstance(aux, AuxInputStoch):
        j = build_joint_stoch(aux, ch)
        consts = {
            "I(Y;US)": mutual_info(j, "Y", "US"),
            "I(Z;U|S)": mutual_info(j, "Z", "U", "S"),
            "I(V;Y|US)": mutual_info(j, "V", "Y", "US"),
            "I(V;Z|US)": mutual_info(j, "V", "Z", "US"),
        }
    else:
        j = build_joint(aux, ch)
        consts = {
            "I(Y;US)": mutual_info(j, "Y", "US"),
            "I(Z;U|S)": mutual_info(j, "Z", "U", "S"),
            "I(X;Y|US)": mutual_info(j, "X", "Y", "US"),
            "I(X;Z|US)": mutual_info(j, "X", "Z", "US"),
            "I(X;YZ|US)": mutual_info(j, "X", "YZ", "US"),
            "I(XS;Y)": mutual_info(j, "XS", "Y"),
            "I(X;Y|ZUS)": mutual_info(j, "X", "Y", "ZUS"),
            "zeta": zeta(j),
            "delta": delta_gap(j),
        }
    if args.a and args.b:
        consts[f"I({args.a};{args.b}|{args.given})"] = mutual_info(j, args.a, args.b, args.given)
    payload = _with_meta(
        {"constants": consts},
        {"command": "mi", "channel": args.channel, "aux": args.aux},
    )
    _emit(payload, args.out)
    return 0


def cmd_region_dmc(args) -> int:
    ch = channel_from_json(args.channel)
    family = FAMILY_FLAGS[args.family]
    region = trace_region(
        ch,
        family,
        resolution=args.resolution,
        budget=_budget_from_args(args),
        seed=args.seed,
    )
    body = region_to_dict(region)
    if args.format == "csv":
        _emit_csv(body["points"], ["r0", "r1", "re"], args.out)
        return 0
    if args.hull:
        body["hull_points"] = _maybe_hull(body["points"], ["r0", "r1", "re"])
    config = {
        "command": "region-dmc",
        "channel": args.channel,
        "family": args.family,
        "resolution": args.resolution,
        "restarts": args.restarts,
        "maxiter": args.maxiter,
        "nu": args.nu,
        "nv": args.nv,
        "seed": args.seed,
    }
    _emit(_with_meta(body, config), args.out)
    return 0


def cmd_region_gauss(args) -> int:
    params = _gaussian_params(args)
    thetas = np.linspace(0.0, 1.0, args.theta_points)
    etas = np.linspace(0.0, 1.0, args.eta_points)
    config = {
        "command": "region-gauss",
        "family": args.family,
        "params": params.to_json_dict(),
        "theta_points": args.theta_points,
        "eta_points": args.eta_points,
    }
    if args.family == "cds":
        res = cds_region(params, thetas, etas)
        body = {"inner": region2d_to_dict(res.inner), "outer": region2d_to_dict(res.outer)}
        if args.format == "csv":
            rows = [dict(p, side="inner") for p in body["inner"]["points"]]
            rows += [dict(p, side="outer") for p in body["outer"]["points"]]
            _emit_csv(rows, ["side", "r0", "r1", "theta", "eta"], args.out)
            return 0
        _emit(_with_meta(body, config), args.out)
        return 0
    region = inner_region(params, thetas, etas) if args.family == "inner" else outer_region(
        params, thetas, etas
    )
    body = region_to_dict(region)
    if args.format == "csv":
        _emit_csv(body["points"], ["r0", "r1", "re", "theta", "eta"], args.out)
        return 0
    if args.hull:
        body["hull_points"] = _maybe_hull(body["points"], ["r0", "r1", "re"])
    _emit(_with_meta(body, config), args.out)
    return 0


def cmd_capacity(args) -> int:
    if args.channel:
        ch = channel_from_json(args.channel)
        lower, upper = secrecy_capacity(
            ch, encoder=args.encoder, budget=_budget_from_args(args), seed=args.seed
        )
        config = {
            "command": "capacity",
            "channel": args.channel,
            "encoder": args.encoder,
            "restarts": args.restarts,
            "maxiter": args.maxiter,
            "nu": args.nu,
            "nv": args.nv,
            "seed": args.seed,
        }
        note = "upper value is a sampled lower estimate of the analytic outer bound"
    else:
        params = _gaussian_params(args)
        lower, upper = secrecy_capacity_gauss(params)
        config = {"command": "capacity", "params": params.to_json_dict()}
        note = "closed form"
    _emit(_with_meta({"lower": lower, "upper": upper, "note": note}, config), args.out)
    return 0


def cmd_simulate(args) -> int:
    data = _load_json(args.config)
    ch = channel_from_json(data["channel"])
    aux = _aux_from_dict(data["aux"])
    if not isinstance(aux, AuxInput):
        raise RelaySecError("simulation requires a deterministic auxiliary input")
    rates = Rates(**data["rates"])
    cfg = SimConfig(
        n=int(data["n"]),
        b=int(data["b"]),
        rates=rates,
        epsilon=float(data["epsilon"]),
        seed=int(data.get("seed", 0)),
        aux=aux,
        ch=ch,
        memory_cap=int(data.get("memory_cap", 50_000_000)),
        enum_cap=int(data.get("enum_cap", 10_000_000)),
    )
    rep = simulate(cfg, trials=args.trials, exact_equivocation=args.exact_equivocation)
    body = rep.to_json_dict()
    if args.exact_equivocation:
        mc = monte_carlo(cfg, args.trials)
        body["plugin_lower_bound"] = equivocation_plugin_bound(
            cfg, mc.decoder_rate("2a"), mc.decoder_rate("2b")
        )
    config = {
        "command": "simulate",
        "config": args.config,
        "trials": args.trials,
        "exact_equivocation": args.exact_equivocation,
        "n": cfg.n,
        "b": cfg.b,
        "seed": cfg.seed,
        "set_sizes": list(cfg.set_sizes),
    }
    if args.format == "csv":
        row = {"n": cfg.n, "seed": cfg.seed, **{k: v for k, v in body.items() if not isinstance(v, dict)}}
        _emit_csv([row], list(row.keys()), args.out)
        return 0
    _emit(_with_meta(body, config), args.out)
    return 0


def cmd_param_map(args) -> int:
    point = param_map(alpha=args.alpha, beta=args.beta, theta=args.theta, eta=args.eta)
    payload = _with_meta(
        {"alpha": point.alpha, "beta": point.beta, "theta": point.theta, "eta": point.eta},
        {"command": "param-map"},
    )
    _emit(payload, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relaysec",
        description="Rate regions, secrecy capacities, and coding simulation "
        "for relay channels whose relay is also a wire-tapper.",
    )
    parser.add_argument("--version", action="version", version=f"relaysec {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("classify", help="degradedness classification of a channel")
    p.add_argument("channel")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("mi", help="information constants at an auxiliary input")
    p.add_argument("channel")
    p.add_argument("--aux", required=True)
    p.add_argument("--a", default="")
    p.add_argument("--b", default="")
    p.add_argument("--given", default="")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_mi)

    p = sub.add_parser("region-dmc", help="trace a bound-family region of a discrete channel")
    p.add_argument("channel")
    p.add_argument("--family", choices=sorted(FAMILY_FLAGS), required=True)
    p.add_argument("--resolution", type=int, default=9)
    _add_budget_flags(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--hull", action="store_true", help="include the time-sharing convex hull")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_region_dmc)

    p = sub.add_parser("region-gauss", help="closed-form Gaussian regions")
    p.add_argument("--params", default=None, help="Gaussian parameter JSON file")
    for flag in ("N1", "N2", "rho", "P1", "P2"):
        p.add_argument(f"--{flag}", type=float, default=None)
    p.add_argument("--family", choices=("inner", "outer", "cds"), required=True)
    p.add_argument("--theta-points", type=int, default=65)
    p.add_argument("--eta-points", type=int, default=257)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--hull", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_region_gauss)

    p = sub.add_parser("capacity", help="secrecy-capacity bounds")
    p.add_argument("channel", nargs="?", default=None)
    p.add_argument("--encoder", choices=("deterministic", "stochastic"), default="deterministic")
    p.add_argument("--params", default=None, help="Gaussian parameter JSON (closed form)")
    for flag in ("N1", "N2", "rho", "P1", "P2"):
        p.add_argument(f"--{flag}", type=float, default=None)
    _add_budget_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("simulate", help="block-Markov coding simulation")
    p.add_argument("config")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--exact-equivocation", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("param-map", help="(alpha, beta) <-> (theta, eta) bijection")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_param_map)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RelaySecError as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2
    except (FileNotFoundError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
