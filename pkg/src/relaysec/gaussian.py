"""Closed-form rate regions and secrecy capacities for the Gaussian relay
channel with additive correlated noise.

The channel is Y = X + S + xi1, Z = X + xi2 with noise covariance
[[N1, rho*sqrt(N1*N2)], [rho*sqrt(N1*N2), N2]] and power constraints P1
(sender) and P2 (relay).  All rates are in bits via C(x) = 0.5*log2(1+x);
theta in [0,1] is the sender's private-power fraction and eta the share of
the remaining power not coherently combined with the relay.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import GaussianRelayParams
from .errors import DimensionMismatch, NegativeArgument, OutOfUnitInterval
from .regions import FrontierSample, RatePoint, RateRegion, Region2D, SliceRegions, _vertices_from_matrices


@dataclass(frozen=True)
class GaussianDerived:
    """Combining coefficient and effective noise variances.

    ``a`` weights Y against Z in the sufficient combination aY + (1-a)Z;
    ``ntilde1`` is the variance of the combined noise and ``ntilde2`` the
    variance of the difference noise xi1 - xi2.
    """

    a: float
    ntilde1: float
    ntilde2: float


@dataclass(frozen=True)
class GaussParamPoint:
    theta: float
    eta: float
    alpha: float
    beta: float


def cfun(x: float) -> float:
    """Gaussian capacity function 0.5*log2(1+x) in bits."""
    if x < 0:
        raise NegativeArgument(f"cfun needs x >= 0, got {x}")
    return 0.5 * math.log2(1.0 + x)


def _cfun_arr(x: np.ndarray) -> np.ndarray:
    return 0.5 * np.log2(1.0 + x)


def derived(params: GaussianRelayParams) -> GaussianDerived:
    cross = params.rho * math.sqrt(params.n1 * params.n2)
    nt2 = params.n1 + params.n2 - 2.0 * cross
    a = (params.n2 - cross) / nt2
    nt1 = (1.0 - params.rho**2) * params.n1 * params.n2 / nt2
    return GaussianDerived(a=a, ntilde1=nt1, ntilde2=nt2)


def param_map(
    alpha: float | None = None,
    beta: float | None = None,
    theta: float | None = None,
    eta: float | None = None,
) -> GaussParamPoint:
    """Fill the other pair of the (alpha, beta) <-> (theta, eta) bijection.

    Boundary conventions: alpha = 0 returns beta = 1; theta = 1 returns
    eta = 0 (and maps back to alpha = beta = 1).
    """
    have_ab = alpha is not None and beta is not None
    have_te = theta is not None and eta is not None
    if have_ab == have_te:
        raise DimensionMismatch("supply exactly one of (alpha, beta) or (theta, eta)")
    if have_ab:
        for name, v in (("alpha", alpha), ("beta", beta)):
            if not 0.0 <= v <= 1.0:
                raise OutOfUnitInterval(f"{name}={v} outside [0, 1]")
        theta = alpha * beta
        eta = 0.0 if theta == 1.0 else (alpha - theta) / (1.0 - theta)
        return GaussParamPoint(theta=theta, eta=eta, alpha=alpha, beta=beta)
    for name, v in (("theta", theta), ("eta", eta)):
        if not 0.0 <= v <= 1.0:
            raise OutOfUnitInterval(f"{name}={v} outside [0, 1]")
    if theta == 1.0:
        return GaussParamPoint(theta=1.0, eta=0.0, alpha=1.0, beta=1.0)
    alpha = 1.0 - (1.0 - theta) * (1.0 - eta)
    beta = 1.0 if alpha == 0.0 else theta / alpha
    return GaussParamPoint(theta=theta, eta=eta, alpha=alpha, beta=beta)


def _common_rate_cap(params: GaussianRelayParams, theta: float, eta) -> np.ndarray:
    """min of the two common-message caps, elementwise over ``eta``."""
    p1, p2, n1, n2 = params.p1, params.p2, params.n1, params.n2
    tbar = 1.0 - theta
    ebar = 1.0 - np.asarray(eta, dtype=float)
    to_y = _cfun_arr((tbar * p1 + p2 + 2.0 * np.sqrt(tbar * ebar * p1 * p2)) / (theta * p1 + n1))
    to_z = _cfun_arr(tbar * np.asarray(eta) * p1 / (theta * p1 + n2))
    return np.minimum(to_y, to_z)


def inner_caps(params: GaussianRelayParams, theta: float, eta_grid) -> dict:
    """Achievable-region caps at one theta; R0 maximized over the eta grid."""
    vals = _common_rate_cap(params, theta, eta_grid)
    best = int(np.argmax(vals))
    r1 = cfun(theta * params.p1 / params.n1)
    re = max(0.0, r1 - cfun(theta * params.p1 / params.n2))
    return {
        "r0": float(vals[best]),
        "eta": float(np.asarray(eta_grid)[best]),
        "r1": r1,
        "re": re,
    }


def outer_caps(params: GaussianRelayParams, theta: float, eta: float) -> dict:
    """Outer-region caps at one (theta, eta) pair."""
    nt1 = derived(params).ntilde1
    tbar, ebar = 1.0 - theta, 1.0 - eta
    r1 = cfun(theta * params.p1 / nt1)
    return {
        "r0": float(_common_rate_cap(params, theta, eta)),
        "r1": r1,
        "sum": cfun((params.p1 + params.p2 + 2.0 * math.sqrt(tbar * ebar * params.p1 * params.p2)) / params.n1),
        "re": max(0.0, r1 - cfun(theta * params.p1 / params.n2)),
    }


def _region_from_cells(cells) -> tuple[tuple[RatePoint, ...], tuple[dict, ...]]:
    points: list[np.ndarray] = []
    params_list: list[dict] = []
    for a, b, meta in cells:
        verts = _vertices_from_matrices(a, b)
        points.append(verts)
        params_list.extend([meta] * len(verts))
    merged = np.vstack(points)
    # Dedupe while keeping the first parameter tag for each point.
    seen: dict[tuple, dict] = {}
    for row, meta in zip(np.round(merged, 12), params_list):
        seen.setdefault(tuple(row), meta)
    pts = tuple(RatePoint(*k) for k in seen)
    return pts, tuple(seen.values())


def inner_region(params: GaussianRelayParams, theta_grid, eta_grid) -> RateRegion:
    """Union over the theta grid of the achievable per-theta boxes."""
    cells = []
    for theta in np.asarray(theta_grid, dtype=float):
        caps = inner_caps(params, theta, eta_grid)
        a = np.array([
            [0.0, -1.0, 1.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ])
        b = np.array([0.0, caps["r0"], caps["r1"], caps["re"]])
        cells.append((a, b, {"theta": float(theta), "eta": caps["eta"]}))
    pts, metas = _region_from_cells(cells)
    return RateRegion(
        family="GaussianInner",
        label="certified_inner_point",
        points=pts,
        frontier=(),
        point_params=metas,
    )


def outer_region(params: GaussianRelayParams, theta_grid, eta_grid) -> RateRegion:
    """Union over the (theta, eta) grid of the outer constraint sets."""
    cells = []
    for theta in np.asarray(theta_grid, dtype=float):
        for eta in np.asarray(eta_grid, dtype=float):
            caps = outer_caps(params, float(theta), float(eta))
            a = np.array([
                [0.0, -1.0, 1.0],
                [1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [1.0, 1.0, 0.0],
                [0.0, 0.0, 1.0],
            ])
            b = np.array([0.0, caps["r0"], caps["r1"], caps["sum"], caps["re"]])
            cells.append((a, b, {"theta": float(theta), "eta": float(eta)}))
    pts, metas = _region_from_cells(cells)
    return RateRegion(
        family="GaussianOuter",
        label="outer_bound_estimate",
        points=pts,
        frontier=(),
        point_params=metas,
    )


def cds_region(params: GaussianRelayParams, theta_grid, eta_grid) -> SliceRegions:
    """Inner and outer secrecy-capacity regions over (R0, R1)."""
    nt1 = derived(params).ntilde1
    inner_pts, outer_pts = [], []
    inner_meta, outer_meta = [], []
    inner_frontier, outer_frontier = [], []
    for theta in np.asarray(theta_grid, dtype=float):
        vals = _common_rate_cap(params, float(theta), eta_grid)
        r0 = float(vals.max())
        eta_star = float(np.asarray(eta_grid)[int(np.argmax(vals))])
        r1_in = max(0.0, cfun(theta * params.p1 / params.n1) - cfun(theta * params.p1 / params.n2))
        r1_out = max(0.0, cfun(theta * params.p1 / nt1) - cfun(theta * params.p1 / params.n2))
        for pts, metas, frontier, r1 in (
            (inner_pts, inner_meta, inner_frontier, r1_in),
            (outer_pts, outer_meta, outer_frontier, r1_out),
        ):
            corners = {(0.0, 0.0), (r0, 0.0), (0.0, r1), (r0, r1)}
            pts.extend(corners)
            metas.extend([{"theta": float(theta), "eta": eta_star}] * len(corners))
            frontier.append(FrontierSample(weights=(float(theta), eta_star), value=r1))

    def build(points, metas, frontier, label):
        seen: dict[tuple, dict] = {}
        for p, m in zip(points, metas):
            seen.setdefault((round(p[0], 12), round(p[1], 12)), m)
        return Region2D(
            axes=("r0", "r1"),
            label=label,
            points=tuple(seen.keys()),
            frontier=tuple(frontier),
            point_params=tuple(seen.values()),
        )

    return SliceRegions(
        inner=build(inner_pts, inner_meta, inner_frontier, "certified_inner_point"),
        outer=build(outer_pts, outer_meta, outer_frontier, "outer_bound_estimate"),
    )


def secrecy_capacity_gauss(params: GaussianRelayParams) -> tuple[float, float]:
    """(lower, upper) secrecy-capacity bounds; equal when ntilde1 = N1."""
    nt1 = derived(params).ntilde1
    to_z = cfun(params.p1 / params.n2)
    lower = max(0.0, cfun(params.p1 / params.n1) - to_z)
    upper = max(0.0, cfun(params.p1 / nt1) - to_z)
    return lower, upper
