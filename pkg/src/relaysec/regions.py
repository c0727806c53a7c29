"""Rate-region bound families and numerical frontier tracing.

Each bound family evaluates, at a fixed auxiliary input, a set of linear
constraints on the rate triple (r0, r1, re) = (common rate, private rate,
equivocation rate).  Frontiers are traced by maximizing weighted rate sums
over the auxiliary family with multi-start derivative-free search on an
unconstrained softmax reparametrization of the pmfs.

Both "inner" and "outer" frontiers come from sampled auxiliary inputs, so
the numerical outer frontier is itself a lower estimate of the analytic
outer bound; points are labeled ``certified_inner_point`` or
``outer_bound_estimate`` accordingly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import minimize

from .channel import RelayChannelDMC, classify
from .errors import (
    CardinalityCapExceeded,
    DegenerateConstraintSet,
    DimensionMismatch,
    FamilyAuxMismatch,
)
from .info import (
    AuxInput,
    AuxInputStoch,
    build_joint,
    build_joint_stoch,
    mi_raw,
)

FEAS_TOL = 1e-9

# Axis layouts of the joint pmf arrays used internally.
_DET_AX = {"U": 0, "S": 1, "X": 2, "Y": 3, "Z": 4}
_STOCH_AX = {"U": 0, "V": 1, "S": 2, "X": 3, "Y": 4, "Z": 5}


class Family(Enum):
    TILDE_IN = "TildeIn"
    TILDE_OUT = "TildeOut"
    R_IN = "RIn"
    R_OUT = "ROut"
    HAT_OUT = "HatOut"
    STOCH_IN = "StochIn"
    STOCH_OUT = "StochOut"


INNER_FAMILIES = frozenset({Family.TILDE_IN, Family.R_IN, Family.STOCH_IN})
STOCH_FAMILIES = frozenset({Family.STOCH_IN, Family.STOCH_OUT})
# Families whose auxiliary alphabet caps use the enlarged (outer) bound.
_WIDE_CAP = frozenset({Family.TILDE_OUT, Family.R_OUT, Family.STOCH_OUT})


def family_label(family: Family) -> str:
    return "certified_inner_point" if family in INNER_FAMILIES else "outer_bound_estimate"


def aux_caps(family: Family, ch: RelayChannelDMC) -> tuple[int, int | None]:
    """(u_cap, v_cap) for the family on this channel; v_cap None if unused."""
    base = ch.nx * ch.ns * (ch.nz if family in _WIDE_CAP else 1)
    u_cap = base + 3
    if family in STOCH_FAMILIES:
        return u_cap, base * base + 4 * base + 3
    return u_cap, None


@dataclass(frozen=True)
class RatePoint:
    r0: float
    r1: float
    re: float

    def as_array(self) -> np.ndarray:
        return np.array([self.r0, self.r1, self.re])


@dataclass(frozen=True)
class Constraint:
    name: str
    coeffs: tuple[float, float, float]
    bound: float


@dataclass(frozen=True)
class RateConstraintSet:
    """Linear constraints a . (r0,r1,re) <= b at one auxiliary input.

    Nonnegativity of the rates is implicit; ``re <= r1`` is always present.
    """

    family: Family
    constants: dict[str, float]
    constraints: tuple[Constraint, ...]

    def matrices(self) -> tuple[np.ndarray, np.ndarray]:
        a = np.array([c.coeffs for c in self.constraints], dtype=float)
        b = np.array([c.bound for c in self.constraints], dtype=float)
        return a, b


@dataclass(frozen=True)
class FrontierSample:
    weights: tuple[float, ...]
    value: float


@dataclass(frozen=True)
class RateRegion:
    family: Family | str
    label: str
    points: tuple[RatePoint, ...]
    frontier: tuple[FrontierSample, ...]
    point_params: tuple[dict, ...] | None = None

    @property
    def family_name(self) -> str:
        return self.family.value if isinstance(self.family, Family) else str(self.family)


@dataclass(frozen=True)
class OptBudget:
    """Search budget for the auxiliary-input optimization.

    ``nu``/``nv`` default to the family's cardinality cap; they may be
    lowered for speed but never raised above the cap.
    """

    restarts: int = 64
    maxiter: int = 200
    init_scale: float = 3.0
    nu: int | None = None
    nv: int | None = None


@dataclass(frozen=True)
class ScalarizeResult:
    value: float
    point: RatePoint
    aux: AuxInput | AuxInputStoch


def _min_info(constants: dict[str, float]) -> float:
    return min(constants["I(Y;US)"], constants["I(Z;U|S)"])


def _mi_of(pmf: np.ndarray, ax: dict[str, int], a: str, b: str, c: str = "") -> float:
    key = lambda vars_: tuple(ax[v] for v in vars_)
    return mi_raw(pmf, key(a), key(b), key(c))


def _bounds_arrays(family: Family, pmf: np.ndarray) -> tuple[list[str], np.ndarray, np.ndarray, dict]:
    """Constraint names, coefficient matrix, bounds, and MI constants."""
    stoch = family in STOCH_FAMILIES
    ax = _STOCH_AX if stoch else _DET_AX
    constants = {
        "I(Y;US)": _mi_of(pmf, ax, "Y", "US"),
        "I(Z;U|S)": _mi_of(pmf, ax, "Z", "U", "S"),
    }
    r0cap = _min_info(constants)
    names = ["re<=r1", "r0"]
    coeffs = [(0.0, -1.0, 1.0), (1.0, 0.0, 0.0)]
    bounds = [0.0, r0cap]

    if stoch:
        constants["I(V;Y|US)"] = _mi_of(pmf, ax, "V", "Y", "US")
        constants["I(V;Z|US)"] = _mi_of(pmf, ax, "V", "Z", "US")
        names += ["r0+r1", "re"]
        coeffs += [(1.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
        bounds += [
            constants["I(V;Y|US)"] + r0cap,
            max(0.0, constants["I(V;Y|US)"] - constants["I(V;Z|US)"]),
        ]
        b = np.array(bounds)
        if not np.isfinite(b).all():
            raise DimensionMismatch(f"non-finite bound among {bounds}")
        return names, np.array(coeffs), b, constants

    constants["I(X;Y|US)"] = _mi_of(pmf, ax, "X", "Y", "US")
    constants["I(X;Z|US)"] = _mi_of(pmf, ax, "X", "Z", "US")
    diff = constants["I(X;Y|US)"] - constants["I(X;Z|US)"]

    if family is Family.TILDE_IN:
        names += ["r1", "re"]
        coeffs += [(0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
        bounds += [constants["I(X;Y|US)"], max(0.0, diff)]
    elif family is Family.TILDE_OUT:
        constants["I(X;YZ|US)"] = _mi_of(pmf, ax, "X", "YZ", "US")
        constants["I(XS;Y)"] = _mi_of(pmf, ax, "XS", "Y")
        constants["I(X;Y|ZUS)"] = _mi_of(pmf, ax, "X", "Y", "ZUS")
        names += ["r1", "r0+r1", "re"]
        coeffs += [(0.0, 1.0, 0.0), (1.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
        bounds += [constants["I(X;YZ|US)"], constants["I(XS;Y)"], constants["I(X;Y|ZUS)"]]
    elif family in (Family.R_IN, Family.R_OUT):
        names += ["r0+r1", "re"]
        coeffs += [(1.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
        bounds += [constants["I(X;Y|US)"] + r0cap, max(0.0, diff)]
    elif family is Family.HAT_OUT:
        z = _mi_of(pmf, ax, "S", "Y", "U") - _mi_of(pmf, ax, "S", "Z", "U")
        constants["zeta"] = z
        names += ["r0+r1", "re"]
        coeffs += [(1.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
        bounds += [constants["I(X;Y|US)"] + max(0.0, z) + r0cap, max(0.0, diff + z)]
    else:  # pragma: no cover
        raise FamilyAuxMismatch(f"unhandled family {family}")

    b = np.array(bounds)
    if not np.isfinite(b).all():
        raise DimensionMismatch(f"non-finite bound among {bounds}")
    return names, np.array(coeffs), b, constants


def evaluate_bounds(aux, ch: RelayChannelDMC, family: Family) -> RateConstraintSet:
    """Evaluate one bound family's constraint set at a fixed auxiliary input."""
    stoch = family in STOCH_FAMILIES
    if stoch and not isinstance(aux, AuxInputStoch):
        raise FamilyAuxMismatch(f"{family.value} needs AuxInputStoch, got {type(aux).__name__}")
    if not stoch and not isinstance(aux, AuxInput):
        raise FamilyAuxMismatch(f"{family.value} needs AuxInput, got {type(aux).__name__}")
    u_cap, v_cap = aux_caps(family, ch)
    if aux.nu > u_cap:
        raise CardinalityCapExceeded(f"|U|={aux.nu} exceeds cap {u_cap} for {family.value}")
    if stoch and aux.nv > v_cap:
        raise CardinalityCapExceeded(f"|V|={aux.nv} exceeds cap {v_cap} for {family.value}")

    j = build_joint_stoch(aux, ch) if stoch else build_joint(aux, ch)
    names, coeffs, bounds, constants = _bounds_arrays(family, j.pmf)
    cons = tuple(
        Constraint(n, tuple(cf), float(bd)) for n, cf, bd in zip(names, coeffs, bounds)
    )
    return RateConstraintSet(family, constants, cons)


_COMBOS_CACHE: dict[int, np.ndarray] = {}


def _combos(m: int) -> np.ndarray:
    if m not in _COMBOS_CACHE:
        _COMBOS_CACHE[m] = np.array(list(itertools.combinations(range(m), 3)))
    return _COMBOS_CACHE[m]


def _vertices_from_matrices(a: np.ndarray, b: np.ndarray, dedupe: bool = True) -> np.ndarray:
    """Vertices of {r >= 0, a r <= b} in 3-D, shape (k, 3)."""
    if a.shape[0] and np.any(np.all(a == 0.0, axis=1)):
        raise DegenerateConstraintSet("constraint with all-zero normal")
    a_all = np.vstack([a, -np.eye(3)])
    b_all = np.concatenate([b, np.zeros(3)])
    idx = _combos(a_all.shape[0])
    mats = a_all[idx]
    rhs = b_all[idx]
    dets = np.linalg.det(mats)
    ok = np.abs(dets) > 1e-12
    if not ok.any():
        return np.empty((0, 3))
    sols = np.linalg.solve(mats[ok], rhs[ok][:, :, None])[:, :, 0]
    feas = np.all(a_all @ sols.T <= b_all[:, None] + FEAS_TOL, axis=0)
    pts = sols[feas]
    if pts.size == 0:
        return np.empty((0, 3))
    pts = np.clip(pts, 0.0, None)
    if dedupe:
        pts = np.unique(np.round(pts, 12), axis=0)
    return pts


def _vertex_array(cs: RateConstraintSet) -> np.ndarray:
    a, b = cs.matrices()
    return _vertices_from_matrices(a, b)


def enumerate_vertices(cs: RateConstraintSet) -> list[RatePoint]:
    """Exact vertex list of the rate polytope defined by ``cs``."""
    return [RatePoint(*row) for row in _vertex_array(cs)]


# ---------------------------------------------------------------------------
# Auxiliary-input search spaces and the multistart engine
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Space:
    stoch: bool
    nu: int
    ns: int
    nx: int
    nv: int = 0

    @property
    def dim(self) -> int:
        if self.stoch:
            return self.nu * self.ns * self.nv + self.nv * self.nx
        return self.nu * self.ns + self.nu * self.ns * self.nx

    def arrays_from_vec(self, vec: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if self.stoch:
            k = self.nu * self.ns * self.nv
            p_usv = _softmax_all(vec[:k]).reshape(self.nu, self.ns, self.nv)
            p_x_v = _softmax_rows(vec[k:].reshape(self.nv, self.nx))
            return p_usv, p_x_v
        k = self.nu * self.ns
        p_us = _softmax_all(vec[:k]).reshape(self.nu, self.ns)
        p_x = _softmax_rows(vec[k:].reshape(self.nu, self.ns, self.nx))
        return p_us, p_x

    def pmf_from_vec(self, vec: np.ndarray, ch: RelayChannelDMC) -> np.ndarray:
        first, second = self.arrays_from_vec(vec)
        if self.stoch:
            return np.einsum("usv,vx,xsyz->uvsxyz", first, second, ch.prob)
        return np.einsum("us,usx,xsyz->usxyz", first, second, ch.prob)

    def aux_from_vec(self, vec: np.ndarray):
        first, second = self.arrays_from_vec(vec)
        if self.stoch:
            return AuxInputStoch(p_usv=first, p_x_given_v=second)
        return AuxInput(p_us=first, p_x_given_us=second)


def _softmax_all(v: np.ndarray) -> np.ndarray:
    e = np.exp(v - v.max())
    return e / e.sum()


def _softmax_rows(m: np.ndarray) -> np.ndarray:
    e = np.exp(m - m.max(axis=-1, keepdims=True))
    return e / e.sum(axis=-1, keepdims=True)


def _space_for(family: Family, ch: RelayChannelDMC, budget: OptBudget) -> _Space:
    u_cap, v_cap = aux_caps(family, ch)
    nu = budget.nu if budget.nu is not None else u_cap
    if nu > u_cap:
        raise CardinalityCapExceeded(f"budget nu={nu} exceeds cap {u_cap}")
    if family in STOCH_FAMILIES:
        nv = budget.nv if budget.nv is not None else v_cap
        if nv > v_cap:
            raise CardinalityCapExceeded(f"budget nv={nv} exceeds cap {v_cap}")
        return _Space(stoch=True, nu=nu, ns=ch.ns, nx=ch.nx, nv=nv)
    return _Space(stoch=False, nu=nu, ns=ch.ns, nx=ch.nx)


def _as_seedseq(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def _multistart_max(objective, space: _Space, budget: OptBudget, seed) -> tuple[float, np.ndarray]:
    """Maximize ``objective(vec)`` with Nelder-Mead restarts; first-found wins ties."""
    root = _as_seedseq(seed)
    best_val = -np.inf
    best_vec = np.zeros(space.dim)
    maxfev = space.dim + 1 + 2 * budget.maxiter
    for child in root.spawn(budget.restarts):
        rng = np.random.default_rng(child)
        x0 = rng.normal(scale=budget.init_scale, size=space.dim)
        res = minimize(
            lambda v: -objective(v),
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": budget.maxiter,
                "maxfev": maxfev,
                "xatol": 1e-5,
                "fatol": 1e-10,
            },
        )
        val = -res.fun
        if val > best_val:
            best_val, best_vec = val, res.x
    return best_val, best_vec


def _validate_weights(weights, k: int) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.shape != (k,) or w.min() < 0 or abs(w.sum() - 1.0) > 1e-9:
        raise DimensionMismatch(f"weights must be a length-{k} simplex vector, got {weights}")
    return w / w.sum()


def scalarize_max(
    ch: RelayChannelDMC,
    family: Family,
    weights,
    budget: OptBudget | None = None,
    seed=0,
) -> ScalarizeResult:
    """Best weighted rate sum over sampled auxiliary inputs.

    Returns the best found value, the achieving polytope vertex, and the
    achieving auxiliary input.  Deterministic given the seed; values never
    decrease when ``budget.restarts`` grows with the same seed.
    """
    budget = budget or OptBudget()
    w = _validate_weights(weights, 3)
    space = _space_for(family, ch, budget)

    def objective(vec):
        _, a, b, _ = _bounds_arrays(family, space.pmf_from_vec(vec, ch))
        verts = _vertices_from_matrices(a, b, dedupe=False)
        return float((verts @ w).max())

    val, vec = _multistart_max(objective, space, budget, seed)
    aux = space.aux_from_vec(vec)
    verts = _vertex_array(evaluate_bounds(aux, ch, family))
    best = verts[np.argmax(verts @ w)]
    return ScalarizeResult(value=val, point=RatePoint(*best), aux=aux)


def simplex_grid(resolution: int, k: int = 3) -> list[tuple[float, ...]]:
    """Weight vectors with ``resolution`` points per simplex edge."""
    if resolution < 2:
        raise DimensionMismatch(f"resolution must be >= 2, got {resolution}")
    n = resolution - 1
    out = []
    for combo in itertools.product(range(n + 1), repeat=k - 1):
        if sum(combo) <= n:
            out.append(tuple(c / n for c in combo) + ((n - sum(combo)) / n,))
    return out


def trace_region(
    ch: RelayChannelDMC,
    family: Family,
    resolution: int = 9,
    budget: OptBudget | None = None,
    seed=0,
) -> RateRegion:
    """Union of achieved constraint-set vertices over a simplex weight grid."""
    budget = budget or OptBudget()
    cells = simplex_grid(resolution)
    root = _as_seedseq(seed)
    children = root.spawn(len(cells))
    frontier = []
    points: list[np.ndarray] = []
    for w, child in zip(cells, children):
        res = scalarize_max(ch, family, w, budget, seed=child)
        frontier.append(FrontierSample(weights=w, value=res.value))
        points.append(_vertex_array(evaluate_bounds(res.aux, ch, family)))
    merged = np.unique(np.round(np.vstack(points), 12), axis=0) if points else np.empty((0, 3))
    return RateRegion(
        family=family,
        label=family_label(family),
        points=tuple(RatePoint(*row) for row in merged),
        frontier=tuple(frontier),
    )


# ---------------------------------------------------------------------------
# Secrecy-capacity slices (2-D regions over (R0, R1) and (R1, Re))
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Region2D:
    axes: tuple[str, str]
    label: str
    points: tuple[tuple[float, float], ...]
    frontier: tuple[FrontierSample, ...]
    point_params: tuple[dict, ...] | None = None


@dataclass(frozen=True)
class SliceRegions:
    inner: Region2D
    outer: Region2D
    hat_outer: Region2D | None = None


def _secrecy_caps(pmf: np.ndarray, stoch: bool, with_zeta: bool) -> tuple[float, float]:
    """(R0 cap, R1 cap) of the equal-rate slice at one joint pmf."""
    ax = _STOCH_AX if stoch else _DET_AX
    r0cap = min(_mi_of(pmf, ax, "Y", "US"), _mi_of(pmf, ax, "Z", "U", "S"))
    v = "V" if stoch else "X"
    diff = _mi_of(pmf, ax, v, "Y", "US") - _mi_of(pmf, ax, v, "Z", "US")
    if with_zeta:
        diff += _mi_of(pmf, ax, "S", "Y", "U") - _mi_of(pmf, ax, "S", "Z", "U")
    return r0cap, max(0.0, diff)


def _r1e_caps(pmf: np.ndarray, stoch: bool, with_zeta: bool) -> tuple[float, float]:
    """(R1 cap, Re cap) of the no-common-message slice at one joint pmf."""
    ax = _STOCH_AX if stoch else _DET_AX
    r0cap = min(_mi_of(pmf, ax, "Y", "US"), _mi_of(pmf, ax, "Z", "U", "S"))
    v = "V" if stoch else "X"
    i_vy = _mi_of(pmf, ax, v, "Y", "US")
    diff = i_vy - _mi_of(pmf, ax, v, "Z", "US")
    zadd = 0.0
    if with_zeta:
        z = _mi_of(pmf, ax, "S", "Y", "U") - _mi_of(pmf, ax, "S", "Z", "U")
        diff += z
        zadd = max(0.0, z)
    return i_vy + zadd + r0cap, max(0.0, diff)


def _box_vertices(c0: float, c1: float) -> np.ndarray:
    return np.unique(
        np.round(np.array([[0.0, 0.0], [c0, 0.0], [0.0, c1], [c0, c1]]), 12), axis=0
    )


def _staircase_vertices(r1cap: float, recap: float) -> np.ndarray:
    m = min(r1cap, recap)
    pts = np.array([[0.0, 0.0], [r1cap, 0.0], [r1cap, m], [m, m]])
    return np.unique(np.round(pts, 12), axis=0)


def _trace_2d(
    ch, caps_fn, vertex_fn, space: _Space, label: str, axes, budget, seed, resolution
) -> Region2D:
    cells = simplex_grid(resolution, k=2)
    children = _as_seedseq(seed).spawn(len(cells))
    frontier = []
    points: list[np.ndarray] = []
    for w, child in zip(cells, children):
        wv = np.asarray(w)

        def objective(vec):
            caps = caps_fn(space.pmf_from_vec(vec, ch))
            return float((vertex_fn(*caps) @ wv).max())

        val, vec = _multistart_max(objective, space, budget, child)
        frontier.append(FrontierSample(weights=w, value=val))
        points.append(vertex_fn(*caps_fn(space.pmf_from_vec(vec, ch))))
    merged = np.unique(np.round(np.vstack(points), 12), axis=0)
    return Region2D(
        axes=axes,
        label=label,
        points=tuple(map(tuple, merged)),
        frontier=tuple(frontier),
    )


def _slice_spaces(ch, encoder: str, budget: OptBudget):
    if encoder == "deterministic":
        inner = _space_for(Family.R_IN, ch, budget)
        outer = _space_for(Family.R_OUT, ch, budget)
        stoch = False
    elif encoder == "stochastic":
        inner = _space_for(Family.STOCH_IN, ch, budget)
        outer = _space_for(Family.STOCH_OUT, ch, budget)
        stoch = True
    else:
        raise DimensionMismatch(f"encoder must be deterministic|stochastic, got {encoder!r}")
    return inner, outer, stoch


def secrecy_capacity_region(
    ch: RelayChannelDMC,
    encoder: str = "deterministic",
    budget: OptBudget | None = None,
    seed=0,
    resolution: int = 9,
) -> SliceRegions:
    """Inner/outer 2-D regions over (R0, R1) on the equal-rate slice.

    The zeta-corrected outer region is included when the channel is
    classified in the independent class (deterministic encoders only).
    """
    budget = budget or OptBudget()
    inner_sp, outer_sp, stoch = _slice_spaces(ch, encoder, budget)
    root = _as_seedseq(seed)
    s_in, s_out, s_hat = root.spawn(3)
    axes = ("r0", "r1")

    def caps(stochf, with_zeta):
        return lambda pmf: _secrecy_caps(pmf, stochf, with_zeta)

    inner = _trace_2d(ch, caps(stoch, False), _box_vertices, inner_sp,
                      "certified_inner_point", axes, budget, s_in, resolution)
    outer = _trace_2d(ch, caps(stoch, False), _box_vertices, outer_sp,
                      "outer_bound_estimate", axes, budget, s_out, resolution)
    hat = None
    if not stoch and "Independent" in classify(ch).satisfied:
        hat = _trace_2d(ch, caps(False, True), _box_vertices, inner_sp,
                        "outer_bound_estimate", axes, budget, s_hat, resolution)
    return SliceRegions(inner=inner, outer=outer, hat_outer=hat)


def r1e_region(
    ch: RelayChannelDMC,
    encoder: str = "deterministic",
    budget: OptBudget | None = None,
    seed=0,
    resolution: int = 9,
) -> SliceRegions:
    """Inner/outer 2-D regions over (R1, Re) on the no-common-message slice."""
    budget = budget or OptBudget()
    inner_sp, outer_sp, stoch = _slice_spaces(ch, encoder, budget)
    root = _as_seedseq(seed)
    s_in, s_out, s_hat = root.spawn(3)
    axes = ("r1", "re")

    def caps(stochf, with_zeta):
        return lambda pmf: _r1e_caps(pmf, stochf, with_zeta)

    inner = _trace_2d(ch, caps(stoch, False), _staircase_vertices, inner_sp,
                      "certified_inner_point", axes, budget, s_in, resolution)
    outer = _trace_2d(ch, caps(stoch, False), _staircase_vertices, outer_sp,
                      "outer_bound_estimate", axes, budget, s_out, resolution)
    hat = None
    if not stoch and "Independent" in classify(ch).satisfied:
        hat = _trace_2d(ch, caps(False, True), _staircase_vertices, inner_sp,
                        "outer_bound_estimate", axes, budget, s_hat, resolution)
    return SliceRegions(inner=inner, outer=outer, hat_outer=hat)


def region_to_dict(region: RateRegion) -> dict:
    """JSON-ready dict; round-trips through ``region_from_dict``."""
    points = []
    for i, p in enumerate(region.points):
        d = {"r0": p.r0, "r1": p.r1, "re": p.re}
        if region.point_params is not None:
            d.update(region.point_params[i])
        points.append(d)
    return {
        "family": region.family_name,
        "label": region.label,
        "points": points,
        "frontier": [
            {"w": list(s.weights), "value": s.value} for s in region.frontier
        ],
    }


def region_from_dict(data: dict) -> RateRegion:
    family: Family | str
    try:
        family = Family(data["family"])
    except ValueError:
        family = data["family"]
    points = tuple(RatePoint(p["r0"], p["r1"], p["re"]) for p in data["points"])
    extras = tuple(
        {k: v for k, v in p.items() if k not in ("r0", "r1", "re")} for p in data["points"]
    )
    has_extras = any(extras)
    return RateRegion(
        family=family,
        label=data.get("label", ""),
        points=points,
        frontier=tuple(
            FrontierSample(weights=tuple(s["w"]), value=s["value"])
            for s in data.get("frontier", [])
        ),
        point_params=extras if has_extras else None,
    )


def region2d_to_dict(region: Region2D) -> dict:
    points = []
    for i, (a, b) in enumerate(region.points):
        d = {region.axes[0]: a, region.axes[1]: b}
        if region.point_params is not None:
            d.update(region.point_params[i])
        points.append(d)
    return {
        "axes": list(region.axes),
        "label": region.label,
        "points": points,
        "frontier": [
            {"w": list(s.weights), "value": s.value} for s in region.frontier
        ],
    }


def secrecy_capacity(
    ch: RelayChannelDMC,
    encoder: str = "deterministic",
    budget: OptBudget | None = None,
    seed=0,
) -> tuple[float, float]:
    """(lower, upper) estimates of the secrecy capacity.

    Lower: best found equivocation cap over the inner auxiliary family.
    Upper: best found over the enlarged outer family; being a sampled
    maximum it is itself a lower estimate of the analytic outer value.
    """
    budget = budget or OptBudget()
    inner_sp, outer_sp, stoch = _slice_spaces(ch, encoder, budget)
    root = _as_seedseq(seed)
    s_lo, s_hi = root.spawn(2)

    def objective_for(space):
        def objective(vec):
            return _secrecy_caps(space.pmf_from_vec(vec, ch), stoch, False)[1]

        return objective

    lower, _ = _multistart_max(objective_for(inner_sp), inner_sp, budget, s_lo)
    upper, _ = _multistart_max(objective_for(outer_sp), outer_sp, budget, s_hi)
    # The inner family embeds in the outer one, so any inner witness is also
    # a valid lower estimate of the outer maximum.
    return lower, max(upper, lower)
