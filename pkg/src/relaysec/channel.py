"""Discrete memoryless relay channels and Gaussian relay parameters.

A discrete relay channel is a stochastic matrix ``prob[x][s][y][z]`` giving
the probability of the receiver/relay output pair ``(y, z)`` for the sender
input ``x`` and relay input ``s``.  The module validates raw arrays,
computes conditionals/marginals of the transition law, and classifies the
channel by its degradedness structure.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyAlphabet,
    NegativeArgument,
    NegativeProbability,
    OutOfUnitInterval,
    RowSumViolation,
    UndefinedConditional,
)

ROW_SUM_TOL = 1e-9
NEG_TOL = 1e-12
DEFAULT_CLASS_TOL = 1e-9

INPUT_VARS = "XS"
OUTPUT_VARS = "YZ"
_AXIS = {"X": 0, "S": 1, "Y": 2, "Z": 3}


@dataclass(frozen=True)
class RelayChannelDMC:
    """Validated transition law of a discrete relay channel.

    ``prob`` has shape ``(nx, ns, ny, nz)``; every ``(x, s)`` row sums to 1.
    Instances are immutable and safe to share across threads.
    """

    nx: int
    ns: int
    ny: int
    nz: int
    prob: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.prob.setflags(write=False)

    def row_conditional(self, out_var: str) -> np.ndarray:
        """Single-output law: P(out | x, s), shape (nx, ns, n_out)."""
        drop = 3 if out_var == "Y" else 2
        return self.prob.sum(axis=drop)

    def to_json_dict(self) -> dict:
        return {
            "nx": self.nx,
            "ns": self.ns,
            "ny": self.ny,
            "nz": self.nz,
            "prob": self.prob.tolist(),
        }


@dataclass(frozen=True)
class GaussianRelayParams:
    """Noise variances, noise correlation, and power constraints."""

    n1: float
    n2: float
    rho: float
    p1: float
    p2: float

    def __post_init__(self):
        if self.n1 <= 0 or self.n2 <= 0:
            raise NegativeArgument(f"noise variances must be positive: {self.n1}, {self.n2}")
        if not abs(self.rho) < 1:
            raise OutOfUnitInterval(f"|rho| must be < 1, got {self.rho}")
        if self.p1 < 0 or self.p2 < 0:
            raise NegativeArgument(f"powers must be nonnegative: {self.p1}, {self.p2}")

    def to_json_dict(self) -> dict:
        return {"N1": self.n1, "N2": self.n2, "rho": self.rho, "P1": self.p1, "P2": self.p2}


@dataclass(frozen=True)
class ChannelClass:
    """Degradedness classification result.

    ``satisfied`` lists every class whose factorization residual is within
    tolerance (the classes are not mutually exclusive); ``tag`` is the first
    satisfied class in the order degraded, reversely degraded, independent,
    else ``"General"``.
    """

    tag: str
    satisfied: tuple[str, ...]
    residuals: dict[str, float]


def validate_channel(raw) -> RelayChannelDMC:
    """Validate a 4-index probability array and return a channel.

    Rows whose sum deviates from 1 by less than 1e-9 are renormalized
    exactly; larger deviations raise ``RowSumViolation``.
    """
    prob = np.asarray(raw, dtype=float)
    if prob.ndim != 4:
        raise EmptyAlphabet(f"expected a 4-index array, got ndim={prob.ndim}")
    if min(prob.shape) < 1:
        raise EmptyAlphabet(f"all alphabet sizes must be >= 1, got shape {prob.shape}")
    if prob.min() < -NEG_TOL:
        raise NegativeProbability(f"negative entry {prob.min()}")
    prob = np.clip(prob, 0.0, None)
    row_sums = prob.sum(axis=(2, 3))
    dev = np.abs(row_sums - 1.0).max()
    if dev >= ROW_SUM_TOL:
        raise RowSumViolation(f"row sum deviates from 1 by {dev}")
    prob = prob / row_sums[:, :, None, None]
    nx, ns, ny, nz = prob.shape
    return RelayChannelDMC(nx=nx, ns=ns, ny=ny, nz=nz, prob=prob)


def channel_from_json(path_or_dict) -> RelayChannelDMC:
    """Load a channel from a JSON file path or an already-parsed dict."""
    if isinstance(path_or_dict, dict):
        data = path_or_dict
    else:
        with open(path_or_dict) as fh:
            data = json.load(fh)
    ch = validate_channel(data["prob"])
    declared = (data.get("nx"), data.get("ns"), data.get("ny"), data.get("nz"))
    actual = (ch.nx, ch.ns, ch.ny, ch.nz)
    for want, got in zip(declared, actual):
        if want is not None and want != got:
            raise EmptyAlphabet(f"declared sizes {declared} != array sizes {actual}")
    return ch


def gaussian_from_json(path_or_dict) -> GaussianRelayParams:
    if isinstance(path_or_dict, dict):
        data = path_or_dict
    else:
        with open(path_or_dict) as fh:
            data = json.load(fh)
    return GaussianRelayParams(
        n1=float(data["N1"]),
        n2=float(data["N2"]),
        rho=float(data["rho"]),
        p1=float(data["P1"]),
        p2=float(data["P2"]),
    )


def conditional_marginal(ch: RelayChannelDMC, target: str, given: str = "") -> np.ndarray:
    """Conditional law P(target | given) of the channel under uniform inputs.

    ``target`` is a subset of "YZ", ``given`` a disjoint subset of "XSYZ".
    Inputs absent from ``given`` are averaged uniformly.  The result is
    indexed by the target variables followed by the given variables, each
    group in the order listed by the caller.  Entries conditioned on a
    zero-probability event are NaN; if some assignment of the conditioning
    outputs is impossible under every input, ``UndefinedConditional`` is
    raised.
    """
    target = target.upper()
    given = given.upper()
    if not target or any(v not in OUTPUT_VARS for v in target):
        raise DimensionMismatch(f"target must be a nonempty subset of YZ, got {target!r}")
    if any(v not in INPUT_VARS + OUTPUT_VARS for v in given):
        raise DimensionMismatch(f"given must be drawn from XSYZ, got {given!r}")
    if set(target) & set(given):
        raise DimensionMismatch(f"target {target!r} overlaps given {given!r}")

    # Joint over (X, S, Y, Z) with uniform inputs.
    q = ch.prob / (ch.nx * ch.ns)
    out_given = [v for v in given if v in OUTPUT_VARS]
    if out_given:
        marg_axes = tuple(_AXIS[v] for v in INPUT_VARS + OUTPUT_VARS if v not in out_given)
        if np.any(q.sum(axis=marg_axes) == 0.0):
            raise UndefinedConditional(
                f"some assignment of {''.join(out_given)} has probability 0 for all inputs"
            )

    keep_num = target + given
    num = _marginal_in_order(q, keep_num)
    den = _marginal_in_order(q, given) if given else q.sum()
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = num / den
    cond = np.where(np.broadcast_to(den == 0, num.shape), np.nan, cond)
    return cond


def _marginal_in_order(q: np.ndarray, vars_: str) -> np.ndarray:
    """Marginal of the uniform-input joint, axes ordered as in ``vars_``."""
    drop = tuple(_AXIS[v] for v in "XSYZ" if v not in vars_)
    m = q.sum(axis=drop)
    kept = [v for v in "XSYZ" if v in vars_]
    perm = [kept.index(v) for v in vars_]
    return m.transpose(perm)


def classify(ch: RelayChannelDMC, tol: float = DEFAULT_CLASS_TOL) -> ChannelClass:
    """Classify the channel by which output factorizations it satisfies.

    Residuals are the maximum absolute deviation between the transition law
    and its factorized reconstruction, with conditional factors computed
    from the uniform-input law.  Zero-probability conditioning events are
    unconstrained.  All classes within ``tol`` are reported.
    """
    if tol < 0:
        raise NegativeProbability(f"tol must be >= 0, got {tol}")
    residuals = {
        "Degraded": _chain_residual(ch.prob, via="Z"),
        "ReverselyDegraded": _chain_residual(ch.prob, via="Y"),
        "Independent": _independent_residual(ch.prob),
    }
    satisfied = tuple(name for name in ("Degraded", "ReverselyDegraded", "Independent")
                      if residuals[name] <= tol)
    tag = satisfied[0] if satisfied else "General"
    return ChannelClass(tag=tag, satisfied=satisfied, residuals=residuals)


def _chain_residual(prob: np.ndarray, via: str) -> float:
    """Max violation of prob(y,z|x,s) = P(other|via,s) * prob(via|x,s).

    ``via="Z"`` tests the degraded factorization (Y depends on X only
    through Z given S); ``via="Y"`` the reversely degraded one.
    """
    nx, ns, ny, nz = prob.shape
    if via == "Z":
        p_via = prob.sum(axis=2)                       # (x, s, z)
        joint = prob                                   # (x, s, y, z)
    else:
        p_via = prob.sum(axis=3)                       # (x, s, y)
        joint = prob.transpose(0, 1, 3, 2)             # (x, s, z, y): other first
    # Uniform-input reference conditional P(other | via, s).
    m_joint = joint.mean(axis=0)                       # (s, other, via)
    m_via = p_via.mean(axis=0)                         # (s, via)
    with np.errstate(divide="ignore", invalid="ignore"):
        ref = m_joint / m_via[:, None, :]
    ref = np.nan_to_num(ref)                           # unsupported events unconstrained
    recon = ref[None, :, :, :] * p_via[:, :, None, :]  # (x, s, other, via)
    diff = np.abs(joint - recon)
    return float(diff.max())


def _independent_residual(prob: np.ndarray) -> float:
    """Max violation of prob(y,z|x,s) = P(y|x,s) * P(z|x), P(z|x,s) flat in s."""
    p_z_xs = prob.sum(axis=2)           # (x, s, z)
    p_z_x = p_z_xs.mean(axis=1)         # (x, z)
    r_flat = np.abs(p_z_xs - p_z_x[:, None, :]).max()
    p_y_xs = prob.sum(axis=3)           # (x, s, y)
    recon = p_y_xs[:, :, :, None] * p_z_x[:, None, None, :]
    r_prod = np.abs(prob - recon).max()
    return float(max(r_flat, r_prod))
