"""Exact Shannon information measures on finite joint distributions.

All quantities are in bits (base-2 logarithm) with the convention
0*log(0) = 0.  Joint distributions are dense arrays over named variables;
variable sets are passed as strings of single-letter names, e.g.
``mutual_info(j, "X", "Y", "US")`` for I(X;Y|US).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import RelayChannelDMC
from .errors import (
    DimensionMismatch,
    InternalConsistencyError,
    MissingVariable,
    NegativeProbability,
    OverlappingVariableSets,
    RowSumViolation,
)

PMF_TOL = 1e-12
MI_CLAMP = 1e-12


@dataclass(frozen=True)
class JointDist:
    """Dense joint pmf over named finite variables."""

    dims: tuple[tuple[str, int], ...]
    pmf: np.ndarray = field(repr=False)

    def __post_init__(self):
        shape = tuple(size for _, size in self.dims)
        if self.pmf.shape != shape:
            raise DimensionMismatch(f"pmf shape {self.pmf.shape} != dims {shape}")
        if self.pmf.min() < -PMF_TOL:
            raise NegativeProbability(f"negative pmf entry {self.pmf.min()}")
        total = self.pmf.sum()
        if abs(total - 1.0) > PMF_TOL:
            raise RowSumViolation(f"pmf sums to {total}")
        self.pmf.setflags(write=False)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.dims)

    def axes_of(self, vars_: str) -> tuple[int, ...]:
        names = self.names
        missing = [v for v in vars_ if v not in names]
        if missing:
            raise MissingVariable(f"variables {missing} not in joint over {names}")
        return tuple(names.index(v) for v in vars_)

    def marginal(self, vars_: str) -> np.ndarray:
        """Marginal pmf over ``vars_``, axes in the order given."""
        keep = self.axes_of(vars_)
        drop = tuple(i for i in range(self.pmf.ndim) if i not in keep)
        m = self.pmf.sum(axis=drop)
        order = sorted(keep)
        return m.transpose([order.index(ax) for ax in keep])


def _validate_pmf(arr, name: str, cond_axis: int | None = None) -> np.ndarray:
    """Check nonnegativity and normalization; renormalize tiny drift exactly.

    ``cond_axis=None`` validates a joint pmf (grand total 1); otherwise each
    slice along the trailing axes from ``cond_axis`` onward must sum to 1.
    """
    arr = np.asarray(arr, dtype=float)
    if arr.min() < -PMF_TOL:
        raise NegativeProbability(f"{name}: negative entry {arr.min()}")
    arr = np.clip(arr, 0.0, None)
    if cond_axis is None:
        total = arr.sum()
        if abs(total - 1.0) >= 1e-9:
            raise RowSumViolation(f"{name}: sums to {total}")
        return arr / total
    sums = arr.sum(axis=tuple(range(cond_axis, arr.ndim)))
    if np.abs(sums - 1.0).max() >= 1e-9:
        raise RowSumViolation(f"{name}: row sums deviate by {np.abs(sums - 1.0).max()}")
    return arr / sums[(...,) + (None,) * (arr.ndim - cond_axis)]


@dataclass(frozen=True)
class AuxInput:
    """Auxiliary input for the deterministic-encoder families.

    ``p_us[u, s]`` is a joint pmf, ``p_x_given_us[u, s, x]`` a conditional.
    The induced chain U -> (X,S) -> (Y,Z) holds by construction once a
    channel is attached.
    """

    p_us: np.ndarray
    p_x_given_us: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p_us", _validate_pmf(self.p_us, "p_us"))
        object.__setattr__(
            self, "p_x_given_us", _validate_pmf(self.p_x_given_us, "p_x_given_us", cond_axis=2)
        )
        if self.p_us.ndim != 2 or self.p_x_given_us.ndim != 3:
            raise DimensionMismatch("p_us must be 2-D and p_x_given_us 3-D")
        if self.p_x_given_us.shape[:2] != self.p_us.shape:
            raise DimensionMismatch(
                f"(u, s) shapes differ: {self.p_us.shape} vs {self.p_x_given_us.shape[:2]}"
            )
        self.p_us.setflags(write=False)
        self.p_x_given_us.setflags(write=False)

    @property
    def nu(self) -> int:
        return self.p_us.shape[0]

    @property
    def ns(self) -> int:
        return self.p_us.shape[1]

    @property
    def nx(self) -> int:
        return self.p_x_given_us.shape[2]


@dataclass(frozen=True)
class AuxInputStoch:
    """Auxiliary input for the stochastic-encoder families.

    ``p_usv[u, s, v]`` is a joint pmf and ``p_x_given_v[v, x]`` a
    conditional; the factorization enforces (U,S) -> V -> X by construction.
    """

    p_usv: np.ndarray
    p_x_given_v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p_usv", _validate_pmf(self.p_usv, "p_usv"))
        object.__setattr__(
            self, "p_x_given_v", _validate_pmf(self.p_x_given_v, "p_x_given_v", cond_axis=1)
        )
        if self.p_usv.ndim != 3 or self.p_x_given_v.ndim != 2:
            raise DimensionMismatch("p_usv must be 3-D and p_x_given_v 2-D")
        if self.p_usv.shape[2] != self.p_x_given_v.shape[0]:
            raise DimensionMismatch(
                f"V sizes differ: {self.p_usv.shape[2]} vs {self.p_x_given_v.shape[0]}"
            )
        self.p_usv.setflags(write=False)
        self.p_x_given_v.setflags(write=False)

    @property
    def nu(self) -> int:
        return self.p_usv.shape[0]

    @property
    def ns(self) -> int:
        return self.p_usv.shape[1]

    @property
    def nv(self) -> int:
        return self.p_usv.shape[2]

    @property
    def nx(self) -> int:
        return self.p_x_given_v.shape[1]


def build_joint(aux: AuxInput, ch: RelayChannelDMC) -> JointDist:
    """Joint pmf over (U, S, X, Y, Z) induced by an auxiliary input."""
    if aux.ns != ch.ns or aux.nx != ch.nx:
        raise DimensionMismatch(
            f"aux alphabets (ns={aux.ns}, nx={aux.nx}) != channel (ns={ch.ns}, nx={ch.nx})"
        )
    p_usx = aux.p_us[:, :, None] * aux.p_x_given_us
    pmf = np.einsum("usx,xsyz->usxyz", p_usx, ch.prob)
    dims = (("U", aux.nu), ("S", ch.ns), ("X", ch.nx), ("Y", ch.ny), ("Z", ch.nz))
    return JointDist(dims=dims, pmf=pmf)


def build_joint_stoch(aux: AuxInputStoch, ch: RelayChannelDMC) -> JointDist:
    """Joint pmf over (U, V, S, X, Y, Z) induced by a stochastic auxiliary input."""
    if aux.ns != ch.ns or aux.nx != ch.nx:
        raise DimensionMismatch(
            f"aux alphabets (ns={aux.ns}, nx={aux.nx}) != channel (ns={ch.ns}, nx={ch.nx})"
        )
    pmf = np.einsum("usv,vx,xsyz->uvsxyz", aux.p_usv, aux.p_x_given_v, ch.prob)
    dims = (
        ("U", aux.nu),
        ("V", aux.nv),
        ("S", ch.ns),
        ("X", ch.nx),
        ("Y", ch.ny),
        ("Z", ch.nz),
    )
    return JointDist(dims=dims, pmf=pmf)


def mutual_info(j: JointDist, a: str, b: str, c: str = "") -> float:
    """Conditional mutual information I(A;B|C) in bits.

    Variables shared between ``a``/``b`` and ``c`` contribute nothing and
    are dropped (I(X;Y|X) = 0); ``a`` and ``b`` themselves must be disjoint.
    """
    if (set(a) & set(b)) - set(c):
        raise OverlappingVariableSets(f"a={a!r} and b={b!r} overlap")
    a = "".join(v for v in a if v not in c)
    b = "".join(v for v in b if v not in c)
    if not a or not b:
        return 0.0
    return mi_raw(j.pmf, j.axes_of(a), j.axes_of(b), j.axes_of(c))


def mi_raw(
    pmf: np.ndarray,
    ax_a: tuple[int, ...],
    ax_b: tuple[int, ...],
    ax_c: tuple[int, ...] = (),
) -> float:
    """I(A;B|C) in bits from a raw pmf array and disjoint axis tuples."""
    other = tuple(i for i in range(pmf.ndim) if i not in ax_a + ax_b + ax_c)
    p_abc = pmf.sum(axis=other, keepdims=True) if other else pmf
    p_ac = p_abc.sum(axis=ax_b, keepdims=True)
    p_bc = p_abc.sum(axis=ax_a, keepdims=True)
    p_c = p_ac.sum(axis=ax_a, keepdims=True)
    mask = p_abc > 0
    num = p_abc * np.broadcast_to(p_c, p_abc.shape)
    den = np.broadcast_to(p_ac, p_abc.shape) * np.broadcast_to(p_bc, p_abc.shape)
    val = float(np.sum(p_abc[mask] * np.log2(num[mask] / den[mask])))
    return _clamp_mi(val, f"I(axes {ax_a};{ax_b}|{ax_c})")


def _clamp_mi(val: float, label: str) -> float:
    if val < -MI_CLAMP:
        raise InternalConsistencyError(f"{label} = {val} < -{MI_CLAMP}")
    return max(val, 0.0)


def entropy(j: JointDist, vars_: str) -> float:
    """Joint entropy H(vars) in bits."""
    if not vars_:
        return 0.0
    m = j.marginal(vars_)
    mask = m > 0
    return float(-np.sum(m[mask] * np.log2(m[mask])))


def cond_entropy(j: JointDist, a: str, b: str = "") -> float:
    """Conditional entropy H(A|B) in bits."""
    if not b:
        return entropy(j, a)
    if set(a) & set(b):
        raise OverlappingVariableSets(f"{a!r} overlaps {b!r}")
    return entropy(j, a + b) - entropy(j, b)


def check_markov(j: JointDist, a: str, b: str, c: str, tol: float = 1e-12) -> tuple[bool, float]:
    """Test the chain A -> B -> C; residual is I(A;C|B)."""
    residual = mutual_info(j, a, c, b)
    return residual <= tol, residual


def zeta(j: JointDist) -> float:
    """Relay-cooperation correction I(S;Y|U) - I(S;Z|U); may be negative."""
    for v in "USYZ":
        if v not in j.names:
            raise MissingVariable(f"zeta needs variable {v}")
    return mutual_info(j, "S", "Y", "U") - mutual_info(j, "S", "Z", "U")


def delta_gap(j: JointDist) -> float:
    """Inner/outer equivocation-cap gap I(X;Z|YUS); nonnegative."""
    for v in "USXYZ":
        if v not in j.names:
            raise MissingVariable(f"delta_gap needs variable {v}")
    return mutual_info(j, "X", "Z", "YUS")
