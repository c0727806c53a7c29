"""Shared constructions for the test suite."""
from __future__ import annotations

import numpy as np

from relaysec.channel import RelayChannelDMC, validate_channel
from relaysec.info import AuxInput, AuxInputStoch


def bsc(p: float) -> np.ndarray:
    return np.array([[1 - p, p], [p, 1 - p]])


def channel_from_factors(p_y_xs: np.ndarray, p_z_xs: np.ndarray) -> RelayChannelDMC:
    """Channel with Y and Z conditionally independent given (X, S)."""
    prob = p_y_xs[:, :, :, None] * p_z_xs[:, :, None, :]
    return validate_channel(prob)


def copy_channel(nx: int = 2, ns: int = 1) -> RelayChannelDMC:
    """Deterministic channel Y = X, Z = X; the relay input is ignored."""
    prob = np.zeros((nx, ns, nx, nx))
    for x in range(nx):
        prob[x, :, x, x] = 1.0
    return validate_channel(prob)


def noiseless_y_blind_z(nx: int = 2, ns: int = 1) -> RelayChannelDMC:
    """Y = X exactly while Z is a constant symbol (pure-noise relay view)."""
    prob = np.zeros((nx, ns, nx, 1))
    for x in range(nx):
        prob[x, :, x, 0] = 1.0
    return validate_channel(prob)


def compose_reversely_degraded(p_y_xs: np.ndarray, p_z_ys: np.ndarray) -> RelayChannelDMC:
    """Build prob(y,z|x,s) = p(z|y,s) * p(y|x,s): the X -> (S,Y) -> Z chain."""
    prob = np.einsum("xsy,ysz->xsyz", p_y_xs, p_z_ys)
    return validate_channel(prob)


def compose_degraded(p_z_xs: np.ndarray, p_y_zs: np.ndarray) -> RelayChannelDMC:
    """Build prob(y,z|x,s) = p(y|z,s) * p(z|x,s): the X -> (S,Z) -> Y chain."""
    prob = np.einsum("xsz,zsy->xsyz", p_z_xs, p_y_zs)
    return validate_channel(prob)


def random_channel(rng: np.random.Generator, nx=2, ns=2, ny=2, nz=2) -> RelayChannelDMC:
    raw = rng.random((nx, ns, ny, nz)) + 1e-3
    raw /= raw.sum(axis=(2, 3), keepdims=True)
    return validate_channel(raw)


def random_kernel(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Random conditional pmf normalized over the last axis."""
    raw = rng.random(shape) + 1e-3
    return raw / raw.sum(axis=-1, keepdims=True)


def random_aux(rng: np.random.Generator, nu: int, ns: int, nx: int) -> AuxInput:
    p_us = rng.random((nu, ns)) + 1e-3
    p_us /= p_us.sum()
    return AuxInput(p_us=p_us, p_x_given_us=random_kernel(rng, (nu, ns, nx)))


def random_aux_stoch(rng: np.random.Generator, nu: int, ns: int, nv: int, nx: int) -> AuxInputStoch:
    p_usv = rng.random((nu, ns, nv)) + 1e-3
    p_usv /= p_usv.sum()
    return AuxInputStoch(p_usv=p_usv, p_x_given_v=random_kernel(rng, (nv, nx)))


def uniform_aux(nu: int, ns: int, nx: int) -> AuxInput:
    p_us = np.full((nu, ns), 1.0 / (nu * ns))
    p_x = np.full((nu, ns, nx), 1.0 / nx)
    return AuxInput(p_us=p_us, p_x_given_us=p_x)
