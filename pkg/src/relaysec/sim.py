"""Desk-scale simulation of the block-Markov superposition/binning code.

Transmission runs over ``b`` blocks of ``n`` symbols.  Message sets carry
the common part (T, forwarded by the relay through a random partition into
W bins), a relay-decodable part (J), and a confidential part (L).  The
codebook is drawn i.i.d. from the auxiliary input: relay words s(w), cloud
centers u(w, t), and satellites x(w, t, j, l).  Block 0 transmits the known
constant quadruple; at block i the relay forwards the bin s(phi(t_{i-1}))
of its own decoded t.

Decoding is by joint typicality: a candidate is accepted when every
projection of the supplied sequences has empirical log-probability within
``epsilon`` of the matching entropy.  A decoder errs when it has no unique
candidate or the unique candidate is wrong.  Decoded values propagate:
relay misdecodings corrupt later blocks exactly as they would on the air.

Equivocation about L at the relay is computed exactly by enumerating all
z-sequences of one block (uniform messages, the drawn codebook, and the
partition-induced bin distribution), alongside the plug-in lower-bound
expression evaluated with measured decoder error rates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

from .channel import RelayChannelDMC
from .errors import (
    DimensionMismatch,
    EnumerationCapExceeded,
    MemoryCapExceeded,
    NegativeProbability,
)
from .info import AuxInput, JointDist, build_joint, cond_entropy, mutual_info

DECODERS = ("1a", "1b", "1c", "2a", "2b")


@dataclass(frozen=True)
class Rates:
    """Per-symbol rates of the four message sets (bits/symbol).

    ``r0`` sizes T (common), ``r1`` sizes L (confidential), ``r2`` sizes J
    (relay-decodable), ``r`` sizes W (relay-forward bins).
    """

    r0: float
    r1: float
    r2: float
    r: float


@dataclass(frozen=True)
class SimConfig:
    n: int
    b: int
    rates: Rates
    epsilon: float
    seed: int
    aux: AuxInput
    ch: RelayChannelDMC
    memory_cap: int = 50_000_000
    enum_cap: int = 10_000_000

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatch(f"n must be >= 1, got {self.n}")
        if self.b < 2:
            raise DimensionMismatch(f"b must be >= 2, got {self.b}")
        if self.epsilon <= 0:
            raise NegativeProbability(f"epsilon must be > 0, got {self.epsilon}")
        if self.aux.ns != self.ch.ns or self.aux.nx != self.ch.nx:
            raise DimensionMismatch("aux alphabets do not match the channel")
        for r in (self.rates.r0, self.rates.r1, self.rates.r2, self.rates.r):
            if r < 0:
                raise NegativeProbability(f"negative rate {r}")

    @property
    def set_sizes(self) -> tuple[int, int, int, int]:
        """(|T|, |L|, |J|, |W|), each 2^floor(n*rate)."""
        return (
            1 << int(np.floor(self.n * self.rates.r0)),
            1 << int(np.floor(self.n * self.rates.r1)),
            1 << int(np.floor(self.n * self.rates.r2)),
            1 << int(np.floor(self.n * self.rates.r)),
        )


@dataclass(frozen=True)
class Codebook:
    s_words: np.ndarray      # (|W|, n)
    u_words: np.ndarray      # (|W|, |T|, n)
    x_words: np.ndarray      # (|W|, |T|, |J|, |L|, n)
    partition: np.ndarray    # (|T|,) -> W


@dataclass(frozen=True)
class SimReport:
    mode: str
    trials: int
    blocks_per_trial: int
    decoder_errors: dict[str, int]
    decoder_counts: dict[str, int]
    receiver_errors: int
    receiver_count: int
    relay_errors: int
    relay_count: int
    union_violations: int
    equivocation_rate: float | None = None

    @property
    def err_receiver(self) -> float:
        return self.receiver_errors / self.receiver_count if self.receiver_count else 0.0

    @property
    def err_relay(self) -> float:
        return self.relay_errors / self.relay_count if self.relay_count else 0.0

    def decoder_rate(self, name: str) -> float:
        c = self.decoder_counts[name]
        return self.decoder_errors[name] / c if c else 0.0

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "trials": self.trials,
            "blocks_per_trial": self.blocks_per_trial,
            "err_receiver": self.err_receiver,
            "err_relay": self.err_relay,
            "receiver_errors": self.receiver_errors,
            "receiver_count": self.receiver_count,
            "relay_errors": self.relay_errors,
            "relay_count": self.relay_count,
            "decoders": {
                name: {
                    "errors": self.decoder_errors[name],
                    "count": self.decoder_counts[name],
                    "rate": self.decoder_rate(name),
                }
                for name in DECODERS
            },
            "union_violations": self.union_violations,
            "equivocation_rate": self.equivocation_rate,
        }


def _rng_for(cfg: SimConfig, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=cfg.seed, spawn_key=(stream,)))


def generate_codebook(cfg: SimConfig) -> Codebook:
    """Draw the random codebook and partition; deterministic given the seed."""
    nt, nl, nj, nw = cfg.set_sizes
    n = cfg.n
    total_symbols = n * (nw + nw * nt + nw * nt * nj * nl)
    if total_symbols > cfg.memory_cap:
        raise MemoryCapExceeded(f"{total_symbols} symbols exceeds cap {cfg.memory_cap}")
    rng = _rng_for(cfg, 0)

    p_us = cfg.aux.p_us
    p_s = p_us.sum(axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        p_u_given_s = np.where(p_s[None, :] > 0, p_us / p_s[None, :], 1.0 / p_us.shape[0]).T
    cum_s = np.cumsum(p_s)
    cum_u = np.cumsum(p_u_given_s, axis=-1)                    # (ns, nu)
    cum_x = np.cumsum(cfg.aux.p_x_given_us, axis=-1)           # (nu, ns, nx)

    s_words = (rng.random((nw, n))[..., None] > cum_s).sum(axis=-1)
    cu = cum_u[s_words]                                        # (nw, n, nu)
    u_draws = rng.random((nw, nt, n))
    u_words = (u_draws[..., None] > cu[:, None, :, :]).sum(axis=-1)
    cx = cum_x[u_words, s_words[:, None, :]]                   # (nw, nt, n, nx)
    x_draws = rng.random((nw, nt, nj, nl, n))
    x_words = (x_draws[..., None] > cx[:, :, None, None, :, :]).sum(axis=-1)
    partition = rng.integers(0, nw, size=nt)
    return Codebook(
        s_words=s_words.astype(np.int64),
        u_words=u_words.astype(np.int64),
        x_words=x_words.astype(np.int64),
        partition=partition,
    )


def draw_messages(cfg: SimConfig, book: Codebook) -> list[tuple[int, int, int, int]]:
    """Uniform message quadruples for blocks 1..b-1 with consistent bins."""
    nt, nl, nj, _ = cfg.set_sizes
    rng = _rng_for(cfg, 2)
    msgs = []
    t_prev = 0
    for _ in range(cfg.b - 1):
        t = int(rng.integers(nt))
        j = int(rng.integers(nj))
        l = int(rng.integers(nl))
        msgs.append((int(book.partition[t_prev]), t, j, l))
        t_prev = t
    return msgs


class _TypicalityContext:
    """Cached log-marginals and entropies of one joint distribution."""

    def __init__(self, dist: JointDist):
        self.dist = dist
        self.order = dist.names
        self._cache: dict[frozenset, tuple[np.ndarray, float, tuple[str, ...]]] = {}

    def table(self, subset: frozenset) -> tuple[np.ndarray, float, tuple[str, ...]]:
        if subset not in self._cache:
            vars_ = tuple(v for v in self.order if v in subset)
            marg = self.dist.marginal("".join(vars_))
            with np.errstate(divide="ignore"):
                logm = np.log2(marg)
            mask = marg > 0
            ent = float(-np.sum(marg[mask] * logm[mask]))
            self._cache[subset] = (logm, ent, vars_)
        return self._cache[subset]


def _typical_mask(
    ctx: _TypicalityContext,
    fixed: Mapping[str, np.ndarray],
    var_name: str,
    candidates: np.ndarray,
    epsilon: float,
) -> np.ndarray:
    """Joint-typicality indicator per candidate row of the varying sequence.

    Checks every nonempty subset of the supplied variables; sequences that
    hit a zero of the distribution are simply not typical.
    """
    m, n = candidates.shape
    names = list(fixed.keys()) + [var_name]
    out = np.ones(m, dtype=bool)
    for k in range(1, len(names) + 1):
        for combo in itertools.combinations(names, k):
            logm, ent, vars_ = ctx.table(frozenset(combo))
            idx = []
            varying = var_name in combo
            for v in vars_:
                if v == var_name:
                    idx.append(candidates)
                else:
                    idx.append(fixed[v][None, :] if varying else fixed[v])
            with np.errstate(invalid="ignore"):
                vals = logm[tuple(idx)]
                emp = -vals.mean(axis=-1)
            if varying:
                out &= np.abs(emp - ent) <= epsilon
            else:
                if not (np.isfinite(emp) and abs(emp - ent) <= epsilon):
                    return np.zeros(m, dtype=bool)
    return out


def typical_set_test(seqs: Mapping[str, np.ndarray], dist: JointDist, epsilon: float) -> bool:
    """Whether the sequence tuple is jointly typical on all projections."""
    names = list(seqs.keys())
    if not names:
        raise DimensionMismatch("no sequences supplied")
    lengths = {len(np.asarray(s)) for s in seqs.values()}
    if len(lengths) != 1:
        raise DimensionMismatch(f"sequence lengths differ: {lengths}")
    fixed = {k: np.asarray(v) for k, v in seqs.items()}
    lead = names[0]
    rest = {k: fixed[k] for k in names[1:]}
    ctx = _TypicalityContext(dist)
    mask = _typical_mask(ctx, rest, lead, fixed[lead][None, :], epsilon)
    return bool(mask[0])


def _decode_unique(mask: np.ndarray, truth: int) -> tuple[bool, int]:
    """(error, decoded-with-fallback): unique correct candidate required."""
    hits = np.flatnonzero(mask)
    if hits.size == 1:
        return int(hits[0]) != truth, int(hits[0])
    return True, int(hits[0]) if hits.size else 0


def run_blocks(cfg: SimConfig, book: Codebook, messages) -> SimReport:
    """Simulate all blocks once and tally per-decoder and message errors."""
    nt, nl, nj, nw = cfg.set_sizes
    if len(messages) != cfg.b - 1:
        raise DimensionMismatch(f"need {cfg.b - 1} message quadruples, got {len(messages)}")
    quads = [(0, 0, 0, 0)] + [tuple(int(v) for v in q) for q in messages]
    t_prev = 0
    for i, (w, t, j, l) in enumerate(quads[1:], start=1):
        if w != int(book.partition[t_prev]):
            raise DimensionMismatch(
                f"block {i}: w={w} != partition[t_prev={t_prev}]={int(book.partition[t_prev])}"
            )
        if not (0 <= t < nt and 0 <= j < nj and 0 <= l < nl):
            raise DimensionMismatch(f"block {i}: message {(w, t, j, l)} out of range")
        t_prev = t

    rng = _rng_for(cfg, 1)
    ctx = _TypicalityContext(build_joint(cfg.aux, cfg.ch))
    nz = cfg.ch.nz
    cum_yz = np.cumsum(cfg.ch.prob.reshape(cfg.ch.nx, cfg.ch.ns, -1), axis=-1)
    eps = cfg.epsilon

    errors = {d: 0 for d in DECODERS}
    counts = {d: 0 for d in DECODERS}
    relay_errors = relay_count = 0
    recv_errors = recv_count = 0
    union_violations = 0

    relay_t_hat = 0          # relay's decoded t of the previous block
    recv_w_prev = 0          # receiver's belief about the previous block's w
    prev_y = None
    prev_quad = quads[0]

    for i, (w_sender, t_i, j_i, l_i) in enumerate(quads):
        w_relay = 0 if i == 0 else int(book.partition[relay_t_hat])
        x_seq = book.x_words[w_sender, t_i, j_i, l_i]
        s_seq = book.s_words[w_relay]
        cum = cum_yz[x_seq, s_seq]
        yz = (rng.random((cfg.n, 1)) > cum).sum(axis=-1)
        y_seq, z_seq = yz // nz, yz % nz

        if i >= 1:
            # Decoder 2a: relay recovers t from its own block.
            mask = _typical_mask(ctx, {"S": s_seq, "Z": z_seq}, "U",
                                 book.u_words[w_relay], eps)
            e2a, t_hat = _decode_unique(mask, t_i)
            errors["2a"] += e2a
            counts["2a"] += 1
            # Decoder 2b: relay recovers j; candidate j accepted when any
            # satellite in its row is jointly typical with (s, u, z).
            xs = book.x_words[w_relay, t_hat].reshape(nj * nl, cfg.n)
            mask = _typical_mask(ctx, {"S": s_seq, "U": book.u_words[w_relay, t_hat],
                                       "Z": z_seq}, "X", xs, eps)
            e2b, j_hat = _decode_unique(mask.reshape(nj, nl).any(axis=1), j_i)
            errors["2b"] += e2b
            counts["2b"] += 1
            # A declared stage failure is a message error; the fallback value
            # only drives state propagation.
            relay_msg_err = int(e2a or e2b)
            relay_errors += relay_msg_err
            relay_count += 1
            if relay_msg_err > e2a + e2b:
                union_violations += 1
            relay_t_hat = t_hat

            # Decoder 1a: receiver identifies the relay's bin word.
            mask = _typical_mask(ctx, {"Y": y_seq}, "S", book.s_words, eps)
            e1a, w_hat = _decode_unique(mask, w_relay)
            errors["1a"] += e1a
            counts["1a"] += 1

            if i >= 2:
                # Decoders 1b/1c: recover the previous block's messages.
                _, t_prev_i, j_prev, l_prev = prev_quad
                mask = _typical_mask(ctx, {"S": book.s_words[recv_w_prev], "Y": prev_y},
                                     "U", book.u_words[recv_w_prev], eps)
                mask &= book.partition == w_hat
                e1b, t_hh = _decode_unique(mask, t_prev_i)
                errors["1b"] += e1b
                counts["1b"] += 1

                xs = book.x_words[recv_w_prev, t_hh].reshape(nj * nl, cfg.n)
                mask = _typical_mask(ctx, {"S": book.s_words[recv_w_prev],
                                           "U": book.u_words[recv_w_prev, t_hh],
                                           "Y": prev_y}, "X", xs, eps)
                e1c, jl_hat = _decode_unique(mask, j_prev * nl + l_prev)
                errors["1c"] += e1c
                counts["1c"] += 1

                recv_msg_err = int(e1b or e1c)
                recv_errors += recv_msg_err
                recv_count += 1
                if recv_msg_err > e1a + e1b + e1c:
                    union_violations += 1
            recv_w_prev = w_hat

        prev_y = y_seq
        prev_quad = (w_sender, t_i, j_i, l_i)

    return SimReport(
        mode="MonteCarlo",
        trials=1,
        blocks_per_trial=cfg.b,
        decoder_errors=errors,
        decoder_counts=counts,
        receiver_errors=recv_errors,
        receiver_count=recv_count,
        relay_errors=relay_errors,
        relay_count=relay_count,
        union_violations=union_violations,
    )


def monte_carlo(cfg: SimConfig, trials: int) -> SimReport:
    """Independent trials with derived seeds: fresh codebook, messages, noise."""
    seeds = np.random.SeedSequence(cfg.seed).generate_state(trials, dtype=np.uint64)
    errors = {d: 0 for d in DECODERS}
    counts = {d: 0 for d in DECODERS}
    agg = {"re": 0, "rc": 0, "le": 0, "lc": 0, "uv": 0}
    for s in seeds:
        cfg_i = replace(cfg, seed=int(s))
        book = generate_codebook(cfg_i)
        rep = run_blocks(cfg_i, book, draw_messages(cfg_i, book))
        for d in DECODERS:
            errors[d] += rep.decoder_errors[d]
            counts[d] += rep.decoder_counts[d]
        agg["re"] += rep.receiver_errors
        agg["rc"] += rep.receiver_count
        agg["le"] += rep.relay_errors
        agg["lc"] += rep.relay_count
        agg["uv"] += rep.union_violations
    return SimReport(
        mode="MonteCarlo",
        trials=trials,
        blocks_per_trial=cfg.b,
        decoder_errors=errors,
        decoder_counts=counts,
        receiver_errors=agg["re"],
        receiver_count=agg["rc"],
        relay_errors=agg["le"],
        relay_count=agg["lc"],
        union_violations=agg["uv"],
    )


def equivocation_exact(cfg: SimConfig, book: Codebook) -> float:
    """Exact per-symbol equivocation (1/n)H(L | Z^n) for one block.

    Messages T, J, L are uniform; the bin variable W is induced by the
    partition applied to a uniform previous-block T.
    """
    nt, nl, nj, nw = cfg.set_sizes
    n_z_seqs = cfg.ch.nz**cfg.n
    terms = n_z_seqs * nw * nt * nj * nl
    if terms > cfg.enum_cap:
        raise EnumerationCapExceeded(f"{terms} terms exceeds cap {cfg.enum_cap}")

    gamma_z = cfg.ch.prob.sum(axis=2)                       # (nx, ns, nz)
    z_enum = np.array(list(itertools.product(range(cfg.ch.nz), repeat=cfg.n)))
    p_w = np.bincount(book.partition, minlength=nw) / nt
    pos = np.arange(cfg.n)
    p_lz = np.zeros((nl, len(z_enum)))
    for w in range(nw):
        if p_w[w] == 0.0:
            continue
        s_seq = book.s_words[w]
        for t in range(nt):
            for j in range(nj):
                for l in range(nl):
                    x_seq = book.x_words[w, t, j, l]
                    per_pos = gamma_z[x_seq, s_seq]          # (n, nz)
                    p_lz[l] += p_w[w] / (nt * nj * nl) * per_pos[pos, z_enum].prod(axis=1)
    p_z = p_lz.sum(axis=0)
    mask = p_lz > 0
    h = float(np.sum(p_lz[mask] * np.log2(np.broadcast_to(p_z, p_lz.shape)[mask] / p_lz[mask])))
    return h / cfg.n


def equivocation_plugin_bound(cfg: SimConfig, e2a: float, e2b: float) -> float:
    """Plug-in lower-bound expression for (1/n)H(L | Z^n), in bits/symbol.

    Evaluated with measured relay decoder error rates; the finite-n slack
    terms make it loose (often negative) at desk scale.  ``kappa`` is the
    largest surprisal of z given (u, s) over supported triples.
    """
    j = build_joint(cfg.aux, cfg.ch)
    i_xz = mutual_info(j, "X", "Z", "US")
    h_z_xs = cond_entropy(j, "Z", "XS")
    p_zus = j.marginal("ZUS")
    p_us = p_zus.sum(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = p_zus / p_us[None, :, :]
    supported = cond > 0
    kappa = float(-np.log2(cond[supported]).min()) if supported.any() else 0.0
    r1, r2 = cfg.rates.r1, cfg.rates.r2
    return (
        r2 + r1 - i_xz - 4.0 * cfg.epsilon - 3.0 / cfg.n
        - kappa * e2a - (r2 + h_z_xs) * e2b
    )


def simulate(cfg: SimConfig, trials: int = 1, exact_equivocation: bool = False) -> SimReport:
    """Monte-Carlo driver; optionally adds the exact one-block equivocation."""
    rep = monte_carlo(cfg, trials)
    if exact_equivocation:
        eqv = equivocation_exact(cfg, generate_codebook(cfg))
        rep = replace(rep, mode="ExactEquivocation", equivocation_rate=eqv)
    return rep
