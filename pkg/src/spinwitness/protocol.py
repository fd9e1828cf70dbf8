"""Monte-Carlo simulation of the measurement protocol.

One round: draw a direction index k uniformly, measure the sign of the
collective spin component along direction 2 pi k/K + theta, record whether it
came out positive.  The long-run positive fraction estimates tr(rho Q); a
Wilson 95% interval with lower bound above the biseparable bound is the
detection verdict (the decision rule is this package's choice — the math
fixes the bound, not the statistics).

Determinism contract: the round stream comes from a counter-based generator
(numpy Philox) keyed by the seed; round r consumes exactly row r of the
pre-shaped uniform table, so every round's draws are a pure function of
(seed, round index) and results are independent of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import hermitian_eigendecompose
from .spin import SpinEnsemble, _embed, collective_operator, direction_operator, spin_matrices
from .states import QuantumState
from .witness import ZERO_EIGENVALUE_TOL, pos_operator, witness_report

__all__ = [
    "ProtocolConfig",
    "ProtocolEstimate",
    "wilson_interval",
    "run_protocol",
    "run_protocol_subensembles",
    "time_schedule",
    "rounds_needed",
]

Z95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass(frozen=True)
class ProtocolConfig:
    ensemble: SpinEnsemble
    state: QuantumState
    rounds: int
    seed: int
    theta_offset: float = 0.0
    subensembles: tuple[tuple[int, ...], ...] | None = None
    omega: float | None = None
    stratified: bool = False  # equal trials per k; a variance-reduction deviation from the uniform draw

    def __post_init__(self):
        if self.rounds < 1:
            raise ValueError("rounds must be positive")
        if self.state.ensemble != self.ensemble:
            raise ValueError("state was built for a different ensemble")
        if self.subensembles is not None:
            groups = tuple(tuple(sorted(int(i) for i in g)) for g in self.subensembles)
            flat = [i for g in groups for i in g]
            if sorted(flat) != list(range(self.ensemble.N)):
                raise ValueError(f"subensembles {groups} are not a partition of 0..{self.ensemble.N - 1}")
            object.__setattr__(self, "subensembles", groups)
        if self.omega is not None and self.omega <= 0:
            raise ValueError("omega must be positive")


@dataclass(frozen=True)
class ProtocolEstimate:
    p_hat: float
    rounds: int
    ci_low: float
    ci_high: float
    per_k_counts: tuple[tuple[int, int], ...]  # (positives, trials) for k = 0..K-1


def wilson_interval(positives: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval — correct coverage where Wald collapses."""
    if trials < 1:
        raise ValueError("trials must be positive")
    p_hat = positives / trials
    denom = 1 + z**2 / trials
    center = (p_hat + z**2 / (2 * trials)) / denom
    half = z * np.sqrt(p_hat * (1 - p_hat) / trials + z**2 / (4 * trials**2)) / denom
    return float(center - half), float(center + half)


def _uniforms(seed: int, rounds: int, columns: int) -> np.ndarray:
    gen = np.random.Generator(np.random.Philox(key=seed))
    return gen.random((rounds, columns))


def _draw_directions(u0: np.ndarray, K: int, stratified: bool) -> np.ndarray:
    if stratified:
        return np.arange(len(u0)) % K
    return np.minimum((u0 * K).astype(np.int64), K - 1)


def _estimate(hits: np.ndarray, ks: np.ndarray, K: int, rounds: int) -> ProtocolEstimate:
    positives = int(hits.sum())
    trials_k = np.bincount(ks, minlength=K)
    pos_k = np.bincount(ks, weights=hits.astype(float), minlength=K)
    low, high = wilson_interval(positives, rounds)
    per_k = tuple((int(pos_k[k]), int(trials_k[k])) for k in range(K))
    return ProtocolEstimate(positives / rounds, rounds, low, high, per_k)


def run_protocol(config: ProtocolConfig) -> ProtocolEstimate:
    """Simulate the single-shot sign measurement, one direction per round."""
    ensemble = config.ensemble
    K = ensemble.K
    J = collective_operator(ensemble)
    rho = config.state.density()
    probs = np.empty(K)
    for k in range(K):
        effect = pos_operator(direction_operator(J, k, K, config.theta_offset))
        probs[k] = np.real(np.trace(rho @ effect))
    probs = np.clip(probs, 0.0, 1.0)
    u = _uniforms(config.seed, config.rounds, 2)
    ks = _draw_directions(u[:, 0], K, config.stratified)
    hits = u[:, 1] < probs[ks]
    return _estimate(hits, ks, K, config.rounds)


def _group_direction_operator(ensemble: SpinEnsemble, group: tuple[int, ...], angle: float) -> np.ndarray:
    """cos(a) Jx + sin(a) Jy summed over the group's particles, on the group's own space."""
    dims = [ensemble.local_dims[i] for i in group]
    d = int(np.prod(dims))
    op = np.zeros((d, d), dtype=complex)
    for pos_in_group, slot in enumerate(group):
        jx, jy, _ = spin_matrices(ensemble.spins[slot])
        op += _embed(np.cos(angle) * jx + np.sin(angle) * jy, dims, pos_in_group)
    return op


def run_protocol_subensembles(config: ProtocolConfig) -> ProtocolEstimate:
    """Simulate per-group sign measurements postprocessed into the total sign.

    The group observables along one direction commute; each round jointly
    samples all of them in their common (product) eigenbasis from the full
    state's Born distribution — correct even when the state is entangled
    across groups — then adds the sampled components.  A zero total (possible
    only for integer group sums canceling) falls back to a fair coin,
    mirroring pos(0) = 1/2.

    Seed policy: the same Philox table layout as run_protocol (column 0 picks
    k, column 1 picks the outcome) plus a third column for the tie coin, so
    the two simulators agree in distribution but not bit-for-bit.
    """
    if config.subensembles is None:
        raise ValueError("config.subensembles is required here")
    ensemble = config.ensemble
    K = ensemble.K
    groups = config.subensembles
    dims = ensemble.local_dims
    n = ensemble.N
    rho_form = config.state.ket is None
    state_tensor = (
        config.state.rho.reshape(dims + dims) if rho_form else config.state.ket.reshape(dims)
    )

    cum_by_k, sums_by_k = [], []
    for k in range(K):
        angle = 2 * np.pi * k / K + config.theta_offset
        eigvecs, eigvals = [], []
        for group in groups:
            w, v = hermitian_eigendecompose(_group_direction_operator(ensemble, group, angle))
            eigvals.append(w)
            eigvecs.append(v)
        # Born probabilities over the joint eigenbasis, slots contracted in place.
        if rho_form:
            operands = [state_tensor, list(range(2 * n))]
            for s, (group, v) in enumerate(zip(groups, eigvecs)):
                v_tensor = v.reshape([dims[i] for i in group] + [v.shape[1]])
                operands += [v_tensor.conj(), [i for i in group] + [2 * n + s]]
                operands += [v_tensor, [n + i for i in group] + [2 * n + s]]
            p = np.einsum(*operands, [2 * n + s for s in range(len(groups))]).real
        else:
            operands = [state_tensor, list(range(n))]
            for s, (group, v) in enumerate(zip(groups, eigvecs)):
                v_tensor = v.reshape([dims[i] for i in group] + [v.shape[1]])
                operands += [v_tensor.conj(), [i for i in group] + [n + s]]
            amps = np.einsum(*operands, [n + s for s in range(len(groups))])
            p = np.abs(amps) ** 2
        p = p.reshape(-1)
        shape = [len(w) for w in eigvals]
        grid = np.zeros(shape)
        for s, w in enumerate(eigvals):
            bshape = [1] * len(shape)
            bshape[s] = len(w)
            grid = grid + w.reshape(bshape)
        cum = np.cumsum(p)
        cum[-1] = max(cum[-1], 1.0)  # guard the last bin against rounding shortfall
        cum_by_k.append(cum)
        sums_by_k.append(grid.reshape(-1))

    u = _uniforms(config.seed, config.rounds, 3)
    ks = _draw_directions(u[:, 0], K, config.stratified)
    hits = np.empty(config.rounds, dtype=bool)
    for k in range(K):
        rows = np.nonzero(ks == k)[0]
        if rows.size == 0:
            continue
        idx = np.searchsorted(cum_by_k[k], u[rows, 1], side="right")
        idx = np.minimum(idx, len(cum_by_k[k]) - 1)
        s = sums_by_k[k][idx]
        hits[rows] = np.where(np.abs(s) <= ZERO_EIGENVALUE_TOL, u[rows, 2] < 0.5, s > 0)
    return _estimate(hits, ks, K, config.rounds)


def time_schedule(K: int, omega: float) -> list[float]:
    """Measurement times t_k = (2 pi / omega) k / K for a spin precessing at omega.

    Measuring the fixed x-component at t_k under H = -omega Jz reproduces the
    direction-k statistics, turning K directions into K wait times.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    return [2 * np.pi / omega * k / K for k in range(K)]


def rounds_needed(K: int, power_margin: float) -> int:
    """Smallest round count resolving the detection gap with margin to spare.

    Finds the least n whose Wilson 95% half-width, at success probability
    midway across the gap, drops below gap * power_margin / 2.
    """
    if not 0 < power_margin < 1:
        raise ValueError("power_margin must lie in (0, 1)")
    report = witness_report(K)
    p_mid = float(report.P_sep + report.gap / 2)
    target = report.gap_float * power_margin / 2

    def half_width(n: int) -> float:
        denom = 1 + Z95**2 / n
        return Z95 * np.sqrt(p_mid * (1 - p_mid) / n + Z95**2 / (4 * n**2)) / denom

    lo, hi = 1, 1
    while half_width(hi) >= target:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if half_width(mid) < target:
            hi = mid
        else:
            lo = mid + 1
    return lo
