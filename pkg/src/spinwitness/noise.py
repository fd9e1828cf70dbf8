"""Depolarizing noise: channels, closed-form noisy scores, detection thresholds.

Both channel flavors shrink the witness score linearly toward 1/2, the value
of featureless states.  Acting on the optimal GHZ-like input:

    global:  score = 1/2 + 2 (1 - p)        (P_sep - 1/2)
    local:   score = 1/2 + 2 prod(1 - p_n)  (P_sep - 1/2)

so detection (score > P_sep) survives exactly while p < 1/2, respectively
while prod(1 - p_n) > 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spin import SpinEnsemble
from .states import QuantumState
from .witness import witness_report

__all__ = [
    "NoiseModel",
    "apply_depolarizing",
    "noisy_score_global",
    "noisy_score_local",
    "detection_thresholds",
]


def _check_prob(p, name="p") -> float:
    p = float(p)
    if not 0 <= p <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return p


@dataclass(frozen=True)
class NoiseModel:
    """Either one global replacement probability or one probability per particle."""

    kind: str  # "global" | "local"
    p_global: float | None = None
    p_locals: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind == "global":
            if self.p_global is None or self.p_locals is not None:
                raise ValueError("global model takes p_global only")
            object.__setattr__(self, "p_global", _check_prob(self.p_global, "p_global"))
        elif self.kind == "local":
            if self.p_locals is None or self.p_global is not None:
                raise ValueError("local model takes p_locals only")
            ps = tuple(_check_prob(p, f"p_locals[{i}]") for i, p in enumerate(self.p_locals))
            object.__setattr__(self, "p_locals", ps)
        else:
            raise ValueError(f"unknown noise kind {self.kind!r}")


def _depolarize_slot(tensor: np.ndarray, dims: tuple[int, ...], slot: int, p: float) -> np.ndarray:
    """p * (1_slot / d) (x) tr_slot(rho) + (1 - p) * rho, on the 2N-axis tensor."""
    n = len(dims)
    reduced = np.trace(tensor, axis1=slot, axis2=n + slot)  # 2(N-1) axes, slot removed
    refill = np.tensordot(reduced, np.eye(dims[slot]) / dims[slot], axes=0)
    # refill axes: rows-without-slot, cols-without-slot, slot-row, slot-col;
    # permute back to (r_0..r_{n-1}, c_0..c_{n-1}).
    row_axes, col_axes, next_old = [], [], 0
    for m in range(n):
        if m == slot:
            row_axes.append(2 * (n - 1))
            col_axes.append(2 * (n - 1) + 1)
        else:
            row_axes.append(next_old)
            col_axes.append(next_old + n - 1)
            next_old += 1
    return p * refill.transpose(row_axes + col_axes) + (1 - p) * tensor


def apply_depolarizing(state: QuantumState, model: NoiseModel) -> QuantumState:
    """Return the noisy state as a density matrix (channels commute per slot)."""
    ensemble = state.ensemble
    rho = state.density()
    if model.kind == "global":
        out = model.p_global * np.eye(ensemble.dim) / ensemble.dim + (1 - model.p_global) * rho
    else:
        if len(model.p_locals) != ensemble.N:
            raise ValueError(f"local model has {len(model.p_locals)} entries for {ensemble.N} particles")
        dims = ensemble.local_dims
        tensor = rho.reshape(dims + dims)
        for slot, p in enumerate(model.p_locals):
            tensor = _depolarize_slot(tensor, dims, slot, p)
        out = tensor.reshape(ensemble.dim, ensemble.dim)
    out = (out + out.conj().T) / 2
    return QuantumState(ensemble, rho=out)


def noisy_score_global(K: int, p_global: float) -> float:
    """Closed-form witness score of the optimal state under global depolarizing."""
    p = _check_prob(p_global, "p_global")
    report = witness_report(K)
    return 0.5 + 2 * (1 - p) * (report.P_sep_float - 0.5)


def noisy_score_local(ensemble: SpinEnsemble, p_locals) -> float:
    """Closed-form score under one depolarizing channel per particle."""
    if len(p_locals) != ensemble.N:
        raise ValueError(f"expected {ensemble.N} local probabilities, got {len(p_locals)}")
    ps = [_check_prob(p, f"p_locals[{i}]") for i, p in enumerate(p_locals)]
    report = witness_report(ensemble.K)
    survival = float(np.prod([1 - p for p in ps]))
    return 0.5 + 2 * survival * (report.P_sep_float - 0.5)


def detection_thresholds(ensemble: SpinEnsemble) -> tuple[float, float, float]:
    """(global max p, identical-local max p, theoretical-limit comparison constant).

    Detection requires p_global < 1/2; for identical local noise on all N
    particles it requires p < 1 - 2^(-1/N).  The last entry, 1/(2(1 - 2^-K)),
    is the largest global noise any witness could possibly tolerate on this
    state, for gauging how close the 1/2 threshold comes to optimal.
    """
    n = ensemble.N
    k = ensemble.K
    return 0.5, 1 - 2 ** (-1 / n), 1 / (2 * (1 - 2 ** (-k)))
