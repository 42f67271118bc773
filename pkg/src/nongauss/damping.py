"""Damping of Fock-diagonal states by a thermal reservoir.

Under the quantum optical master equation with bath occupancy nbar_R and decay
rate gamma, a diagonal state stays diagonal. With e = exp(-gamma t) and
nbar_T = nbar_R (1 - e) the transition probabilities are

    K[j, l] = nbar_T^j / (nbar_T + 1)^(j+1) * A^l * 2F1(-j, -l; 1; w),
    A = (nbar_R + 1)(1 - e) / (nbar_T + 1),
    w = e / ((nbar_R + 1)(1 - e) nbar_T).

``w`` diverges as t -> 0 or nbar_R -> 0 while K stays finite. Expanding the
terminating 2F1 and collecting powers gives

    K[j, l] = sum_k Binom(k; l, q) * NegBinom(j - k; k + 1, alpha),
    q = e / (nbar_T + 1),   alpha = nbar_T / (nbar_T + 1),

i.e. binomial thinning of the l photons to k survivors followed by
negative-binomial growth from k to j. Every factor is a probability, so this
form has no vanishing denominators and no overflow; it is what
:func:`evolve_fock_diagonal` uses. :func:`printed_kernel` keeps the raw form
for cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import binom, nbinom

from .errors import DomainError
from .fock_states import (
    DEFAULT_TRUNC_TOL,
    ExcitationSpec,
    FockDiagonalState,
    ThermalParams,
    _check_tol,
    make_psts,
    make_state,
    mean_photon,
)
from .nongaussianity import NonGaussMeasures, measures
from .special_functions import _check_order, hyp2f1_terminating


@dataclass(frozen=True)
class DampingChannel:
    """Thermal reservoir with mean occupancy ``nbar_r`` and decay rate ``gamma``.

    Formulas only ever need the product gamma*t, see :class:`TimePoint`.
    """

    nbar_r: float
    gamma: float = 1.0

    def __post_init__(self):
        if not (self.nbar_r >= 0 and math.isfinite(self.nbar_r)):
            raise DomainError(f"nbar_r must be finite and >= 0, got {self.nbar_r!r}")
        if not self.gamma > 0:
            raise DomainError(f"gamma must be > 0, got {self.gamma!r}")

    def at_time(self, t: float) -> "TimePoint":
        return TimePoint(self.gamma * t)

    def nbar_t(self, at: "TimePoint") -> float:
        """Thermal occupancy nbar_R (1 - e^(-gamma t)) fed in by the bath so far."""
        return self.nbar_r * at.one_minus_decay


@dataclass(frozen=True)
class TimePoint:
    """Dimensionless elapsed time gamma*t."""

    gamma_t: float

    def __post_init__(self):
        if not (self.gamma_t >= 0 and math.isfinite(self.gamma_t)):
            raise DomainError(f"gamma_t must be finite and >= 0, got {self.gamma_t!r}")
        object.__setattr__(self, "gamma_t", float(self.gamma_t))

    @classmethod
    def from_decay(cls, decay: float) -> "TimePoint":
        if not 0 < decay <= 1:
            raise DomainError(f"decay factor must lie in (0, 1], got {decay!r}")
        return cls(-math.log(decay))

    @property
    def decay(self) -> float:
        return math.exp(-self.gamma_t)

    @property
    def one_minus_decay(self) -> float:
        return -math.expm1(-self.gamma_t)


@dataclass(frozen=True)
class TrajectoryPoint:
    at: TimePoint
    measures: NonGaussMeasures
    mean_photon: float


def _as_timepoint(at) -> TimePoint:
    return at if isinstance(at, TimePoint) else TimePoint(at)


def printed_kernel(j: int, l: int, channel: DampingChannel, at: TimePoint) -> float:
    """Transition probability l -> j in the raw hypergeometric form.

    Only defined for nbar_R > 0 and gamma*t > 0; accuracy degrades as either
    approaches zero. Use :func:`transition_matrix` for actual propagation.
    """
    at = _as_timepoint(at)
    nt = channel.nbar_t(at)
    if nt == 0 or at.gamma_t == 0:
        raise DomainError("printed kernel is singular for nbar_r = 0 or gamma_t = 0")
    e, one_minus = at.decay, at.one_minus_decay
    growth = (channel.nbar_r + 1.0) * one_minus / (nt + 1.0)
    w = e / ((channel.nbar_r + 1.0) * one_minus * nt)
    return nt**j / (nt + 1.0) ** (j + 1) * growth**l * hyp2f1_terminating(j, -l, 1, w)


def _thinning(channel, at, size_in):
    """Binomial survival matrix S[k, l] = C(l, k) q^k (1-q)^(l-k)."""
    q = at.decay / (channel.nbar_t(at) + 1.0)
    k = np.arange(size_in)[:, None]
    l = np.arange(size_in)[None, :]
    return binom.pmf(k, l, q)


def _growth(channel, at, size_out, size_in):
    """Negative-binomial growth matrix G[j, k] = C(j, k) alpha^(j-k) (1-alpha)^(k+1)."""
    nt = channel.nbar_t(at)
    j = np.arange(size_out)[:, None]
    k = np.arange(size_in)[None, :]
    if nt == 0.0:
        return (j == k).astype(float)
    return nbinom.pmf(j - k, k + 1, 1.0 / (nt + 1.0))


def transition_matrix(channel: DampingChannel, at: TimePoint, size_out: int, size_in: int) -> np.ndarray:
    """Regularized kernel K[j, l] for 0 <= j < size_out, 0 <= l < size_in."""
    at = _as_timepoint(at)
    return _growth(channel, at, size_out, size_in) @ _thinning(channel, at, size_in)


def evolve_fock_diagonal(initial: FockDiagonalState, channel: DampingChannel, at,
                         trunc_tol: float = DEFAULT_TRUNC_TOL) -> FockDiagonalState:
    """Propagate a Fock-diagonal state through the reservoir for time ``at``.

    The output cutoff is doubled until the mass pushed above it is at most
    ``trunc_tol``. The returned ``tail_bound`` is the input tail plus that
    output-side loss; probabilities are never rescaled.
    """
    at = _as_timepoint(at)
    _check_tol(trunc_tol)
    meta = dict(nbar=initial.nbar, kind=initial.kind, m=initial.m,
                nbar_r=channel.nbar_r, gamma_t=at.gamma_t)
    if initial.gamma_t is not None:
        meta["gamma_t"] = initial.gamma_t + at.gamma_t
    if at.gamma_t == 0.0:
        return FockDiagonalState(initial.probs.copy(), initial.tail_bound, **meta)

    size_in = initial.probs.size
    survivors = _thinning(channel, at, size_in) @ initial.probs
    mass = math.fsum(survivors)
    size_out = size_in
    while True:
        probs = _growth(channel, at, size_out, size_in) @ survivors
        lost = max(0.0, mass - math.fsum(probs))
        if lost <= trunc_tol:
            break
        size_out *= 2
    return FockDiagonalState(probs, initial.tail_bound + lost, **meta)


def damped_mean(initial_mean: float, channel: DampingChannel, at) -> float:
    """Mean occupancy after damping: <n>_0 e^(-gamma t) + nbar_T(t)."""
    at = _as_timepoint(at)
    return initial_mean * at.decay + channel.nbar_t(at)


def damped_mean_psts(params: ThermalParams, m: int, channel: DampingChannel, at) -> float:
    """Mean photon number nbar (M+1) e^(-gamma t) + nbar_T(t) of a damped subtracted state."""
    m = _check_order(m)
    return damped_mean((m + 1) * params.nbar, channel, at)


def damped_psts_distribution(params: ThermalParams, m: int, channel: DampingChannel, at,
                             trunc_tol: float = DEFAULT_TRUNC_TOL) -> FockDiagonalState:
    """Closed-form photon statistics of a damped M-photon-subtracted thermal state.

    With mu = nbar e + nbar_T,

        p_n(t) = (nbar_T + 1)^M mu^n / (mu + 1)^(M+n+1)
                 * 2F1(-M, -n; 1; nbar e / ((nbar_T + 1) mu)).

    The 2F1 factor grows by at most (n+1)/(n+1-M) per step, so the ratio
    p_{n+1}/p_n is bounded by mu/(mu+1) * (n+1)/(n+1-M) and the tail beyond
    the cutoff is bounded geometrically, as for the undamped state.
    """
    m = _check_order(m)
    _check_tol(trunc_tol)
    at = _as_timepoint(at)
    if at.gamma_t == 0.0:
        state = make_psts(params, m, trunc_tol)
        return FockDiagonalState(state.probs, state.tail_bound, nbar=params.nbar, kind="psts",
                                 m=m, nbar_r=channel.nbar_r, gamma_t=0.0)
    if m >= 1 and params.nbar == 0:
        raise DomainError("nbar must be > 0 when M >= 1")
    meta = dict(nbar=params.nbar, kind="psts", m=m, nbar_r=channel.nbar_r, gamma_t=at.gamma_t)

    nt = channel.nbar_t(at)
    signal = params.nbar * at.decay
    mu = signal + nt
    if mu == 0.0:
        return FockDiagonalState(np.array([1.0]), 0.0, **meta)
    w = signal / ((nt + 1.0) * mu)
    log_ratio = -math.log1p(1.0 / mu)
    log_front = m * math.log1p(nt) - (m + 1) * math.log1p(mu)
    r = mu / (mu + 1.0)

    probs: list[float] = []
    size = max(16, 2 * int(math.ceil(mu * (m + 1))))
    while True:
        for n in range(len(probs), size + 1):
            f = hyp2f1_terminating(m, -n, 1, w)
            probs.append(math.exp(log_front + n * log_ratio) * f)
        cutoff = size - 1
        if cutoff + 2 > m:
            rho = r * (cutoff + 2) / (cutoff + 2 - m)
            if rho < 1.0:
                tail = probs[size] / (1.0 - rho)
                if tail <= trunc_tol:
                    return FockDiagonalState(np.array(probs[:size]), tail, **meta)
        size *= 2


def trajectory(params: ThermalParams, excitation: ExcitationSpec, channel: DampingChannel,
               times: Iterable, trunc_tol: float = DEFAULT_TRUNC_TOL) -> list[TrajectoryPoint]:
    """Non-Gaussianity of an excited thermal state along its damped evolution.

    Each time point is propagated directly from the initial state, not
    chained from the previous one, so errors do not accumulate.

    Raises:
        DomainError: if ``times`` is empty, negative or not strictly ascending.
    """
    points: Sequence[TimePoint] = [_as_timepoint(t) for t in times]
    if not points:
        raise DomainError("times must be non-empty")
    for before, after in zip(points, points[1:]):
        if not after.gamma_t > before.gamma_t:
            raise DomainError(f"times must be strictly ascending: {before.gamma_t} then {after.gamma_t}")

    initial = make_state(params, excitation, trunc_tol)
    out = []
    for at in points:
        state = evolve_fock_diagonal(initial, channel, at, trunc_tol)
        out.append(TrajectoryPoint(at, measures(state), mean_photon(state)))
    return out
