"""Fock-diagonal single-mode states built from a thermal seed.

Three families are provided: the thermal state itself, the M-photon-subtracted
thermal state (PSTS) and the M-photon-added thermal state (PATS). All of them
are diagonal in the photon-number basis and are stored as a truncated
probability vector together with an upper bound on the discarded tail.

The PSTS distribution is negative binomial with stopping parameter M + 1,

    p_n = C(n + M, M) (1 - x)^(M + 1) x^n,      x = nbar / (nbar + 1),

and the PATS distribution is the same sequence shifted up by M Fock levels.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError
from .special_functions import _check_order, hyp2f1_series, legendre_p

DEFAULT_TRUNC_TOL = 1e-14
NORM_TOL = 1e-10


@dataclass(frozen=True)
class ThermalParams:
    """Mean occupancy of the thermal seed state.

    ``x`` is derived from ``nbar`` as ``nbar / (nbar + 1)`` and is never set
    independently; use :meth:`from_x` to start from the thermal ratio.
    """

    nbar: float
    x: float = field(init=False)

    def __post_init__(self):
        nbar = float(self.nbar)
        if not (nbar >= 0 and math.isfinite(nbar)):
            raise DomainError(f"nbar must be finite and >= 0, got {self.nbar!r}")
        object.__setattr__(self, "nbar", nbar)
        object.__setattr__(self, "x", nbar / (nbar + 1.0))

    @classmethod
    def from_x(cls, x: float) -> "ThermalParams":
        if not 0 <= x < 1:
            raise DomainError(f"thermal ratio x must lie in [0, 1), got {x!r}")
        return cls(x / (1.0 - x))


class Kind(str, enum.Enum):
    SUBTRACTED = "psts"
    ADDED = "pats"


@dataclass(frozen=True)
class ExcitationSpec:
    """Number of photons ``m`` removed from or added to the thermal seed.

    ``m == 0`` denotes the unmodified thermal state for either kind.
    """

    m: int
    kind: Kind = Kind.SUBTRACTED

    def __post_init__(self):
        object.__setattr__(self, "m", _check_order(self.m))
        object.__setattr__(self, "kind", Kind(self.kind))


@dataclass(frozen=True, eq=False)
class FockDiagonalState:
    """Truncated photon-number distribution p_0 ... p_N.

    Attributes:
        probs: read-only array of photon-number probabilities.
        tail_bound: upper bound on the probability mass above ``cutoff``.
        nbar, kind, m: provenance of the state (seed occupancy, family
            ``"thermal" | "psts" | "pats"`` and excitation number).
        nbar_r, gamma_t: reservoir occupancy and elapsed dimensionless
            time if the state has been damped, else None.
    """

    probs: np.ndarray
    tail_bound: float
    nbar: float | None = None
    kind: str = "thermal"
    m: int = 0
    nbar_r: float | None = None
    gamma_t: float | None = None

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise DomainError("probs must be a non-empty 1-D sequence")
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            raise DomainError("probabilities must be finite and non-negative")
        if not self.tail_bound >= 0:
            raise DomainError(f"tail_bound must be >= 0, got {self.tail_bound!r}")
        total = math.fsum(probs) + self.tail_bound
        if abs(total - 1.0) > NORM_TOL:
            raise DomainError(f"probabilities plus tail sum to {total!r}, not 1")
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "tail_bound", float(self.tail_bound))

    @property
    def cutoff(self) -> int:
        return self.probs.size - 1

    def __len__(self):
        return self.probs.size

    def to_text(self) -> str:
        """Serialize as a header line followed by one ``n p_n`` line per index."""
        header = [
            f"nbar={_fmt(self.nbar) if self.nbar is not None else 'nan'}",
            f"kind={self.kind}",
            f"M={self.m}",
            f"tail={_fmt(self.tail_bound)}",
        ]
        if self.nbar_r is not None:
            header.append(f"nbar_r={_fmt(self.nbar_r)}")
        if self.gamma_t is not None:
            header.append(f"gamma_t={_fmt(self.gamma_t)}")
        lines = ["# " + " ".join(header)]
        lines.extend(f"{n} {_fmt(p)}" for n, p in enumerate(self.probs))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FockDiagonalState":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("#"):
            raise DomainError("missing '# nbar=... kind=... M=... tail=...' header")
        meta = dict(tok.split("=", 1) for tok in lines[0][1:].split())
        probs = []
        for expected, line in enumerate(lines[1:]):
            n, p = line.split()
            if int(n) != expected:
                raise DomainError(f"Fock index {n} out of order, expected {expected}")
            probs.append(float(p))
        nbar = float(meta["nbar"])
        return cls(
            probs=np.array(probs),
            tail_bound=float(meta["tail"]),
            nbar=None if math.isnan(nbar) else nbar,
            kind=meta["kind"],
            m=int(meta["M"]),
            nbar_r=float(meta["nbar_r"]) if "nbar_r" in meta else None,
            gamma_t=float(meta["gamma_t"]) if "gamma_t" in meta else None,
        )

    def save(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path) -> "FockDiagonalState":
        return cls.from_text(Path(path).read_text())


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _check_tol(trunc_tol):
    if not trunc_tol > 0:
        raise DomainError(f"trunc_tol must be positive, got {trunc_tol!r}")


def _negative_binomial(x: float, m: int, trunc_tol: float) -> tuple[np.ndarray, float]:
    """Negative-binomial weights C(n+m, m)(1-x)^(m+1) x^n and a tail bound.

    Successive ratios x(n+1+m)/(n+1) decrease towards x, so once the ratio
    rho after the cutoff is below one the tail is at most p_{N+1}/(1 - rho).
    The cutoff is doubled until that bound is below ``trunc_tol``.
    """
    p0 = (1.0 - x) ** (m + 1)
    if x == 0.0:
        return np.array([p0]), 0.0
    size = max(16, 2 * int(math.ceil((m + 1) * x / (1.0 - x))))
    while True:
        n = np.arange(1, size + 1, dtype=float)
        ratios = x * (n + m) / n
        probs = p0 * np.concatenate(([1.0], np.cumprod(ratios)))
        # probs[-1] is p_{N+1}; keep p_0..p_N
        cutoff = size - 1
        rho = x * (cutoff + 2 + m) / (cutoff + 2)
        if rho < 1.0:
            tail = probs[-1] / (1.0 - rho)
            if tail <= trunc_tol:
                return probs[:-1], tail
        size *= 2


def make_thermal(params: ThermalParams, trunc_tol: float = DEFAULT_TRUNC_TOL) -> FockDiagonalState:
    """Thermal state p_n = (1 - x) x^n truncated where x^(N+1) <= trunc_tol."""
    _check_tol(trunc_tol)
    x = params.x
    if x == 0.0:
        return FockDiagonalState(np.array([1.0]), 0.0, nbar=params.nbar, kind="thermal")
    cutoff = max(0, int(math.ceil(math.log(trunc_tol) / math.log(x))) - 1)
    while x ** (cutoff + 1) > trunc_tol:
        cutoff += 1
    n = np.arange(cutoff + 1)
    probs = (1.0 - x) * x**n
    return FockDiagonalState(probs, x ** (cutoff + 1), nbar=params.nbar, kind="thermal")


def make_psts(params: ThermalParams, m: int, trunc_tol: float = DEFAULT_TRUNC_TOL) -> FockDiagonalState:
    """Photon-subtracted thermal state with ``m`` photons removed.

    Raises:
        DomainError: if ``nbar == 0`` and ``m >= 1``; the normalization
            1/(M! nbar^M) of the subtracted state is then undefined.
    """
    m = _check_order(m)
    _check_tol(trunc_tol)
    if m >= 1 and params.nbar == 0:
        raise DomainError("cannot subtract photons from the vacuum: nbar must be > 0 when M >= 1")
    if m == 0:
        return make_thermal(params, trunc_tol)
    probs, tail = _negative_binomial(params.x, m, trunc_tol)
    return FockDiagonalState(probs, tail, nbar=params.nbar, kind="psts", m=m)


def make_pats(params: ThermalParams, m: int, trunc_tol: float = DEFAULT_TRUNC_TOL) -> FockDiagonalState:
    """Photon-added thermal state with ``m`` photons added.

    p_n = C(n, M)(1 - x)^(M+1) x^(n-M) for n >= M and zero below, i.e. the
    subtracted-state distribution shifted up by M levels. At ``nbar == 0``
    this is the Fock state |M>.
    """
    m = _check_order(m)
    _check_tol(trunc_tol)
    if m == 0:
        return make_thermal(params, trunc_tol)
    probs, tail = _negative_binomial(params.x, m, trunc_tol)
    probs = np.concatenate((np.zeros(m), probs))
    return FockDiagonalState(probs, tail, nbar=params.nbar, kind="pats", m=m)


def make_state(params: ThermalParams, excitation: ExcitationSpec,
               trunc_tol: float = DEFAULT_TRUNC_TOL) -> FockDiagonalState:
    if excitation.kind is Kind.ADDED:
        return make_pats(params, excitation.m, trunc_tol)
    return make_psts(params, excitation.m, trunc_tol)


def generating_function(state: FockDiagonalState, v: float) -> float:
    """G(v) = sum_n p_n v^n over the retained range.

    The truncation error is at most ``state.tail_bound`` since |v| <= 1.
    """
    if not abs(v) <= 1:
        raise DomainError(f"|v| <= 1 required, got v={v!r}")
    powers = np.power(float(v), np.arange(state.probs.size))
    return math.fsum(state.probs * powers)


def mean_photon(state: FockDiagonalState) -> float:
    return math.fsum(np.arange(state.probs.size) * state.probs)


def mean_photon_error(state: FockDiagonalState) -> float:
    """Cutoff-weighted tail, ``(N + 1) * tail_bound``, as a truncation error scale for the mean."""
    return (state.cutoff + 1) * state.tail_bound


def purity(state: FockDiagonalState) -> float:
    return math.fsum(state.probs * state.probs)


def purity_psts_closed(params: ThermalParams, m: int) -> float:
    """Purity of the subtracted state from its Legendre-polynomial form.

    Tr(rho^2) = ((1-x)/(1+x))^(M+1) * P_M(1 + 2x^2/(1-x^2)). The photon-added
    state with the same (nbar, M) has the same purity.
    """
    m = _check_order(m)
    x = params.x
    if x == 0.0:
        return 1.0
    return ((1.0 - x) / (1.0 + x)) ** (m + 1) * legendre_p(m, 1.0 + 2.0 * x * x / (1.0 - x * x))


def purity_psts_hypergeometric(params: ThermalParams, m: int) -> float:
    """Same purity via (1-x)^(2(M+1)) * 2F1(M+1, M+1; 1; x^2)."""
    m = _check_order(m)
    x = params.x
    return (1.0 - x) ** (2 * (m + 1)) * hyp2f1_series(m + 1, m + 1, 1, x * x)


