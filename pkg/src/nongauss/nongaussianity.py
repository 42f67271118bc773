"""Distance-type non-Gaussianity of Fock-diagonal states.

For a Fock-diagonal state the associate Gaussian state (same first and second
moments) is the thermal state with the same mean occupancy <n>,

    s_n = sigma^n / (<n> + 1),      sigma = <n> / (<n> + 1),

and it commutes with the state, so all three distances reduce to sums over
the photon-number distribution:

* Hilbert-Schmidt:  1/2 + [1/(2<n>+1) - 2 G(sigma)/(<n>+1)] / (2 Tr rho^2)
* relative entropy: sum p_n ln p_n + (<n>+1) ln(<n>+1) - <n> ln <n>
* Bures:            1 - sum sqrt(p_n s_n)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fock_states import (
    FockDiagonalState,
    ThermalParams,
    generating_function,
    mean_photon,
    purity,
)
from .special_functions import _check_order, legendre_p

# below this a probability is treated as an exact zero in p ln p
_TINY = 1e-300
# rounding noise around an exact zero; anything more negative is a real error
_NOISE = 1e-12


@dataclass(frozen=True)
class AssociateGaussian:
    """Thermal reference state matched to a state's mean occupancy."""

    mean_occupancy: float

    @property
    def sigma(self) -> float:
        return self.mean_occupancy / (self.mean_occupancy + 1.0)

    def probs(self, size: int) -> np.ndarray:
        """First ``size`` thermal probabilities s_0 ... s_{size-1}."""
        return np.power(self.sigma, np.arange(size)) / (self.mean_occupancy + 1.0)


@dataclass(frozen=True)
class NonGaussMeasures:
    hs: float
    re: float
    fid: float

    def as_dict(self) -> dict[str, float]:
        return {"hs": self.hs, "re": self.re, "fid": self.fid}


def _floor(value: float) -> float:
    return 0.0 if -_NOISE < value < 0.0 else value


def associate_gaussian(state: FockDiagonalState) -> AssociateGaussian:
    return AssociateGaussian(mean_photon(state))


def delta_hs(state: FockDiagonalState) -> float:
    """Hilbert-Schmidt degree of non-Gaussianity.

    Evaluated from the purity, the mean occupancy and the generating
    function at sigma, which avoids summing the thermal probabilities.
    """
    gauss = associate_gaussian(state)
    mean = gauss.mean_occupancy
    bracket = 1.0 / (2.0 * mean + 1.0) - 2.0 / (mean + 1.0) * generating_function(state, gauss.sigma)
    return _floor(0.5 + bracket / (2.0 * purity(state)))


def delta_re(state: FockDiagonalState) -> float:
    """Relative entropy of the state to its associate Gaussian, in nats."""
    p = state.probs[state.probs > _TINY]
    mean = mean_photon(state)
    gauss_entropy = (mean + 1.0) * math.log1p(mean) - (mean * math.log(mean) if mean > 0 else 0.0)
    return _floor(math.fsum(np.concatenate((p * np.log(p), [gauss_entropy]))))


def delta_bures(state: FockDiagonalState) -> float:
    """Bures (fidelity-based) degree: 1 - sum_n sqrt(p_n s_n)."""
    s = associate_gaussian(state).probs(state.probs.size)
    return _floor(1.0 - math.fsum(np.sqrt(state.probs * s)))


def measures(state: FockDiagonalState) -> NonGaussMeasures:
    return NonGaussMeasures(delta_hs(state), delta_re(state), delta_bures(state))


def delta_hs_psts_closed(params: ThermalParams, m: int) -> float:
    """Closed-form Hilbert-Schmidt degree of the M-photon-subtracted thermal state.

    Written term for term as

        1/2 + (2n+1)^M / (2 P_M(1 + 2n^2/(2n+1)))
              * { 1/(1 + 2Mn/(2n+1))
                  - 2/(1 + Mn/(2n+1)) * [((M+1)n+1)/((M+2)n+1)]^M }

    with n the thermal mean occupancy, so it can be checked against the
    series route of :func:`delta_hs`.
    """
    m = _check_order(m)
    n = params.nbar
    if m >= 1 and n == 0:
        raise DomainError("nbar must be > 0 when M >= 1")
    d = 2.0 * n + 1.0
    leg = legendre_p(m, 1.0 + 2.0 * n * n / d)
    first = 1.0 / (1.0 + 2.0 * m * n / d)
    second = 2.0 / (1.0 + m * n / d) * (((m + 1) * n + 1.0) / ((m + 2) * n + 1.0)) ** m
    return 0.5 + d**m / (2.0 * leg) * (first - second)
