from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from loguru import logger
from scipy import stats

from ..errors import DegenerateHost
from ..numeric.rng import array_stream


def _signs(bits: np.ndarray) -> np.ndarray:
    """(-1)^m."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


class Modulation(ABC):
    """
    Spread-spectrum modulation: the scalar s_i added along carrier u_i,
    and the rule that reads a bit back from the correlation <y, u_i>.
    """
    name: str

    @abstractmethod
    def amplitudes(self, projections: np.ndarray, norms2: np.ndarray, bits: np.ndarray) -> np.ndarray:
        ...

    def detect(self, correlations: np.ndarray) -> np.ndarray:
        # zero correlation reads as 0
        return (correlations < 0).astype(np.uint8)


@dataclass(frozen=True, slots=True)
class ClassicalSS(Modulation):
    gamma: float
    name = "ss"

    def amplitudes(self, projections, norms2, bits) -> np.ndarray:
        return self.gamma * _signs(bits)


@dataclass(frozen=True, slots=True)
class ImprovedSS(Modulation):
    """ISS: the host interference along u_i is partly removed (lambda = 0 is classical SS)."""
    alpha: float
    lam: float
    name = "iss"

    def amplitudes(self, projections, norms2, bits) -> np.ndarray:
        return self.alpha * _signs(bits) - self.lam * projections / norms2


@dataclass(frozen=True, slots=True)
class NaturalWatermarking(Modulation):
    """
    NW: the host projection is reflected or scaled so that <y, u_i> keeps
    its magnitude; eta = 1 leaves the projection distribution unchanged.
    """
    eta: float = 1.0
    name = "nw"

    def amplitudes(self, projections, norms2, bits) -> np.ndarray:
        if np.any(projections == 0):
            raise DegenerateHost("host is orthogonal to a carrier")
        return -(1.0 + self.eta * _signs(bits) * np.sign(projections)) * projections / norms2

    def detect(self, correlations: np.ndarray) -> np.ndarray:
        return (correlations > 0).astype(np.uint8)


MODULATIONS = {"ss": ClassicalSS, "iss": ImprovedSS, "nw": NaturalWatermarking}


@dataclass(frozen=True, slots=True)
class SsParams:
    modulation: Modulation
    n_carriers: int      # Nc
    host_length: int     # Nv
    key: int             # seed of the carriers

    def __post_init__(self):
        assert 1 <= self.n_carriers <= self.host_length, "need 1 <= Nc <= Nv"


def gram_schmidt(vectors: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt on the rows."""
    basis = np.array(vectors, dtype=np.float64, copy=True)
    for i in range(basis.shape[0]):
        basis[i] /= np.linalg.norm(basis[i])
        for j in range(i + 1, basis.shape[0]):
            basis[j] -= np.dot(basis[j], basis[i]) * basis[i]
    return basis


def carriers(params: SsParams) -> np.ndarray:
    raw = array_stream(params.key, "carriers").standard_normal((params.n_carriers, params.host_length))
    return gram_schmidt(raw)


def ss_embed(host: np.ndarray, bits: np.ndarray, params: SsParams, basis: np.ndarray | None = None) -> np.ndarray:
    """y = x + sum_i s_i u_i."""
    x = np.asarray(host, dtype=np.float64)
    bits = np.asarray(bits, dtype=np.uint8)
    assert x.shape == (params.host_length,) and bits.shape == (params.n_carriers,)
    u = carriers(params) if basis is None else basis
    s = params.modulation.amplitudes(u @ x, np.einsum("ij,ij->i", u, u), bits)
    return x + s @ u


def ss_detect(y: np.ndarray, params: SsParams, basis: np.ndarray | None = None) -> np.ndarray:
    u = carriers(params) if basis is None else basis
    return params.modulation.detect(u @ np.asarray(y, dtype=np.float64))


@dataclass(frozen=True, slots=True)
class KsResult:
    statistic: float
    pvalue: float
    rejected: bool


def stego_ks_test(
    params: SsParams,
    seed: int,
    n_hosts: int = 50,
    sigma: float = 1.0,
    alpha: float = 0.01,
) -> KsResult:
    """
    Two-sample Kolmogorov-Smirnov test between the carrier projections of
    Gaussian hosts and of their watermarked versions (random messages).
    Rejection means the embedding is visible in the projection distribution.
    """
    rng = array_stream(seed, "noise")
    u = carriers(params)
    before, after = [], []
    for _ in range(n_hosts):
        x = rng.normal(0.0, sigma, size=params.host_length)
        bits = rng.integers(0, 2, size=params.n_carriers, dtype=np.uint8)
        y = ss_embed(x, bits, params, u)
        before.append(u @ x)
        after.append(u @ y)
    result = stats.ks_2samp(np.concatenate(before), np.concatenate(after))
    rejected = bool(result.pvalue < alpha)
    logger.debug("{} KS: D = {:.4f}, p = {:.4g}", params.modulation.name, result.statistic, result.pvalue)
    return KsResult(float(result.statistic), float(result.pvalue), rejected)
