from __future__ import annotations

from typing import Callable

import numpy as np

from ..numeric.fixed import HALF, ONE_BITS, Fraction64, frac_xor


def plcm_step(x: Fraction64, p: Fraction64) -> Fraction64:
    """Piecewise linear chaotic map on [0, 1] with control p in (0, 1/2)."""
    assert 0 < p.bits < HALF.bits, "control parameter must lie in (0, 1/2)"
    if x.bits <= p.bits:
        return x / p
    if x.bits <= HALF.bits:
        return (x - p) / (HALF - p)
    return plcm_step(Fraction64(ONE_BITS - x.bits), p)


def plcm_orbit(x0: Fraction64, p: Fraction64, steps: int) -> list[Fraction64]:
    orbit = [x0]
    for _ in range(steps - 1):
        orbit.append(plcm_step(orbit[-1], p))
    return orbit


def strategy_position(k: Fraction64, n: int) -> int:
    """floor(n * k) + 1, with k = 1 mapped to n."""
    return n if k.is_one else k.scale_floor(n) + 1


def chaotic_positions(key: Fraction64, seed: Fraction64, control: Fraction64, iterations: int, n: int) -> np.ndarray:
    """
    Positions S^0..S^{Nc-1} in [1, n]: K^0 = seed XOR key, K^{i+1} = F(K^i, p),
    S^i = floor(n * K^i) + 1.
    """
    assert n >= 1 and iterations >= 1
    out = np.empty(iterations, dtype=np.int64)
    k = frac_xor(seed, key)
    for i in range(iterations):
        out[i] = strategy_position(k, n)
        k = plcm_step(k, control)
    return out


def negation(x: np.ndarray) -> np.ndarray:
    return np.logical_not(x)


def ci_iterate(
    x0: np.ndarray,
    strategy: np.ndarray,
    steps: int | None = None,
    f: Callable[[np.ndarray], np.ndarray] | None = None,
) -> np.ndarray:
    """
    Chaotic iterations: at step n only component S^n (1-based) takes the
    value of f(x^{n-1}); f defaults to the vectorial negation.
    """
    x = np.asarray(x0, dtype=bool).copy()
    steps = len(strategy) if steps is None else steps
    assert steps <= len(strategy)
    for s in strategy[:steps]:
        assert 1 <= s <= len(x), f"strategy value {s} outside [1, {len(x)}]"
        x[s - 1] = (not x[s - 1]) if f is None else f(x)[s - 1]
    return x
