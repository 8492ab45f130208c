from __future__ import annotations

import random
from typing import Optional

from loguru import logger

from ..errors import PairingDegenerate
from ..numeric.fp2 import Fp2, Fp2Element
from .curve import CurveParams, CurvePoint, random_point

# Number of auxiliary points tried before a pairing is declared degenerate.
MAX_PAIRING_RETRIES = 8

# An affine point with F_p^2 coordinates; None is the point at infinity.
Point2 = Optional[tuple[Fp2Element, Fp2Element]]


class _Degenerate(Exception):
    pass


def lift(P: CurvePoint, field: Fp2) -> Point2:
    if P.is_infinity:
        return None
    return (field.element(P.x), field.element(P.y))


def distortion(P: CurvePoint, curve: CurveParams) -> Point2:
    """phi(x, y) = (zeta x, y) on y^2 = x^3 + 1, zeta a primitive cube root of unity."""
    field = Fp2.of(curve.p)
    if P.is_infinity:
        return None
    zeta = field.cube_root_of_unity()
    return (zeta * P.x, field.element(P.y))


def _neg2(P: Point2) -> Point2:
    if P is None:
        return None
    return (P[0], -P[1])


def _slope(T: Point2, U: Point2, a: int) -> Optional[Fp2Element]:
    """Slope of the line through T and U (tangent if equal); None if vertical."""
    (xt, yt), (xu, yu) = T, U
    if xt == xu:
        if yt != yu or yt.is_zero():
            return None
        return (3 * xt * xt + a) / (2 * yt)
    return (yu - yt) / (xu - xt)


def _add2(T: Point2, U: Point2, a: int) -> Point2:
    if T is None:
        return U
    if U is None:
        return T
    lam = _slope(T, U, a)
    if lam is None:
        return None
    x3 = lam * lam - T[0] - U[0]
    y3 = lam * (T[0] - x3) - T[1]
    return (x3, y3)


def _line(T: Point2, U: Point2, X: Point2, a: int) -> tuple[Fp2Element, Fp2Element]:
    """
    g_{T,U}(X) as a (numerator, denominator) pair, where
    div(g) = (T) + (U) - (T+U) - (O).
    """
    one = X[0].field.one()
    if T is None or U is None:
        return one, one
    lam = _slope(T, U, a)
    if lam is None:
        return X[0] - T[0], one
    num = X[1] - T[1] - lam * (X[0] - T[0])
    den = X[0] + T[0] + U[0] - lam * lam
    return num, den


def _miller(P: Point2, points: list[Point2], order: int, a: int) -> list[Fp2Element]:
    """f_P evaluated at each of `points`, div(f_P) = order*(P) - order*(O)."""
    one = points[0][0].field.one()
    acc = [(one, one) for _ in points]
    T = P
    for bit in bin(order)[3:]:
        acc = [(n * n, d * d) for n, d in acc]
        acc = _mul_lines(acc, T, T, points, a)
        T = _add2(T, T, a)
        if bit == "1":
            acc = _mul_lines(acc, T, P, points, a)
            T = _add2(T, P, a)
    values = []
    for n, d in acc:
        if n.is_zero() or d.is_zero():
            raise _Degenerate()
        values.append(n / d)
    return values


def _mul_lines(acc, T: Point2, U: Point2, points: list[Point2], a: int):
    out = []
    for (n, d), X in zip(acc, points):
        ln, ld = _line(T, U, X, a)
        if ln.is_zero() or ld.is_zero():
            raise _Degenerate()
        out.append((n * ln, d * ld))
    return out


def _auxiliary_point(curve: CurveParams, field: Fp2, rng: random.Random) -> Point2:
    """
    A random point for divisor translation. On the distortion-friendly curve
    it is R1 + phi(R2), a generic F_p^2 point clear of both E(F_p) and its
    image under phi.
    """
    S = lift(random_point(curve, rng), field)
    if curve.a == 0 and curve.p % 3 == 2:
        S = _add2(S, distortion(random_point(curve, rng), curve), curve.a)
    return S


def _weil2(P: Point2, Q: Point2, order: int, curve: CurveParams, rng: random.Random) -> Fp2Element:
    """
    e_n(P, Q) = [f_P(Q+S) / f_P(S)] / [f_Q(P-S) / f_Q(-S)] for an auxiliary
    point S, resampled whenever a line function hits a zero or a pole.
    """
    field = Fp2.of(curve.p)
    if P is None or Q is None:
        return field.one()
    a = curve.a
    for attempt in range(MAX_PAIRING_RETRIES):
        S = _auxiliary_point(curve, field, rng)
        minus_S = _neg2(S)
        if S is None or S == P or S == _neg2(Q):
            continue
        Q_plus_S = _add2(Q, S, a)
        P_minus_S = _add2(P, minus_S, a)
        if Q_plus_S is None or P_minus_S is None:
            continue
        try:
            fp_qs, fp_s = _miller(P, [Q_plus_S, S], order, a)
            fq_ps, fq_ms = _miller(Q, [P_minus_S, minus_S], order, a)
        except _Degenerate:
            logger.debug("Miller evaluation degenerate, retry {}", attempt + 1)
            continue
        return (fp_qs * fq_ms) / (fp_s * fq_ps)
    raise PairingDegenerate(f"no usable auxiliary point after {MAX_PAIRING_RETRIES} attempts")


def _default_rng(*parts) -> random.Random:
    # The pairing value does not depend on S; seeding from the inputs keeps runs reproducible.
    return random.Random("|".join(map(str, parts)))


def weil_pairing(
    P: CurvePoint,
    Q: CurvePoint,
    order: int,
    curve: CurveParams,
    rng: random.Random | None = None,
) -> Fp2Element:
    """Weil pairing of two order-dividing-`order` points of E(F_p)."""
    field = Fp2.of(curve.p)
    rng = rng or _default_rng("weil", P, Q, order, curve.p)
    return _weil2(lift(P, field), lift(Q, field), order, curve, rng)


def modified_weil(
    P: CurvePoint,
    Q: CurvePoint,
    order: int,
    curve: CurveParams,
    rng: random.Random | None = None,
) -> Fp2Element:
    """e(P, Q) = Weil(phi(P), Q), non-degenerate on the order-n subgroup."""
    assert curve.a == 0 and curve.p % 3 == 2, "distortion map needs y^2 = x^3 + b with p = 2 mod 3"
    field = Fp2.of(curve.p)
    rng = rng or _default_rng("modified", P, Q, order, curve.p)
    return _weil2(distortion(P, curve), lift(Q, field), order, curve, rng)
