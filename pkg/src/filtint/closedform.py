"""Closed-form log-magnitude trade-off integrals and their cross-checks.

For a validated filtering system the two sensitivities obey conservation
laws expressed as frequency integrals of their log magnitude:

* the error sensitivity ``P`` is integrated without weight over the whole
  boundary (continuous-time result in nats, discrete-time in bits),
* the estimate sensitivity ``M`` is integrated with weight ``1/w**2`` in
  continuous time (nats) and without weight in discrete time (bits).

Each integral has a closed form in terms of the roots of the system: the
shared unstable poles, the unstable zeros of the signal model, and the
unstable residual roots of the numerator difference
``gain(gx) * N_gx * D_fgy - gain(fgy) * D_gx * N_fgy`` (stable parts of the
denominators only; shared unstable poles are divided out).  The module also
evaluates the same integrals directly from an explicit transfer function
(``direct_ct_integral`` / ``direct_dt_integral``) and through boundary
residue identities (``residue_crosscheck``), which gives three independent
routes to every number.

Functions
---------
difference_factorization(sys_)
    Roots of the numerator difference, split into shared poles and residual.
ct_error_integral(sys_), dt_error_integral(sys_)
    Closed form for the error-sensitivity integral.
ct_estimate_integral(sys_), dt_estimate_integral(sys_)
    Closed form for the estimate-sensitivity integral.
direct_ct_integral(tf, weighted=False), direct_dt_integral(tf)
    Same integrals evaluated from any explicit transfer function.
residue_crosscheck(sys_)
    Independent values from residue identities, where normalizations allow.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import poly
from .errors import (BoundaryRoot, DegenerateGain, DegreeCollapse, OriginRoot,
                     PreconditionUnmet, SharedPoleNotCancelled, ZeroGain)
from .rational import (EPS_CANCEL, EPS_CLASS, EPS_GAIN, RationalTF,
                       TimeDomain, _cancel_lists, _match_scale, classify)
from .sysmodel import (FilteringSystem, _stable_poles, error_sensitivity,
                       estimate_sensitivity)

LN2 = math.log(2.0)

#: Tolerance for locating shared unstable poles among the roots of the
#: numerator difference (absolute for moduli at most one, else relative).
MATCH_TOL = 1e-6

UNIT_NATS = "nats"
UNIT_BITS = "bits"


class CaseTag(Enum):
    """Branch taken by the closed-form evaluation.

    The error-sensitivity branches are selected by the relative-degree gap
    ``(m_x + n) - (n_x + m)`` between the numerator-difference operands and,
    at gap zero, by the gain relation.
    """

    CT_ERROR_GAP_GE2 = "ct_error_gap_ge2"
    CT_ERROR_GAP_1 = "ct_error_gap_1"
    CT_ERROR_BALANCED = "ct_error_balanced"
    CT_ERROR_UNBOUNDED = "ct_error_unbounded"
    CT_ESTIMATE_BOUNDED = "ct_estimate_bounded"
    CT_ESTIMATE_UNBOUNDED = "ct_estimate_unbounded"
    DT_ERROR_GAP_GE1 = "dt_error_gap_ge1"
    DT_ERROR_GAP_0 = "dt_error_gap_0"
    DT_ESTIMATE = "dt_estimate"


@dataclass(frozen=True)
class IntegralOutcome:
    """Result of one trade-off integral.

    ``terms`` maps named contributions to signed values that sum to
    ``value`` whenever the integral is bounded.  ``value_converted`` repeats
    the value in the other logarithm base for convenience.  For unbounded
    outcomes ``sign_if_unbounded`` is ``+-inf`` and ``condition`` states the
    violated boundedness condition.
    """

    bounded: bool
    value: float | None
    sign_if_unbounded: float | None
    case: CaseTag | None
    terms: dict = field(default_factory=dict)
    unit: str = UNIT_NATS
    value_converted: float | None = None
    unit_converted: str = UNIT_BITS
    condition: str | None = None


@dataclass(frozen=True)
class DifferenceFactorization:
    """Factorization of the numerator difference of ``gx - f*gy``.

    ``lead`` is the true leading coefficient after trimming; it equals
    ``gain(gx)`` when the operand degrees differ and ``gain(gx) -
    gain(fgy)`` when they coincide (absent degenerate cancellation).
    ``matched_shared`` are the roots located for the shared unstable poles,
    ``residual`` the remaining roots and ``residual_nmp`` the unstable ones
    among them.  ``degenerate`` marks gain-degenerate equal-degree systems;
    ``is_zero`` marks an identically vanishing difference.
    """

    poly: poly.Polynomial
    lead: float
    matched_shared: tuple
    residual: tuple
    residual_nmp: tuple
    degenerate: bool = False
    is_zero: bool = False


def _degree_gap(sys_: FilteringSystem) -> int:
    gx, fgy = sys_.gx, sys_.fgy
    return (len(gx.zeros) + len(fgy.poles)) - (len(gx.poles) + len(fgy.zeros))


@functools.lru_cache(maxsize=256)
def difference_factorization(sys_: FilteringSystem) -> DifferenceFactorization:
    """Construct and factor the numerator difference of ``gx - f*gy``.

    Both rational functions are written over their stable denominators
    (shared unstable poles divided out), the cross products are expanded
    and subtracted, and the difference's roots are matched against the
    shared unstable poles by optimal assignment.

    Raises
    ------
    SharedPoleNotCancelled
        If a shared unstable pole has no root of the difference within
        ``MATCH_TOL`` (multiplicity counted through distinct assignment).
    DegreeCollapse
        If the trimmed degree falls below the predicted degree outside the
        degenerate equal-gain situation.
    """
    gx, fgy = sys_.gx, sys_.fgy
    kx = gx.gain
    k = fgy.gain
    shared = sys_.shared_unstable
    st_fgy = _stable_poles(fgy, sys_.domain, sys_.eps_class)
    st_gx = _stable_poles(gx, sys_.domain, sys_.eps_class)

    a = poly.from_roots(kx, list(gx.zeros) + st_fgy)
    b = poly.from_roots(k, st_gx + list(fgy.zeros))
    gamma = poly.subtract(a, b)

    if gamma.is_zero:
        return DifferenceFactorization(
            poly=gamma, lead=0.0, matched_shared=(), residual=(),
            residual_nmp=(), degenerate=True, is_zero=True)

    d_a = a.degree
    d_b = b.degree if not b.is_zero else -1
    equal_deg = d_a == d_b
    degenerate = equal_deg and abs(kx - k) <= EPS_GAIN * abs(kx)
    if gamma.degree < d_a and not degenerate:
        raise DegreeCollapse(
            f"numerator difference degree {gamma.degree} is below the "
            f"predicted degree {d_a}")

    roots = poly.find_roots(gamma) if gamma.degree >= 1 else []
    if len(shared) > len(roots):
        raise SharedPoleNotCancelled(
            f"difference of degree {gamma.degree} cannot vanish at "
            f"{len(shared)} shared unstable poles", pole=shared[0])
    matched_idx = set()
    matched = []
    if shared:
        cost = np.array([[abs(p - r) for r in roots] for p in shared])
        rows, cols = linear_sum_assignment(cost)
        for i, j in zip(rows, cols):
            p, r = shared[i], roots[j]
            if cost[i, j] > MATCH_TOL * _match_scale(p, r):
                raise SharedPoleNotCancelled(
                    f"no root of the numerator difference within {MATCH_TOL} "
                    f"of shared unstable pole {p}", pole=p)
            matched.append(r)
            matched_idx.add(j)
    residual = tuple(r for j, r in enumerate(roots) if j not in matched_idx)
    nmp = classify(residual, sys_.domain, sys_.eps_class).nmp

    return DifferenceFactorization(
        poly=gamma, lead=float(gamma.coeffs[-1].real),
        matched_shared=tuple(matched), residual=residual, residual_nmp=nmp,
        degenerate=degenerate)


def _sum_re(roots) -> float:
    return float(sum(r.real for r in roots))


def _sum_log2_abs(roots) -> float:
    return float(sum(math.log2(abs(r)) for r in roots))


def _outcome_ct(value=None, sign=None, case=None, terms=None, condition=None):
    bounded = value is not None
    return IntegralOutcome(
        bounded=bounded, value=value, sign_if_unbounded=sign, case=case,
        terms=terms or {}, unit=UNIT_NATS,
        value_converted=(value / LN2 if bounded else None),
        unit_converted=UNIT_BITS, condition=condition)


def _outcome_dt(value=None, sign=None, case=None, terms=None, condition=None):
    bounded = value is not None
    return IntegralOutcome(
        bounded=bounded, value=value, sign_if_unbounded=sign, case=case,
        terms=terms or {}, unit=UNIT_BITS,
        value_converted=(value * LN2 if bounded else None),
        unit_converted=UNIT_NATS, condition=condition)


def ct_error_integral(sys_: FilteringSystem,
                      eps_gain: float = EPS_GAIN) -> IntegralOutcome:
    """Continuous-time error-sensitivity integral (nats).

    The value of ``(1/2pi) Int ln|P(jw)| dw`` over the whole axis, selected
    by the relative-degree gap of the numerator-difference operands:

    * gap >= 2: sum of real parts of unstable residual roots and shared
      unstable poles, minus unstable zeros of ``gx``;
    * gap == 1: the same minus ``K / (2 K_x)``;
    * gap == 0 with ``K = 2 K_x``: a balanced root sum over both operands;
    * gap == 0 otherwise: unbounded with the sign of
      ``ln |(K_x - K) / K_x|``.

    A zero filter path (``K = 0``) gives ``P = 1`` and the integral is
    exactly zero.
    """
    if sys_.domain is not TimeDomain.CONTINUOUS:
        raise ValueError("continuous-time systems only")
    kx = sys_.gx.gain
    k = sys_.fgy.gain
    if k == 0.0:
        return _outcome_ct(value=0.0, case=CaseTag.CT_ERROR_GAP_GE2,
                           terms={"residual_nmp": 0.0, "shared_unstable": 0.0,
                                  "nmp_zeros_gx": 0.0})
    fac = difference_factorization(sys_)
    if fac.is_zero:
        return _outcome_ct(
            sign=-math.inf, case=CaseTag.CT_ERROR_UNBOUNDED,
            condition="gx - f*gy is identically zero (P = 0)")

    z_bar = classify(sys_.gx.zeros, sys_.domain, sys_.eps_class).nmp
    s_r = _sum_re(fac.residual_nmp)
    s_p = _sum_re(fac.matched_shared)
    s_z = _sum_re(z_bar)
    gap = _degree_gap(sys_)

    if gap >= 2:
        terms = {"residual_nmp": s_r, "shared_unstable": s_p,
                 "nmp_zeros_gx": -s_z}
        return _outcome_ct(value=s_r + s_p - s_z,
                           case=CaseTag.CT_ERROR_GAP_GE2, terms=terms)
    if gap == 1:
        gain_term = -k / (2.0 * kx)
        terms = {"residual_nmp": s_r, "shared_unstable": s_p,
                 "nmp_zeros_gx": -s_z, "gain_term": gain_term}
        return _outcome_ct(value=s_r + s_p - s_z + gain_term,
                           case=CaseTag.CT_ERROR_GAP_1, terms=terms)
    if gap != 0:
        raise ValueError(
            "relative-degree gap below zero; the system does not satisfy a3")

    if abs(k - 2.0 * kx) <= eps_gain * abs(2.0 * kx):
        z_mp = classify(sys_.gx.zeros, sys_.domain, sys_.eps_class).mp
        st_gx = _stable_poles(sys_.gx, sys_.domain, sys_.eps_class)
        st_fgy = _stable_poles(sys_.fgy, sys_.domain, sys_.eps_class)
        terms = {
            "residual_nmp": s_r,
            "shared_unstable": s_p,
            "mp_zeros_gx": _sum_re(z_mp),
            "stable_poles_gx": -_sum_re(st_gx),
            "zeros_fgy": -_sum_re(sys_.fgy.zeros),
            "stable_poles_fgy": _sum_re(st_fgy),
        }
        return _outcome_ct(value=sum(terms.values()),
                           case=CaseTag.CT_ERROR_BALANCED, terms=terms)

    ratio = abs((kx - k) / kx)
    sign = math.inf if math.log(ratio) > 0 else -math.inf
    return _outcome_ct(
        sign=sign, case=CaseTag.CT_ERROR_UNBOUNDED,
        terms={"log_abs_gain_ratio": math.log(ratio)},
        condition="m_x+n = n_x+m and K != 2K_x")


def ct_estimate_integral(sys_: FilteringSystem,
                         eps_gain: float = EPS_GAIN) -> IntegralOutcome:
    """Continuous-time estimate-sensitivity integral with 1/w^2 weight (nats).

    ``(1/2pi) Int ln|M(jw)| / w^2 dw`` converges exactly when the
    zero-frequency gain balance ``|M(0)| = 1`` holds; its value is then a
    sum of reciprocal-root real parts.  Unbounded otherwise with the sign
    of ``ln|M(0)|``.

    Raises
    ------
    ZeroGain
        If ``f*gy`` is the zero function (``M = 0``).
    OriginRoot
        If a root of ``M`` sits at the origin, where ``M(0)`` is needed.
    """
    if sys_.domain is not TimeDomain.CONTINUOUS:
        raise ValueError("continuous-time systems only")
    if sys_.fgy.is_zero:
        raise ZeroGain("f*gy is identically zero, the weighted integral of "
                       "ln|M| is undefined")
    st_gx = _stable_poles(sys_.gx, sys_.domain, sys_.eps_class)
    st_fgy = _stable_poles(sys_.fgy, sys_.domain, sys_.eps_class)
    num = st_gx + list(sys_.fgy.zeros)
    den = list(sys_.gx.zeros) + st_fgy
    for r in num + den:
        if abs(r) <= 1e-12:
            raise OriginRoot(f"root {r} of M at the origin")

    log_m0 = (math.log(abs(sys_.fgy.gain / sys_.gx.gain))
              + sum(math.log(abs(r)) for r in num)
              - sum(math.log(abs(r)) for r in den))
    if abs(log_m0) > eps_gain:
        sign = math.inf if log_m0 > 0 else -math.inf
        return _outcome_ct(
            sign=sign, case=CaseTag.CT_ESTIMATE_UNBOUNDED,
            terms={"log_abs_m0": log_m0},
            condition="|M(0)| != 1 (zero-frequency gain balance violated)")

    terms = {
        "inv_stable_poles_fgy": 0.5 * _sum_re([1.0 / r for r in st_fgy]),
        "inv_stable_poles_gx": -0.5 * _sum_re([1.0 / r for r in st_gx]),
        "abs_inv_zeros_fgy": 0.5 * sum(abs((1.0 / r).real)
                                       for r in sys_.fgy.zeros),
        "abs_inv_zeros_gx": -0.5 * sum(abs((1.0 / r).real)
                                       for r in sys_.gx.zeros),
    }
    return _outcome_ct(value=sum(terms.values()),
                       case=CaseTag.CT_ESTIMATE_BOUNDED, terms=terms)


def dt_error_integral(sys_: FilteringSystem,
                      eps_gain: float = EPS_GAIN) -> IntegralOutcome:
    """Discrete-time error-sensitivity integral (bits).

    ``(1/2pi) Int log2|P(e^{jw})| dw`` over one period.  Always bounded:
    log moduli of shared unstable poles and unstable residual roots minus
    unstable zeros of ``gx``, plus ``log2|(K_x - K)/K_x|`` when the
    operand degrees coincide.

    Raises
    ------
    DegenerateGain
        If the degrees coincide and ``K = K_x`` within tolerance, where the
        equal-degree closed form loses its leading coefficient.  The
        exception carries the direct evaluation from the collapsed
        factorization as ``fallback_value`` when available.
    """
    if sys_.domain is not TimeDomain.DISCRETE:
        raise ValueError("discrete-time systems only")
    kx = sys_.gx.gain
    k = sys_.fgy.gain
    if k == 0.0:
        return _outcome_dt(value=0.0, case=CaseTag.DT_ERROR_GAP_GE1,
                           terms={"shared_unstable": 0.0, "nmp_zeros_gx": 0.0,
                                  "residual_nmp": 0.0})
    fac = difference_factorization(sys_)
    if fac.is_zero:
        raise DegenerateGain(
            "gx - f*gy is identically zero; log2|P| diverges to -inf",
            fallback_value=None)

    gap = _degree_gap(sys_)
    if gap == 0 and abs(kx - k) <= eps_gain * abs(kx):
        fallback = None
        try:
            fallback = direct_dt_integral(error_sensitivity(sys_)).value
        except Exception:
            pass
        raise DegenerateGain(
            "equal operand degrees with K = K_x: the leading coefficient of "
            "the numerator difference vanishes and the equal-degree closed "
            "form does not apply", fallback_value=fallback)

    z_bar = classify(sys_.gx.zeros, sys_.domain, sys_.eps_class).nmp
    terms = {
        "shared_unstable": _sum_log2_abs(fac.matched_shared),
        "nmp_zeros_gx": -_sum_log2_abs(z_bar),
        "residual_nmp": _sum_log2_abs(fac.residual_nmp),
    }
    if gap >= 1:
        return _outcome_dt(value=sum(terms.values()),
                           case=CaseTag.DT_ERROR_GAP_GE1, terms=terms)
    terms["gain_term"] = math.log2(abs((kx - k) / kx))
    return _outcome_dt(value=sum(terms.values()),
                       case=CaseTag.DT_ERROR_GAP_0, terms=terms)


def dt_estimate_integral(sys_: FilteringSystem) -> IntegralOutcome:
    """Discrete-time estimate-sensitivity integral (bits).

    ``(1/2pi) Int log2|M(e^{jw})| dw``: unstable zeros of ``f*gy`` minus
    unstable zeros of ``gx`` plus ``log2|K/K_x|``.  Always bounded.

    Raises
    ------
    ZeroGain
        If ``f*gy`` is the zero function.
    """
    if sys_.domain is not TimeDomain.DISCRETE:
        raise ValueError("discrete-time systems only")
    if sys_.fgy.is_zero:
        raise ZeroGain("f*gy is identically zero, log2|M| is unbounded below")
    z_bar_fgy = classify(sys_.fgy.zeros, sys_.domain, sys_.eps_class).nmp
    z_bar_gx = classify(sys_.gx.zeros, sys_.domain, sys_.eps_class).nmp
    terms = {
        "nmp_zeros_fgy": _sum_log2_abs(z_bar_fgy),
        "nmp_zeros_gx": -_sum_log2_abs(z_bar_gx),
        "gain_term": math.log2(abs(sys_.fgy.gain / sys_.gx.gain)),
    }
    return _outcome_dt(value=sum(terms.values()), case=CaseTag.DT_ESTIMATE,
                       terms=terms)


def direct_ct_integral(tf: RationalTF, weighted: bool = False,
                       eps_class: float = EPS_CLASS,
                       eps_gain: float = EPS_GAIN) -> IntegralOutcome:
    """Evaluate the continuous-time log integral directly from a transfer
    function's roots (nats).

    Without weight: bounded exactly when the function is biproper with
    unit-modulus gain; the value is half the difference between the summed
    absolute real parts of zeros and poles.  With the ``1/w^2`` weight:
    bounded exactly when ``|tf(0)| = 1``; the roots enter through their
    reciprocals.

    Raises
    ------
    BoundaryRoot
        If a zero or pole lies within ``eps_class`` of the imaginary axis.
    OriginRoot
        For the weighted form, if a root sits at the origin.
    """
    if tf.domain is not TimeDomain.CONTINUOUS:
        raise ValueError("continuous-time transfer functions only")
    if tf.is_zero:
        return _outcome_ct(sign=-math.inf,
                           condition="transfer function identically zero")
    roots = list(tf.zeros) + list(tf.poles)
    if weighted:
        for r in roots:
            if abs(r) <= 1e-12:
                raise OriginRoot(f"root {r} at the origin")
    cls_z = classify(tf.zeros, tf.domain, eps_class)
    cls_p = classify(tf.poles, tf.domain, eps_class)
    if cls_z.boundary or cls_p.boundary:
        bad = list(cls_z.boundary) + list(cls_p.boundary)
        raise BoundaryRoot(f"roots on the imaginary axis: {bad}", roots=bad)

    if not weighted:
        nd = len(tf.poles) - len(tf.zeros)
        log_gain = math.log(abs(tf.gain))
        if nd == 0 and abs(log_gain) <= eps_gain:
            value = 0.5 * (sum(abs(z.real) for z in tf.zeros)
                           - sum(abs(p.real) for p in tf.poles))
            return _outcome_ct(value=value)
        if nd > 0:
            return _outcome_ct(
                sign=-math.inf,
                condition="strictly proper: |tf| -> 0 at infinity")
        sign = math.inf if log_gain > 0 else -math.inf
        return _outcome_ct(sign=sign,
                           condition="biproper with |gain at infinity| != 1")

    log_c = (math.log(abs(tf.gain))
             + sum(math.log(abs(z)) for z in tf.zeros)
             - sum(math.log(abs(p)) for p in tf.poles))
    if abs(log_c) > eps_gain:
        sign = math.inf if log_c > 0 else -math.inf
        return _outcome_ct(sign=sign, condition="|tf(0)| != 1")
    value = 0.5 * (sum(abs((1.0 / z).real) for z in tf.zeros)
                   - sum(abs((1.0 / p).real) for p in tf.poles))
    return _outcome_ct(value=value)


def direct_dt_integral(tf: RationalTF,
                       eps_class: float = EPS_CLASS) -> IntegralOutcome:
    """Evaluate the discrete-time log integral directly from a transfer
    function's roots (bits).

    ``(1/2pi) Int log2|tf(e^{jw})| dw`` equals ``log2|gain|`` plus the log
    moduli of zeros outside the unit circle minus those of poles outside.
    Always bounded.

    Raises
    ------
    ZeroGain
        If the function is identically zero.
    BoundaryRoot
        If a root lies within ``eps_class`` of the unit circle.
    """
    if tf.domain is not TimeDomain.DISCRETE:
        raise ValueError("discrete-time transfer functions only")
    if tf.is_zero:
        raise ZeroGain("log2 of the zero function is unbounded below")
    cls_z = classify(tf.zeros, tf.domain, eps_class)
    cls_p = classify(tf.poles, tf.domain, eps_class)
    if cls_z.boundary or cls_p.boundary:
        bad = list(cls_z.boundary) + list(cls_p.boundary)
        raise BoundaryRoot(f"roots on the unit circle: {bad}", roots=bad)
    value = (math.log2(abs(tf.gain)) + _sum_log2_abs(cls_z.nmp)
             - _sum_log2_abs(cls_p.nmp))
    return _outcome_dt(value=value)


@dataclass(frozen=True)
class ResidueCrosscheck:
    """Independent integral values from boundary residue identities.

    Each side is populated only when its normalization holds
    (``|P(j inf)| = 1`` for ``p_value``, ``|M(0)| = 1`` for ``m_value``);
    otherwise the corresponding reason explains the skip.
    """

    p_value: float | None
    m_value: float | None
    p_reason: str | None = None
    m_reason: str | None = None
    notes: tuple = ()


def residue_crosscheck(sys_: FilteringSystem,
                       eps_cancel: float = EPS_CANCEL,
                       eps_gain: float = EPS_GAIN) -> ResidueCrosscheck:
    """Evaluate both continuous-time integrals through residue identities.

    The error-sensitivity integral is written as a limit term
    ``Re(sum poles(P) - sum zeros(P)) / 2`` plus the real parts of the
    unstable zeros of ``P`` minus those unstable zeros of ``gx`` at which
    ``f*gy`` does not vanish.  The estimate-sensitivity integral uses the
    logarithmic derivative of ``M`` at zero and reciprocal unstable zeros.
    Unstable ``gx`` zeros coinciding with zeros of ``f*gy`` cancel inside
    ``P`` and are excluded from both sums; exclusions are reported in
    ``notes``.

    Raises
    ------
    PreconditionUnmet
        If neither normalization holds, so no side can be evaluated.
    """
    if sys_.domain is not TimeDomain.CONTINUOUS:
        raise ValueError("continuous-time systems only")

    notes = []
    z_bar_gx = classify(sys_.gx.zeros, sys_.domain, sys_.eps_class).nmp
    z_x = []
    for z in z_bar_gx:
        near = [w for w in sys_.fgy.zeros
                if abs(z - w) <= eps_cancel * _match_scale(z, w)]
        if near:
            notes.append(
                f"unstable gx zero {z} coincides with a zero of f*gy and "
                "cancels inside P; excluded from the residue sums")
        else:
            z_x.append(z)

    p_value = p_reason = None
    p_tf = error_sensitivity(sys_)
    if p_tf.is_zero:
        p_reason = "error sensitivity is identically zero"
    elif len(p_tf.zeros) != len(p_tf.poles):
        p_reason = "error sensitivity is strictly proper (|P(j inf)| = 0)"
    elif abs(math.log(abs(p_tf.gain))) > eps_gain:
        p_reason = "|P(j inf)| != 1"
    else:
        limit = 0.5 * (sum(p.real for p in p_tf.poles)
                       - sum(z.real for z in p_tf.zeros))
        z_red, _ = _cancel_lists(p_tf.zeros, p_tf.poles, eps_cancel)
        z_p = classify(z_red, sys_.domain, sys_.eps_class).nmp
        p_value = limit + _sum_re(z_p) - _sum_re(z_x)

    m_value = m_reason = None
    m_tf = estimate_sensitivity(sys_)
    if m_tf.is_zero:
        m_reason = "estimate sensitivity is identically zero"
    elif any(abs(r) <= 1e-12 for r in list(m_tf.zeros) + list(m_tf.poles)):
        m_reason = "root of M at the origin; M(0) undefined or zero"
    else:
        log_m0 = (math.log(abs(m_tf.gain))
                  + sum(math.log(abs(z)) for z in m_tf.zeros)
                  - sum(math.log(abs(p)) for p in m_tf.poles))
        if abs(log_m0) > eps_gain:
            m_reason = "|M(0)| != 1"
        else:
            limit = 0.5 * (sum((1.0 / p).real for p in m_tf.poles)
                           - sum((1.0 / z).real for z in m_tf.zeros))
            n_red, _ = _cancel_lists(m_tf.zeros, m_tf.poles, eps_cancel)
            z_m = classify(n_red, sys_.domain, sys_.eps_class).nmp
            m_value = (limit + _sum_re([1.0 / d for d in z_m])
                       - _sum_re([1.0 / z for z in z_x]))

    if p_value is None and m_value is None:
        raise PreconditionUnmet(
            f"neither residue identity applies: {p_reason}; {m_reason}")
    return ResidueCrosscheck(p_value=p_value, m_value=m_value,
                             p_reason=p_reason, m_reason=m_reason,
                             notes=tuple(notes))
