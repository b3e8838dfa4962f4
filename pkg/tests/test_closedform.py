"""Closed-form trade-off integrals, direct evaluation, residue identity.

Expected constants below were frozen from an independent oracle built on
numpy.polynomial root expansion and scipy.integrate.quad before this
package existed; closed forms must reproduce them to near machine
precision.
"""

import math

import numpy as np
import pytest

from filtint.closedform import (CaseTag, ct_error_integral,
                                ct_estimate_integral, difference_factorization,
                                direct_ct_integral, direct_dt_integral,
                                dt_error_integral, dt_estimate_integral,
                                residue_crosscheck)
from filtint.errors import (DegenerateGain, PreconditionUnmet, ZeroGain)
from filtint.quad import ct_log_integral, dt_log_integral
from filtint.rational import RationalTF, TimeDomain
from filtint.suite import DOCUMENTS, system_from_document
from filtint.sysmodel import error_sensitivity, estimate_sensitivity, validate

CT = TimeDomain.CONTINUOUS
DT = TimeDomain.DISCRETE

# independently computed reference values (nats for ct, bits for dt)
CT_CASE1 = 0.010064883544863339
CT_CASE2 = -0.5014970059880239
CT_CASE3 = 0.39906749298946753
CT_M_BALANCED = -86.0 / 3.0
DT_CASE1 = 1.0511734918877822
DT_CASE2 = -1.125530882083859
DT_M = 0.5443205162238102


def _sys(name):
    return system_from_document(DOCUMENTS[name])


# ---------------------------------------------------------------------------
# continuous-time error integral


def test_ct_error_gap_ge2():
    out = ct_error_integral(_sys("ct_p_case1"))
    assert out.bounded
    assert out.case is CaseTag.CT_ERROR_GAP_GE2
    assert abs(out.value - CT_CASE1) < 1e-12
    assert out.unit == "nats"
    assert abs(out.value_converted - CT_CASE1 / math.log(2)) < 1e-12


def test_ct_error_gap_1():
    out = ct_error_integral(_sys("ct_p_case2"))
    assert out.case is CaseTag.CT_ERROR_GAP_1
    assert abs(out.value - CT_CASE2) < 1e-12
    # the gain term is -K/(2 K_x)
    k = 1.34 * 1.25
    assert abs(out.terms["gain_term"] + k / (2.0 * 1.67)) < 1e-12


def test_ct_error_balanced():
    out = ct_error_integral(_sys("ct_p_case3"))
    assert out.case is CaseTag.CT_ERROR_BALANCED
    assert abs(out.value - CT_CASE3) < 1e-12


def test_ct_error_unbounded_positive():
    out = ct_error_integral(_sys("ct_p_case4_unbounded"))
    assert not out.bounded
    assert out.case is CaseTag.CT_ERROR_UNBOUNDED
    assert out.sign_if_unbounded == math.inf
    assert out.value is None
    assert out.condition


def test_ct_error_value_is_sum_of_terms():
    for name in ("ct_p_case1", "ct_p_case2", "ct_p_case3"):
        out = ct_error_integral(_sys(name))
        assert abs(out.value - sum(out.terms.values())) < 1e-12, name


def test_ct_error_zero_filter_is_exactly_zero():
    gx = RationalTF(1.5, (-0.5,), (-1.0,), CT)
    gy = RationalTF(2.0, (), (-2.0,), CT)
    f = RationalTF(0.0, (), (), CT)
    sys_, _ = validate(gx, gy, f)
    out = ct_error_integral(sys_)
    assert out.bounded and out.value == 0.0


def test_ct_error_perfect_tracking_diverges_down():
    gx = RationalTF(1.5, (-0.5,), (-1.0,), CT)
    gy = RationalTF(2.0, (-0.3,), (-2.0,), CT)
    f = RationalTF(0.75, (-0.5, -2.0), (-1.0, -0.3), CT)
    sys_, _ = validate(gx, gy, f)
    out = ct_error_integral(sys_)
    assert not out.bounded
    assert out.sign_if_unbounded == -math.inf


def test_ct_error_shared_pole_term_active():
    # shared unstable pole at +0.8; its waterbed contribution must appear
    # in the closed form and survive both crosscheck routes
    gx = RationalTF(1.0, (-0.5,), (0.8, -1.0), CT)
    gy = RationalTF(1.0, (), (0.8, -2.0), CT)
    kf = (1.3 * 2.8 * 2.3 * 3.8) / (1.4 * 1.8)
    f = RationalTF(kf, (-0.6,), (-1.5, -3.0), CT)
    sys_, report = validate(gx, gy, f)
    assert report.all_ok
    out = ct_error_integral(sys_)
    assert out.bounded
    assert abs(out.terms["shared_unstable"] - 0.8) < 1e-9
    direct = direct_ct_integral(error_sensitivity(sys_))
    assert abs(out.value - direct.value) < 1e-9
    quad = ct_log_integral(error_sensitivity(sys_))
    assert abs(out.value - quad.value) < 1e-4


# ---------------------------------------------------------------------------
# continuous-time estimate integral


def test_ct_estimate_balanced_value():
    out = ct_estimate_integral(_sys("ct_m_balanced"))
    assert out.bounded
    assert out.case is CaseTag.CT_ESTIMATE_BOUNDED
    assert abs(out.value - CT_M_BALANCED) < 1e-9


def test_ct_estimate_unbalanced_diverges():
    out = ct_estimate_integral(_sys("ct_m_unbounded"))
    assert not out.bounded
    assert out.case is CaseTag.CT_ESTIMATE_UNBOUNDED
    assert out.sign_if_unbounded == -math.inf


def test_ct_estimate_zero_filter_raises():
    gx = RationalTF(1.5, (-0.5,), (-1.0,), CT)
    gy = RationalTF(2.0, (), (-2.0,), CT)
    f = RationalTF(0.0, (), (), CT)
    sys_, _ = validate(gx, gy, f)
    with pytest.raises(ZeroGain):
        ct_estimate_integral(sys_)


# ---------------------------------------------------------------------------
# discrete time


def test_dt_error_gap_ge1():
    out = dt_error_integral(_sys("dt_p_case1"))
    assert out.case is CaseTag.DT_ERROR_GAP_GE1
    assert abs(out.value - DT_CASE1) < 1e-12
    assert out.unit == "bits"
    assert abs(out.value_converted - DT_CASE1 * math.log(2)) < 1e-12


def test_dt_error_gap_0():
    out = dt_error_integral(_sys("dt_p_case2"))
    assert out.case is CaseTag.DT_ERROR_GAP_0
    assert abs(out.value - DT_CASE2) < 1e-12
    # K = 1.75 * 1.25, K_x = 1.5: the equal-degree gain correction
    gain_term = math.log2(abs((1.5 - 1.75 * 1.25) / 1.5))
    assert abs(out.terms["gain_term"] - gain_term) < 1e-12


def test_dt_estimate_value():
    out = dt_estimate_integral(_sys("dt_m"))
    assert out.case is CaseTag.DT_ESTIMATE
    assert abs(out.value - DT_M) < 1e-12


def test_dt_error_zero_filter_is_zero():
    gx = RationalTF(1.5, (0.05,), (0.1,), DT)
    gy = RationalTF(1.0, (), (0.3,), DT)
    f = RationalTF(0.0, (), (), DT)
    sys_, _ = validate(gx, gy, f)
    assert dt_error_integral(sys_).value == 0.0
    with pytest.raises(ZeroGain):
        dt_estimate_integral(sys_)


def test_dt_degenerate_gain_carries_direct_fallback():
    # equal degrees with K == K_x: the difference polynomial loses its
    # leading coefficient and the case split does not apply; the error
    # raised carries the direct evaluation as a fallback
    gx = RationalTF(1.5, (0.05,), (0.1,), DT)
    gy = RationalTF(1.0, (0.075,), (0.3,), DT)
    f = RationalTF(1.5, (0.6,), (0.5,), DT)
    sys_, report = validate(gx, gy, f)
    assert report.all_ok
    with pytest.raises(DegenerateGain) as exc_info:
        dt_error_integral(sys_)
    fallback = exc_info.value.fallback_value
    assert fallback is not None and math.isfinite(fallback)
    direct = direct_dt_integral(error_sensitivity(sys_))
    assert abs(fallback - direct.value) < 1e-12
    quad = dt_log_integral(error_sensitivity(sys_))
    assert abs(fallback - quad.value) < 1e-4


def test_dt_estimate_gain_scaling_shifts_by_log2():
    sys_ = _sys("dt_m")
    base = dt_estimate_integral(sys_).value
    for c in (2.0, 0.25, -3.0):
        f2 = RationalTF(sys_.f.gain * c, sys_.f.zeros, sys_.f.poles, DT)
        sys2, _ = validate(sys_.gx, sys_.gy, f2)
        shifted = dt_estimate_integral(sys2).value
        assert abs((shifted - base) - math.log2(abs(c))) < 1e-12


# ---------------------------------------------------------------------------
# difference factorization


def test_difference_factorization_dt_case2_lead():
    fac = difference_factorization(_sys("dt_p_case2"))
    assert not fac.degenerate and not fac.is_zero
    assert abs(fac.lead - (1.5 - 1.75 * 1.25)) < 1e-12
    assert fac.poly.degree == 5
    assert fac.matched_shared == ()


def test_difference_factorization_is_cached():
    sys_ = _sys("ct_p_case1")
    assert difference_factorization(sys_) is difference_factorization(sys_)


def test_factorization_residual_product_dt_case1():
    # product of the residual root moduli, checked against the value the
    # closed form needs: log2 of it is the nonminimum-phase contribution
    fac = difference_factorization(_sys("dt_p_case1"))
    nmp = [r for r in fac.residual_nmp]
    prod = float(np.prod([abs(r) for r in nmp]))
    assert abs(prod - 2.0722147071722703) < 1e-10


# ---------------------------------------------------------------------------
# direct evaluation


def test_direct_ct_matches_closed_forms():
    for name, expected in (("ct_p_case1", CT_CASE1),
                           ("ct_p_case2", CT_CASE2),
                           ("ct_p_case3", CT_CASE3)):
        p = error_sensitivity(_sys(name))
        out = direct_ct_integral(p)
        assert out.bounded, name
        assert abs(out.value - expected) < 1e-9, name


def test_direct_ct_allpass_is_zero():
    tf = RationalTF(1.0, (1.0,), (-1.0,), CT)
    out = direct_ct_integral(tf)
    assert out.bounded and abs(out.value) < 1e-15


def test_direct_ct_strictly_proper_diverges_down():
    tf = RationalTF(1.0, (), (-1.0,), CT)
    out = direct_ct_integral(tf)
    assert not out.bounded and out.sign_if_unbounded == -math.inf


def test_direct_ct_weighted_balanced():
    m = estimate_sensitivity(_sys("ct_m_balanced"))
    out = direct_ct_integral(m, weighted=True)
    assert out.bounded
    assert abs(out.value - CT_M_BALANCED) < 1e-9


def test_direct_dt_one_bit():
    # single zero at z = 2 behind a pole at the origin: exactly one bit
    tf = RationalTF(1.0, (2.0,), (0.0,), DT)
    out = direct_dt_integral(tf)
    assert out.bounded and abs(out.value - 1.0) < 1e-15


def test_direct_dt_matches_closed_forms():
    for name, expected in (("dt_p_case1", DT_CASE1), ("dt_p_case2", DT_CASE2)):
        out = direct_dt_integral(error_sensitivity(_sys(name)))
        assert abs(out.value - expected) < 1e-9, name


# ---------------------------------------------------------------------------
# residue identity


def test_residue_crosscheck_matches_closed_p():
    for name, expected in (("ct_p_case1", CT_CASE1),
                           ("ct_p_case2", CT_CASE2),
                           ("ct_p_case3", CT_CASE3)):
        cc = residue_crosscheck(_sys(name))
        assert cc.p_value is not None, name
        assert abs(cc.p_value - expected) < 1e-9, name


def test_residue_crosscheck_matches_closed_m():
    cc = residue_crosscheck(_sys("ct_m_balanced"))
    assert cc.p_value is None          # |P| does not settle to 1 at infinity
    assert abs(cc.m_value - CT_M_BALANCED) < 1e-9


def test_residue_crosscheck_neither_side():
    with pytest.raises(PreconditionUnmet):
        residue_crosscheck(_sys("ct_m_unbounded"))


def test_residue_crosscheck_rejects_discrete():
    with pytest.raises(ValueError):
        residue_crosscheck(_sys("dt_p_case1"))


# ---------------------------------------------------------------------------
# knife edge around the balanced gain


def test_balanced_gain_knife_edge():
    sys0 = _sys("ct_p_case3")
    base = ct_error_integral(sys0)
    for delta, sign in ((1e-6, math.inf), (-1e-6, -math.inf)):
        f2 = RationalTF(sys0.f.gain * (1.0 + delta), sys0.f.zeros,
                        sys0.f.poles, CT)
        sys2, _ = validate(sys0.gx, sys0.gy, f2)
        out = ct_error_integral(sys2)
        assert not out.bounded
        assert out.sign_if_unbounded == sign
    f3 = RationalTF(sys0.f.gain, sys0.f.zeros, sys0.f.poles, CT)
    sys3, _ = validate(sys0.gx, sys0.gy, f3)
    restored = ct_error_integral(sys3)
    assert restored.bounded
    assert restored.value == base.value
