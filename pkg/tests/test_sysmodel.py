"""Admissibility validation and sensitivity construction."""

import numpy as np
import pytest

import filtint.sysmodel as sysmodel
from filtint.errors import BoundaryRoot, ZeroGx
from filtint.rational import RationalTF, TimeDomain, evaluate
from filtint.suite import DOCUMENTS, system_from_document
from filtint.sysmodel import (complementarity_check, error_sensitivity,
                              estimate_sensitivity, validate)

CT = TimeDomain.CONTINUOUS
DT = TimeDomain.DISCRETE


def test_all_reference_documents_validate():
    for name in DOCUMENTS:
        sys_ = system_from_document(DOCUMENTS[name])
        assert sys_.fgy is not None


def test_gy_only_unstable_pole_in_case1():
    # the unstable measurement pole at +0.03 is gy's own; the filter's
    # zero there cancels it, so f*gy keeps only stable poles
    sys_ = system_from_document(DOCUMENTS["ct_p_case1"])
    assert sys_.shared_unstable == ()
    assert [p.real for p in sys_.gy_only_unstable] == [0.03]


def _shared_pole_system():
    # gx and gy share the unstable pole at +0.8.  Stability of the error
    # path gx - f*gy pins the filter gain: the difference numerator must
    # vanish at the shared pole.
    gx = RationalTF(1.0, (-0.5,), (0.8, -1.0), CT)
    gy = RationalTF(1.0, (), (0.8, -2.0), CT)
    kf = (1.3 * 2.8 * 2.3 * 3.8) / (1.4 * 1.8)
    f = RationalTF(kf, (-0.6,), (-1.5, -3.0), CT)
    return validate(gx, gy, f)


def test_shared_unstable_pole_detected():
    sys_, report = _shared_pole_system()
    assert report.all_ok
    assert [p.real for p in sys_.shared_unstable] == [0.8]
    assert sys_.gy_only_unstable == ()


def test_shared_pole_without_error_path_cancellation_fails_a4():
    # same pole structure, but an arbitrary gain leaves the error path
    # unstable: the difference numerator does not vanish at +0.8
    gx = RationalTF(1.0, (-0.5,), (0.8, -1.0), CT)
    gy = RationalTF(1.0, (), (0.8, -2.0), CT)
    f = RationalTF(1.0, (-0.6,), (-1.5, -3.0), CT)
    _, report = validate(gx, gy, f)
    assert not report.a4_ok
    assert any("shared unstable pole" in d for d in report.diagnostics)


def test_shared_pole_is_a_zero_of_the_error_sensitivity():
    sys_, _ = _shared_pole_system()
    p = error_sensitivity(sys_)
    assert min(abs(z - 0.8) for z in p.zeros) < 1e-9
    # and the function itself vanishes there: P(0.8) = 0 read along the
    # real axis through the numerator roots
    assert abs(np.prod([0.8 - z for z in p.zeros])) < 1e-9


def test_gy_only_unstable_pole_detected():
    sys_ = system_from_document(DOCUMENTS["ct_m_balanced"])
    assert sys_.shared_unstable == ()
    assert [p.real for p in sys_.gy_only_unstable] == [0.05]


def test_zero_gx_rejected():
    gx = RationalTF(0.0, (), (), CT)
    gy = RationalTF(1.0, (), (-1.0,), CT)
    f = RationalTF(1.0, (), (-1.0,), CT)
    with pytest.raises(ZeroGx):
        validate(gx, gy, f)


def test_domain_mismatch_rejected():
    gx = RationalTF(1.0, (), (-1.0,), CT)
    gy = RationalTF(1.0, (), (0.5,), DT)
    f = RationalTF(1.0, (), (0.5,), DT)
    with pytest.raises(ValueError):
        validate(gx, gy, f)


def test_unstable_filter_fails_a2():
    gx = RationalTF(1.0, (-0.5,), (-1.0,), CT)
    gy = RationalTF(1.0, (), (-2.0,), CT)
    f = RationalTF(1.0, (), (0.7,), CT)
    _, report = validate(gx, gy, f)
    assert not report.a2_ok
    assert not report.all_ok
    assert any("unstable" in d for d in report.diagnostics)


def test_uncancelled_measurement_pole_fails_a4():
    gx = RationalTF(1.0, (-0.5,), (-1.0,), CT)
    gy = RationalTF(1.0, (), (0.9, -2.0), CT)  # own unstable pole at +0.9
    f = RationalTF(1.0, (), (-1.5,), CT)       # no zero there
    _, report = validate(gx, gy, f)
    assert not report.a4_ok


def test_filter_zero_cancelling_shared_pole_fails_a4():
    # gx and gy share the unstable pole, but the filter kills it in f*gy,
    # so the filtered path no longer carries the signal model's instability
    gx = RationalTF(1.0, (-0.5,), (0.8,), CT)
    gy = RationalTF(1.0, (), (0.8, -2.0), CT)
    f = RationalTF(1.0, (0.8,), (-1.5, -1.0), CT)
    _, report = validate(gx, gy, f)
    assert not report.a4_ok


def test_relative_degree_deficit_fails_a3():
    gx = RationalTF(1.0, (-0.5,), (-1.0, -2.0), CT)   # relative degree 1
    gy = RationalTF(1.0, (-0.3,), (-2.0,), CT)        # relative degree 0
    f = RationalTF(1.0, (-0.4,), (-1.5,), CT)         # relative degree 0
    _, report = validate(gx, gy, f)
    assert not report.a3_ok


def test_boundary_pole_raises_with_report():
    gx = RationalTF(1.0, (-0.5,), (0.0,), CT)
    gy = RationalTF(1.0, (), (-2.0,), CT)
    f = RationalTF(1.0, (), (-1.0,), CT)
    with pytest.raises(BoundaryRoot) as exc_info:
        validate(gx, gy, f)
    assert exc_info.value.roots
    assert getattr(exc_info.value, "report", None) is not None


def test_dt_boundary_pole_on_unit_circle():
    gx = RationalTF(1.0, (0.1,), (1.0,), DT)
    gy = RationalTF(1.0, (), (0.5,), DT)
    f = RationalTF(1.0, (), (0.5,), DT)
    with pytest.raises(BoundaryRoot):
        validate(gx, gy, f)


def test_zero_filter_gives_unit_error_sensitivity():
    gx = RationalTF(1.5, (-0.5,), (-1.0,), CT)
    gy = RationalTF(2.0, (), (-2.0,), CT)
    f = RationalTF(0.0, (), (), CT)
    sys_, report = validate(gx, gy, f)
    assert report.all_ok
    p = error_sensitivity(sys_)
    for w in (0.0, 0.5, 3.0, 40.0):
        assert abs(evaluate(p, w) - 1.0) < 1e-12
    assert estimate_sensitivity(sys_).is_zero


def test_perfect_tracking_gives_unit_estimate_sensitivity():
    # f * gy reduces exactly to gx, so M = 1 and P = 0
    gx = RationalTF(1.5, (-0.5,), (-1.0,), CT)
    gy = RationalTF(2.0, (-0.3,), (-2.0,), CT)
    f = RationalTF(0.75, (-0.5, -2.0), (-1.0, -0.3), CT)
    sys_, report = validate(gx, gy, f)
    assert report.all_ok
    m = estimate_sensitivity(sys_)
    for w in (0.0, 1.0, 10.0):
        assert abs(evaluate(m, w) - 1.0) < 1e-12
    assert error_sensitivity(sys_).is_zero


def test_error_sensitivity_structure_case2():
    # degree-6 over degree-6 with unit leading gain when degrees differ
    sys_ = system_from_document(DOCUMENTS["ct_p_case2"])
    p = error_sensitivity(sys_)
    assert len(p.zeros) == 6
    assert len(p.poles) == 6
    assert abs(p.gain - 1.0) < 1e-12


def test_complementarity_on_reference_documents():
    for name in DOCUMENTS:
        sys_ = system_from_document(DOCUMENTS[name])
        assert complementarity_check(sys_) < 1e-9, name


def test_complementarity_detects_corruption(monkeypatch):
    sys_ = system_from_document(DOCUMENTS["ct_p_case1"])
    true_p = error_sensitivity(sys_)
    bad = RationalTF(true_p.gain * 1.01, true_p.zeros, true_p.poles,
                     true_p.domain)
    monkeypatch.setattr(sysmodel, "error_sensitivity", lambda s: bad)
    assert complementarity_check(sys_) > 1e-3


def test_complementarity_seed_reproducible():
    sys_ = system_from_document(DOCUMENTS["dt_p_case1"])
    a = complementarity_check(sys_, seed=7)
    b = complementarity_check(sys_, seed=7)
    assert a == b
