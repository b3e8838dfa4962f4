"""Acceptance gate: the nine release criteria, one verdict line each.

Every test records a single ``acceptance N ... PASS/FAIL`` line; the
conftest echoes the collected lines after the run summary so the gate is
legible in any test log.  Each test also asserts its own condition so
pytest records the result.
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from filtint.closedform import (CaseTag, ct_error_integral,
                                ct_estimate_integral, direct_ct_integral,
                                direct_dt_integral, dt_error_integral,
                                dt_estimate_integral, residue_crosscheck)
from filtint.errors import PreconditionUnmet
from filtint.poly import find_roots, from_roots
from filtint.quad import (ct_log_integral, ct_weighted_log_integral,
                          divergence_probe, dt_log_integral)
from filtint.rational import RationalTF, TimeDomain
from filtint.suite import DOCUMENTS, system_from_document
from filtint.sysmodel import (complementarity_check, error_sensitivity,
                              estimate_sensitivity, validate)

from gensys import DT_TARGETS, SystemSampler, population

POPULATION_SEED = 20260822
POPULATION_SIZE = 210

VERDICT_LINES = []


def _verdict(number, label, ok, detail=""):
    line = f"acceptance {number} {label}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    VERDICT_LINES.append(line)
    print(line)
    assert ok, line


def _system(name):
    return system_from_document(DOCUMENTS[name])


@pytest.fixture(scope="module")
def generated_population():
    return population(POPULATION_SEED, POPULATION_SIZE)


# ---------------------------------------------------------------------------
# 1-3: reference values of the nine analytically solved scenarios


def test_criterion_1_ct_error_reference_values():
    expected = {"ct_p_case1": 0.0101, "ct_p_case2": -0.5015,
                "ct_p_case3": 0.3991}
    ok = True
    worst = 0.0
    for name, target in expected.items():
        start = time.perf_counter()
        out = ct_error_integral(_system(name))
        elapsed = time.perf_counter() - start
        ok = ok and out.bounded and abs(out.value - target) <= 5e-4
        ok = ok and elapsed < 1.0
        worst = max(worst, abs(out.value - target))
    start = time.perf_counter()
    out = ct_error_integral(_system("ct_p_case4_unbounded"))
    elapsed = time.perf_counter() - start
    ok = ok and not out.bounded and out.sign_if_unbounded == math.inf
    ok = ok and elapsed < 1.0
    _verdict(1, "continuous error-integral reference values", ok,
             f"worst deviation {worst:.2e}")


def test_criterion_2_ct_estimate_reference_values():
    start = time.perf_counter()
    balanced = ct_estimate_integral(_system("ct_m_balanced"))
    unbounded = ct_estimate_integral(_system("ct_m_unbounded"))
    elapsed = time.perf_counter() - start
    exact = abs(balanced.value - (-86.0 / 3.0))
    ok = balanced.bounded and exact <= 1e-9
    ok = ok and abs(balanced.value - (-28.6667)) <= 1e-3
    ok = ok and not unbounded.bounded
    ok = ok and unbounded.sign_if_unbounded == -math.inf
    ok = ok and elapsed < 1.0
    _verdict(2, "continuous estimate-integral reference values", ok,
             f"closed-form deviation from -86/3 is {exact:.2e}")


def test_criterion_3_dt_reference_values():
    expected = (("dt_p_case1", dt_error_integral, 1.0512),
                ("dt_p_case2", dt_error_integral, -1.1255),
                ("dt_m", dt_estimate_integral, 0.5443))
    ok = True
    worst = 0.0
    for name, evaluate, target in expected:
        start = time.perf_counter()
        out = evaluate(_system(name))
        elapsed = time.perf_counter() - start
        ok = ok and out.bounded and abs(out.value - target) <= 5e-4
        ok = ok and elapsed < 1.0
        worst = max(worst, abs(out.value - target))
    _verdict(3, "discrete-time reference values", ok,
             f"worst deviation {worst:.2e}")


# ---------------------------------------------------------------------------
# 4: numerical route agrees on every reference scenario


def test_criterion_4_quadrature_agreement_on_reference_suite():
    bounded_cases = (
        ("ct_p_case1", "p", ct_error_integral),
        ("ct_p_case2", "p", ct_error_integral),
        ("ct_p_case3", "p", ct_error_integral),
        ("ct_m_balanced", "m", ct_estimate_integral),
        ("dt_p_case1", "p", dt_error_integral),
        ("dt_p_case2", "p", dt_error_integral),
        ("dt_m", "m", dt_estimate_integral),
    )
    ok = True
    worst = 0.0
    slowest = 0.0
    for name, kind, evaluate in bounded_cases:
        sys_ = _system(name)
        closed = evaluate(sys_)
        tf = (error_sensitivity(sys_) if kind == "p"
              else estimate_sensitivity(sys_))
        start = time.perf_counter()
        if sys_.domain is TimeDomain.DISCRETE:
            res = dt_log_integral(tf, tol=1e-6)
        elif kind == "m":
            res = ct_weighted_log_integral(tf, tol=1e-6)
        else:
            res = ct_log_integral(tf, tol=1e-6)
        elapsed = time.perf_counter() - start
        gap = abs(res.value - closed.value)
        allowed = max(1e-3, 1e-3 * abs(closed.value))
        ok = ok and gap <= allowed and elapsed < 10.0
        ok = ok and res.n_evaluations <= 1_000_000
        worst = max(worst, gap)
        slowest = max(slowest, elapsed)
    for name, kind, sign in (("ct_p_case4_unbounded", "p", 1.0),
                             ("ct_m_unbounded", "m", -1.0)):
        sys_ = _system(name)
        tf = (error_sensitivity(sys_) if kind == "p"
              else estimate_sensitivity(sys_))
        start = time.perf_counter()
        res = divergence_probe(tf, weighted=(kind == "m"), tol=1e-6)
        elapsed = time.perf_counter() - start
        ok = ok and res.diverged and res.divergence_sign * sign > 0
        ok = ok and elapsed < 10.0
    _verdict(4, "quadrature agreement on the reference suite", ok,
             f"worst gap {worst:.2e}, slowest run {slowest:.2f}s")


# ---------------------------------------------------------------------------
# 5: three-route consistency over a generated population


def _closed_pair(sys_):
    ct = sys_.domain is TimeDomain.CONTINUOUS
    p = ct_error_integral(sys_) if ct else dt_error_integral(sys_)
    m = ct_estimate_integral(sys_) if ct else dt_estimate_integral(sys_)
    return p, m


def _direct_pair(sys_):
    ct = sys_.domain is TimeDomain.CONTINUOUS
    p_tf = error_sensitivity(sys_)
    m_tf = estimate_sensitivity(sys_)
    if ct:
        return (direct_ct_integral(p_tf),
                direct_ct_integral(m_tf, weighted=True))
    return direct_dt_integral(p_tf), direct_dt_integral(m_tf)


def _routes_agree(closed, direct, tol):
    if closed.bounded != direct.bounded:
        return False, math.inf
    if not closed.bounded:
        same = closed.sign_if_unbounded == direct.sign_if_unbounded
        return same, 0.0 if same else math.inf
    gap = abs(closed.value - direct.value)
    return gap <= tol, gap


def test_criterion_5_three_route_consistency(generated_population):
    start = time.perf_counter()
    ok = len(generated_population) >= 200
    worst_direct = worst_quad = worst_comp = 0.0
    tags = set()
    for sys_ in generated_population:
        p_closed, m_closed = _closed_pair(sys_)
        p_direct, m_direct = _direct_pair(sys_)
        tags.add(p_closed.case)
        tags.add(m_closed.case)

        for closed, direct in ((p_closed, p_direct), (m_closed, m_direct)):
            agree, gap = _routes_agree(closed, direct, 1e-9)
            ok = ok and agree
            worst_direct = max(worst_direct, gap)

        dt = sys_.domain is TimeDomain.DISCRETE
        for closed, tf, weighted in ((p_closed, error_sensitivity(sys_),
                                      False),
                                     (m_closed, estimate_sensitivity(sys_),
                                      True)):
            if not closed.bounded:
                continue
            if dt:
                res = dt_log_integral(tf, tol=1e-6)
            elif weighted:
                res = ct_weighted_log_integral(tf, tol=1e-6)
            else:
                res = ct_log_integral(tf, tol=1e-6)
            gap = abs(res.value - closed.value)
            ok = ok and gap <= 1e-3
            worst_quad = max(worst_quad, gap)

        deviation = complementarity_check(sys_)
        ok = ok and deviation <= 1e-9
        worst_comp = max(worst_comp, deviation)

    elapsed = time.perf_counter() - start
    ok = ok and tags == set(CaseTag)
    ok = ok and elapsed < 300.0
    _verdict(5, "three-route consistency on generated systems", ok,
             f"{len(generated_population)} systems, all {len(set(CaseTag))} "
             f"case tags, direct gap {worst_direct:.2e}, quadrature gap "
             f"{worst_quad:.2e}, complementarity {worst_comp:.2e}, "
             f"{elapsed:.1f}s")


# ---------------------------------------------------------------------------
# 6: residue route agrees wherever its preconditions hold


def test_criterion_6_residue_crosscheck(generated_population):
    ok = True
    worst = 0.0
    n_p = n_m = 0
    for sys_ in generated_population:
        if sys_.domain is not TimeDomain.CONTINUOUS:
            continue
        try:
            cross = residue_crosscheck(sys_)
        except PreconditionUnmet:
            continue
        p_closed, m_closed = _closed_pair(sys_)
        if cross.p_value is not None:
            gap = abs(cross.p_value - p_closed.value)
            ok = ok and p_closed.bounded and gap <= 1e-9
            worst = max(worst, gap)
            n_p += 1
        if cross.m_value is not None:
            gap = abs(cross.m_value - m_closed.value)
            ok = ok and m_closed.bounded and gap <= 1e-9
            worst = max(worst, gap)
            n_m += 1
    ok = ok and n_p >= 50 and n_m >= 10
    _verdict(6, "residue crosscheck on applicable systems", ok,
             f"{n_p} error-side + {n_m} estimate-side checks, "
             f"worst gap {worst:.2e}")


# ---------------------------------------------------------------------------
# 7: knife-edge boundedness at the balanced gain


def test_criterion_7_knife_edge_gain_perturbation():
    doc = DOCUMENTS["ct_p_case3"]
    base = ct_error_integral(_system("ct_p_case3"))
    ok = base.bounded and abs(base.value - 0.3991) <= 5e-4

    f = doc["f"]
    for eps, want_sign in ((1e-6, 1.0), (-1e-6, -1.0)):
        bumped = RationalTF(f["gain"] * (1.0 + eps),
                            tuple(complex(re, im) for re, im in f["zeros"]),
                            tuple(complex(re, im) for re, im in f["poles"]),
                            TimeDomain.CONTINUOUS)
        sys_, report = validate(_system("ct_p_case3").gx,
                                _system("ct_p_case3").gy, bumped)
        ok = ok and report.all_ok
        out = ct_error_integral(sys_)
        ok = ok and not out.bounded
        ok = ok and out.sign_if_unbounded == math.copysign(math.inf,
                                                           want_sign)
        probe = divergence_probe(error_sensitivity(sys_), tol=1e-8)
        ok = ok and probe.diverged
        ok = ok and probe.divergence_sign * want_sign > 0

    restored = ct_error_integral(_system("ct_p_case3"))
    ok = ok and restored.bounded and restored.value == base.value
    _verdict(7, "knife-edge behavior at the balanced gain", ok,
             f"restored value drift {abs(restored.value - base.value):.1e}")


# ---------------------------------------------------------------------------
# 8: polynomial round-trip property at scale


def _matched_error(expected, found):
    a = np.asarray(expected, dtype=complex)
    b = np.asarray(found, dtype=complex)
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def test_criterion_8_root_finder_round_trips():
    rng = np.random.default_rng(424242)
    worst = 0.0
    n_done = 0
    while n_done < 1000:
        degree = int(rng.integers(1, 13))
        roots = []
        while len(roots) < degree:
            if degree - len(roots) >= 2 and rng.random() < 0.4:
                re = rng.uniform(-10.0, 10.0) / 1.5
                im = rng.uniform(0.1, 10.0) / 1.5
                roots.extend([complex(re, im), complex(re, -im)])
            else:
                roots.append(complex(rng.uniform(-10.0, 10.0) / 1.5))
        arr = np.array(roots)
        if len(arr) > 1:
            sep = np.abs(arr[:, None] - arr[None, :])
            np.fill_diagonal(sep, np.inf)
            if sep.min() < 1e-3:
                continue
        if np.abs(arr).max() > 10.0:
            continue
        gain = float(rng.uniform(0.5, 2.0))
        err = _matched_error(roots, find_roots(from_roots(gain, roots)))
        worst = max(worst, err)
        n_done += 1
    ok = worst <= 1e-7
    _verdict(8, "root-finder round trips on 1000 instances", ok,
             f"worst matched error {worst:.2e}")


# ---------------------------------------------------------------------------
# 9: discrete estimate integral shifts exactly with filter gain


def test_criterion_9_dt_gain_shift():
    sampler = SystemSampler(99)
    ok = True
    worst = 0.0
    for i in range(50):
        sys_ = sampler.sample(DT_TARGETS[i % len(DT_TARGETS)])
        base = dt_estimate_integral(sys_).value
        for c in (2.0, 10.0, 0.5):
            scaled = replace(
                sys_,
                f=RationalTF(sys_.f.gain * c, sys_.f.zeros, sys_.f.poles,
                             sys_.domain),
                fgy=RationalTF(sys_.fgy.gain * c, sys_.fgy.zeros,
                               sys_.fgy.poles, sys_.domain))
            shift = dt_estimate_integral(scaled).value - base
            err = abs(shift - math.log2(c))
            ok = ok and err <= 1e-12
            worst = max(worst, err)
    _verdict(9, "discrete gain-shift property", ok,
             f"50 systems x 3 factors, worst deviation {worst:.2e}")
