"""Built-in reference suite of nine analytically solved systems.

Each document below is a complete input in the wire format the CLI accepts
(see :mod:`filtint.cli`): four continuous-time error-sensitivity scenarios
sweeping the relative-degree cases (including one unbounded), two
continuous-time estimate-sensitivity scenarios (gain-balanced and not), and
three discrete-time scenarios.  Expected values are the published four-digit
figures; ``paper_suite`` recomputes every closed form and compares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .closedform import (ct_error_integral, ct_estimate_integral,
                         dt_error_integral, dt_estimate_integral)
from .errors import FiltintError
from .quad import (ct_log_integral, ct_weighted_log_integral,
                   divergence_probe, dt_log_integral)
from .rational import EPS_GAIN, RationalTF, TimeDomain
from .sysmodel import error_sensitivity, estimate_sensitivity, validate

_CT_GX = {"gain": 1.67, "zeros": [[-0.05, 0.0]], "poles": [[-0.04, 0.0]]}
_CT_GY_3P = {"gain": 1.25, "zeros": [[-0.06, 0.0], [-0.08, 0.0]],
             "poles": [[0.03, 0.0], [-0.01, 0.0], [-0.07, 0.0]]}
_CT_GY_2P = {"gain": 1.25, "zeros": [[-0.06, 0.0], [-0.08, 0.0]],
             "poles": [[0.03, 0.0], [-0.01, 0.0]]}
_TRIPLE_068 = [[-0.68, 0.0], [-0.68, 0.0], [-0.68, 0.0]]
_TRIPLE_05 = [[-0.5, 0.0], [-0.5, 0.0], [-0.5, 0.0]]

_DT_GX = {"gain": 1.5, "zeros": [[0.05, 0.0]], "poles": [[0.1, 0.0]]}

DOCUMENTS = {
    "ct_p_case1": {
        "domain": "ct",
        "gx": _CT_GX,
        "gy": _CT_GY_3P,
        "f": {"gain": 1.34, "zeros": [[0.03, 0.0], [-0.09, 0.0]],
              "poles": _TRIPLE_068},
    },
    "ct_p_case2": {
        "domain": "ct",
        "gx": _CT_GX,
        "gy": _CT_GY_3P,
        "f": {"gain": 1.34,
              "zeros": [[0.03, 0.0], [-0.075, 0.0], [-0.09, 0.0]],
              "poles": _TRIPLE_068},
    },
    "ct_p_case3": {
        "domain": "ct",
        "gx": _CT_GX,
        "gy": _CT_GY_2P,
        "f": {"gain": 2.672,
              "zeros": [[0.03, 0.0], [-0.075, 0.0], [-0.09, 0.0]],
              "poles": _TRIPLE_068},
    },
    "ct_p_case4_unbounded": {
        "domain": "ct",
        "gx": _CT_GX,
        "gy": _CT_GY_2P,
        "f": {"gain": 2.872,
              "zeros": [[0.03, 0.0], [-0.075, 0.0], [-0.09, 0.0]],
              "poles": _TRIPLE_068},
    },
    "ct_m_balanced": {
        "domain": "ct",
        "gx": {"gain": 1.5, "zeros": [[-0.05, 0.0]], "poles": [[-0.025, 0.0]]},
        "gy": {"gain": 1.25, "zeros": [[-0.075, 0.0], [-0.75, 0.0]],
               "poles": [[0.05, 0.0], [-0.01, 0.0]]},
        "f": {"gain": 32.0 / 15.0,
              "zeros": [[0.05, 0.0], [-0.1, 0.0], [-0.25, 0.0]],
              "poles": _TRIPLE_05},
    },
    "ct_m_unbounded": {
        "domain": "ct",
        "gx": {"gain": 1.5, "zeros": [[-0.05, 0.0]], "poles": [[-0.025, 0.0]]},
        "gy": {"gain": 1.25, "zeros": [[-0.075, 0.0], [-0.75, 0.0]],
               "poles": [[0.05, 0.0], [-0.01, 0.0]]},
        "f": {"gain": 2.0,
              "zeros": [[0.05, 0.0], [-0.1, 0.0], [-0.25, 0.0]],
              "poles": _TRIPLE_05},
    },
    "dt_p_case1": {
        "domain": "dt",
        "gx": _DT_GX,
        "gy": {"gain": 1.25, "zeros": [[0.075, 0.0], [0.025, 0.0]],
               "poles": [[1.25, 0.0], [0.75, 0.0], [0.01, 0.0]]},
        "f": {"gain": 1.75, "zeros": [[1.25, 0.0], [0.25, 0.0]],
              "poles": [[0.5, 0.0], [0.5, 0.0], [0.5, 0.0]]},
    },
    "dt_p_case2": {
        "domain": "dt",
        "gx": _DT_GX,
        "gy": {"gain": 1.25, "zeros": [[0.075, 0.0], [0.025, 0.0]],
               "poles": [[1.25, 0.0], [0.01, 0.0]]},
        "f": {"gain": 1.75,
              "zeros": [[1.25, 0.0], [0.75, 0.0], [0.25, 0.0]],
              "poles": [[0.5, 0.0], [0.5, 0.0], [0.5, 0.0]]},
    },
    "dt_m": {
        "domain": "dt",
        "gx": _DT_GX,
        "gy": {"gain": 1.25, "zeros": [[0.075, 0.0], [0.025, 0.0]],
               "poles": [[1.25, 0.0], [0.01, 0.0]]},
        "f": {"gain": 1.75,
              "zeros": [[1.25, 0.0], [0.75, 0.0], [0.25, 0.0]],
              "poles": [[0.5, 0.0], [0.5, 0.0], [0.5, 0.0]]},
    },
}

#: (document name, integral kind, expected value, comparison tolerance)
SCENARIOS = (
    ("ct_p_case1", "p", 0.0101, 5e-4),
    ("ct_p_case2", "p", -0.5015, 5e-4),
    ("ct_p_case3", "p", 0.3991, 5e-4),
    ("ct_p_case4_unbounded", "p", math.inf, 0.0),
    ("ct_m_balanced", "m", -28.6667, 1e-3),
    ("ct_m_unbounded", "m", -math.inf, 0.0),
    ("dt_p_case1", "p", 1.0512, 5e-4),
    ("dt_p_case2", "p", -1.1255, 5e-4),
    ("dt_m", "m", 0.5443, 5e-4),
)


@dataclass(frozen=True)
class SuiteRow:
    name: str
    kind: str
    expected: float
    computed: float | None
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SuiteReport:
    rows: tuple

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)


def _tf(obj, domain):
    return RationalTF(obj["gain"],
                      tuple(complex(re, im) for re, im in obj["zeros"]),
                      tuple(complex(re, im) for re, im in obj["poles"]),
                      domain)


def system_from_document(doc):
    """Validate a wire-format document dict into a FilteringSystem."""
    domain = TimeDomain(doc["domain"])
    gx = _tf(doc["gx"], domain)
    gy = _tf(doc["gy"], domain)
    f = _tf(doc["f"], domain)
    sys_, report = validate(gx, gy, f)
    if not report.all_ok:
        raise FiltintError(f"reference document failed validation: "
                           f"{report.diagnostics}")
    return sys_


def paper_suite(quad_tol: float = 1e-6, run_quadrature: bool = True,
                eps_gain: float = EPS_GAIN) -> SuiteReport:
    """Recompute all nine reference scenarios and compare to the published
    values.

    A row passes when the closed form reproduces the expected value within
    its tolerance (for the unbounded scenarios: the verdict and sign).
    When ``run_quadrature`` is set, the numerical route is reported
    alongside for inspection: adaptive quadrature for bounded outcomes and
    the divergence probe for unbounded ones.
    """
    rows = []
    for name, kind, expected, tol in SCENARIOS:
        sys_ = system_from_document(DOCUMENTS[name])
        ct = sys_.domain is TimeDomain.CONTINUOUS
        if kind == "p":
            outcome = (ct_error_integral(sys_, eps_gain=eps_gain) if ct
                       else dt_error_integral(sys_, eps_gain=eps_gain))
        else:
            outcome = (ct_estimate_integral(sys_, eps_gain=eps_gain) if ct
                       else dt_estimate_integral(sys_))

        if math.isinf(expected):
            passed = (not outcome.bounded
                      and outcome.sign_if_unbounded == expected)
            computed = outcome.sign_if_unbounded
        else:
            passed = (outcome.bounded
                      and abs(outcome.value - expected) <= tol)
            computed = outcome.value

        detail = ""
        if run_quadrature:
            detail = _quad_detail(sys_, kind, outcome, quad_tol)
        rows.append(SuiteRow(name=name, kind=kind, expected=expected,
                             computed=computed, passed=passed, detail=detail))
    return SuiteReport(rows=tuple(rows))


def _quad_detail(sys_, kind, outcome, quad_tol):
    ct = sys_.domain is TimeDomain.CONTINUOUS
    tf = error_sensitivity(sys_) if kind == "p" else estimate_sensitivity(sys_)
    try:
        if outcome.bounded:
            if not ct:
                res = dt_log_integral(tf, tol=quad_tol)
            elif kind == "p":
                res = ct_log_integral(tf, tol=quad_tol)
            else:
                res = ct_weighted_log_integral(tf, tol=quad_tol)
            return f"quadrature {res.value:.6f}"
        if ct:
            res = divergence_probe(tf, weighted=(kind == "m"),
                                   tol=quad_tol / 10.0)
            if res.diverged:
                arrow = "+inf" if res.divergence_sign > 0 else "-inf"
                return f"probe diverged toward {arrow}"
            return "probe found no divergence"
    except FiltintError as exc:
        return f"quadrature unavailable: {exc}"
    return ""
