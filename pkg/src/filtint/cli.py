"""Command-line interface and JSON analysis pipeline.

Input documents are JSON objects of the form::

    {
      "domain": "ct",
      "gx": {"gain": 1.67, "zeros": [[-0.05, 0.0]], "poles": [[-0.04, 0.0]]},
      "gy": {...},
      "f":  {...},
      "options": {"quad_tol": 1e-6, "run_quadrature": true, ...}
    }

Roots are ``[re, im]`` pairs and must form conjugate-closed lists.  The
``options`` object is optional and every key inside it is optional; CLI
flags override document options.

``analyze`` runs the full pipeline on one document: admissibility
validation, both sensitivity constructions, closed-form evaluation,
direct evaluation from the root sets, the optional residue-based
crosscheck, and the optional numerical route (adaptive quadrature, or the
divergence probe when the closed form says unbounded).

Exit codes: 0 analysis completed, 2 validation failure, 3 parse/schema
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from . import suite as _suite
from .closedform import (IntegralOutcome, ct_error_integral,
                         ct_estimate_integral, direct_ct_integral,
                         direct_dt_integral, dt_error_integral,
                         dt_estimate_integral, residue_crosscheck)
from .errors import (BoundaryRoot, DegenerateGain, FiltintError, Inconclusive,
                     NotConverged, ParseError, SchemaError, ZeroGx)
from .quad import (QuadratureResult, ct_log_integral,
                   ct_weighted_log_integral, divergence_probe,
                   dt_log_integral)
from .rational import (EPS_CANCEL, EPS_CLASS, EPS_GAIN, RationalTF,
                       TimeDomain)
from .sysmodel import (DEFAULT_SEED, ValidationReport, complementarity_check,
                       error_sensitivity, estimate_sensitivity, validate)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PARSE = 3

_TOP_KEYS = {"domain", "gx", "gy", "f", "options"}
_TF_KEYS = {"gain", "zeros", "poles"}
_OPTION_KEYS = {"eps_cancel", "eps_class", "eps_gain", "quad_tol",
                "run_quadrature", "run_lemma1"}


@dataclass(frozen=True)
class AnalysisOptions:
    """Tunable knobs for one analysis run."""

    eps_cancel: float = EPS_CANCEL
    eps_class: float = EPS_CLASS
    eps_gain: float = EPS_GAIN
    quad_tol: float = 1e-6
    run_quadrature: bool = True
    run_lemma1: bool = False


@dataclass(frozen=True)
class SystemSpecDocument:
    """A parsed input document: three transfer functions plus options."""

    domain: TimeDomain
    gx: RationalTF
    gy: RationalTF
    f: RationalTF
    options: AnalysisOptions = AnalysisOptions()


@dataclass(frozen=True)
class AnalysisReport:
    """Everything ``analyze`` learned about one system."""

    domain: str
    validation: ValidationReport | None
    case_tags: dict = field(default_factory=dict)
    p_integral: dict = field(default_factory=dict)
    m_integral: dict = field(default_factory=dict)
    deltas: dict = field(default_factory=dict)
    complementarity_deviation: float | None = None
    findings: tuple = ()
    exit_code: int = EXIT_OK
    path: str | None = None


# ---------------------------------------------------------------------------
# parsing


def _require(cond, message):
    if not cond:
        raise SchemaError(message)


def _as_real(value, where):
    _require(isinstance(value, (int, float)) and not isinstance(value, bool),
             f"{where} must be a real number")
    value = float(value)
    _require(math.isfinite(value), f"{where} must be finite")
    return value


def _parse_roots(obj, where):
    _require(isinstance(obj, list), f"{where} must be a list of [re, im] pairs")
    roots = []
    for i, pair in enumerate(obj):
        _require(isinstance(pair, list) and len(pair) == 2,
                 f"{where}[{i}] must be a two-element [re, im] list")
        re = _as_real(pair[0], f"{where}[{i}][0]")
        im = _as_real(pair[1], f"{where}[{i}][1]")
        roots.append(complex(re, im))
    return tuple(roots)


def _parse_tf(obj, name, domain):
    _require(isinstance(obj, dict), f"'{name}' must be an object")
    unknown = set(obj) - _TF_KEYS
    _require(not unknown, f"'{name}' has unknown keys: {sorted(unknown)}")
    for key in _TF_KEYS:
        _require(key in obj, f"'{name}' is missing required key '{key}'")
    gain = _as_real(obj["gain"], f"{name}.gain")
    zeros = _parse_roots(obj["zeros"], f"{name}.zeros")
    poles = _parse_roots(obj["poles"], f"{name}.poles")
    try:
        return RationalTF(gain, zeros, poles, domain)
    except ValueError as exc:
        raise SchemaError(f"'{name}': {exc}") from exc


def _parse_options(obj):
    if obj is None:
        return AnalysisOptions()
    _require(isinstance(obj, dict), "'options' must be an object")
    unknown = set(obj) - _OPTION_KEYS
    _require(not unknown, f"'options' has unknown keys: {sorted(unknown)}")
    kwargs = {}
    for key in ("eps_cancel", "eps_class", "eps_gain", "quad_tol"):
        if key in obj:
            value = _as_real(obj[key], f"options.{key}")
            _require(value > 0.0, f"options.{key} must be positive")
            kwargs[key] = value
    for key in ("run_quadrature", "run_lemma1"):
        if key in obj:
            _require(isinstance(obj[key], bool),
                     f"options.{key} must be a boolean")
            kwargs[key] = obj[key]
    return AnalysisOptions(**kwargs)


def parse_spec(text: str) -> SystemSpecDocument:
    """Parse and validate one JSON document into a SystemSpecDocument.

    Raises ParseError for malformed JSON (with line/column) and
    SchemaError for structurally invalid documents, naming the offending
    field or root.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column "
                         f"{exc.colno}: {exc.msg}") from exc
    _require(isinstance(obj, dict), "top level must be a JSON object")
    unknown = set(obj) - _TOP_KEYS
    _require(not unknown, f"unknown top-level keys: {sorted(unknown)}")
    for key in ("domain", "gx", "gy", "f"):
        _require(key in obj, f"missing required key '{key}'")
    _require(obj["domain"] in ("ct", "dt"),
             "'domain' must be \"ct\" or \"dt\"")
    domain = TimeDomain(obj["domain"])
    gx = _parse_tf(obj["gx"], "gx", domain)
    gy = _parse_tf(obj["gy"], "gy", domain)
    f = _parse_tf(obj["f"], "f", domain)
    options = _parse_options(obj.get("options"))
    return SystemSpecDocument(domain=domain, gx=gx, gy=gy, f=f,
                              options=options)


# ---------------------------------------------------------------------------
# analysis


def _quad_for(tf, outcome, weighted, domain, tol, findings, label):
    """Numerical route for one integral: quadrature when the closed form is
    bounded, the divergence probe when a continuous-time closed form says
    unbounded."""
    if tf.is_zero or outcome is None:
        return None
    try:
        if outcome.bounded:
            if domain is TimeDomain.DISCRETE:
                return dt_log_integral(tf, tol=tol)
            if weighted:
                return ct_weighted_log_integral(tf, tol=tol)
            return ct_log_integral(tf, tol=tol)
        if domain is TimeDomain.CONTINUOUS:
            return divergence_probe(tf, weighted=weighted, tol=tol)
    except NotConverged as exc:
        findings.append(f"{label}: quadrature did not converge within the "
                        f"evaluation budget (best value {exc.value:.6g}, "
                        f"error estimate {exc.abs_error_estimate:.3g})")
    except Inconclusive as exc:
        findings.append(f"{label}: divergence probe inconclusive: {exc}")
    except FiltintError as exc:
        findings.append(f"{label}: numerical route unavailable: {exc}")
    return None


def _float_or_none(outcome):
    if outcome is not None and outcome.bounded:
        return outcome.value
    return None


def _max_delta(values):
    vals = [v for v in values if v is not None and math.isfinite(v)]
    if len(vals) < 2:
        return None
    return max(vals) - min(vals)


def analyze(doc: SystemSpecDocument, path: str | None = None,
            seed: int = DEFAULT_SEED) -> AnalysisReport:
    """Run the full analysis pipeline on one parsed document."""
    opts = doc.options
    findings = []
    try:
        sys_, report = validate(doc.gx, doc.gy, doc.f,
                                eps_cancel=opts.eps_cancel,
                                eps_class=opts.eps_class)
    except BoundaryRoot as exc:
        findings.append(str(exc))
        return AnalysisReport(domain=doc.domain.value,
                              validation=getattr(exc, "report", None),
                              findings=tuple(findings),
                              exit_code=EXIT_VALIDATION, path=path)
    except ZeroGx as exc:
        findings.append(str(exc))
        return AnalysisReport(domain=doc.domain.value, validation=None,
                              findings=tuple(findings),
                              exit_code=EXIT_VALIDATION, path=path)

    if not report.all_ok:
        findings.extend(report.diagnostics)
        return AnalysisReport(domain=doc.domain.value, validation=report,
                              findings=tuple(findings),
                              exit_code=EXIT_VALIDATION, path=path)

    ct = sys_.domain is TimeDomain.CONTINUOUS

    # closed forms
    p_closed = m_closed = None
    try:
        p_closed = (ct_error_integral(sys_, eps_gain=opts.eps_gain) if ct
                    else dt_error_integral(sys_, eps_gain=opts.eps_gain))
    except DegenerateGain as exc:
        msg = f"error-sensitivity closed form degenerate: {exc}"
        if exc.fallback_value is not None:
            msg += f" (direct evaluation gives {exc.fallback_value:.9g})"
        findings.append(msg)
    except FiltintError as exc:
        findings.append(f"error-sensitivity closed form unavailable: {exc}")
    try:
        m_closed = (ct_estimate_integral(sys_, eps_gain=opts.eps_gain) if ct
                    else dt_estimate_integral(sys_))
    except FiltintError as exc:
        findings.append(f"estimate-sensitivity closed form unavailable: {exc}")

    # direct evaluation from the factored sensitivities
    p_tf = error_sensitivity(sys_)
    m_tf = estimate_sensitivity(sys_)
    p_direct = m_direct = None
    try:
        p_direct = (direct_ct_integral(p_tf, eps_class=opts.eps_class,
                                       eps_gain=opts.eps_gain) if ct
                    else direct_dt_integral(p_tf, eps_class=opts.eps_class))
    except FiltintError as exc:
        findings.append(f"error-sensitivity direct evaluation unavailable: "
                        f"{exc}")
    try:
        m_direct = (direct_ct_integral(m_tf, weighted=True,
                                       eps_class=opts.eps_class,
                                       eps_gain=opts.eps_gain) if ct
                    else direct_dt_integral(m_tf, eps_class=opts.eps_class))
    except FiltintError as exc:
        findings.append(f"estimate-sensitivity direct evaluation unavailable: "
                        f"{exc}")

    # optional residue-based crosscheck (continuous time only)
    crosscheck = None
    if opts.run_lemma1 and ct:
        try:
            crosscheck = residue_crosscheck(sys_, eps_cancel=opts.eps_cancel,
                                            eps_gain=opts.eps_gain)
        except FiltintError as exc:
            findings.append(f"residue crosscheck unavailable: {exc}")
    elif opts.run_lemma1:
        findings.append("residue crosscheck applies to continuous-time "
                        "systems only; skipped")

    # optional numerical route
    p_quad = m_quad = None
    if opts.run_quadrature:
        p_quad = _quad_for(p_tf, p_closed, False, sys_.domain, opts.quad_tol,
                           findings, "error-sensitivity integral")
        m_quad = _quad_for(m_tf, m_closed, True, sys_.domain, opts.quad_tol,
                           findings, "estimate-sensitivity integral")

    deviation = complementarity_check(sys_, seed=seed)
    if deviation > 1e-6:
        findings.append(f"complementarity residual {deviation:.3g} exceeds "
                        f"1e-06; sensitivity construction is suspect")

    p_group = {"closed_form": p_closed, "lemma_direct": p_direct}
    m_group = {"closed_form": m_closed, "lemma_direct": m_direct}
    if crosscheck is not None:
        p_group["lemma1"] = {"value": crosscheck.p_value,
                             "reason": crosscheck.p_reason}
        m_group["lemma1"] = {"value": crosscheck.m_value,
                             "reason": crosscheck.m_reason}
        for note in crosscheck.notes:
            findings.append(f"residue crosscheck: {note}")
    if p_quad is not None:
        p_group["quadrature"] = p_quad
    if m_quad is not None:
        m_group["quadrature"] = m_quad

    p_values = [_float_or_none(p_closed), _float_or_none(p_direct)]
    m_values = [_float_or_none(m_closed), _float_or_none(m_direct)]
    if crosscheck is not None:
        p_values.append(crosscheck.p_value)
        m_values.append(crosscheck.m_value)
    if p_quad is not None and not p_quad.diverged:
        p_values.append(p_quad.value)
    if m_quad is not None and not m_quad.diverged:
        m_values.append(m_quad.value)

    return AnalysisReport(
        domain=doc.domain.value,
        validation=report,
        case_tags={"p": p_closed.case.value if p_closed is not None else None,
                   "m": m_closed.case.value if m_closed is not None else None},
        p_integral=p_group,
        m_integral=m_group,
        deltas={"p": _max_delta(p_values), "m": _max_delta(m_values)},
        complementarity_deviation=deviation,
        findings=tuple(findings),
        exit_code=EXIT_OK,
        path=path,
    )


# ---------------------------------------------------------------------------
# serialization


def _num(value):
    if value is None:
        return None
    if math.isinf(value):
        return "+inf" if value > 0 else "-inf"
    return value


def _outcome_obj(outcome: IntegralOutcome | None):
    if outcome is None:
        return None
    return {
        "bounded": outcome.bounded,
        "value": _num(outcome.value),
        "sign_if_unbounded": _num(outcome.sign_if_unbounded),
        "case": outcome.case.value if outcome.case is not None else None,
        "unit": outcome.unit,
        "value_converted": _num(outcome.value_converted),
        "unit_converted": outcome.unit_converted,
        "condition": outcome.condition,
        "terms": {k: _num(v) for k, v in sorted(outcome.terms.items())},
    }


def _quad_obj(res: QuadratureResult | None):
    if res is None:
        return None
    return {
        "value": _num(res.value),
        "abs_error_estimate": _num(res.abs_error_estimate),
        "n_evaluations": res.n_evaluations,
        "diverged": res.diverged,
        "divergence_sign": _num(res.divergence_sign),
    }


def _group_obj(group):
    obj = {
        "closed_form": _outcome_obj(group.get("closed_form")),
        "lemma_direct": _outcome_obj(group.get("lemma_direct")),
    }
    if "lemma1" in group:
        obj["lemma1"] = {"value": _num(group["lemma1"]["value"]),
                         "reason": group["lemma1"]["reason"]}
    if "quadrature" in group:
        obj["quadrature"] = _quad_obj(group["quadrature"])
    return obj


def _validation_obj(report: ValidationReport | None):
    if report is None:
        return None
    return {
        "a1_ok": report.a1_ok,
        "a2_ok": report.a2_ok,
        "a3_ok": report.a3_ok,
        "a4_ok": report.a4_ok,
        "all_ok": report.all_ok,
        "diagnostics": list(report.diagnostics),
        "boundary_roots": [[r.real, r.imag] for r in report.boundary_roots],
    }


def report_to_obj(report: AnalysisReport) -> dict:
    """Convert an AnalysisReport to a JSON-ready dict (infinities become
    the strings "+inf"/"-inf")."""
    return {
        "path": report.path,
        "domain": report.domain,
        "validation": _validation_obj(report.validation),
        "case_tags": dict(report.case_tags),
        "p_integral": _group_obj(report.p_integral),
        "m_integral": _group_obj(report.m_integral),
        "deltas": {k: _num(v) for k, v in report.deltas.items()},
        "complementarity_deviation": _num(report.complementarity_deviation),
        "findings": list(report.findings),
        "exit_code": report.exit_code,
    }


def report_to_json(report: AnalysisReport) -> str:
    return json.dumps(report_to_obj(report), indent=2, sort_keys=True)


def _fmt_value(value):
    if value is None:
        return "-"
    if isinstance(value, str):
        return value
    if math.isinf(value):
        return "+inf" if value > 0 else "-inf"
    return f"{value:.9g}"


def _text_group(lines, title, group, unit):
    lines.append(f"{title} ({unit}):")
    closed = group.get("closed_form")
    if closed is None:
        lines.append("  closed form   -")
    elif closed.bounded:
        lines.append(f"  closed form   {_fmt_value(closed.value)}"
                     f"   [{closed.case.value if closed.case else '-'}]")
    else:
        lines.append(f"  closed form   {_fmt_value(closed.sign_if_unbounded)}"
                     f"   [{closed.case.value if closed.case else '-'}]"
                     + (f"  ({closed.condition})" if closed.condition else ""))
    direct = group.get("lemma_direct")
    if direct is not None:
        val = direct.value if direct.bounded else direct.sign_if_unbounded
        lines.append(f"  direct roots  {_fmt_value(val)}")
    if "lemma1" in group:
        entry = group["lemma1"]
        if entry["value"] is not None:
            lines.append(f"  residues      {_fmt_value(entry['value'])}")
        else:
            lines.append(f"  residues      -  ({entry['reason']})")
    if "quadrature" in group:
        quad = group["quadrature"]
        if quad.diverged:
            arrow = "+inf" if quad.divergence_sign > 0 else "-inf"
            lines.append(f"  probe         diverges toward {arrow}")
        else:
            lines.append(f"  quadrature    {_fmt_value(quad.value)}"
                         f"   (err {quad.abs_error_estimate:.2g}, "
                         f"{quad.n_evaluations} evals)")


def report_to_text(report: AnalysisReport) -> str:
    lines = []
    header = f"system: {report.path or '<stdin>'}   [domain {report.domain}]"
    lines.append(header)
    lines.append("-" * len(header))
    val = report.validation
    if val is None:
        lines.append("validation: failed before admissibility checks")
    else:
        flags = "  ".join(f"a{i} {'ok' if ok else 'FAIL'}" for i, ok in
                          enumerate((val.a1_ok, val.a2_ok, val.a3_ok,
                                     val.a4_ok), start=1))
        lines.append(f"validation: {flags}")
    if report.exit_code == EXIT_OK:
        unit = "nats" if report.domain == "ct" else "bits"
        _text_group(lines, "error-sensitivity integral", report.p_integral,
                    unit)
        _text_group(lines, "estimate-sensitivity integral", report.m_integral,
                    unit)
        deltas = [f"{k}: {_fmt_value(v)}" for k, v in report.deltas.items()]
        lines.append(f"max route disagreement   {'   '.join(deltas)}")
        lines.append(f"complementarity residual "
                     f"{_fmt_value(report.complementarity_deviation)}")
    for finding in report.findings:
        lines.append(f"note: {finding}")
    lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# entry points


def _apply_overrides(doc: SystemSpecDocument, args) -> SystemSpecDocument:
    opts = doc.options
    if args.tol is not None:
        opts = replace(opts, quad_tol=args.tol)
    if args.quadrature is not None:
        opts = replace(opts, run_quadrature=args.quadrature)
    if args.lemma1:
        opts = replace(opts, run_lemma1=True)
    if opts is doc.options:
        return doc
    return replace(doc, options=opts)


def _analyze_path(path: str, args):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        return AnalysisReport(domain="?", validation=None,
                              findings=(f"cannot read {path}: {exc}",),
                              exit_code=EXIT_PARSE, path=path)
    try:
        doc = parse_spec(text)
    except (ParseError, SchemaError) as exc:
        return AnalysisReport(domain="?", validation=None,
                              findings=(f"{type(exc).__name__}: {exc}",),
                              exit_code=EXIT_PARSE, path=path)
    return analyze(_apply_overrides(doc, args), path=path, seed=args.seed)


def _cmd_analyze(args) -> int:
    if len(args.files) == 1:
        reports = [_analyze_path(args.files[0], args)]
    else:
        with ThreadPoolExecutor(max_workers=min(8, len(args.files))) as pool:
            reports = list(pool.map(lambda p: _analyze_path(p, args),
                                    args.files))
    if args.format == "json":
        objs = [report_to_obj(r) for r in reports]
        payload = objs[0] if len(objs) == 1 else objs
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for report in reports:
            print(report_to_text(report))
    return max(r.exit_code for r in reports)


def _cmd_paper_suite(args) -> int:
    run_quad = True if args.quadrature is None else args.quadrature
    tol = 1e-6 if args.tol is None else args.tol
    report = _suite.paper_suite(quad_tol=tol, run_quadrature=run_quad)
    if args.format == "json":
        obj = {
            "rows": [{
                "name": r.name,
                "integral": r.kind,
                "expected": _num(r.expected),
                "computed": _num(r.computed),
                "passed": r.passed,
                "detail": r.detail,
            } for r in report.rows],
            "all_passed": report.all_passed,
        }
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        width = max(len(r.name) for r in report.rows)
        print(f"{'scenario':<{width}}  kind  {'expected':>10}  "
              f"{'computed':>12}  verdict")
        for r in report.rows:
            print(f"{r.name:<{width}}  {r.kind:<4}  "
                  f"{_fmt_value(r.expected):>10}  "
                  f"{_fmt_value(r.computed):>12}  "
                  f"{'pass' if r.passed else 'FAIL'}"
                  + (f"  ({r.detail})" if r.detail else ""))
        n_pass = sum(r.passed for r in report.rows)
        print(f"{n_pass}/{len(report.rows)} scenarios passed")
    return EXIT_OK if report.all_passed else 1


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="filtint",
        description="Log-magnitude sensitivity trade-off integrals for "
                    "LTI filtering systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default: text)")
    common.add_argument("--tol", type=float, default=None, metavar="TOL",
                        help="quadrature tolerance override")
    common.add_argument("--quadrature", action=argparse.BooleanOptionalAction,
                        default=None,
                        help="run (or skip) the numerical route")

    p_an = sub.add_parser("analyze", parents=[common],
                          help="analyze one or more system documents")
    p_an.add_argument("files", nargs="+", metavar="FILE",
                      help="JSON system documents")
    p_an.add_argument("--lemma1", action="store_true",
                      help="also run the residue-based crosscheck "
                           "(continuous time)")
    p_an.add_argument("--seed", type=int, default=DEFAULT_SEED,
                      help="seed for the complementarity sampling check")
    p_an.set_defaults(func=_cmd_analyze)

    p_ps = sub.add_parser("paper-suite", parents=[common],
                          help="run the built-in reference suite of nine "
                               "analytically solved systems")
    p_ps.set_defaults(func=_cmd_paper_suite)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
