"""Filtering-system assembly and structural validation.

A filtering system couples a signal model ``gx``, a measurement model ``gy``
and a filter ``f`` over a shared time domain.  The analysis downstream works
on the error sensitivity ``P = (gx - f*gy) / gx`` and the estimate
sensitivity ``M = f*gy / gx``, which satisfy ``P + M = 1`` identically.

``validate`` checks the structural assumptions:

a1  the signal model is a nonzero scalar transfer function,
a2  the filter is stable (and proper, which the type already enforces),
a3  ``f*gy`` has relative degree at least that of ``gx``,
a4  ``gx - f*gy`` is stable, established through the cancellation
    structure: every unstable pole of ``gx`` is shared with ``gy``, every
    unshared unstable pole of ``gy`` is cancelled by a zero of ``f``, and
    the numerator difference vanishes at each shared unstable pole.

Sensitivities are always constructed from root multisets (the factorization
of the numerator difference), never by coefficient-level subtraction of
rational functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundaryRoot, ZeroGx
from .rational import (EPS_CANCEL, EPS_CLASS, RationalTF, TimeDomain,
                       _match_scale, classify, evaluate, product_cancel)

#: Seed used for complementarity sampling unless the caller overrides it.
DEFAULT_SEED = 12345


@dataclass(frozen=True)
class FilteringSystem:
    """Validated bundle of signal model, measurement model and filter.

    ``fgy`` caches the cancelled product ``f * gy``; ``shared_unstable``
    holds the unstable poles common to ``gx`` and ``gy`` (one canonical copy
    each, taken from ``gx``); ``gy_only_unstable`` the unstable poles of
    ``gy`` alone, which a valid filter must cancel.
    """

    gx: RationalTF
    gy: RationalTF
    f: RationalTF
    fgy: RationalTF
    domain: TimeDomain
    shared_unstable: tuple
    gy_only_unstable: tuple
    eps_cancel: float = EPS_CANCEL
    eps_class: float = EPS_CLASS


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the structural checks, with human-readable diagnostics."""

    a1_ok: bool
    a2_ok: bool
    a3_ok: bool
    a4_ok: bool
    diagnostics: tuple = ()
    boundary_roots: tuple = ()

    @property
    def all_ok(self) -> bool:
        return self.a1_ok and self.a2_ok and self.a3_ok and self.a4_ok


def _match_and_split(candidates, targets, eps):
    """Greedily match candidates against nearest targets.

    Returns (matched_candidates, unmatched_candidates, unmatched_targets);
    a match requires the pair distance to be within ``eps`` (absolute for
    moduli at most one, relative otherwise).
    """
    remaining = list(targets)
    matched = []
    unmatched = []
    for c in candidates:
        best = None
        best_d = np.inf
        for k, t in enumerate(remaining):
            d = abs(c - t)
            if d < best_d:
                best, best_d = k, d
        if best is not None and best_d <= eps * _match_scale(c, remaining[best]):
            remaining.pop(best)
            matched.append(c)
        else:
            unmatched.append(c)
    return matched, unmatched, remaining


def _boundary_scan(named_tfs, domain, eps_class):
    found = []
    for name, tf in named_tfs:
        for kind, roots in (("zero", tf.zeros), ("pole", tf.poles)):
            cls = classify(roots, domain, eps_class)
            for r in cls.boundary:
                found.append((name, kind, r))
    return found


def validate(gx: RationalTF, gy: RationalTF, f: RationalTF,
             eps_cancel: float = EPS_CANCEL,
             eps_class: float = EPS_CLASS):
    """Assemble and validate a filtering system.

    Parameters
    ----------
    gx, gy, f : RationalTF
        Signal model, measurement model and filter over one common domain.
    eps_cancel : float
        Zero/pole cancellation matching tolerance.
    eps_class : float
        Stability-boundary classification band.

    Returns
    -------
    (FilteringSystem, ValidationReport)
        The system is returned even when some checks fail, so callers can
        report diagnostics; downstream operations require ``all_ok``.

    Raises
    ------
    ZeroGx
        If ``gx`` is the zero function.
    BoundaryRoot
        If any zero or pole of ``gx``, ``gy``, ``f`` or the cancelled
        product ``f*gy`` lies within ``eps_class`` of the stability
        boundary.  The exception carries a ``report`` attribute.
    """
    if not (gx.domain is gy.domain is f.domain):
        raise ValueError("gx, gy and f must share one time domain")
    domain = gx.domain
    if gx.is_zero:
        raise ZeroGx("the signal model gx is identically zero")

    fgy = product_cancel(f, gy, eps_cancel)

    boundary = _boundary_scan(
        [("gx", gx), ("gy", gy), ("f", f), ("f*gy", fgy)], domain, eps_class)
    if boundary:
        desc = ", ".join(f"{name} {kind} {r}" for name, kind, r in boundary)
        exc = BoundaryRoot(
            f"roots within {eps_class} of the stability boundary: {desc}",
            roots=[r for _, _, r in boundary])
        exc.report = ValidationReport(
            a1_ok=True, a2_ok=False, a3_ok=False, a4_ok=False,
            diagnostics=(f"boundary roots: {desc}",),
            boundary_roots=tuple(r for _, _, r in boundary))
        raise exc

    diagnostics = []
    a1_ok = True

    a2_ok = not classify(f.poles, domain, eps_class).nmp
    if not a2_ok:
        bad = classify(f.poles, domain, eps_class).nmp
        diagnostics.append(f"filter has unstable poles: {list(bad)}")

    if fgy.is_zero:
        a3_ok = True
    else:
        a3_ok = (len(fgy.poles) - len(fgy.zeros)) >= (len(gx.poles) - len(gx.zeros))
        if not a3_ok:
            diagnostics.append(
                "relative degree of f*gy is below that of gx")

    ux = classify(gx.poles, domain, eps_class).nmp
    uy = classify(gy.poles, domain, eps_class).nmp
    # shared poles keep gx's copy as the canonical value
    shared, ux_missing, uy_rest = _match_and_split(ux, uy, eps_cancel)
    gy_only = tuple(uy_rest)

    sys_ = FilteringSystem(gx=gx, gy=gy, f=f, fgy=fgy, domain=domain,
                           shared_unstable=tuple(shared),
                           gy_only_unstable=gy_only,
                           eps_cancel=eps_cancel, eps_class=eps_class)

    a4_ok = True
    if ux_missing:
        a4_ok = False
        diagnostics.append(
            "gx has unstable poles absent from gy, so gx - f*gy cannot be "
            f"stable: {list(ux_missing)}")

    fgy_unstable = list(classify(fgy.poles, domain, eps_class).nmp)
    _, extra_unstable, _ = _match_and_split(fgy_unstable, shared, eps_cancel)
    if extra_unstable:
        a4_ok = False
        diagnostics.append(
            "f*gy keeps unstable poles that gx does not share (an unstable "
            f"pole of gy was not cancelled by a zero of f): {extra_unstable}")

    if a4_ok and shared:
        from .closedform import difference_factorization
        from .errors import SharedPoleNotCancelled
        try:
            difference_factorization(sys_)
        except SharedPoleNotCancelled as exc:
            a4_ok = False
            diagnostics.append(
                f"numerator difference does not vanish at a shared unstable "
                f"pole: {exc}")

    a4_ok = a4_ok and a2_ok and a3_ok

    report = ValidationReport(a1_ok=a1_ok, a2_ok=a2_ok, a3_ok=a3_ok,
                              a4_ok=a4_ok, diagnostics=tuple(diagnostics))
    return sys_, report


def _stable_poles(tf: RationalTF, domain, eps_class):
    return list(classify(tf.poles, domain, eps_class).mp)


def error_sensitivity(sys_: FilteringSystem) -> RationalTF:
    """Error sensitivity ``P = (gx - f*gy) / gx`` in zero/pole/gain form.

    The numerator roots come from the factorization of the numerator
    difference (shared unstable poles plus residual roots); the denominator
    collects the zeros of ``gx`` and the stable poles of ``f*gy``.  The
    result is biproper with gain ``lead / gain(gx)`` except in the
    degenerate equal-degree case where the leading coefficient collapses.
    """
    from .closedform import difference_factorization
    fac = difference_factorization(sys_)
    if fac.is_zero:
        return RationalTF(0.0, (), (), sys_.domain)
    num = tuple(fac.matched_shared) + tuple(fac.residual)
    den = tuple(sys_.gx.zeros) + tuple(
        _stable_poles(sys_.fgy, sys_.domain, sys_.eps_class))
    return RationalTF(fac.lead / sys_.gx.gain, num, den, sys_.domain)


def estimate_sensitivity(sys_: FilteringSystem) -> RationalTF:
    """Estimate sensitivity ``M = f*gy / gx`` in zero/pole/gain form.

    Shared unstable poles cancel against ``gx``'s copy, so the numerator
    collects the stable poles of ``gx`` and the zeros of ``f*gy`` while the
    denominator collects the zeros of ``gx`` and the stable poles of
    ``f*gy``.  Returns the zero function when ``f*gy`` is zero.
    """
    if sys_.fgy.is_zero:
        return RationalTF(0.0, (), (), sys_.domain)
    num = tuple(_stable_poles(sys_.gx, sys_.domain, sys_.eps_class)) + tuple(
        sys_.fgy.zeros)
    den = tuple(sys_.gx.zeros) + tuple(
        _stable_poles(sys_.fgy, sys_.domain, sys_.eps_class))
    return RationalTF(sys_.fgy.gain / sys_.gx.gain, num, den, sys_.domain)


def complementarity_check(sys_: FilteringSystem, n_samples: int = 64,
                          seed: int = DEFAULT_SEED) -> float:
    """Maximum of ``|P + M - 1|`` over random boundary frequencies.

    Continuous-time frequencies are drawn log-uniformly from [1e-3, 1e3];
    discrete-time frequencies uniformly from (-pi, pi).  Sampling is seeded,
    so repeated checks are reproducible.
    """
    p = error_sensitivity(sys_)
    m = estimate_sensitivity(sys_)
    rng = np.random.default_rng(seed)
    if sys_.domain is TimeDomain.CONTINUOUS:
        freqs = 10.0 ** rng.uniform(-3.0, 3.0, size=n_samples)
    else:
        freqs = rng.uniform(-np.pi, np.pi, size=n_samples)
    worst = 0.0
    for w in freqs:
        dev = abs(evaluate(p, w) + evaluate(m, w) - 1.0)
        worst = max(worst, dev)
    return worst
