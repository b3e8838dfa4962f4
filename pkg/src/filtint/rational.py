"""Proper rational transfer functions in zero/pole/gain form.

A :class:`RationalTF` stores a real gain together with zero and pole
multisets (conjugate-closed) and a :class:`TimeDomain` marker deciding
whether stability is judged against the imaginary axis or the unit circle.
Functions are never expanded to coefficient form here; all downstream
analysis works on the root multisets directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import PoleEvaluation

#: Default tolerance for zero/pole cancellation matching (absolute for roots
#: of modulus <= 1, relative to the modulus otherwise).
EPS_CANCEL = 1e-8

#: Default half-width of the band around the stability boundary inside which
#: a root is classified as a boundary root.
EPS_CLASS = 1e-9

#: Default relative tolerance for gain/normalization comparisons.
EPS_GAIN = 1e-9

_CLOSURE_REL = 1e-8


class TimeDomain(Enum):
    """Continuous time (imaginary-axis boundary) or discrete time (unit
    circle boundary)."""

    CONTINUOUS = "ct"
    DISCRETE = "dt"


def _match_scale(a, b):
    return max(1.0, abs(a), abs(b))


def _check_conjugate_closed(roots, what):
    """Verify a root multiset is closed under conjugation.

    Real roots (zero imaginary part up to a small relative tolerance) pair
    with themselves; every other root must find a distinct conjugate partner.
    """
    pending = list(roots)
    while pending:
        r = pending.pop()
        tol = _CLOSURE_REL * max(1.0, abs(r))
        if abs(r.imag) <= tol:
            continue
        best = None
        best_d = np.inf
        for k, s in enumerate(pending):
            d = abs(s - np.conj(r))
            if d < best_d:
                best, best_d = k, d
        if best is None or best_d > tol:
            raise ValueError(
                f"{what} are not conjugate-closed: no partner for {r}")
        pending.pop(best)


@dataclass(frozen=True)
class RationalTF:
    """Proper rational transfer function ``gain * prod(x - z) / prod(x - p)``.

    Attributes
    ----------
    gain : float
        Real gain.  A zero gain denotes the identically zero function and
        forces empty zero/pole lists.
    zeros, poles : tuple of complex
        Conjugate-closed root multisets with ``len(zeros) <= len(poles)``.
    domain : TimeDomain
        Stability-boundary convention.
    """

    gain: float
    zeros: tuple
    poles: tuple
    domain: TimeDomain

    def __post_init__(self):
        g = complex(self.gain)
        if g.imag != 0:
            raise ValueError("gain must be real")
        zs = tuple(complex(z) for z in self.zeros)
        ps = tuple(complex(p) for p in self.poles)
        if g.real == 0:
            zs, ps = (), ()
        elif len(zs) > len(ps):
            raise ValueError(
                f"improper transfer function: {len(zs)} zeros, {len(ps)} poles")
        _check_conjugate_closed(zs, "zeros")
        _check_conjugate_closed(ps, "poles")
        object.__setattr__(self, "gain", float(g.real))
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "poles", ps)

    @property
    def is_zero(self) -> bool:
        return self.gain == 0.0


@dataclass(frozen=True)
class ClassifiedRoots:
    """Partition of a root multiset relative to the stability boundary."""

    nmp: tuple        # strictly outside the stability region
    mp: tuple         # strictly inside
    boundary: tuple   # within eps_class of the boundary


def relative_degree(g: RationalTF) -> int:
    """Pole count minus zero count (zero for the zero function)."""
    if g.is_zero:
        return 0
    return len(g.poles) - len(g.zeros)


def evaluate(g: RationalTF, freq: float) -> complex:
    """Evaluate ``g`` on the stability boundary at the given frequency.

    Continuous time evaluates at ``1j * freq``; discrete time at
    ``exp(1j * freq)``.

    Raises
    ------
    PoleEvaluation
        If the evaluation point is within 1e-12 of a pole.
    """
    if g.domain is TimeDomain.CONTINUOUS:
        x = 1j * freq
    else:
        x = np.exp(1j * freq)
    if g.is_zero:
        return 0j
    num = complex(g.gain)
    for z in g.zeros:
        num *= x - z
    den = 1.0 + 0j
    for p in g.poles:
        d = x - p
        if abs(d) <= 1e-12:
            raise PoleEvaluation(
                f"evaluation point {x} is within 1e-12 of pole {p}")
        den *= d
    return num / den


def _cancel_lists(zeros, poles, eps):
    """Greedy nearest-pair cancellation of zeros against poles."""
    remaining_p = list(poles)
    kept_z = []
    for z in zeros:
        best = None
        best_d = np.inf
        for k, p in enumerate(remaining_p):
            d = abs(z - p)
            if d < best_d:
                best, best_d = k, d
        if best is not None and best_d <= eps * _match_scale(z, remaining_p[best]):
            remaining_p.pop(best)
        else:
            kept_z.append(z)
    return kept_z, remaining_p


def product_cancel(f: RationalTF, g: RationalTF,
                   eps_cancel: float = EPS_CANCEL) -> RationalTF:
    """Product ``f * g`` with cross cancellation of matching zero/pole pairs.

    Zeros of ``f`` are matched greedily against the nearest pole of ``g``
    (and vice versa); a pair cancels when its distance is within
    ``eps_cancel`` (absolute for roots of modulus at most one, relative to
    the modulus otherwise).  Conjugate-closed inputs cancel in conjugate
    pairs, so closure of the result is preserved.

    Returns the zero function if either factor is the zero function.
    """
    if f.domain is not g.domain:
        raise ValueError("cannot multiply transfer functions across domains")
    if f.is_zero or g.is_zero:
        return RationalTF(0.0, (), (), f.domain)
    zf, pg = _cancel_lists(f.zeros, g.poles, eps_cancel)
    zg, pf = _cancel_lists(g.zeros, f.poles, eps_cancel)
    return RationalTF(f.gain * g.gain, tuple(zf + zg), tuple(pf + pg),
                      f.domain)


def classify(roots, domain: TimeDomain,
             eps_class: float = EPS_CLASS) -> ClassifiedRoots:
    """Split roots into strictly unstable (nmp), strictly stable (mp) and
    boundary sets.

    Continuous time classifies by real part against ``+-eps_class``;
    discrete time by modulus against ``1 +- eps_class``.
    """
    nmp, mp, boundary = [], [], []
    for r in roots:
        r = complex(r)
        margin = r.real if domain is TimeDomain.CONTINUOUS else abs(r) - 1.0
        if margin > eps_class:
            nmp.append(r)
        elif margin < -eps_class:
            mp.append(r)
        else:
            boundary.append(r)
    return ClassifiedRoots(tuple(nmp), tuple(mp), tuple(boundary))
