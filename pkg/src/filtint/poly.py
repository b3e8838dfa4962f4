"""Dense univariate polynomials over the complex numbers.

Coefficients are stored in ascending power order, so ``coeffs[k]`` multiplies
``x**k`` and the last entry is the leading coefficient.  The representation is
immutable; every operation returns a new :class:`Polynomial`.

Functions
---------
from_roots(gain, roots)
    Expand ``gain * prod(x - r)``.
multiply(a, b)
    Coefficient convolution.
subtract(a, b)
    Difference with relative trimming of vanishing leading coefficients.
evaluate(p, x)
    Horner evaluation.
find_roots(p)
    Companion-matrix eigenvalues polished by two Newton steps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroPolynomial

# Leading coefficients of a difference smaller than this (relative to the
# largest input coefficient) are treated as exact cancellation.
TRIM_REL = 1e-12

# Coefficient arrays whose imaginary residue is below this (relative to the
# largest coefficient modulus) are dispatched to the real companion solve,
# which keeps conjugate root pairs exactly closed.
_REAL_REL = 1e-12


@dataclass(frozen=True)
class Polynomial:
    """Immutable dense polynomial, coefficients in ascending power order."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(complex(c) for c in self.coeffs)
        if not cs:
            raise ValueError("a polynomial needs at least one coefficient")
        if len(cs) > 1 and cs[-1] == 0:
            raise ValueError(
                "leading coefficient must be nonzero (trim before constructing)")
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def __repr__(self):
        return f"Polynomial(degree={self.degree}, coeffs={self.coeffs!r})"


ZERO = Polynomial((0.0,))


def from_roots(gain, roots) -> Polynomial:
    """Expand ``gain * prod_k (x - r_k)`` into coefficients.

    Parameters
    ----------
    gain : complex
        Multiplicative constant.  ``gain == 0`` yields the zero polynomial.
    roots : iterable of complex
        Roots with multiplicity.  An empty iterable gives the constant
        polynomial ``gain``.
    """
    gain = complex(gain)
    if gain == 0:
        return ZERO
    c = np.array([gain], dtype=complex)
    for r in roots:
        c = np.convolve(c, np.array([-complex(r), 1.0], dtype=complex))
    return Polynomial(tuple(c))


def multiply(a: Polynomial, b: Polynomial) -> Polynomial:
    """Product of two polynomials (coefficient convolution)."""
    if a.is_zero or b.is_zero:
        return ZERO
    c = np.convolve(np.asarray(a.coeffs), np.asarray(b.coeffs))
    return Polynomial(tuple(c))


def subtract(a: Polynomial, b: Polynomial) -> Polynomial:
    """Difference ``a - b`` with trimming of cancelled leading coefficients.

    Leading coefficients whose modulus falls below ``TRIM_REL`` times the
    largest coefficient modulus of either operand are removed, so the
    reported degree is the true degree of the difference.  Returns the zero
    polynomial when everything cancels.
    """
    ca = np.asarray(a.coeffs)
    cb = np.asarray(b.coeffs)
    n = max(len(ca), len(cb))
    ca = np.pad(ca, (0, n - len(ca)))
    cb = np.pad(cb, (0, n - len(cb)))
    diff = ca - cb
    scale = max(np.abs(ca).max(), np.abs(cb).max())
    tol = TRIM_REL * scale
    k = len(diff)
    while k > 1 and abs(diff[k - 1]) <= tol:
        k -= 1
    if k == 1 and abs(diff[0]) <= tol:
        return ZERO
    return Polynomial(tuple(diff[:k]))


def evaluate(p: Polynomial, x):
    """Evaluate ``p`` at ``x`` by Horner's scheme.

    ``x`` may be a scalar or a numpy array; the result has matching shape.
    """
    x = np.asarray(x, dtype=complex)
    acc = np.full(x.shape, p.coeffs[-1], dtype=complex)
    for c in reversed(p.coeffs[:-1]):
        acc = acc * x + c
    if acc.shape == ():
        return complex(acc)
    return acc


def _newton_polish(coeffs, roots, steps=2):
    # coeffs ascending, may be a real or complex array; roots complex array.
    deriv = coeffs[1:] * np.arange(1, len(coeffs))
    for _ in range(steps):
        pv = np.full(roots.shape, coeffs[-1], dtype=complex)
        for c in coeffs[-2::-1]:
            pv = pv * roots + c
        dv = np.full(roots.shape, deriv[-1], dtype=complex)
        for c in deriv[-2::-1]:
            dv = dv * roots + c
        ok = np.abs(dv) > 0
        step = np.zeros_like(roots)
        np.divide(pv, dv, out=step, where=ok)
        # Do not let a near-multiple root fling the iterate away.
        big = np.abs(step) > 0.5 * (1.0 + np.abs(roots))
        step[big] = 0.0
        roots = roots - step
    return roots


def find_roots(p: Polynomial):
    """All roots of ``p`` with multiplicity.

    Solves the eigenvalue problem of the (balanced) companion matrix and
    polishes each eigenvalue with two Newton steps.  A polynomial whose
    coefficients are real up to roundoff residue is solved through a real
    companion matrix, which returns conjugate root pairs exactly closed.

    Returns
    -------
    list of complex
        ``p.degree`` roots, unordered.

    Raises
    ------
    ZeroPolynomial
        If ``p`` is the identically zero polynomial.
    """
    if p.is_zero:
        raise ZeroPolynomial("the zero polynomial has no well-defined roots")
    if p.degree == 0:
        return []
    c = np.asarray(p.coeffs)
    scale = np.abs(c).max()
    if np.abs(c.imag).max() <= _REAL_REL * scale:
        c = c.real.astype(float)
    n = len(c) - 1
    monic = c / c[-1]
    A = np.zeros((n, n), dtype=c.dtype)
    if n > 1:
        A[1:, :-1] = np.eye(n - 1, dtype=c.dtype)
    A[:, -1] = -monic[:-1]
    roots = np.linalg.eigvals(A).astype(complex)
    roots = _newton_polish(c, roots)
    return list(roots)
