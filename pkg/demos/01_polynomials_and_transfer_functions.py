"""
Polynomials and rational transfer functions
===========================================

The two bottom layers of the library: exact polynomial arithmetic on real
coefficient vectors, and zero-pole-gain transfer functions with
conjugate-closed root lists.
"""

import numpy as np

from filtint.poly import evaluate as poly_evaluate
from filtint.poly import find_roots, from_roots, multiply, subtract
from filtint.rational import evaluate as freq_response
from filtint.rational import RationalTF, TimeDomain, classify, product_cancel

# ---------------------------------------------------------------------------
# Build a polynomial from its roots and recover them again.  Roots are
# stored ascending-degree, so Polynomial((2.0, 3.0, 1.0)) is 2 + 3x + x^2.

p = from_roots(1.0, (-1.0, -2.0))
print("coefficients of (x+1)(x+2):", p.coeffs)
print("value at x = 3:", poly_evaluate(p, 3.0))
print("roots recovered:", [complex(r) for r in find_roots(p)])

# Complex roots come in conjugate pairs and survive the round trip too.
q = from_roots(2.0, (-0.5 + 1.5j, -0.5 - 1.5j, 4.0))
print("\ncubic with a complex pair:", q.coeffs)
for r in sorted(find_roots(q), key=lambda z: (z.real, z.imag)):
    print(f"  root {r:.12g}")

# Subtraction trims exact cancellation: the difference of a polynomial
# with itself is the zero polynomial, not a degree-2 object with tiny
# leading coefficients.  This matters downstream, where the boundedness
# of an integral hinges on a leading term vanishing exactly.
print("\np - p:", subtract(p, p).coeffs, "(the zero polynomial)")
print("p * q degree:", multiply(p, q).degree)

# ---------------------------------------------------------------------------
# Transfer functions are zero-pole-gain triples tied to a time domain.
# Continuous-time evaluation is along the imaginary axis, discrete-time
# around the unit circle.

g = RationalTF(2.0, zeros=(-1.0,), poles=(-3.0, -4.0),
               domain=TimeDomain.CONTINUOUS)
mags = [abs(freq_response(g, w)) for w in (0.1, 1.0, 10.0)]
print("\n|g(jw)| at w = 0.1, 1, 10:", np.round(mags, 6))

# classify() splits roots by stability region; the continuous-time
# instability region is the open right half-plane.
parts = classify((-1.0, 0.5, -2.0, 3.0), TimeDomain.CONTINUOUS)
print("minimum phase:", parts.mp, " non-minimum phase:", parts.nmp)

# product_cancel multiplies two transfer functions and cancels matching
# zero/pole pairs, which is how the filter-measurement product f*gy is
# formed without inflating degrees.
f = RationalTF(1.5, zeros=(-3.0,), poles=(-5.0,),
               domain=TimeDomain.CONTINUOUS)
fg = product_cancel(f, g)
print("\nf*g after cancelling the pole at -3:")
print("  gain", fg.gain, " zeros", fg.zeros, " poles", fg.poles)
