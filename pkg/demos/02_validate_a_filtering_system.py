"""
Admissibility of a filtering system
===================================

A filtering system is the triple (gx, gy, f): the model generating the
signal, the model of the measurement path, and the estimator filter.  The
trade-off integrals only mean anything for admissible systems, so
validation is the front door of the library.  The four checks:

  a1  gx and gy are proper, gx is not identically zero
  a2  f is stable and proper
  a3  f*gy has relative degree at least that of gx
  a4  the error path gx - f*gy is stable: every unstable pole of gy is
      either shared with gx or cancelled by f, and at a shared unstable
      pole the difference must vanish

a4 is the interesting one.  A pole that gx and gy have in common may stay
in the filter path, but then the error transfer function can only be
stable if the numerator of gx - f*gy vanishes there, which pins down the
filter gain completely.
"""

from filtint.rational import RationalTF, TimeDomain
from filtint.sysmodel import (complementarity_check, error_sensitivity,
                              estimate_sensitivity, validate)

CT = TimeDomain.CONTINUOUS

# ---------------------------------------------------------------------------
# A healthy system: one unstable pole in gy (at +0.03) that the filter
# cancels with a matching zero.

gx = RationalTF(1.67, (-0.05,), (-0.04,), CT)
gy = RationalTF(1.25, (-0.06, -0.08), (0.03, -0.01, -0.07), CT)
f = RationalTF(1.34, (0.03, -0.09), (-0.68, -0.68, -0.68), CT)

sys_, report = validate(gx, gy, f)
print("all_ok:", report.all_ok)
print("checks: a1", report.a1_ok, " a2", report.a2_ok,
      " a3", report.a3_ok, " a4", report.a4_ok)
print("gy-only unstable poles handled by f:", sys_.gy_only_unstable)

# The sensitivities always satisfy P + M = 1; the library verifies this
# on a seeded frequency sample as a construction self-check.
p = error_sensitivity(sys_)
m = estimate_sensitivity(sys_)
print("P: gain %.6g, %d zeros, %d poles" % (p.gain, len(p.zeros),
                                            len(p.poles)))
print("M: gain %.6g, %d zeros, %d poles" % (m.gain, len(m.zeros),
                                            len(m.poles)))
print("complementarity residual:", complementarity_check(sys_))

# ---------------------------------------------------------------------------
# Now break it.  An unstable filter fails a2; leaving gy's unstable pole
# uncancelled fails a4.  Diagnostics name the offending roots.

bad_filter = RationalTF(1.34, (0.03, -0.09), (0.68, -0.68, -0.68), CT)
_, rep = validate(gx, gy, bad_filter)
print("\nunstable filter ->", rep.diagnostics)

lazy_filter = RationalTF(1.34, (-0.02, -0.09), (-0.68, -0.68, -0.68), CT)
_, rep = validate(gx, gy, lazy_filter)
print("uncancelled gy pole ->", rep.diagnostics)

# ---------------------------------------------------------------------------
# A shared unstable pole.  Here gx and gy both have a pole at +0.8.  The
# filter keeps it, and stability of the error path then forces one exact
# value of the filter gain; any other gain fails a4.

gx2 = RationalTF(1.0, (-0.5,), (0.8, -1.0), CT)
gy2 = RationalTF(1.0, (), (0.8, -2.0), CT)
pinned_gain = (1.3 * 2.8 * 2.3 * 3.8) / (1.4 * 1.8)
f2 = RationalTF(pinned_gain, (-0.6,), (-1.5, -3.0), CT)

sys2, rep2 = validate(gx2, gy2, f2)
print("\nshared unstable pole:", sys2.shared_unstable, " all_ok:",
      rep2.all_ok)
# The waterbed consequence: the shared pole reappears as an unstable ZERO
# of the error sensitivity.
print("P zeros include the shared pole:",
      [z for z in error_sensitivity(sys2).zeros if z.real > 0])

detuned = RationalTF(pinned_gain * 1.05, (-0.6,), (-1.5, -3.0), CT)
_, rep3 = validate(gx2, gy2, detuned)
print("5% gain detune ->", rep3.diagnostics)
