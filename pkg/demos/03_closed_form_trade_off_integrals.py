"""
Closed-form evaluation of the trade-off integrals
=================================================

The headline capability: the frequency integral of ln|P| (error
sensitivity) and of ln|M| (estimate sensitivity, against a 1/w^2 weight
in continuous time) evaluated exactly from pole/zero data, no quadrature
involved.  Which formula applies is decided by the gap between the
relative degrees of f*gy and gx, and each outcome carries its case tag
and a term-by-term breakdown.
"""

from filtint.closedform import (ct_error_integral, ct_estimate_integral,
                                dt_error_integral, dt_estimate_integral)
from filtint.suite import DOCUMENTS, system_from_document

# ---------------------------------------------------------------------------
# Continuous time, error sensitivity.  Three bounded regimes and one
# unbounded one, demonstrated on the built-in reference systems.

for name in ("ct_p_case1", "ct_p_case2", "ct_p_case3",
             "ct_p_case4_unbounded"):
    sys_ = system_from_document(DOCUMENTS[name])
    out = ct_error_integral(sys_)
    if out.bounded:
        print(f"{name:22s} [{out.case.value}]  value = {out.value:+.9f} "
              f"{out.unit}")
    else:
        print(f"{name:22s} [{out.case.value}]  unbounded, sign "
              f"{out.sign_if_unbounded:+.0f}")
        print(f"{'':22s} condition: {out.condition}")

# Every bounded outcome decomposes into named terms whose sum is the
# value. Case 1 for instance is driven entirely by unstable roots:
out = ct_error_integral(system_from_document(DOCUMENTS["ct_p_case1"]))
print("\ncase 1 terms:")
for key, term in sorted(out.terms.items()):
    print(f"  {key:34s} {term:+.9f}")
print(f"  {'sum':34s} {sum(out.terms.values()):+.9f}")

# ---------------------------------------------------------------------------
# Continuous time, estimate sensitivity.  The weighted integral is
# bounded only when |M(0)| = 1, i.e. the filter has unit static gain
# through the measurement path.  The balanced reference system hits it
# exactly; nudging the gain off breaks it.

balanced = ct_estimate_integral(system_from_document(DOCUMENTS["ct_m_balanced"]))
print(f"\nestimate integral, balanced: {balanced.value:.9f} nats "
      f"(= -86/3 = {-86/3:.9f})")

broken = ct_estimate_integral(system_from_document(DOCUMENTS["ct_m_unbounded"]))
print(f"estimate integral, |M(0)| != 1: unbounded, sign "
      f"{broken.sign_if_unbounded:+.0f}")

# ---------------------------------------------------------------------------
# Discrete time.  Values are reported in bits (base-2 logarithm over the
# unit circle); the converted nat value rides along for comparison.

for name in ("dt_p_case1", "dt_p_case2"):
    out = dt_error_integral(system_from_document(DOCUMENTS[name]))
    print(f"\n{name} [{out.case.value}]")
    print(f"  {out.value:+.9f} {out.unit}  "
          f"(= {out.value_converted:+.9f} {out.unit_converted})")

out = dt_estimate_integral(system_from_document(DOCUMENTS["dt_m"]))
print(f"\ndt_m [{out.case.value}]")
print(f"  {out.value:+.9f} {out.unit}")
for key, term in sorted(out.terms.items()):
    print(f"  {key:34s} {term:+.9f}")
