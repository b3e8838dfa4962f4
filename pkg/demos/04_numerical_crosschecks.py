"""
Numerical crosschecks of the closed forms
=========================================

Three independent ways of arriving at the same number: adaptive
Gauss-Kronrod quadrature of the log-magnitude, a residue-style identity
evaluated on the sensitivity's own roots, and the closed form.  For the
unbounded verdicts the quadrature turns into a divergence probe that
integrates over growing frequency windows and fits the tail growth.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from filtint.closedform import ct_error_integral, residue_crosscheck
from filtint.quad import ct_log_integral, divergence_probe
from filtint.rational import RationalTF, TimeDomain
from filtint.suite import DOCUMENTS, system_from_document
from filtint.sysmodel import error_sensitivity, validate

# ---------------------------------------------------------------------------
# Closed form vs quadrature vs residues on a bounded reference system.

sys_ = system_from_document(DOCUMENTS["ct_p_case2"])
closed = ct_error_integral(sys_)
p = error_sensitivity(sys_)

quad = ct_log_integral(p, tol=1e-10)
cross = residue_crosscheck(sys_)

print("closed form :", f"{closed.value:.12f}")
print("quadrature  :", f"{quad.value:.12f}",
      f"({quad.n_evaluations} evaluations, "
      f"error estimate {quad.abs_error_estimate:.1e})")
print("residues    :", f"{cross.p_value:.12f}")

# ---------------------------------------------------------------------------
# The unbounded case.  Quadrature cannot converge here; the probe
# integrates over frequency windows [1/R, R] for growing R and fits the
# per-decade growth of the partial integrals.

sys4 = system_from_document(DOCUMENTS["ct_p_case4_unbounded"])
probe = divergence_probe(error_sensitivity(sys4), tol=1e-6)
print("\nunbounded case probe: diverged =", probe.diverged,
      " sign =", f"{probe.divergence_sign:+.0f}")

# ---------------------------------------------------------------------------
# Knife edge.  The balanced case-3 value exists only at exactly K = 2K_x;
# a relative gain error of 1e-6 in either direction tips the integral to
# +inf or -inf, and the probe agrees with the sign the closed form picks.

doc = DOCUMENTS["ct_p_case3"]
base = system_from_document(doc)
print("\nbalanced value:", f"{ct_error_integral(base).value:.9f}")
for eps in (+1e-6, -1e-6):
    f_bumped = RationalTF(doc["f"]["gain"] * (1.0 + eps), base.f.zeros,
                          base.f.poles, TimeDomain.CONTINUOUS)
    bumped, _ = validate(base.gx, base.gy, f_bumped)
    out = ct_error_integral(bumped)
    pr = divergence_probe(error_sensitivity(bumped), tol=1e-8)
    print(f"  gain * (1{eps:+.0e}): closed form sign "
          f"{out.sign_if_unbounded:+.0f}, probe sign "
          f"{pr.divergence_sign:+.0f}")

# ---------------------------------------------------------------------------
# The waterbed picture behind the numbers: ln|P| must carry signed area.
# Areas below zero (good rejection) are paid for above zero, and the net
# signed area is exactly the closed-form value.

w = np.logspace(-3, 2, 2000)


def logabs(tf, w):
    num = np.ones_like(w, dtype=complex) * tf.gain
    for z in tf.zeros:
        num *= 1j * w - z
    den = np.ones_like(w, dtype=complex)
    for q in tf.poles:
        den *= 1j * w - q
    return np.log(np.abs(num / den))


curve = logabs(p, w)
fig, ax = plt.subplots(figsize=(7.0, 4.0))
ax.semilogx(w, curve, lw=1.5)
ax.fill_between(w, curve, 0.0, where=curve > 0, alpha=0.3, color="tab:red",
                label="amplified")
ax.fill_between(w, curve, 0.0, where=curve < 0, alpha=0.3, color="tab:blue",
                label="attenuated")
ax.axhline(0.0, color="k", lw=0.5)
ax.set_xlabel("frequency w (rad/s)")
ax.set_ylabel("ln |P(jw)|")
ax.set_title("error-sensitivity waterbed, reference case 2")
ax.legend()
fig.tight_layout()
out_png = pathlib.Path(__file__).parent / "waterbed_case2.png"
fig.savefig(out_png, dpi=120)
print(f"\nwrote {out_png}")
print("net signed area, 1/pi weighted:", f"{quad.value:.6f}",
      "(closed form", f"{closed.value:.6f})")
