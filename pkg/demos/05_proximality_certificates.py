"""Quantitative proximality certificates and the finite correcting set.

An element is (r, eps)-proximal when its attracting point keeps distance r
from the non-transversality locus of its repelling point and everything
outside an eps-neighborhood of that locus lands in the eps-ball around the
attracting point.  Certificates here are seeded Monte Carlo evidence.
"""

import numpy as np

from properaffine import core, proximal, repcatalog

space = core.standard_form(1)

print("certificates for diagonal boosts at r = 1 (10 000 samples):")
for lam, eps in ((4.0, 0.415), (16.0, 0.19), (64.0, 0.079)):
    cert = proximal.is_r_eps_proximal(space, np.diag([lam, 1, 1 / lam]),
                                      r=1.0, eps=eps, samples=10_000, seed=2024)
    print("  lam=%-4g eps=%-6g passed=%-5s separation=%.3f worst margin=%.4f"
          % (lam, eps, cert.passed, cert.separation, cert.margin_attract))
print("(stronger boosts contract harder, so smaller eps still passes)")

# shrinking eps below the threshold admits sample points too close to the
# repelling point for a single application to rescue
weak = proximal.is_r_eps_proximal(space, np.diag([16.0, 1, 1 / 16.0]),
                                  r=1.0, eps=0.12, samples=10_000, seed=2024)
print("\nlam=16 at eps=0.12: passed =", weak.passed,
      " worst margin =", round(weak.margin_attract, 4))

# the correcting-set search on the catalog Schottky representation
rep = repcatalog.catalog_rep("margulis_positive_n1")
for ball in (2, 4):
    cover = proximal.ams_cover(rep, r=0.4, eps=0.19, ball_length=ball,
                               search_length=1, samples=2000, seed=11)
    print("\nball radius %d: %d words, %d failures, correcting set {%s}"
          % (ball, len(cover.assignment) + len(cover.failures),
             len(cover.failures),
             ", ".join(s.display() for s in cover.correcting_set)))
    corrected = {w.display(): s.display()
                 for w, s in cover.assignment.items() if len(s) > 0}
    if corrected:
        sample = list(corrected.items())[:4]
        print("  conjugate-shaped words keep both fixed points in one "
              "ping-pong interval,")
        print("  so they need a nonempty corrector, e.g.:",
              ", ".join("%s -> %s" % kv for kv in sample))
