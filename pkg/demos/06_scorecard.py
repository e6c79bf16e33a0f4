"""The combined consistency scorecard on the built-in catalog.

The scorecard aggregates transversality margins, contraction slopes against
the spectral gap, the opposite-sign spectrum verdict, and the correcting-set
search.  Its verdict is numerical evidence, never proof: consistent means no
diagnostic contradicts the expected picture at the chosen thresholds.
"""

from properaffine import anosov, repcatalog

for name in ("margulis_positive_n1", "mixed_sign_n1", "linear_only"):
    rep = repcatalog.catalog_rep(name)
    card = anosov.affine_anosov_scorecard(rep, ball_length=3, r=0.4, eps=0.19,
                                          samples=1000, seed=6, label=name)
    print("%s:" % name)
    print("  verdict:        ", card.verdict.kind)
    if card.verdict.reasons:
        print("  reasons:        ", "; ".join(card.verdict.reasons))
    print("  spectrum:       ", card.spectrum_verdict.kind)
    print("  min gap:         %.4f" % card.min_gap)
    print("  gen. margin:     %.4f" % card.min_transversality_margin)
    print("  slope deviation: %.2e" % card.max_slope_deviation)
    print("  cover failures:  %d" % len(card.cover_failures))
    print()

print("disclaimer carried by every scorecard:")
print(" ", anosov.SCORECARD_DISCLAIMER)
