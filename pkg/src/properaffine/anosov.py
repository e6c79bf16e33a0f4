"""Numerical evidence for contraction properties and the affine scorecard.

The flow is realized only along periodic orbits, via matrix powers of word
images: attracting/repelling frames sample the boundary map, pairwise
J-pairings measure transversality, and least-squares slopes of restricted
log singular values over k = 1..kmax stand in for the continuous-time
contraction constants.  The scorecard aggregates these with the sign test
and the cover search; its verdict is numerical evidence, never proof.
"""

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    largest_principal_angle,
    orthonormalize_oriented,
    _readonly,
)
from .group import evaluate_word, word_ball
from .margulis import spectrum
from .proximal import (
    NotProximalError,
    TransversalityError,
    ams_cover,
    neutral_vector,
    spectral_split,
)

SCORECARD_DISCLAIMER = ("all quantities are finite-precision numerical evidence "
                        "from periodic-orbit data; no verdict is a proof")


@dataclass(frozen=True)
class LimitSample:
    """Attracting/repelling frames and gap of one proximal word image."""

    word: object
    attracting: object
    repelling: object
    gap: float


def limit_map_samples(rep, ball_length, tol=None):
    """Boundary-map samples over the word ball, plus the skipped words.

    Deterministic word order; words with non-proximal image are recorded in
    the second return value rather than raising.
    """
    tol = rep.tol if tol is None else tol
    samples = []
    skipped = []
    for w in word_ball(rep.rank, ball_length):
        a = evaluate_word(rep, w).linear
        try:
            split = spectral_split(rep.space, a, tol=tol)
        except NotProximalError:
            skipped.append(w)
            continue
        samples.append(LimitSample(word=w, attracting=split.attracting,
                                   repelling=split.repelling, gap=split.gap))
    return samples, skipped


@dataclass(frozen=True)
class TransversalityMatrix:
    """Pairwise attracting-frame margins; NaN marks excluded same-point pairs."""

    margins: np.ndarray
    min_margin: float
    excluded_pairs: int


def transversality_matrix(space, samples, same_point_tol=1e-6):
    """Pairwise margins between attracting frames of distinct boundary points.

    The margin of a pair is the smallest singular value of the J-pairing of
    the two attracting frames.  Pairs whose attracting AND repelling data
    coincide (powers, conjugates fixing the same points) are excluded: their
    pairing is legitimately singular and says nothing about transversality.
    """
    if len(samples) < 2:
        raise ValueError("need at least 2 samples")
    qs = [orthonormalize_oriented(s.attracting.columns) for s in samples]
    m = len(samples)
    margins = np.full((m, m), np.nan)
    excluded = 0
    best = np.inf
    for i in range(m):
        for j in range(i + 1, m):
            same_att = largest_principal_angle(
                samples[i].attracting.columns, samples[j].attracting.columns
            ) < same_point_tol
            same_rep = largest_principal_angle(
                samples[i].repelling.columns, samples[j].repelling.columns
            ) < same_point_tol
            if same_att and same_rep:
                excluded += 1
                continue
            sv = np.linalg.svd(qs[i].T @ space.form @ qs[j], compute_uv=False)
            margins[i, j] = margins[j, i] = float(sv[-1])
            best = min(best, float(sv[-1]))
    return TransversalityMatrix(margins=_readonly(margins),
                                min_margin=float(best) if best < np.inf else np.nan,
                                excluded_pairs=excluded)


@dataclass(frozen=True)
class ContractionTrace:
    """Restricted log singular values of powers and their fitted slopes."""

    k_values: np.ndarray
    log_sv_plus: np.ndarray
    log_sv_minus: np.ndarray
    slope_plus: float
    slope_minus: float
    residual_plus: float
    residual_minus: float
    gap: float


def contraction_trace(space, a, kmax, tol=DEFAULT_TOL):
    """Power-contraction diagnostics of a proximal element.

    Restricts A^k to the attracting and repelling subspaces (bases fixed once
    from the splitting, Euclidean-orthonormal) and fits k -> min log singular
    value on V+ (slope should be +gap) and k -> max log singular value on V-
    (slope should be -gap); residuals are max absolute fit deviations.
    """
    if kmax < 3:
        raise ValueError("kmax must be >= 3")
    a = np.asarray(a, dtype=float)
    split = spectral_split(space, a, tol=tol)
    qp = orthonormalize_oriented(split.attracting.columns)
    qm = orthonormalize_oriented(split.repelling.columns)
    ks = np.arange(1, kmax + 1)
    log_plus = np.empty(kmax)
    log_minus = np.empty(kmax)
    # power the restrictions, not the ambient matrix: the contracting signal
    # in A^k is below the absolute float error of its large entries
    rp = qp.T @ a @ qp
    rm = qm.T @ a @ qm
    rpk = np.eye(space.n)
    rmk = np.eye(space.n)
    for i, _ in enumerate(ks):
        rpk = rpk @ rp
        rmk = rmk @ rm
        log_plus[i] = np.log(np.linalg.svd(rpk, compute_uv=False)[-1])
        log_minus[i] = np.log(np.linalg.svd(rmk, compute_uv=False)[0])
    fit_p = np.polyfit(ks, log_plus, 1)
    fit_m = np.polyfit(ks, log_minus, 1)
    res_p = float(np.abs(np.polyval(fit_p, ks) - log_plus).max())
    res_m = float(np.abs(np.polyval(fit_m, ks) - log_minus).max())
    return ContractionTrace(k_values=_readonly(ks.astype(float)),
                            log_sv_plus=_readonly(log_plus),
                            log_sv_minus=_readonly(log_minus),
                            slope_plus=float(fit_p[0]), slope_minus=float(fit_m[0]),
                            residual_plus=res_p, residual_minus=res_m,
                            gap=split.gap)


@dataclass(frozen=True)
class Splitting:
    """The three-way splitting V+ , neutral line, V- at a transverse pair."""

    v_plus: np.ndarray
    neutral_line: np.ndarray
    v_minus: np.ndarray
    min_singular_value: float
    condition_number: float


def splitting_at(space, vplus, vminus, tol=DEFAULT_TOL):
    """Frames (V+, L, V-) spanning the ambient space, L the b-positive line."""
    nu = neutral_vector(space, vplus, vminus, tol=tol)
    qp = orthonormalize_oriented(vplus.columns if hasattr(vplus, "columns") else vplus)
    qm = orthonormalize_oriented(vminus.columns if hasattr(vminus, "columns") else vminus)
    assembled = np.hstack([qp, nu[:, None], qm])
    sv = np.linalg.svd(assembled, compute_uv=False)
    if sv[-1] <= tol:
        raise TransversalityError("assembled splitting basis singular "
                                  "(smallest sv %.3e)" % sv[-1])
    return Splitting(v_plus=_readonly(qp), neutral_line=_readonly(nu[:, None]),
                     v_minus=_readonly(qm), min_singular_value=float(sv[-1]),
                     condition_number=float(sv[0] / sv[-1]))


@dataclass(frozen=True)
class ScorecardVerdict:
    """kind in {consistent_affine_anosov, inconsistent, insufficient_evidence}."""

    kind: str
    reasons: tuple


@dataclass(frozen=True)
class Scorecard:
    """Aggregated diagnostics backing the affine-Anosov consistency verdict."""

    label: str
    ball_length: int
    min_transversality_margin: float
    min_gap: float
    max_slope_deviation: float
    max_residual: float
    spectrum_verdict: object
    skipped_words: tuple
    cover_failures: tuple
    cover_set_size: int
    thresholds: dict
    verdict: ScorecardVerdict
    disclaimer: str = SCORECARD_DISCLAIMER


def affine_anosov_scorecard(rep, ball_length=4, r=0.45, eps=0.21, samples=2000,
                            seed=0, search_length=1, kmax=20,
                            margin_threshold=1e-6, residual_threshold=1e-6,
                            slope_threshold=1e-6, zero_tol=None, label=""):
    """Combined scorecard: transversality, contraction, sign test, cover search.

    Contraction traces run on the proximal length-1 words: those are the
    elements the catalog pins down, and for longer non-normal products the
    restricted singular values carry a transient that decays only
    geometrically, which would drown the residual threshold without saying
    anything about contraction itself.
    """
    samples_list, skipped = limit_map_samples(rep, ball_length)
    generator_words = word_ball(rep.rank, 1)
    nonprox_generators = [w for w in skipped if len(w) == 1]

    min_gap = min((s.gap for s in samples_list), default=np.nan)
    # gate transversality at generator level: attracting points of distinct
    # deep words get arbitrarily close (the limit set is dense), so a fixed
    # threshold on ball-level pair margins would reject every genuine example
    gen_samples = [s for s in samples_list if len(s.word) == 1]
    if len(gen_samples) >= 2:
        tmat = transversality_matrix(rep.space, gen_samples)
        min_margin = tmat.min_margin
    else:
        min_margin = np.nan

    slope_dev = 0.0
    residual = 0.0
    proximal_words = {s.word for s in samples_list}
    for w in generator_words:
        if w in proximal_words:
            trace = contraction_trace(rep.space, evaluate_word(rep, w).linear,
                                      kmax=kmax, tol=rep.tol)
            slope_dev = max(slope_dev, abs(trace.slope_plus - trace.gap),
                            abs(trace.slope_minus + trace.gap))
            residual = max(residual, trace.residual_plus, trace.residual_minus)

    spec = spectrum(rep, ball_length, zero_tol=zero_tol, label=label)
    cover = ams_cover(rep, r=r, eps=eps, ball_length=ball_length,
                      search_length=search_length, samples=samples, seed=seed,
                      tol=rep.tol)

    reasons = []
    if nonprox_generators:
        reasons = ["non-proximal generator word %s" % w.display()
                   for w in nonprox_generators]
        verdict = ScorecardVerdict("insufficient_evidence", tuple(reasons))
    elif spec.verdict.kind in ("mixed", "degenerate"):
        if spec.verdict.kind == "mixed":
            pos, neg = spec.verdict.witnesses
            reasons.append("mixed signs: alpha(%s) > 0, alpha(%s) < 0"
                           % (pos.display(), neg.display()))
        else:
            witness = spec.verdict.witnesses[0].display() if spec.verdict.witnesses else "all words skipped"
            reasons.append("degenerate invariant: %s" % witness)
        verdict = ScorecardVerdict("inconsistent", tuple(reasons))
    else:
        if not np.isnan(min_margin) and min_margin < margin_threshold:
            reasons.append("transversality margin %.3e below threshold" % min_margin)
        if slope_dev > slope_threshold:
            reasons.append("contraction slope deviates from gap by %.3e" % slope_dev)
        if residual > residual_threshold:
            reasons.append("contraction residual %.3e above threshold" % residual)
        if reasons:
            verdict = ScorecardVerdict("inconsistent", tuple(reasons))
        else:
            soft = []
            if cover.failures:
                soft.append("%d ball words without an (r,eps) corrector"
                            % len(cover.failures))
            if skipped:
                soft.append("%d non-proximal words skipped" % len(skipped))
            if soft:
                verdict = ScorecardVerdict("insufficient_evidence", tuple(soft))
            else:
                verdict = ScorecardVerdict("consistent_affine_anosov", ())

    thresholds = {"margin": margin_threshold, "residual": residual_threshold,
                  "slope": slope_threshold, "kmax": kmax}
    return Scorecard(label=label, ball_length=int(ball_length),
                     min_transversality_margin=float(min_margin),
                     min_gap=float(min_gap),
                     max_slope_deviation=float(slope_dev),
                     max_residual=float(residual),
                     spectrum_verdict=spec.verdict,
                     skipped_words=tuple(skipped),
                     cover_failures=cover.failures,
                     cover_set_size=len(cover.correcting_set),
                     thresholds=thresholds, verdict=verdict)
