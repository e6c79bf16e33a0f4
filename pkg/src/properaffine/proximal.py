"""Spectral splittings, neutral vectors, and proximality certificates.

A proximal element splits R^(2n+1) into an attracting maximal isotropic V+
(eigenvalue moduli > 1), a repelling one V- (moduli < 1) and a b-positive
neutral line fixed by the element.  The neutral vector on that line is
b-normalized and signed by an orientation convention: positively oriented
bases of V+ and V-, with the neutral vector in between, must form a positive
basis of the ambient space.

Quantitative proximality follows the (r, eps) scheme: the attracting point
must sit at distance >= r from the non-transversality locus of the repelling
point, and the element must push everything outside an eps-neighborhood of
that locus into an eps-ball around the attracting point.  Containment is
certified by seeded Monte Carlo sampling; certificates record sample count,
seed and worst margin, and are evidence, not proof.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import (
    DEFAULT_TOL,
    FrameError,
    GeometryError,
    IsotropicFrame,
    as_columns,
    b_orthogonal_complement,
    isotropic_frame,
    largest_principal_angle,
    orthonormalize_oriented,
    random_so_element,
    signature,
    _readonly,
)
from .group import evaluate_word, word_ball, EMPTY_WORD


class NotProximalError(GeometryError):
    """The element has no spectral gap across the unit circle."""


class TransversalityError(GeometryError):
    """Two isotropic subspaces are not transverse within tolerance."""


class InsufficientSamplesError(GeometryError):
    """The sampler produced no admissible points for a containment check."""


class ParameterError(ValueError):
    """Invalid parameter combination (eps >= r/2, nonpositive counts, ...)."""


def proximal_moduli(space, a, tol=DEFAULT_TOL):
    """Eigenvalue moduli sorted descending, after checking proximality.

    Proximal means exactly n moduli above 1 and n below, separated from the
    middle one by more than tol; ties trigger NotProximalError rather than an
    arbitrary grouping.
    """
    a = np.asarray(a, dtype=float)
    n = space.n
    moduli = np.sort(np.abs(np.linalg.eigvals(a)))[::-1]
    # eigenvalues of large-norm words carry O(eps * ||A||) error, so the
    # unit-circle classification must scale with the norm
    thresh = tol * (1.0 + float(np.linalg.norm(a, 2)))
    n_exp = int(np.sum(moduli > 1.0 + thresh))
    n_con = int(np.sum(moduli < 1.0 / (1.0 + thresh)))
    if n_exp != n or n_con != n:
        raise NotProximalError(
            "need exactly %d moduli above and below 1, found %d above / %d below "
            "(moduli %s)" % (n, n_exp, n_con, np.array2string(moduli, precision=6)))
    gap = float(np.log(moduli[n - 1]))
    if gap <= thresh:
        raise NotProximalError("spectral gap %.3e below tolerance" % gap)
    return moduli


def _invariant_frame(a, select, n):
    """Orthonormal basis of the invariant subspace for selected eigenvalues."""
    def sort(re, im):
        return select(np.hypot(re, im))

    _, z, sdim = scipy.linalg.schur(np.asarray(a, dtype=float), output="real",
                                    sort=sort)
    if sdim != n:
        raise NotProximalError("ordered Schur selected %d eigenvalues, expected %d"
                               % (sdim, n))
    return z[:, :n]


@dataclass(frozen=True)
class SpectralSplit:
    """Attracting/repelling isotropic frames, neutral vector and gap margin."""

    attracting: IsotropicFrame
    repelling: IsotropicFrame
    neutral: np.ndarray
    gap: float
    eigenvalue_moduli: np.ndarray


def spectral_split(space, a, tol=DEFAULT_TOL):
    """Eigen-split a proximal element into V+ (dilated), V- (contracted), neutral.

    V+ spans the generalized eigenvectors with |lambda| > 1 (dimension n), V-
    those with |lambda| < 1; both are maximal isotropic and transverse.  The
    neutral vector is the b-unit vector on the remaining fixed line, signed by
    the orientation convention; gap = min log |lambda| over V+.
    """
    a = np.asarray(a, dtype=float)
    moduli = proximal_moduli(space, a, tol=tol)
    n = space.n
    hi = float(np.sqrt(moduli[n - 1] * moduli[n]))
    lo = float(np.sqrt(moduli[n] * moduli[n + 1]))
    zp = _invariant_frame(a, lambda m: m >= hi, n)
    zm = _invariant_frame(a, lambda m: m <= lo, n)
    # isotropy is exact in theory; the numerical defect scales with the
    # conditioning of the eigenproblem
    iso_tol = tol * (1.0 + float(np.linalg.norm(a, 2)))
    vplus = isotropic_frame(space, zp, tol=iso_tol)
    vminus = isotropic_frame(space, zm, tol=iso_tol)
    pairing = np.linalg.svd(zp.T @ space.form @ zm, compute_uv=False)
    if pairing[-1] <= tol:
        raise TransversalityError("attracting/repelling pairing singular value "
                                  "%.3e below tolerance" % pairing[-1])
    neutral = neutral_vector(space, vplus, vminus)
    return SpectralSplit(attracting=vplus, repelling=vminus,
                         neutral=_readonly(neutral),
                         gap=float(np.log(moduli[n - 1])),
                         eigenvalue_moduli=_readonly(moduli))


def neutral_vector(space, vplus, vminus, tol=DEFAULT_TOL):
    """b-unit vector spanning V+^perp intersect V-^perp, orientation-signed.

    The sign makes (v_1^+, ..., v_n^+, v, v_1^-, ..., v_n^-) a positive basis
    of R^(2n+1) after both frames are adjusted to carry canonical
    orientation +1.
    """
    fp = vplus if isinstance(vplus, IsotropicFrame) else isotropic_frame(space, as_columns(vplus), tol=max(tol, 1e-7))
    fm = vminus if isinstance(vminus, IsotropicFrame) else isotropic_frame(space, as_columns(vminus), tol=max(tol, 1e-7))
    qp = orthonormalize_oriented(fp.columns)
    qm = orthonormalize_oriented(fm.columns)
    stacked = np.vstack([qp.T @ space.form, qm.T @ space.form])
    kernel = scipy.linalg.null_space(stacked)
    if kernel.shape[1] != 1:
        raise TransversalityError("common b-orthogonal line has dimension %d; "
                                  "frames are not transverse" % kernel.shape[1])
    v = kernel[:, 0]
    norm2 = float(v @ space.form @ v)
    if norm2 <= tol:
        raise TransversalityError("neutral line is not spacelike (b(v,v) = %.3e)"
                                  % norm2)
    v = v / np.sqrt(norm2)
    # orthonormalization preserves frame orientation, so the stored signs apply
    bp = qp.copy()
    if fp.orientation < 0:
        bp[:, 0] = -bp[:, 0]
    bm = qm.copy()
    if fm.orientation < 0:
        bm[:, 0] = -bm[:, 0]
    det = np.linalg.det(np.hstack([bp, v[:, None], bm]))
    if abs(det) < 1e-12:
        raise TransversalityError("orientation determinant %.3e indeterminate" % det)
    return v if det > 0 else -v


@dataclass(frozen=True)
class TransversalityCheck:
    transverse: bool
    margin: float
    degenerate_1: np.ndarray
    degenerate_2: np.ndarray


def degenerate_part(space, frame, tol=DEFAULT_TOL):
    """Radical of the restricted form: kernel of the Gram matrix, as columns."""
    b = as_columns(frame)
    smax = np.linalg.svd(b, compute_uv=False)[0]
    ev, vec = np.linalg.eigh(space.gram(b))
    keep = np.abs(ev) <= max(tol, 1e-10) * smax * smax
    return orthonormalize_oriented(b @ vec[:, keep])


def transverse(space, frame1, frame2, tol=DEFAULT_TOL):
    """Transversality of two type-(n,1,0) subspaces, with a margin.

    Extracts the degenerate parts W1, W2, and tests R^(2n+1) = W1 + W2^perp
    via the smallest singular value of the assembled basis.
    """
    for i, f in enumerate((frame1, frame2)):
        sig = signature(space, as_columns(f))
        if sig != (space.n, 1, 0):
            raise FrameError("frame %d has signature %r, expected (n, 1, 0)"
                             % (i + 1, sig))
    w1 = degenerate_part(space, frame1, tol=tol)
    w2 = degenerate_part(space, frame2, tol=tol)
    w2_perp = orthonormalize_oriented(
        b_orthogonal_complement(space, w2).columns)
    assembled = np.hstack([w1, w2_perp])
    margin = float(np.linalg.svd(assembled, compute_uv=False)[-1])
    return TransversalityCheck(transverse=margin > tol, margin=margin,
                               degenerate_1=_readonly(w1), degenerate_2=_readonly(w2))


@dataclass(frozen=True)
class AffineFlagPair:
    """Transverse pair of affine subspaces of type (n,1,0): base points + frames."""

    space: object
    base1: np.ndarray
    base2: np.ndarray
    lin1: np.ndarray
    lin2: np.ndarray

    def __post_init__(self):
        check = transverse(self.space, self.lin1, self.lin2)
        if not check.transverse:
            raise TransversalityError("underlying subspaces are not transverse "
                                      "(margin %.3e)" % check.margin)
        for name in ("base1", "base2", "lin1", "lin2"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))


def grassmann_distance(l1, l2):
    """Largest principal angle between two maximal isotropics; a metric."""
    return largest_principal_angle(as_columns(l1), as_columns(l2))


def nontransverse_distance(space, x, x_minus):
    """Distance proxy to the non-transversality locus of x_minus.

    Smallest singular value of the J-pairing of the Euclidean-orthonormalized
    frames; vanishes exactly when the pair fails to be transverse.
    """
    qx = orthonormalize_oriented(as_columns(x))
    qm = orthonormalize_oriented(as_columns(x_minus))
    return float(np.linalg.svd(qx.T @ space.form @ qm, compute_uv=False)[-1])


def sample_isotropic_bank(space, seed, samples):
    """Deterministic bank of isotropic frames; sample i depends on (seed, i) only."""
    frames = []
    for i in range(samples):
        g = random_so_element(space, np.random.default_rng((int(seed), int(i))))
        frames.append(orthonormalize_oriented(g[:, : space.n]))
    return frames


@dataclass(frozen=True)
class ProximalityCertificate:
    """Monte-Carlo (r, eps)-proximality evidence for one element."""

    r: float
    eps: float
    attracting: IsotropicFrame
    repelling: IsotropicFrame
    separation: float
    margin_attract: float
    samples: int
    admissible: int
    seed: int
    passed: bool


def is_r_eps_proximal(space, g, r, eps, samples, seed, tol=DEFAULT_TOL,
                      _bank=None):
    """Certify that g is (r, eps)-proximal by seeded sampling.

    Checks separation(x+, nt(x-)) >= r, then verifies that every sampled
    isotropic frame outside the eps-neighborhood of nt(x-) is mapped into the
    eps-ball around x+ (largest principal angle).  margin_attract is the worst
    value of eps - d(g x, x+) over admissible samples.
    """
    if r <= 0 or eps <= 0 or eps >= r / 2.0:
        raise ParameterError("need 0 < eps < r/2 (got r=%g, eps=%g)" % (r, eps))
    if samples < 1:
        raise ParameterError("samples must be >= 1")
    split = spectral_split(space, g, tol=tol)
    xp = orthonormalize_oriented(split.attracting.columns)
    xm = orthonormalize_oriented(split.repelling.columns)
    separation = nontransverse_distance(space, xp, xm)
    bank = sample_isotropic_bank(space, seed, samples) if _bank is None else _bank
    g = np.asarray(g, dtype=float)

    if space.n == 1:
        vecs = np.column_stack([f[:, 0] for f in bank])      # (dim, samples)
        pair = np.abs((space.form @ xm[:, 0]) @ vecs)        # distance to nt(x-)
        keep = pair >= eps
        admissible = int(np.count_nonzero(keep))
        if admissible == 0:
            raise InsufficientSamplesError("no samples outside the eps-neighborhood "
                                           "of nt(x-)")
        img = g @ vecs[:, keep]
        img = img / np.linalg.norm(img, axis=0)
        cosines = np.clip(np.abs(xp[:, 0] @ img), 0.0, 1.0)
        dists = np.arccos(cosines)
        margin = float(np.min(eps - dists))
    else:
        margin = np.inf
        admissible = 0
        for frame in bank:
            if nontransverse_distance(space, frame, xm) < eps:
                continue
            admissible += 1
            d = grassmann_distance(orthonormalize_oriented(g @ frame), xp)
            margin = min(margin, eps - d)
        if admissible == 0:
            raise InsufficientSamplesError("no samples outside the eps-neighborhood "
                                           "of nt(x-)")
        margin = float(margin)

    passed = separation >= r and margin > 0.0
    return ProximalityCertificate(r=float(r), eps=float(eps),
                                  attracting=split.attracting,
                                  repelling=split.repelling,
                                  separation=separation,
                                  margin_attract=margin,
                                  samples=int(samples), admissible=admissible,
                                  seed=int(seed), passed=passed)


@dataclass(frozen=True)
class AmsCover:
    """Finite correcting set and per-word assignment from the cover search."""

    r: float
    eps: float
    ball_length: int
    search_length: int
    assignment: dict
    correcting_set: tuple
    failures: tuple


def ams_cover(rep, r, eps, ball_length, search_length, samples=2000, seed=0,
              tol=DEFAULT_TOL):
    """Search a finite set S with s*g (r, eps)-proximal for every ball word.

    For every word g in the ball, candidate correctors are tried in
    deterministic order (empty word first, then the search ball); the first s
    whose product passes the certificate wins.  Words with no corrector are
    reported as failures, not errors.
    """
    if ball_length < 1 or search_length < 1:
        raise ParameterError("ball and search lengths must be >= 1")
    space = rep.space
    candidates = [EMPTY_WORD] + word_ball(rep.rank, search_length)
    candidate_lin = [evaluate_word(rep, s).linear for s in candidates]
    bank = sample_isotropic_bank(space, seed, samples)
    assignment = {}
    failures = []
    used = []
    for w in word_ball(rep.rank, ball_length):
        gw = evaluate_word(rep, w).linear
        hit = None
        for s, s_lin in zip(candidates, candidate_lin):
            try:
                cert = is_r_eps_proximal(space, s_lin @ gw, r, eps, samples, seed,
                                         tol=tol, _bank=bank)
            except (NotProximalError, TransversalityError,
                    InsufficientSamplesError):
                continue
            if cert.passed:
                hit = s
                break
        if hit is None:
            failures.append(w)
        else:
            assignment[w] = hit
            if hit not in used:
                used.append(hit)
    return AmsCover(r=float(r), eps=float(eps), ball_length=int(ball_length),
                    search_length=int(search_length), assignment=assignment,
                    correcting_set=tuple(used), failures=tuple(failures))
