"""Catalog of deterministic example representations.

All linear parts are orthogonal conjugates of diagonal boosts.  That keeps
them Euclidean-normal, so restricted power singular values are exactly
|lambda|^k and the contraction diagnostics are clean to machine precision;
it also makes the ping-pong geometry easy to control.  Translations are
chosen along neutral vectors, so the length-1 invariants have known signs,
and every sign claim is re-verified at construction time.
"""

import numpy as np

from .core import standard_form
from .group import AffineIsometry, FreeGroupRep
from .margulis import margulis_invariant
from .proximal import spectral_split

CATALOG_NAMES = ("margulis_positive_n1", "mixed_sign_n1", "linear_only", "block_n2")


def diagonalizing_frame(space):
    """Orthogonal basis [f_1..f_n, e_mid, g_1..g_n] with J = P diag(1..,-1..) P^T."""
    n, d = space.n, space.dim
    p = np.zeros((d, d))
    for i in range(n):
        p[i, i] = p[n + 1 + i, i] = 1.0 / np.sqrt(2.0)
        p[i, n + 1 + i] = 1.0 / np.sqrt(2.0)
        p[n + 1 + i, n + 1 + i] = -1.0 / np.sqrt(2.0)
    p[n, n] = 1.0
    return p


def compact_rotation(space, i, j, theta):
    """Rotation of the (i, j) plane of the positive definite reference frame.

    Indices refer to the n+1 positive directions (f_1..f_n, middle); the
    result is Euclidean-orthogonal and lies in the identity component.
    """
    p = diagonalizing_frame(space)
    r = np.eye(space.dim)
    c, s = np.cos(theta), np.sin(theta)
    r[i, i] = r[j, j] = c
    r[i, j] = -s
    r[j, i] = s
    return p @ r @ p.T


def boost_n1(lam):
    return np.diag([float(lam), 1.0, 1.0 / float(lam)])


def boost_n2(l1, l2):
    return np.diag([float(l1), float(l2), 1.0, 1.0 / float(l1), 1.0 / float(l2)])


def _schottky_pair_n1(lam, theta):
    space = standard_form(1)
    b = boost_n1(lam)
    rot = compact_rotation(space, 0, 1, theta)
    return space, b, rot @ b @ rot.T, rot


def _generators_margulis_n1(lam, theta, second_sign):
    space, a1, a2, rot = _schottky_pair_n1(lam, theta)
    nu1 = spectral_split(space, a1).neutral
    nu2 = spectral_split(space, a2).neutral
    g1 = AffineIsometry(space, a1, nu1)
    g2 = AffineIsometry(space, a2, second_sign * nu2)
    return space, (g1, g2)


def _generators_block_n2(l1, l2, angles):
    space = standard_form(2)
    b = boost_n2(l1, l2)
    rot = (compact_rotation(space, 0, 1, angles[0])
           @ compact_rotation(space, 1, 2, angles[1])
           @ compact_rotation(space, 0, 2, angles[2]))
    a1, a2 = b, rot @ b @ rot.T
    g1 = AffineIsometry(space, a1, spectral_split(space, a1).neutral)
    g2 = AffineIsometry(space, a2, spectral_split(space, a2).neutral)
    return space, (g1, g2)


def catalog_rep(name, lam=16.0, theta=np.pi / 2):
    """Validated representation for a catalog name.

    margulis_positive_n1: two crossed-axis boosts with translations along
    their neutral vectors, both length-1 invariants positive.
    mixed_sign_n1: same linear parts, second translation negated.
    linear_only: same linear parts, zero translations.
    block_n2: n=2 diagonal boosts with a generic compact conjugation.
    """
    if name == "margulis_positive_n1":
        space, gens = _generators_margulis_n1(lam, theta, +1.0)
        expected = (+1, +1)
    elif name == "mixed_sign_n1":
        space, gens = _generators_margulis_n1(lam, theta, -1.0)
        expected = (+1, -1)
    elif name == "linear_only":
        space, (g1, g2) = _generators_margulis_n1(lam, theta, +1.0)
        gens = (AffineIsometry(space, g1.linear, np.zeros(space.dim)),
                AffineIsometry(space, g2.linear, np.zeros(space.dim)))
        expected = (0, 0)
    elif name == "block_n2":
        space, gens = _generators_block_n2(3.0, 2.0, (0.7, 0.4, 0.3))
        expected = (+1, +1)
    else:
        raise KeyError("unknown catalog name %r; known: %s"
                       % (name, ", ".join(CATALOG_NAMES)))
    rep = FreeGroupRep(space=space, generators=gens)
    for g, want in zip(rep.generators, expected):
        alpha = margulis_invariant(space, g)
        if want == 0:
            assert abs(alpha) < 1e-12
        else:
            assert alpha * want > 0, "catalog sign verification failed"
    return rep


def catalog(name, lam=16.0, theta=np.pi / 2):
    """Catalog entry as a portable representation document."""
    from .reports import rep_to_document
    return rep_to_document(catalog_rep(name, lam=lam, theta=theta), label=name)
