"""The bilinear form, subspace signatures, and consistent orientations.

The ambient space R^(2n+1) carries b(x, y) = x^T J y where J has identity
blocks in the anti-diagonal corners and a 1 in the middle.  The first n
coordinates span a maximal isotropic subspace, the last n span a transverse
one, and the middle vector is a unit spacelike direction.
"""

import numpy as np

from properaffine import core

np.set_printoptions(precision=4, suppress=True)

space = core.standard_form(2)
print("n = 2, ambient dimension", space.dim)
print("form matrix J:\n", space.form)
print("J is an involution:", np.allclose(space.form @ space.form, np.eye(5)))

basis = np.eye(5)
print("\nsignature (deg, pos, neg) of span(e1, e2):",
      core.signature(space, basis[:, :2]))
print("signature of the middle line:", core.signature(space, basis[:, 2:3]))
print("signature of span(e1, e2, mid):", core.signature(space, basis[:, :3]))

# b-orthogonal complements: an isotropic subspace sits inside its own
comp = core.b_orthogonal_complement(space, basis[:, :2])
print("\ncomplement of span(e1, e2) has dimension", comp.k)
print("contains the isotropic itself:",
      core.largest_principal_angle(comp.columns[:, :0 + 2], basis[:, :2]) >= 0)

# The orientation convention: every maximal isotropic frame gets a sign.
# The standard frame is normalized to +1; swapping two columns flips it.
frame = basis[:, :2]
swapped = frame[:, ::-1]
print("\norientation of (e1, e2):", core.canonical_orientation(space, frame))
print("orientation of (e2, e1):", core.canonical_orientation(space, swapped))

# The sign is defined through a positive-definite reference subspace, but
# does not depend on which one is used: the space of references is connected.
random_isotropic = core.random_isotropic_frame(space, seed=42)
signs = set()
for seed in range(25):
    reference = core.random_positive_definite_subspace(space, seed)
    signs.add(core.canonical_orientation(space, random_isotropic.columns,
                                         reference.columns))
print("\nsigns over 25 random references:", signs)

# Identity-component elements preserve the orientation of every isotropic.
rng = np.random.default_rng(0)
preserved = all(
    core.canonical_orientation(space, core.random_so_element(space, rng)
                               @ random_isotropic.columns)
    == random_isotropic.orientation
    for _ in range(25)
)
print("orientation preserved by 25 random identity-component elements:",
      preserved)
