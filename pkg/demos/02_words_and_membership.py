"""Affine isometries, membership checking, and free-group word machinery."""

import numpy as np

from properaffine import core, group

np.set_printoptions(precision=4, suppress=True)

space = core.standard_form(1)

# an affine isometry is a pair (A, u); membership of A is checked on entry
boost = group.affine_isometry(space, np.diag([2.0, 1.0, 0.5]), [0.0, 3.0, 0.0])
print("boost linear part:\n", boost.linear)
print("form defect:", group.form_defect(space, boost.linear))

# the identity-component test is an orientation test; diag(-1, 1, -1)
# preserves the form with determinant one, but reverses orientations
check = group.in_identity_component(space, np.diag([-1.0, 1.0, -1.0]))
print("\ndiag(-1,1,-1) in the identity component:", check.in_component)
print("  compressed determinant:", check.compressed_det,
      " isotropic sign:", check.isotropic_sign)
try:
    group.affine_isometry(space, np.diag([-1.0, 1.0, -1.0]))
except group.MembershipError as exc:
    print("  ingestion rejects it:", exc)

# words of a rank-2 free group, enumerated in a fixed order
print("\nfirst few reduced words:",
      [w.display() for w in group.word_ball(2, 2)][:8])
print("ball sizes, rank 2: length<=1: %d, <=2: %d, <=3: %d" % (
    len(group.word_ball(2, 1)), len(group.word_ball(2, 2)),
    len(group.word_ball(2, 3))))

rot = core.random_so_element(space, 3, scale=0.4)
other = group.affine_isometry(space, rot @ boost.linear @ np.linalg.inv(rot),
                              [0.1, 0.0, -0.2])
rep = group.FreeGroupRep(space=space, generators=(boost, other))

word = group.ReducedWord((1, -2, 1))
image = group.evaluate_word(rep, word)
print("\nimage of", word.display(), "has translation", image.translation)
print("form defect accumulated along the word:",
      group.form_defect(space, image.linear))

# elements stabilizing both standard isotropics are block diagonal
# with an invertible upper block of positive determinant
m = np.array([[1.0, 1.0], [0.0, 1.0]])
space2 = core.standard_form(2)
a = np.zeros((5, 5))
a[:2, :2] = m
a[2, 2] = 1.0
a[3:, 3:] = np.linalg.inv(m.T)
print("\nblock element preserves the form:",
      group.form_defect(space2, a) < 1e-14)
print("recovered upper block:\n", group.check_reductive_block_form(space2, a))
