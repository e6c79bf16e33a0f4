"""Spectral splittings of proximal elements and the signed neutral vector.

A proximal element splits the space into an attracting isotropic (eigenvalue
moduli > 1), a repelling one (moduli < 1), and a fixed spacelike line in
between.  The neutral vector is the b-unit vector on that line whose sign is
pinned by the orientation convention; it is the direction against which
Margulis invariants are measured.
"""

import numpy as np

from properaffine import anosov, core, proximal

np.set_printoptions(precision=4, suppress=True)

space = core.standard_form(1)
basis = np.eye(3)

split = proximal.spectral_split(space, np.diag([2.0, 1.0, 0.5]))
print("attracting line:", split.attracting.columns.ravel())
print("repelling line:", split.repelling.columns.ravel())
print("neutral vector:", split.neutral, " (the convention picks -e2 here)")
print("gap = log 2:", np.isclose(split.gap, np.log(2)))

# elliptic elements have no splitting
theta = 0.8
p = np.array([[1 / np.sqrt(2), 0, 1 / np.sqrt(2)],
              [0, 1, 0],
              [1 / np.sqrt(2), 0, -1 / np.sqrt(2)]])
rotation = p @ np.array([[np.cos(theta), -np.sin(theta), 0],
                         [np.sin(theta), np.cos(theta), 0],
                         [0, 0, 1]]) @ p.T
try:
    proximal.spectral_split(space, rotation)
except proximal.NotProximalError as exc:
    print("\nrotation rejected:", exc)

# the neutral vector is equivariant: moving the pair moves the vector
base = proximal.neutral_vector(space, basis[:, :1], basis[:, 2:3])
g = core.random_so_element(space, 7)
moved = proximal.neutral_vector(space, g @ basis[:, :1], g @ basis[:, 2:3])
print("\nequivariance error:", np.abs(moved - g @ base).max())

# swapping the arguments multiplies the vector by (-1)^n
for n in (1, 2, 3):
    sp = core.standard_form(n)
    eye = np.eye(sp.dim)
    fwd = proximal.neutral_vector(sp, eye[:, :n], eye[:, n + 1:])
    bwd = proximal.neutral_vector(sp, eye[:, n + 1:], eye[:, :n])
    ratio = bwd[np.argmax(np.abs(fwd))] / fwd[np.argmax(np.abs(fwd))]
    print("n=%d swap ratio: %+.0f" % (n, ratio))

# the three-way splitting at a transverse pair spans everything
space2 = core.standard_form(2)
eye5 = np.eye(5)
parts = anosov.splitting_at(space2,
                            core.isotropic_frame(space2, eye5[:, :2]),
                            core.isotropic_frame(space2, eye5[:, 3:]))
print("\nsplitting dimensions:", parts.v_plus.shape[1],
      parts.neutral_line.shape[1], parts.v_minus.shape[1])
print("assembled smallest singular value:", parts.min_singular_value)
