"""
Cutting planar cones and deciding equivalence
=============================================
"""

import math

from mucut import (FULL_PLANE, Unimodular2, apply_unimodular, cut_cone,
                   cut_plan, equivalence_witness, gl_equivalent,
                   lattice_index, lens_cone, normal_form, sphere_cone)

# Start from the whole plane and cut twice.  First cut leaves a half
# plane, second cut leaves a genuine two-generator cone.
half = cut_cone(FULL_PLANE, (0, 1))
quadrant = cut_cone(half, (1, 0))
print("after one cut:", half)
print("after two:    ", quadrant)

# Cutting the standard sphere cone along 3x - 2y >= 0
cone = cut_cone(sphere_cone(), (3, -2))
print()
print("sphere cone cut by (3,-2):", cone)

# Lens cones C_{p,q} are spanned by (1,0) and (p,q), so the sublattice
# index is q.  The complete invariant pairs that index with a shear
# residue; cones with index 1 are smooth.
print()
print("normal forms of small lens cones")
for p in range(1, 5):
    for q in range(1, p + 1):
        if math.gcd(p, q) != 1:
            continue
        if lattice_index(lens_cone(p, q)) != q:
            raise AssertionError("index drifted")
        nf = normal_form(lens_cone(p, q))
        smooth = "  (smooth)" if nf.is_smooth else ""
        print(f"  C_{{{p},{q}}} -> (p={nf.p}, q={nf.q}){smooth}")

# The sphere cone is a lens cone in disguise: it matches C_{1,2} under a
# unimodular change of basis, and the witness matrix is explicit.
target = lens_cone(1, 2)
print()
print("C_{1,2} equivalent to sphere cone:",
      gl_equivalent(target, sphere_cone()))
witness = equivalence_witness(target, sphere_cone())
print("witness:", witness)
print("moved cone equals sphere cone:",
      apply_unimodular(witness, target) == sphere_cone())
print("C_{2,1} equivalent to sphere cone:",
      gl_equivalent(lens_cone(2, 1), sphere_cone()))

# Any cone can be replayed as a sequence of cuts from the full plane.
plan = cut_plan(lens_cone(1, 1))
print()
print("cut plan for C_{1,1}:", list(plan))
replayed = FULL_PLANE
for normal in plan:
    replayed = cut_cone(replayed, normal)
print("replay reproduces the cone:", replayed == lens_cone(1, 1))

# Shears fixing the first generator act transitively on the q slot.
shear = Unimodular2(((1, 0), (1, 1)))
moved = apply_unimodular(shear, lens_cone(3, 1))
print()
print("sheared C_{3,1}:", moved)
print("still the same class:", gl_equivalent(moved, lens_cone(3, 1)))
