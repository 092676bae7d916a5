"""Hyperbolic tetrahedra from dihedral angles: Gram matrix, volume, saddle.

A tetrahedron is described by six dihedral angles in the edge order
(a, b, c, d, e, f) with opposite pairs {a,d}, {b,c}, {e,f}.  The volume comes
from the critical value of a dilogarithm potential evaluated at a unit-circle
root of an explicit quadratic; the same data feeds the asymptotic predictor
for the quantum 6j symbols.
"""

import math

import numpy as np

from qtet import AngleSet, classify_vertex, gram_det, potential_F, stationary_point, volume
from qtet.qdilog import clausen

# --- the regular ideal tetrahedron ------------------------------------------

A = AngleSet.regular(math.pi / 3)
d, G = gram_det(A)
print("regular tetrahedron with all angles pi/3 (every vertex ideal):")
print("  vertex classes:", [classify_vertex(A, v) for v in range(4)])
print(f"  det G = {d:.12f}   (closed form -27/16 = {-27/16})")

st = stationary_point(A)
print(f"  stationary point: zeta0 = {st.zeta0:.12f} (= 7/6), u0 = {st.u0:.6f}")
print(f"  quadratic discriminant = {st.a1**2 - 4*st.a0*st.a2:.6f} (= 16 det G)")

v = volume(A)
print(f"  volume = {v.vol:.12f}")
print(f"  Lobachevsky oracle 3 L(pi/3) = {1.5 * clausen(2 * math.pi / 3):.12f}")

# --- the regular family -------------------------------------------------------

# Shrinking the angle fattens the truncated tetrahedron; the volume decreases
# monotonically to zero at the Euclidean angle arccos(1/3).
print("\nregular family:")
print("  theta/pi    det G        volume")
for th in np.linspace(0.0, math.acos(1 / 3) - 1e-3, 8):
    A = AngleSet.regular(float(th))
    print(f"  {th/math.pi:7.4f}  {gram_det(A)[0]:+10.5f}  {volume(A).vol:12.9f}")

print(f"\n  theta -> 0 limit equals the ideal right-angled octahedron: {4 * clausen(math.pi/2):.9f}")

# --- a generic ultra-ideal tetrahedron ----------------------------------------

B = AngleSet.of(0.6, 0.7, 0.45, 0.65, 0.5, 0.55)
vb = volume(B)
print("\ngeneric ultra-ideal example (0.6, 0.7, 0.45, 0.65, 0.5, 0.55):")
print(f"  det G = {vb.det_g:+.6f}, zeta0 = {vb.zeta0:.6f}, volume = {vb.vol:.9f}")
F0, F1, F2 = potential_F(B, vb.zeta0)
print(f"  |F'(zeta0)| = {abs(F1):.2e} (critical point), F'' = {F2:.4f}")

# the volume is blind to the sign of any single dihedral angle
print("  volume after flipping the sign of edge c:", volume(B.flip(2)).vol)
