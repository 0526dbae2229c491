"""Membership in the hyperbolicity cone of sigma_{2,4}, three ways.

The compressed pencil B~(x) is only 4x4. We test a handful of points with
it, with the longer word-indexed pencil B(x), and with the root oracle that
never builds a matrix. Run: python3 demos/sigma_cone.py
"""

from hypercone.branden import branden_pencil, compressed_pencil
from hypercone.exactla import Q, psd_check, psd_witness, qstr
from hypercone.hyperbolic import root_cone_member, sigma_instance

n, d = 4, 2
Bt, B, h = compressed_pencil(n, d), branden_pencil(n, d), sigma_instance(n, d)
print(f"B~ is {Bt.size}x{Bt.size}, B is {B.size}x{B.size}")

# (1,1,1,-1) sits on the boundary: sigma_2 vanishes there
points = [[1, 1, 1, 1], [3, 2, 0, 0], [1, 1, 1, -1], [1, 1, 1, -2], [1, -1, 0, 0]]
for a in points:
    a = [Q(x) for x in a]
    small, big, roots = psd_check(Bt(a)), psd_check(B(a)), root_cone_member(h, a)
    line = f"a = {[qstr(x) for x in a]}: B~ {small}, B {big}, roots {roots}"
    if not small:
        v = psd_witness(Bt(a))
        line += f"; witness {[qstr(x) for x in v]}"
    print(line)
