"""The smallest worked example: V = R^3 = V_3 + V_{2,1}.

An S_3-equivariant 3x3 pencil phi is read as a coefficient profile, turned
into the O(3)-equivariant 6x6 pencil Phi on symmetric matrices, and
rewritten in the basis 1, E11-E22, E11-E33, E12+E21, E13+E31, E23+E32.
Then det Phi(A) is checked against its factorization in P_1, P_2, P_3.
"""

import random

from hypercone.equivariant import (assemble_phi, extract_profile, in_reference_basis, n3_example,
                                   n3_reference_w_basis)
from hypercone.exactla import Q, RatMatrix, det, qstr
from hypercone.hyperbolic import matrix_sigma

spec, phi = n3_example((1, 1, 1, 1))
prof = extract_profile(phi, spec)
print("profile:", ", ".join(prof.describe()))
EP = assemble_phi(prof, spec)
Phi = in_reference_basis(EP, n3_reference_w_basis())

A = RatMatrix([[2, 1, 0], [1, 3, -1], [0, -1, 1]])
print("Phi(A) for A =", [[qstr(x) for x in row] for row in A.tolist()])
for row in Phi(A).tolist():
    print("   ", " ".join(f"{qstr(x):>4}" for x in row))

rng = random.Random(0)
for _ in range(3):
    a = [[Q(0)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            a[i][j] = a[j][i] = Q(rng.randint(-5, 5))
    X = RatMatrix(a)
    p1, p2, p3 = (matrix_sigma(X, k) for k in (1, 2, 3))
    lhs = det(Phi(X))
    rhs = 3 * (p1 ** 3 + 2 * p1 * p2 + 3 * p3) * (18 * p1 ** 3 + 3 * p1 * p2 - p3)
    print(f"det Phi = {qstr(lhs)}, factored form = {qstr(rhs)}")
