"""Newton's inequality for sigma_{1,3}, sigma_{2,3} as explicit squares.

The Gram matrix comes from the Wronskian construction restricted to
diagonal matrices; LDL^T turns it into a weighted sum of squares of
multiaffine polynomials.
"""

from hypercone.certificates import newton_classical_certificate, sos_decompose, verify
from hypercone.exactla import qstr

cert = newton_classical_certificate(3, 1)
print("target: (s1/3)^2 - (s2/3) * s0")
print("gram:")
for row in cert.gram.tolist():
    print("   ", " ".join(f"{qstr(x):>6}" for x in row))
cert.squares = sos_decompose(cert)
for c, q in cert.squares:
    if c:
        terms = " + ".join(f"{qstr(v)}*x{''.join(str(i + 1) for i in S)}"
                           for (S,), v in sorted(q.items()) if v)
        print(f"  {qstr(c)} * ({terms})^2")
res = verify(cert)
print("verified:", res.ok, [name for name, ok, _ in res.checks])
