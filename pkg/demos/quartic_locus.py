"""Rank-drop picture for the Ma_{2,4} example on the slice a_1+...+a_4 = 1.

Prints a character map: '#' where the pencil is positive semidefinite,
'o' where a grid point lands exactly on the rank-drop quartic (rare on a
rational grid), '.' elsewhere. The convex '#' region is the spectrahedron.
"""

import sys

from hypercone.cli import quartic_locus

grid = int(sys.argv[1]) if len(sys.argv) > 1 else 25
rows = quartic_locus(grid)
cells = {}
for u, v, r, dt, psd in rows:
    cells[(u, v)] = "#" if psd else ("o" if dt == 0 else ".")
us = sorted({u for u, *_ in rows})
vs = sorted({v for _, v, *_ in rows})
for v in reversed(vs):
    print("".join(cells[(u, v)] for u in us))
print(f"{sum(1 for r in rows if r[4])} of {len(rows)} grid points inside")
