"""
Integral decomposition
----------------------

Every lattice point of P1 + P2 splits as x + y with x, y lattice points of
P1 and P2, provided both polytopes are in the class of one unimodular
system.  The decomposition is built from a real split, then rounded using
a basis of system columns; each step is checked as it goes.
"""

from unimod_dca import IntMatrix, UnimodularSystem, hull, integral_decompose, system_mnat
from unimod_dca.decompose import verify_dcp2
from unimod_dca.errors import IntegralityFailure

a = system_mnat(2)
square = hull([(0, 0), (1, 0), (0, 1), (1, 1)])
triangle = hull([(0, 0), (1, 0), (0, 1)])

dec = integral_decompose(a, square, triangle, (2, 1))
print(f"(2, 1) = {dec.x_star} + {dec.y_star}")
print("real split:", dec.x, dec.y, "face dims:", dec.face1.dim, dec.face2.dim)
print("checks:", all(dec.checks.values()))

report = verify_dcp2(a, square, triangle)
print("all", report.n_lattice_points, "points decompose:", report.ok)

# force the skew system through the same path
skew = UnimodularSystem(IntMatrix.from_rows([[1, 1], [1, -1]]), check=False)
try:
    integral_decompose(skew, hull([(0, 0), (1, 1)]), hull([(1, 0), (0, 1)]), (1, 1))
except IntegralityFailure as exc:
    print("skew system:", exc)
