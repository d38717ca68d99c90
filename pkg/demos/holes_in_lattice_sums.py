"""
Holes in sums of lattice sets
-----------------------------

Two diagonal segments of lattice points add up to four points, but the
convex hull of those four points contains a fifth lattice point.  Two
staircase sets in three dimensions behave better: their sum has no hole,
though it loses discrete midpoint convexity.
"""

from unimod_dca import LatticeSet, hull, lattice_points, minkowski_sum, sum_no_hole_check
from unimod_dca.lattice_sets import holes, is_lnat_convex, lnat_violation

s1 = LatticeSet.of([(0, 0), (1, 1)])
s2 = LatticeSet.of([(1, 0), (0, 1)])
total = minkowski_sum(s1, s2)
print("sum:", total.points)
print("hull lattice points:", lattice_points(hull(total.points)).points)
print("missing:", holes(total).points)
print("hole free:", sum_no_hole_check(s1, s2))

a = LatticeSet.of([(0, 0, 0), (1, 1, 0)])
b = LatticeSet.of([(0, 0, 0), (0, 1, 1)])
c = minkowski_sum(a, b)
print()
print("3d sum:", c.points, "hole free:", sum_no_hole_check(a, b))
print("summands midpoint convex:", is_lnat_convex(a), is_lnat_convex(b))
x, y, up, down = lnat_violation(c)
print(f"midpoints of {x} and {y}: ceil {up}, floor {down}; both should lie in the sum")
