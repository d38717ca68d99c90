"""
Class membership
----------------

A polytope is in the class of a system when every face direction space is
spanned by system columns it contains.  Zonotopes built from the columns
are always members.  A diagonal segment is not a member of the M-natural
class; shearing it onto an axis makes it one, while shearing segment and
system together changes nothing.
"""

from unimod_dca import IntMatrix, hull, in_class, system_mnat, transform, zonotope
from unimod_dca.dc_classes import edge_directions_check_mnat

a = system_mnat(2)
hexagon = zonotope(a, [0, 1, 2])
print("hexagon vertices:", hexagon.vertices)
print("in class:", bool(in_class(a, hexagon)), "edges ok:", edge_directions_check_mnat(hexagon))

diag = hull([(0, 0), (1, 1)])
verdict = in_class(a, diag)
print("diagonal in class:", bool(verdict), verdict.reason, verdict.witness)

# shear so (1,1) becomes (0,1)
t = IntMatrix.from_rows([[1, -1], [0, 1]])
print("sheared diagonal in original class:", bool(in_class(a, diag.transform(t))))
print("sheared diagonal in sheared class:", bool(in_class(transform(a, t), diag.transform(t))))
