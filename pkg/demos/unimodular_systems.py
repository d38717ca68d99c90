"""
Unimodular systems
------------------

The columns of a unimodular matrix decide which edge and face directions a
polytope may use.  Here we build the standard systems, check the minors,
and see a 2x2 matrix with determinant -2 get turned away.
"""

from unimod_dca import IntMatrix, UnimodularSystem, is_totally_unimodular, is_unimodular
from unimod_dca import system_b4, system_mnat
from unimod_dca.errors import NotUnimodular

for n in range(1, 6):
    a = system_mnat(n)
    print(f"A^M n={n}: {a.m} columns, unimodular={is_unimodular(a.matrix)}")

b = system_b4()
for row in b.matrix.rows:
    print(" ", row)
print("B unimodular:", is_unimodular(b.matrix))

# A^M = [I | C] with C totally unimodular
c = system_mnat(4).matrix.select_columns(range(4, 10))
print("difference block totally unimodular:", is_totally_unimodular(c))

try:
    UnimodularSystem(IntMatrix.from_rows([[1, 1], [1, -1]]))
except NotUnimodular as exc:
    print("rejected:", exc)
