"""
Random closure checks
---------------------

The harness draws seeded random pairs from a generator, then checks
integrality, class closure of the sum, the lattice-point identity and every
integral decomposition.  The same seed always gives the same report.
"""

from unimod_dca import system_b4
from unimod_dca.harness import HarnessConfig, run_verify
from unimod_dca.serialization import dumps

for dim, gen in [(2, "zonotope"), (3, "gpolymatroid"), (3, "mixed")]:
    rep = run_verify(HarnessConfig(seed=1, trials=20, dim=dim, generator=gen))
    print(f"dim {dim} {gen:12s} decompositions={rep['decompositions']:5d} failures={rep['failures']}")

rep = run_verify(HarnessConfig(seed=1, trials=10, dim=4, system=system_b4()))
print("b4 failures:", rep["failures"], "splits:", rep["splits"])

cfg = HarnessConfig(seed=99, trials=3, dim=2)
print("reproducible:", dumps(run_verify(cfg)) == dumps(run_verify(cfg)))
