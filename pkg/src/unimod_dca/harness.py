"""Seeded random generators and the property harness.

Each trial draws its own ``random.Random`` from ``"{seed}:{index}"`` so a
single failing trial can be replayed without running the ones before it,
and so running trials in parallel never changes the report.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import itertools
import random

from .config import Budget, default_budget
from .dc_classes import (
    UnimodularSystem,
    edge_directions_check_mnat,
    gpolymatroid_points,
    in_class,
    system_b4,
    system_mnat,
    system_twisted_mnat,
    transform,
    zonotope,
)
from .decompose import verify_dcp2
from .errors import DCAError
from .exact_linalg import IntMatrix, determinant
from .lattice_sets import LatticeSet, is_mnat_convex, minkowski_sum, no_hole_check
from .polytopes import (
    Polytope,
    hull,
    is_integer_polytope,
    labelled_sum,
    lattice_points,
    minkowski_sum_polytopes,
)

SCHEMA = 1
GENERATORS = ("zonotope", "gpolymatroid", "mixed")


def trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


# ---------------------------------------------------------------------------
# generators


def random_zonotope(rng: random.Random, sys: UnimodularSystem, max_gens: int = 3,
                    max_mult: int = 2, shift: int = 2) -> Polytope:
    """Translated zonotope on a few distinct columns of ``sys``."""
    k = rng.randint(1, min(max_gens, sys.m))
    cols = sorted(rng.sample(range(sys.m), k))
    mults = [rng.randint(1, max_mult) for _ in cols]
    z = zonotope(sys, cols, mults)
    return z.translate([rng.randint(-shift, shift) for _ in range(sys.n)])


def random_submodular(rng: random.Random, size: int, terms: int = 2, cap: int = 2) -> list[int]:
    """Table of a random integer submodular function on ``size`` elements.

    Built as a modular part plus a sum of ``min(w(X), c)`` terms with
    nonnegative weights; each term is a concave function of a nonnegative
    modular function, hence submodular.
    """
    lin = [rng.randint(-1, 1) for _ in range(size)]
    parts = [([rng.randint(0, 1) for _ in range(size)], rng.randint(1, cap)) for _ in range(terms)]
    table = []
    for mask in range(1 << size):
        members = [i for i in range(size) if mask >> i & 1]
        v = sum(lin[i] for i in members)
        for w, c in parts:
            v += min(sum(w[i] for i in members), c)
        table.append(v)
    return table


def random_paramodular(rng: random.Random, n: int, **kw) -> tuple[list[int], list[int]]:
    """Paramodular pair obtained by projecting a base polyhedron.

    A submodular ``f`` on ``n + 1`` elements gives ``rho(X) = f(X)`` and
    ``mu(X) = f(all) - f(all - X)`` on the first ``n`` elements.
    """
    f = random_submodular(rng, n + 1, **kw)
    full = (1 << (n + 1)) - 1
    rho = [f[x] for x in range(1 << n)]
    mu = [f[full] - f[full & ~x] for x in range(1 << n)]
    return rho, mu


def random_gpolymatroid(rng: random.Random, n: int, shift: int = 1) -> Polytope:
    rho, mu = random_paramodular(rng, n)
    pts = gpolymatroid_points(rho, mu, n)
    v = [rng.randint(-shift, shift) for _ in range(n)]
    return hull([tuple(a + b for a, b in zip(p, v)) for p in pts.points])


def random_unimodular_matrix(rng: random.Random, n: int, steps: int = 4) -> IntMatrix:
    """Product of random elementary integer operations (det = +-1)."""
    t = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        op = rng.randrange(3) if n > 1 else 2
        if op == 0:
            i, j = rng.sample(range(n), 2)
            c = rng.choice((-1, 1))
            t[i] = [a + c * b for a, b in zip(t[i], t[j])]
        elif op == 1:
            i, j = rng.sample(range(n), 2)
            t[i], t[j] = t[j], t[i]
        else:
            i = rng.randrange(n)
            t[i] = [-a for a in t[i]]
    m = IntMatrix.from_rows(t)
    assert determinant(m) in (1, -1)
    return m


def random_lattice_set(rng: random.Random, n: int, max_points: int = 8, box: int = 3):
    k = rng.randint(1, max_points)
    return [tuple(rng.randint(-box, box) for _ in range(n)) for _ in range(k)]


# ---------------------------------------------------------------------------
# configuration


def named_system(name: str, dim: int) -> UnimodularSystem:
    if name in ("mnat", "AM", "A^M"):
        return system_mnat(dim)
    if name in ("b4", "B"):
        return system_b4()
    if name.startswith("twisted"):
        positive = int(name[len("twisted"):] or dim // 2)
        return system_twisted_mnat(dim, positive)
    if name == "identity":
        return UnimodularSystem(IntMatrix.identity(dim), f"identity{dim}")
    raise ValueError(f"unknown system {name!r}")


@dataclasses.dataclass(frozen=True)
class HarnessConfig:
    seed: int = 0
    trials: int = 10
    dim: int = 2
    system: UnimodularSystem = None
    generator: str = "zonotope"
    budget: Budget = dataclasses.field(default_factory=default_budget)
    strategies: tuple = ("iterative", "vertex")
    max_gens: int = 3
    max_mult: int = 2

    def __post_init__(self):
        if self.system is None:
            object.__setattr__(self, "system", system_mnat(self.dim))
        if not 1 <= self.dim <= 5:
            raise ValueError("dim must lie in 1..5")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.generator not in GENERATORS:
            raise ValueError(f"generator must be one of {GENERATORS}")
        if self.system.n != self.dim:
            raise ValueError(f"system has {self.system.n} rows but dim is {self.dim}")
        if self.generator != "zonotope" and not self.is_mnat:
            raise ValueError("g-polymatroid generators only make sense for the M-natural system")

    @property
    def is_mnat(self) -> bool:
        return self.system.matrix == system_mnat(self.dim).matrix

    def describe(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "dim": self.dim,
            "system": {"name": self.system.name, "entries": self.system.matrix.tolist()},
            "generator": self.generator,
            "strategies": list(self.strategies),
            "budget": dataclasses.asdict(self.budget),
        }


def _draw(rng: random.Random, cfg: HarnessConfig) -> Polytope:
    gen = cfg.generator
    if gen == "mixed":
        gen = rng.choice(("zonotope", "gpolymatroid"))
    if gen == "zonotope":
        return random_zonotope(rng, cfg.system, cfg.max_gens, cfg.max_mult)
    return random_gpolymatroid(rng, cfg.dim)


def _vertices_json(p: Polytope) -> list:
    return [[str(c) for c in v] for v in p.vertices]


def run_trial(cfg: HarnessConfig, index: int) -> dict:
    """One random pair: DCP1, closure, lattice identity, decompositions and,
    for the M-natural system, exchange-axiom and no-hole cross-checks."""
    rng = trial_rng(cfg.seed, index)
    p1, p2 = _draw(rng, cfg), _draw(rng, cfg)
    rec = {"trial": index, "p1": _vertices_json(p1), "p2": _vertices_json(p2)}
    failures = []
    try:
        total, _ = labelled_sum(p1, p2)
        for label, p in (("P1", p1), ("P2", p2), ("P1+P2", total)):
            if not is_integer_polytope(p):
                failures.append({"stage": "integer_polytope", "which": label})
        report = verify_dcp2(cfg.system, p1, p2, cfg.strategies, cfg.budget)
        failures.extend(report.failures)
        rec["lattice_points"] = report.n_lattice_points
        rec["decompositions"] = report.decompositions
        rec["max_iterations"] = report.max_iterations
        rec["splits"] = report.splits
        if cfg.is_mnat:
            s = minkowski_sum(lattice_points(p1, cfg.budget), lattice_points(p2, cfg.budget))
            if not is_mnat_convex(s):
                failures.append({"stage": "mnat_closure"})
            if not no_hole_check(s):
                failures.append({"stage": "no_hole"})
            if edge_directions_check_mnat(total, cfg.budget) != bool(in_class(cfg.system, total, cfg.budget)):
                failures.append({"stage": "edge_directions_vs_class"})
    except DCAError as exc:
        failures.append({"stage": "exception", "error": type(exc).__name__, "message": str(exc)})
    rec["failures"] = failures
    rec["ok"] = not failures
    return rec


def run_verify(cfg: HarnessConfig, workers: int = 1) -> dict:
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(workers) as ex:
            trials = list(ex.map(run_trial, itertools.repeat(cfg), range(cfg.trials)))
    else:
        trials = [run_trial(cfg, i) for i in range(cfg.trials)]
    failed = [t for t in trials if not t["ok"]]
    splits = {s: {"count": 0, "trivial_intersection": 0, "potential_decreasing": 0} for s in cfg.strategies}
    for t in trials:
        for strat, st in t.get("splits", {}).items():
            for k, v in st.items():
                splits[strat][k] += v
    return {
        "schema": SCHEMA,
        "config": cfg.describe(),
        "trials": cfg.trials,
        "failures": len(failed),
        "lattice_points": sum(t.get("lattice_points", 0) for t in trials),
        "decompositions": sum(t.get("decompositions", 0) for t in trials),
        "max_iterations": max((t.get("max_iterations", 0) for t in trials), default=0),
        "splits": splits,
        "counterexamples": failed,
        "ok": not failed,
    }


# ---------------------------------------------------------------------------
# standalone oracles


def run_mnat_sum_closure(seed: int, trials: int, max_dim: int = 4) -> dict:
    """Brute-force sums of random g-polymatroid lattice sets stay M-natural
    convex and hole free."""
    failed = []
    for i in range(trials):
        rng = trial_rng(seed, i)
        n = rng.randint(1, max_dim)
        a = gpolymatroid_points(*random_paramodular(rng, n), n)
        b = gpolymatroid_points(*random_paramodular(rng, n), n)
        s = minkowski_sum(a, b)
        if not (is_mnat_convex(s) and no_hole_check(s)):
            failed.append({"trial": i, "a": [list(p) for p in a], "b": [list(p) for p in b]})
    return {"trials": trials, "failures": len(failed), "counterexamples": failed}


def run_hull_sum_oracle(seed: int, trials: int, max_dim: int = 3, max_points: int = 8) -> dict:
    """``hull(S1 + S2)`` against ``hull(S1) + hull(S2)`` on random point sets."""
    failed = []
    for i in range(trials):
        rng = trial_rng(seed, i)
        n = rng.randint(1, max_dim)
        a = random_lattice_set(rng, n, max_points)
        b = random_lattice_set(rng, n, max_points)
        lhs = hull(minkowski_sum(LatticeSet.of(a, n), LatticeSet.of(b, n)).points)
        rhs = minkowski_sum_polytopes(hull(a), hull(b))
        if lhs.vertices != rhs.vertices:
            failed.append({"trial": i, "a": a, "b": b})
    return {"trials": trials, "failures": len(failed), "counterexamples": failed}


def run_transform_equivalence(seed: int, trials: int, max_dim: int = 4) -> dict:
    """``in_class(A, P) == in_class(T A, T P)`` for random unimodular ``T``.

    Half the polytopes are zonotopes of ``A`` (members), the rest hulls of
    random lattice points (usually not).
    """
    failed = []
    members = 0
    for i in range(trials):
        rng = trial_rng(seed, i)
        n = rng.randint(2, max_dim)
        sys = system_mnat(n) if n != 4 or rng.random() < 0.5 else system_b4()
        if rng.random() < 0.5:
            p = random_zonotope(rng, sys)
        else:
            p = hull(random_lattice_set(rng, n, 6, 2))
        t = random_unimodular_matrix(rng, n)
        before = bool(in_class(sys, p))
        after = bool(in_class(transform(sys, t), p.transform(t)))
        members += before
        if before != after:
            failed.append({"trial": i, "t": t.tolist(), "p": _vertices_json(p)})
    return {"trials": trials, "members": members, "failures": len(failed), "counterexamples": failed}
