import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unimod_dca.dc_classes import system_b4, system_mnat
from unimod_dca.exact_linalg import determinant
from unimod_dca.harness import (
    HarnessConfig,
    named_system,
    random_submodular,
    random_unimodular_matrix,
    run_hull_sum_oracle,
    run_mnat_sum_closure,
    run_transform_equivalence,
    run_trial,
    run_verify,
    trial_rng,
)
from unimod_dca.serialization import dumps


@given(st.integers(0, 2**32), st.integers(1, 4))
def test_random_submodular_is_submodular(seed, size):
    f = random_submodular(trial_rng(seed, 0), size)
    for x in range(1 << size):
        for y in range(1 << size):
            assert f[x] + f[y] >= f[x | y] + f[x & y]


@given(st.integers(0, 2**32), st.integers(1, 5))
def test_random_unimodular_matrix(seed, n):
    assert determinant(random_unimodular_matrix(trial_rng(seed, 0), n)) in (1, -1)


def test_named_systems():
    assert named_system("mnat", 3) == system_mnat(3)
    assert named_system("B", 4) == system_b4()
    assert named_system("twisted1", 2).columns() == [(1, 0), (0, -1), (1, 1)]
    with pytest.raises(ValueError):
        named_system("nope", 2)


def test_config_validation():
    with pytest.raises(ValueError):
        HarnessConfig(trials=0)
    with pytest.raises(ValueError):
        HarnessConfig(dim=6, system=system_mnat(6))
    with pytest.raises(ValueError):
        HarnessConfig(dim=4, system=system_b4(), generator="gpolymatroid")
    with pytest.raises(ValueError):
        HarnessConfig(dim=3, system=system_b4())
    with pytest.raises(ValueError):
        HarnessConfig(seed=-1)


def test_same_seed_gives_identical_bytes():
    cfg = HarnessConfig(seed=42, trials=4, dim=3, generator="mixed")
    a, b = dumps(run_verify(cfg)), dumps(run_verify(cfg))
    assert a == b
    assert json.loads(a)["config"]["seed"] == 42


def test_parallel_run_matches_serial():
    cfg = HarnessConfig(seed=3, trials=4, dim=2)
    assert dumps(run_verify(cfg, workers=2)) == dumps(run_verify(cfg))


def test_single_trial_replays_in_isolation():
    cfg = HarnessConfig(seed=9, trials=5, dim=3)
    full = run_verify(cfg)
    assert full["ok"]
    assert run_trial(cfg, 4) == run_trial(cfg, 4)
    assert run_trial(cfg, 4)["p1"]


def test_standalone_oracles_small():
    assert run_mnat_sum_closure(0, 10)["failures"] == 0
    assert run_hull_sum_oracle(0, 20)["failures"] == 0
    assert run_transform_equivalence(0, 10)["failures"] == 0


def test_forced_non_unimodular_system_produces_counterexamples():
    from unimod_dca.dc_classes import UnimodularSystem
    from unimod_dca.exact_linalg import IntMatrix

    bad = UnimodularSystem(IntMatrix.from_rows([[1, 1], [1, -1]]), "bad", check=False)
    rep = run_verify(HarnessConfig(seed=1, trials=20, dim=2, system=bad))
    assert not rep["ok"] and rep["failures"] > 0
    cx = rep["counterexamples"][0]
    assert cx["p1"] and cx["p2"] and cx["failures"]
    stages = {f["stage"] for c in rep["counterexamples"] for f in c["failures"]}
    assert stages & {"lattice_sum", "decompose"}
