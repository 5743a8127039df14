import pytest

import pstep


def close(a, b, rel=1e-6):
    return abs(a - b) <= rel * max(1.0, abs(b))


def test_random_instance_shape():
    inst = pstep.generate_random(5, seed=2)
    assert inst.n == 5
    assert len(inst.demand) == 7
    assert inst.demand[0] == 0 and inst.demand[6] == 0
    assert not inst.has_windows


def test_native_json_round_trip():
    inst = pstep.generate_random(4, seed=9, time_windows=True)
    again = pstep.parse_instance(inst.to_json())
    assert again.n == inst.n
    assert again.has_windows
    assert again.cost(1, 2) == inst.cost(1, 2)


def test_bad_json_raises_value_error():
    with pytest.raises(ValueError):
        pstep.parse_instance("{ not json")


def test_colgen_matches_vehicle_flow_and_route_lp():
    inst = pstep.generate_random(5, seed=4)
    z1 = pstep.solve_relaxation(inst, 1)
    assert z1["status"] == "optimal"
    assert close(z1["bound"], pstep.vf_bound(inst))
    zr = pstep.solve_relaxation(inst, inst.n + 1, workers=2)
    assert close(zr["bound"], pstep.sp_lp_bound(inst))


def test_colgen_matches_explicit_with_windows():
    inst = pstep.generate_random(5, seed=7, time_windows=True)
    for p in (2, 3):
        got = pstep.solve_relaxation(inst, p, time_windows=True)["bound"]
        assert close(got, pstep.explicit_bound(inst, p, True))


def test_short_cluster_reversal():
    inst = pstep.generate_short_clusters(2, 1, 1)
    assert inst.n == 4
    assert pstep.explicit_bound(inst, 3) <= 4 / 3 + 1e-9
    assert pstep.explicit_bound(inst, 2) >= 2 - 1e-9


def test_one_step_enumeration_is_the_legal_arc_set():
    inst = pstep.generate_random(3, seed=1, tightness=0.01)
    paths = pstep.enumerate_psteps(inst, 1)
    # arcs i -> j with i in {0..n}, j in {1..n+1}, i != j, minus 0 -> n+1
    assert len(paths) == (inst.n + 1) * (inst.n + 1) - inst.n - 1
    assert [0, inst.n + 1] not in paths


def test_check_path_reports_the_rule():
    inst = pstep.generate_random(4, seed=3)
    assert pstep.check_path(inst, [1, 2, 1], 2) == "elementarity violation"
    assert pstep.check_path(inst, [0, 1, 5], 2) == "valid"


def test_integer_optimum_bounds_relaxations():
    inst = pstep.generate_random(5, seed=5)
    feasible, value, routes = pstep.integer_optimum(inst)
    assert feasible
    assert sorted(c for r in routes for c in r[1:-1]) == [1, 2, 3, 4, 5]
    assert pstep.sp_lp_bound(inst) <= value + 1e-9


def test_turning_points_reach_the_target_bound():
    inst = pstep.generate_random(5, seed=8)
    res = pstep.solve_relaxation(inst, 1, turning_points=[(3, 3)])
    assert res["p"] == 3
    assert close(res["bound"], pstep.explicit_bound(inst, 3))


def test_validation_suite_passes():
    checks = pstep.run_suite("equivalence", n_max=5, instances=3)
    assert checks and all(passed for _, _, passed, _ in checks)
