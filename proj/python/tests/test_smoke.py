import pytest

import wifiplan as wp


@pytest.fixture
def inst_a():
    return wp.Topology(wp.reference_instance())


def test_reference_values(inst_a):
    assert wp.eval_design(inst_a, [0, 1], {0: 0, 1: 0}) == 72.0
    assert wp.eval_design(inst_a, [0, 1], {0: 0, 1: 1}) == 108.0
    assert wp.eval_pcs(inst_a, [0, 1], 0.5) == pytest.approx(84.6, abs=1e-12)
    assert inst_a.associate([0, 1]) == [0, 0, 1]


def test_errors_map_to_python(inst_a):
    with pytest.raises(wp.NotACover):
        wp.eval_cs(inst_a, [1])
    with pytest.raises(wp.InvalidAlpha):
        wp.eval_pcs(inst_a, [0, 1], 2.0)
    with pytest.raises(wp.ParseError):
        wp.Instance.from_json("{")
    assert issubclass(wp.NotACover, wp.WifiplanError)


def test_solvers(inst_a):
    res = wp.solve_exact(inst_a, 0.0)
    assert res["sites"] == [0, 1]
    assert res["objective"] == 108.0
    assert res["proof_status"] == "optimal"
    fa = wp.solve_exact_fa(inst_a, [0, 1], 2)
    assert fa["objective"] == 108.0
    assert fa["freq"][0] != fa["freq"][1]
    assert wp.reduce_then_solve(inst_a, [0, 1], 3)["objective"] == 108.0
    assert wp.overlap_edges(inst_a, [0, 1]) == [(0, 1)]


def test_generate_roundtrip(tmp_path):
    inst = wp.generate(30, 10, seed=5)
    assert inst.to_json() == wp.generate(30, 10, seed=5).to_json()
    path = tmp_path / "inst.json"
    inst.save(str(path))
    assert wp.Instance.load(str(path)) == inst
    topo = wp.Topology(inst)
    local = wp.solve_local_search(topo, 0.4, seed=1)
    exact = wp.solve_exact(topo, 0.4)
    assert local["objective"] <= exact["objective"] + 1e-9
    assert wp.eval_sf(topo, exact["sites"]) <= wp.eval_cs(topo, exact["sites"])


def test_emit_and_pipeline(inst_a):
    lp = wp.emit_lp(inst_a, "psap-l", alpha=0.4)
    assert lp.startswith("\\ psap-l")
    assert "\nEnd\n" in lp
    assert wp.emit_lp(inst_a, "wfap-h2", num_freqs=2, sites=[0, 1]).count("v_0_1") > 0
    csv = wp.run_pipeline(inst_a, alphas=[0.0, 1.0]).splitlines()
    assert csv[0] == "alpha,psap_objective,wfap_f2,wfap_f3,num_sites,solver"
    assert csv[1] == "0,108,108,108,2,exact"
