import math
import os

import pytest

import hyperperc as hp


def test_build_and_basic_queries():
    g = hp.build_graph(hp.ModelParams(2000, 0.75, 1.0, 3))
    assert len(g) == 2000
    assert g.edge_count > 0
    assert sum(g.degree(v) for v in range(len(g))) == 2 * g.edge_count
    assert g == hp.build_graph(hp.ModelParams(2000, 0.75, 1.0, 3), exact=True)
    u, v = g.edges()[0]
    assert v in g.neighbors(u)


def test_distance_and_radius():
    assert hp.hyperbolic_distance(5.0, 0.0, 5.0, math.pi / 2) == pytest.approx(9.3069, abs=1e-4)
    p = hp.ModelParams(100, 0.75)
    assert 0.0 <= hp.sample_radius(0.5, p) <= p.radius


def test_percolation_pipeline(tmp_path):
    g = hp.build_graph(hp.ModelParams(3000, 0.7, 1.0, 5))
    path = str(tmp_path / "g.json")
    hp.save_graph(g, path)
    assert hp.load_graph(path) == g
    rec = hp.run_single(g, rho=1.0, p=1.0, r=2, seed=1)
    assert rec["af_size"] == 3000 and rec["rounds"] == 0
    a0 = hp.initial_infection(g, 0.05, 1)
    res = hp.bootstrap(g, a0, 2)
    assert set(a0) <= set(res["finally_infected"])
    assert len(hp.r_core(g, 2)) <= len(g)
    assert hp.largest_component(hp.bond_percolate(g, 0.5, 1)) <= hp.largest_component(g)


def test_errors(tmp_path):
    with pytest.raises(hp.ParameterError):
        hp.ModelParams(0, 0.75)
    with pytest.raises(hp.IoError):
        hp.load_graph(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(hp.SchemaError):
        hp.load_graph(str(bad))
    assert issubclass(hp.ChecksumError, hp.SchemaError)
    assert issubclass(hp.SchemaError, hp.Error)


def test_fixtures():
    root = os.environ.get("HYPERPERC_FIXTURES")
    if not root:
        pytest.skip("fixture directory not configured")
    k5 = hp.load_graph(os.path.join(root, "k5.json"))
    assert hp.mean_local_clustering(k5) == pytest.approx(1.0)
    empty = hp.load_graph(os.path.join(root, "edgeless.json"))
    assert hp.mean_local_clustering(empty) == 0.0
    assert hp.largest_component(empty) == 1


def test_csv_interface():
    assert hp.csv_header().split(",") == list(hp.SWEEP_COLUMNS)
    assert hp.SWEEP_COLUMNS[0] == "N" and hp.SWEEP_COLUMNS[-1] == "wall_time_ms"
    assert hp.p_from_multiplier(1.0, 10000, 0.5) == pytest.approx(1e-4)


def test_bands():
    c = hp.compute_C(alpha=0.75)
    assert c > 13.714
    d = hp.solve_band_recurrence(n=1e300, alpha=0.75, C=c)
    assert d["t"][0] == pytest.approx(math.log(1e300))
    assert all(x < 1e-10 for x in d["residuals"])
    with pytest.raises(hp.DecompositionError):
        hp.solve_band_recurrence(n=1e6, alpha=0.7, C=5.0)
