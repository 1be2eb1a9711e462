import json

import pytest

from tropdyn import serialize
from tropdyn.cli import run
from tropdyn.polyhedra import Cone, Fan, WeightedComplex
from tropdyn.tropical import TropicalPolynomial, uniform_bergman_fan


LINE_JSON = {
    "terms": [
        {"exp": [1, 0], "re": 1.0, "im": 0.0},
        {"exp": [0, 1], "re": 1.0, "im": 0.0},
        {"exp": [0, 0], "re": 1.0, "im": 0.0},
    ]
}


@pytest.fixture
def line_path(tmp_path):
    p = tmp_path / "line.json"
    p.write_text(json.dumps(LINE_JSON))
    return str(p)


def test_hypersurface_command(tmp_path, line_path, capsys):
    out = tmp_path / "cycle.json"
    assert run(["hypersurface", "-i", line_path, "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["balanced"] is True
    assert data["dim"] == 1
    rays = sorted(tuple(c["rays"][0]) for c in data["cells"])
    assert rays == [(-1, -1), (0, 1), (1, 0)]
    assert all(c["weight"] == 1 for c in data["cells"])


def test_balance_command_unbalanced(tmp_path, capsys):
    cycle = WeightedComplex.from_cone_cells(2, 1, [(((1, 0),), 1), (((0, 1),), 1)])
    path = tmp_path / "cycle.json"
    path.write_text(serialize.dumps_canonical(serialize.cycle_to_json(cycle)))
    assert run(["balance", "-i", str(path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["balanced"] is False
    assert report["violations"][0]["residual"] == [1, 1]


def test_tropicalize_command(tmp_path, line_path):
    out = tmp_path / "trop.json"
    assert run(["tropicalize", "-i", line_path, "-o", str(out)]) == 0
    q = serialize.tropical_poly_from_json(json.loads(out.read_text()))
    assert q == TropicalPolynomial({(-1, 0): 0, (0, -1): 0, (0, 0): 0})


def test_bergman_command(tmp_path):
    out = tmp_path / "bergman.json"
    assert run(["bergman", "--p", "2", "--n", "3", "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["cells"]) == 6
    cycle = serialize.cycle_from_json(data)
    assert cycle == uniform_bergman_fan(2, 3)


def test_orbits_command(tmp_path):
    fan = Fan.from_cones(
        [
            Cone.from_generators([(1, 0), (0, 1)]),
            Cone.from_generators([(0, 1), (-1, -1)]),
            Cone.from_generators([(-1, -1), (1, 0)]),
        ]
    )
    path = tmp_path / "fan.json"
    path.write_text(serialize.dumps_canonical(serialize.fan_to_json(fan)))
    out = tmp_path / "orbits.json"
    assert run(["orbits", "-i", str(path), "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["orbits"]) == 7
    assert sorted(o["dim"] for o in data["orbits"]) == [0, 0, 0, 1, 1, 1, 2]


def test_refine_command(tmp_path):
    quads = Fan.from_cones(
        [
            Cone.from_generators([(1, 0), (0, 1)]),
            Cone.from_generators([(0, 1), (-1, 0)]),
            Cone.from_generators([(-1, 0), (0, -1)]),
            Cone.from_generators([(0, -1), (1, 0)]),
        ]
    )
    diag = Fan.from_cones(
        [
            Cone.from_generators([(1, 1), (1, -1)]),
            Cone.from_generators([(1, 1), (-1, 1)]),
            Cone.from_generators([(-1, -1), (-1, 1)]),
            Cone.from_generators([(-1, -1), (1, -1)]),
        ]
    )
    pa = tmp_path / "a.json"
    pb = tmp_path / "b.json"
    pa.write_text(serialize.dumps_canonical(serialize.fan_to_json(quads)))
    pb.write_text(serialize.dumps_canonical(serialize.fan_to_json(diag)))
    out = tmp_path / "ref.json"
    assert run(["refine", "-i", str(pa), "-i", str(pb), "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["cones"]) == 8


def test_add_command(tmp_path):
    line = uniform_bergman_fan(1, 2)
    path = tmp_path / "line.json"
    path.write_text(serialize.dumps_canonical(serialize.cycle_to_json(line)))
    out = tmp_path / "sum.json"
    assert run(["add", "-i", str(path), "-i", str(path), "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["balanced"] is True
    assert sorted(c["weight"] for c in data["cells"]) == [2, 2, 2]


def test_amoeba_command_csv_and_svg(tmp_path, line_path):
    out = tmp_path / "cloud.csv"
    svg = tmp_path / "cloud.svg"
    code = run(
        [
            "amoeba", "-i", line_path, "-o", str(out), "--ms", "2",
            "--box=-2,2", "--res", "21", "--svg", str(svg),
        ]
    )
    assert code == 0
    cloud = serialize.cloud_from_csv(out.read_text())
    assert cloud.dim == 2 and len(cloud) > 0 and cloud.m == 2
    assert svg.read_text().startswith("<svg")


def test_amoeba_multiple_ms_suffixes(tmp_path, line_path):
    out = tmp_path / "cloud.csv"
    assert run(["amoeba", "-i", line_path, "-o", str(out), "--ms", "1,2", "--box=-1,1", "--res", "5"]) == 0
    assert (tmp_path / "cloud_m1.csv").exists()
    assert (tmp_path / "cloud_m2.csv").exists()


def test_dequantize_command(tmp_path, line_path):
    out = tmp_path / "deq.json"
    code = run(
        [
            "dequantize", "-i", line_path, "-o", str(out), "--ms", "4,8",
            "--box=-2,2", "--res", "15", "--delta", "0.3", "--seed", "5",
        ]
    )
    assert code == 0
    data = json.loads(out.read_text())
    assert data["ms"] == [4, 8]
    assert data["linf"][1] < data["linf"][0]
    assert data["seed"] == 5


def test_equidist_command(capsys):
    assert run(["equidist", "--ms", "8,16"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["discrepancies"] == pytest.approx([0.125, 0.0625], abs=1e-12)


def test_converge_command(tmp_path):
    out = tmp_path / "conv.json"
    svg = tmp_path / "conv.svg"
    code = run(
        [
            "converge", "--experiment", "equidistribution-discrepancy",
            "--ms", "16,32,64", "-o", str(out), "--svg", str(svg),
        ]
    )
    assert code == 0
    data = json.loads(out.read_text())
    assert data["rho"] == pytest.approx(1.0, abs=1e-6)
    assert set(data) >= {"C", "rho", "ms", "errors", "seed"}
    assert svg.read_text().startswith("<svg")


def test_roundtrip_cycle_json(tmp_path):
    # affine cells keep exact rational vertices across a round trip
    q = TropicalPolynomial({(0, 0): 0, (-2, 1): 1, (1, -1): 0.5})
    from tropdyn.tropical import tropical_hypersurface

    cycle = tropical_hypersurface(q)
    blob = serialize.dumps_canonical(serialize.cycle_to_json(cycle))
    back = serialize.cycle_from_json(json.loads(blob))
    assert back == cycle
    assert serialize.dumps_canonical(serialize.cycle_to_json(back)) == blob


def test_byte_identical_reruns(tmp_path, line_path):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert run(
            ["dequantize", "-i", line_path, "-o", str(out), "--ms", "4", "--res", "9", "--seed", "3"]
        ) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    csvs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        assert run(["amoeba", "-i", line_path, "-o", str(out), "--ms", "2", "--res", "9"]) == 0
        csvs.append(out.read_bytes())
    assert csvs[0] == csvs[1]


def test_malformed_json_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"terms": [}')
    assert run(["hypersurface", "-i", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "line 1" in err and "column" in err


def test_domain_error_exit_one(tmp_path, capsys):
    poly5 = tmp_path / "p5.json"
    poly5.write_text(json.dumps({
        "terms": [
            {"exp": [0, 0, 0, 0, 0], "re": 1.0, "im": 0.0},
            {"exp": [1, 0, 0, 0, 0], "re": 1.0, "im": 0.0},
        ]
    }))
    assert run(["hypersurface", "-i", str(poly5)]) == 1
    assert "tropdyn:" in capsys.readouterr().err


def test_usage_error_exit_two(capsys):
    assert run(["hypersurface", "--definitely-not-a-flag"]) == 2
    assert run(["not-a-command"]) == 2
    assert run(["bergman"]) == 2  # missing required --p/--n


def test_cloud_csv_roundtrip():
    import numpy as np

    from tropdyn.dynamics import PointCloud, mth_roots

    real = PointCloud(2, np.array([[0.5, -1.25], [3.0, 4.0]]), m=4, seed=9)
    back = serialize.cloud_from_csv(serialize.cloud_to_csv(real))
    assert np.array_equal(back.points, real.points)
    assert (back.m, back.seed) == (4, 9)
    cplx = mth_roots([1.0, 8.0], 3)
    back = serialize.cloud_from_csv(serialize.cloud_to_csv(cplx))
    assert np.allclose(back.points, cplx.points)
