import json
from fractions import Fraction

import numpy as np
import pytest

from qlieb.cli import Cache, run
from qlieb.formality import claim_ii_seed
from qlieb.poisson import PoissonElement, lie_bialgebra_structure, two_dim_example


@pytest.fixture
def cli(capsys, tmp_path):
    def call(*args):
        code = run(["--cache-dir", str(tmp_path / "cache"), *args])
        out = capsys.readouterr()
        report = json.loads(out.out) if out.out.strip() else None
        return code, report, out.err
    return call


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def three_dim(broken):
    B2, C2 = two_dim_example()
    B = np.full((3, 3, 3), Fraction(0), dtype=object)
    C = B.copy()
    B[:2, :2, :2], C[:2, :2, :2] = B2, C2
    if broken:
        C[0, 2, 2], C[2, 0, 2] = Fraction(1), Fraction(-1)
    return lie_bialgebra_structure(B, C)


def test_dsq(cli):
    code, rep, _ = cli("dsq", "--family", "defq-plus-d1", "--max-legs", "4")
    assert code == 0 and rep["all_zero"] and rep["schema_version"] == 1
    code, rep, err = cli("dsq", "--family", "lieb-inf", "--max-legs", "2")
    assert code == 0 and rep["generators"] == [] and "warning" in err


def test_usage_errors(cli):
    assert cli("dsq", "--family", "nope")[0] == 2
    assert cli("dsq", "--family", "lieb-inf", "--min-legs", "5", "--max-legs", "3")[0] == 2
    assert cli("frobnicate")[0] == 2


def test_betti(cli):
    code, rep, _ = cli("betti", "--family", "defq-plus-d1", "--p", "2", "--q", "1", "--compare")
    assert code == 0 and rep["betti"] == {"0": 1, "1": 0} and rep["match"]
    code, rep, _ = cli("betti", "--family", "lieb-inf", "--p", "3", "--q", "1", "--compare")
    assert code == 0 and rep["betti"] == {"-1": 0, "0": 2} and rep["match"]
    code, rep, _ = cli("betti", "--family", "defq-plus-d1", "--p", "1", "--q", "1")
    assert rep["betti"] == {"1": 1}


def test_bracket(cli, tmp_path):
    d = (-1,)
    a = PoissonElement.monomial(d, [("x", 0), ("x", 0), ("p", 0)])
    b = PoissonElement.x(d, 0)
    code, rep, _ = cli("bracket", "--in", write(tmp_path / "a.json", a.to_json()),
                       "--in", write(tmp_path / "b.json", b.to_json()))
    assert code == 0
    assert PoissonElement.from_json(rep["result"]) == PoissonElement.monomial(d, [("x", 0), ("x", 0)])
    assert cli("bracket", "--in", str(tmp_path / "a.json"))[0] == 2


def test_gs(cli):
    code, rep, _ = cli("gs", "--max-legs", "3")
    assert code == 0 and rep["axiom_failures"] == [] and rep["all_zero"]


def test_mc(cli, tmp_path):
    B, C = two_dim_example()
    code, rep, _ = cli("mc", "--in", write(tmp_path / "s.json", lie_bialgebra_structure(B, C).to_json()))
    assert code == 0 and rep["mc_zero"] and all(rep["axioms_zero"].values())
    z = np.full((2, 2, 2), Fraction(0), dtype=object)
    code, rep, _ = cli("mc", "--in", write(tmp_path / "z.json", lie_bialgebra_structure(z, z).to_json()))
    assert code == 0 and rep["mc_zero"]
    code, rep, _ = cli("mc", "--in", write(tmp_path / "x.json", three_dim(True).to_json()))
    assert code == 1 and rep["nonzero_orders"] == [4]
    assert rep["axioms_zero"] == {"jacobi": True, "cojacobi": True, "compatibility": False}
    (tmp_path / "bad.json").write_text("{")
    assert cli("mc", "--in", str(tmp_path / "bad.json"))[0] == 2
    assert cli("mc", "--in", write(tmp_path / "worse.json", {"degrees": [0]}))[0] == 2


def test_lift(cli, tmp_path):
    code, rep, _ = cli("lift", "--max-weight", "0")
    assert code == 0 and rep["certified"]
    assert len(rep["table"]["values"]) == len(claim_ii_seed().values)
    out = tmp_path / "t.json"
    code, _, _ = cli("lift", "--max-weight", "1", "--out", str(out))
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["certified"] and rep["table"]["weight_reach"] == 1


def test_lift_rejects_corrupt_seed(cli, tmp_path):
    seed = claim_ii_seed().to_json()
    seed["values"][0]["corolla"][3] = 5
    code, rep, err = cli("lift", "--in", write(tmp_path / "seed.json", seed))
    assert code == 2 and rep is None and "degree" in err


def test_checks(cli):
    code, rep, _ = cli("khr-check", "--max-legs", "4")
    assert code == 0 and rep["all_match"]
    code, rep, _ = cli("resolution-check", "--max-legs", "3")
    assert code == 0 and rep["all_match"]


def test_cache_keys_follow_profile():
    a = Cache.key("lieb-inf", (2, 2), {"max_vertices": 2}, "DELTA_LIEB_INF")
    assert a == Cache.key("lieb-inf", (2, 2), {"max_vertices": 2}, "DELTA_LIEB_INF")
    assert a != Cache.key("lieb-inf", (2, 2), {"max_vertices": 3}, "DELTA_LIEB_INF")
    assert a != Cache.key("lieb-inf", (2, 2), {"max_vertices": 2}, "DELTA_PLUS")


def test_cache_is_used(cli, tmp_path):
    cli("khr-check", "--max-legs", "3")
    files = sorted((tmp_path / "cache").glob("*.json"))
    assert files
    # a planted wrong entry is read back: the cache really short-circuits
    for f in files:
        f.write_text(json.dumps({"0": 7}))
    code, rep, _ = cli("khr-check", "--max-legs", "3")
    assert code == 1
