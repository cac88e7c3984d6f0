import json

import pytest

from coxthick.cli import main
from coxthick.coxeter import from_racg, fuchsian_square, write_coxeter
from coxthick.graph import Graph, write_graph

from _support import C4, C4_PENDANT, C5


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in (("c4", C4), ("c5", C5), ("pend", C4_PENDANT)):
        out[name] = tmp_path / f"{name}.txt"
        write_graph(g, out[name])
    out["fuchs"] = tmp_path / "fuchs.txt"
    write_coxeter(fuchsian_square(), out["fuchs"])
    out["big"] = tmp_path / "big.txt"
    write_graph(Graph.empty(30), out["big"], fmt="matrix")
    out["bad"] = tmp_path / "bad.txt"
    out["bad"].write_text("3 2\n0 1\n1 1\n")
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_classify_square(files, capsys):
    code, out = run(capsys, "classify-racg", files["c4"])
    assert code == 0
    assert "status: Thick" in out.out and "order0: true" in out.out


def test_classify_pentagon(files, capsys):
    code, out = run(capsys, "classify-racg", files["c5"])
    assert code == 0
    assert "status: Hyperbolic" in out.out and "peripherals: []" in out.out


def test_classify_json(files, capsys):
    code, out = run(capsys, "classify-racg", files["pend"], "--json")
    assert json.loads(out.out)["peripherals"] == [[0, 1, 2, 3]]


def test_classify_fuchsian(files, capsys):
    code, out = run(capsys, "classify-coxeter", files["fuchs"])
    assert code == 0 and "status: Hyperbolic" in out.out


def test_coxeter_certificate_line(tmp_path, capsys):
    path = tmp_path / "pend_m.txt"
    write_coxeter(from_racg(C4_PENDANT), path)
    code, out = run(capsys, "classify-coxeter", path)
    assert code == 0
    assert "peripherals: [[0, 1, 2, 3]]" in out.out
    assert "rh_certificate: RH1=pass RH2=pass RH3=pass" in out.out


def test_malformed_file_exit_2(files, capsys):
    code, out = run(capsys, "classify-racg", files["bad"])
    assert code == 2 and "line 3" in out.err


def test_missing_file_exit_2(tmp_path, capsys):
    code, _ = run(capsys, "classify-racg", tmp_path / "nope.txt")
    assert code == 2


def test_guard_exit_3(files, capsys):
    write_coxeter(from_racg(Graph.empty(30)), files["big"])
    code, out = run(capsys, "classify-coxeter", files["big"])
    assert code == 3 and "guard" in out.err


def test_census_four(capsys):
    code, out = run(capsys, "census", "--n", 4)
    assert code == 0 and out.out.strip().endswith("RESULT 4 3 27")


def test_census_checkpoint_mismatch_exit_4(tmp_path, capsys):
    ck = tmp_path / "ck"
    run(capsys, "census", "--n", 4, "--checkpoint", ck)
    code, out = run(capsys, "census", "--n", 5, "--checkpoint", ck)
    assert code == 4


def test_census_refuses_ten(capsys):
    code, _ = run(capsys, "census", "--n", 10)
    assert code == 2


def test_bounds(capsys):
    code, out = run(capsys, "bounds", "--pi9")
    assert code == 0 and "pi9: 0.78385" in out.out and "precision:" in out.out
    code, out = run(capsys, "bounds", "--pi-bound")
    assert "pi_2n_bound(9): 0.9353" in out.out
    code, out = run(capsys, "bounds", "--f", 18)
    assert "f(18): 0.0349175" in out.out
    code, out = run(capsys, "bounds", "--tail", 18, 3)
    assert "additive_tail(18,3)" in out.out and "h(18)" in out.out


def test_sweep_writes_csvs(tmp_path, capsys):
    code, out = run(capsys, "sweep", "--n", "30,40", "--p", "0.5", "--trials", 2, "--seed", 1,
                    "--out", tmp_path)
    assert code == 0
    assert (tmp_path / "trials.csv").exists() and (tmp_path / "aggregate.csv").exists()
    assert len((tmp_path / "trials.csv").read_text().splitlines()) == 5


def test_sweep_bad_density_exit_2(tmp_path, capsys):
    code, out = run(capsys, "sweep", "--n", 30, "--p", "3*lg(n)", "--trials", 2, "--seed", 1,
                    "--out", tmp_path)
    assert code == 2 and "'lg'" in out.err


def test_sweep_requires_seed(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--n", "30", "--p", "0.5", "--trials", "2"])
    assert exc.value.code == 2


def test_unknown_flag():
    with pytest.raises(SystemExit) as exc:
        main(["census", "--n", "4", "--fast"])
    assert exc.value.code == 2
