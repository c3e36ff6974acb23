import json

import pytest

from frobwitt.cli import run


def _run(tmp_path, *argv):
    code = run(list(argv) + ["--out", str(tmp_path)])
    return code


def test_psi_command(tmp_path):
    assert _run(tmp_path, "psi", "--p", "3", "--e", "1", "--s", "2", "--d", "2", "--D", "x0^2*x1^2") == 0
    data = json.loads((tmp_path / "psi.json").read_text())
    assert data["sstab_dim"] == 1 and data["residue_transpose"]


def test_fermat_command(tmp_path):
    assert _run(tmp_path, "fermat", "--bound", "200") == 0
    rows = (tmp_path / "fermat.csv").read_text().splitlines()[1:]
    for line in rows:
        p, residue, fsplit = line.split(",")
        assert (fsplit == "1") == (residue == "1")


def test_tower_command(tmp_path):
    assert _run(tmp_path, "tower", "--curve", "x1^2*x2 - x0^3 - x0*x2^2", "--p", "5", "--J", "3") == 0
    data = json.loads((tmp_path / "tower.json").read_text())
    assert [lv["sstab_length"] for lv in data["levels"]] == [1, 2, 3]
    assert data["witnesses"][2]["found"]


def test_witt_command(tmp_path):
    assert _run(tmp_path, "witt", "--p", "3", "--op", "add", "--x", "1,0", "--y", "1,0") == 0
    assert json.loads((tmp_path / "witt.json").read_text())["result"] == ["2", "1"]


def test_sigma_from_file(tmp_path):
    spec = {"module": {"base": "3^1:0,1", "n": 2, "profile": [2], "F": [["3"]]},
            "map": {"target": {"base": "3^1:0,1", "n": 2, "profile": [2], "F": [["3"]]},
                    "index": 0, "matrix": [["3"]]}}
    path = tmp_path / "in.json"
    path.write_text(json.dumps(spec))
    assert _run(tmp_path, "sigma", "--input", str(path)) == 0
    data = json.loads((tmp_path / "sigma.json").read_text())
    assert data["sstab_length"] == 0 and data["kernel_profile"] == [1]


def test_config_file(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"command": "fsplit", "p": 5, "f": "x0^4 + x1^4 + x2^4 + x3^4"}))
    assert run(["--config", str(cfg), "--out", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "fsplit.json").read_text())["fsplit"] is True


@pytest.mark.parametrize("argv,code", [
    (["bogus"], 1),
    (["psi", "--p", "3", "--s", "2", "--d", "3", "--D", "x0^6"], 2),
    (["hasse", "--p", "5", "--f", "x0^3 + (x0)"], 1),
    (["tower", "--curve", "x1^2*x2^3 - x0^5 - x0^3*x2^2 - x0*x2^4 - x2^5", "--p", "7", "--J", "3"], 3),
])
def test_exit_codes(tmp_path, argv, code):
    assert _run(tmp_path, *argv) == code
