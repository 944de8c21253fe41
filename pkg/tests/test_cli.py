import json

import pytest

from liesplit.cli import main
from liesplit.liealg import algebra_to_json, build_sl


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_case_json_schema_and_exit_code(capsys):
    code, out = run_cli(capsys, ["case", "sl2n1", "--n", "1", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"case", "params", "seed", "verdicts", "tables", "timings_ms", "version"}
    assert doc["case"] == "sl2n1"
    assert doc["tables"]["restrictions"] == {"P2": "6*c^2", "P3": "-6*c^3"}
    assert all(doc["verdicts"].values())


def test_case_markdown(capsys):
    code, out = run_cli(capsys, ["case", "aks", "--n", "2", "--format", "markdown"])
    assert code == 0
    assert "| verdict | holds |" in out
    assert "side_h_commutes" in out


def test_check_ggs_builders(capsys):
    code, out = run_cli(
        capsys,
        ["check-ggs", "--algebra", "gl:4", "--h", "glblocks:1,3",
         "--basis", "charpoly", "--format", "json"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["verdicts"]["is_ggs"] is True
    assert doc["tables"]["sum_m"] == 6 == doc["tables"]["dim_m"]


def test_check_ggs_borel_preset(capsys):
    code, out = run_cli(
        capsys,
        ["check-ggs", "--algebra", "sl:3", "--h", "borel", "--format", "json"],
    )
    assert code == 0
    assert json.loads(out)["verdicts"]["is_ggs"] is True


def test_weyl_w0_subcommand(capsys):
    code, out = run_cli(
        capsys,
        ["weyl-w0", "--type", "A", "--rank", "4", "--arrows", "1:4,2:3"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["tables"]["orders"] == [120, 8, 4, 2]
    assert doc["tables"]["first_failure_degree"] == 1


def test_index_subcommand_with_algebra_file(tmp_path, capsys):
    path = tmp_path / "sl3.json"
    path.write_text(algebra_to_json(build_sl(3)), encoding="utf-8")
    code, out = run_cli(capsys, ["index", "--algebra", str(path), "--trials", "5"])
    assert code == 0
    doc = json.loads(out)
    assert doc["tables"]["claimed_index"] == 2
    assert doc["tables"]["b_value"] == "5"


def test_unknown_case_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["case", "nope"])


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
