import csv
import io
import json
import subprocess
import sys

import pytest

from quiver_durfee.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_wq(capsys):
    assert run(capsys, "wq", "RRLLR")[:2] == (0, "1/12/123/3214/32145/541236\n")
    assert run(capsys, "wq", "R")[1] == "1/12\n"
    assert run(capsys, "wq", "RL")[1] == "1/12/213\n"
    assert run(capsys, "wq", "RXL")[0] == 2


def test_laces_121(capsys):
    code, out, _ = run(capsys, "laces", "--dims", "1,2,1", "--orientation", "RR", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["orientation"] == "RR" and doc["dims"] == [1, 2, 1]
    rows = doc["classes"]
    assert [r["r_w"] for r in rows] == [4, 2, 2, 1, 0]
    assert all(r["r_w"] == r["codim_condition"] == r["codim_oracle"] for r in rows)


def test_laces_text_and_csv(capsys):
    code, out, _ = run(capsys, "laces", "--dims", "2,2", "--orientation", "R")
    assert code == 0
    assert "3 lace classes" in out
    code, out, _ = run(capsys, "laces", "--dims", "2,2", "--orientation", "R", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert sorted(int(r["r_w"]) for r in rows) == [0, 1, 4]


def test_laces_single_column(capsys):
    code, out, _ = run(capsys, "laces", "--dims", "0", "--format", "json")
    assert code == 0
    assert json.loads(out)["classes"] == [
        {"class": "0", "strands": [], "s": {}, "t": {"1,1": 0}, "r_w": 0, "codim_condition": 0, "codim_oracle": 0}
    ]


def test_laces_config_errors(capsys):
    assert run(capsys, "laces", "--dims", "1,2")[0] == 2
    assert run(capsys, "laces", "--dims", "1,2", "--orientation", "RR")[0] == 2
    assert run(capsys, "laces", "--dims", "1,x", "--orientation", "R")[0] == 2
    assert run(capsys, "laces", "--dims", "1,-1", "--orientation", "R")[0] == 2
    assert run(capsys, "laces", "--dims", "1,1", "--orientation", "R", "--w", "1/12")[0] == 2
    assert run(capsys, "laces", "--dims", "1,1", "--w", "1/12/123")[0] == 2


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "main", "--dims", "1,2,1", "--w", "1/12/123", "--N", "30")[0] == 0
    assert run(capsys, "verify", "reineke", "--dims", "3,3", "--orientation", "R", "--N", "40")[0] == 0
    assert run(capsys, "verify", "main", "--dims", "1,1", "--w", "1/21")[0] == 2
    assert run(capsys, "verify", "reineke", "--dims", "1,1", "--w", "1/12")[0] == 2
    code, out, _ = run(capsys, "verify", "enriched", "--dims", "1,2,1", "--orientation", "RR", "--N", "6", "--M", "3")
    assert code == 1
    assert "first mismatch at z^0 q^0" in out


def test_verify_json_csv_and_out(capsys, tmp_path):
    code, out, _ = run(
        capsys, "verify", "cancel", "--dims", "2,2", "--w", "1/12", "--N", "8", "--format", "json"
    )
    assert code == 0 and json.loads(out)["equal"] is True
    target = tmp_path / "report.csv"
    code, out, _ = run(
        capsys, "verify", "main", "--dims", "1,2,1", "--w", "1/12/123", "--N", "5",
        "--format", "csv", "--out", str(target),
    )
    assert code == 0 and out == ""
    rows = target.read_text().splitlines()
    assert rows[0] == "zdeg,qdeg,lhs,rhs,equal" and len(rows) == 7


def test_verify_check_oracle(capsys):
    code, out, _ = run(capsys, "verify", "reineke", "--dims", "2,1,2", "--orientation", "RL", "--N", "10", "--check-oracle")
    assert code == 0
    assert "Ext oracle" in out


def test_bijection_phi_examples(capsys):
    args = ["bijection", "phi", "--dims", "3,6,5", "--parts", "2,1 / 5,1 / 3,3,2,1,1", "--format", "json"]
    code, out, _ = run(capsys, *args, "--orientation", "RR")
    assert code == 0
    doc = json.loads(out)
    assert doc["roundtrip"] is True
    strands = {(s["start"], s["end"]): s["mult"] for s in doc["eta"]["strands"]}
    assert strands == {(1, 1): 1, (1, 3): 2, (2, 2): 3, (2, 3): 1, (3, 3): 2}
    t = {(x["i"], x["k"]): x["value"] for x in doc["t"]}
    assert [t[(1, 2)], t[(2, 2)], t[(1, 3)], t[(2, 3)], t[(3, 3)]] == [2, 4, 2, 1, 2]

    code, out, _ = run(capsys, *args, "--orientation", "RL")
    strands = {(s["start"], s["end"]): s["mult"] for s in json.loads(out)["eta"]["strands"]}
    assert strands == {(1, 1): 1, (1, 2): 1, (1, 3): 1, (2, 2): 2, (2, 3): 2, (3, 3): 2}


def test_bijection_phi_empty_and_text(capsys):
    code, out, _ = run(capsys, "bijection", "phi", "--dims", "1,2,1", "--orientation", "RR", "--parts=-/-/-")
    assert code == 0
    assert "weight = 0" in out and "roundtrip: ok" in out


def test_bijection_errors(capsys):
    assert run(capsys, "bijection", "phi", "--dims", "3,6,5", "--orientation", "RR", "--parts", "4 / 1 / 1")[0] == 2
    assert run(capsys, "bijection", "phi", "--dims", "3,6,5", "--orientation", "RR")[0] == 2
    assert run(capsys, "bijection", "psi", "--dims", "3,6,5", "--orientation", "RR")[0] == 2


def test_bijection_psi_from_file(capsys, tmp_path):
    code, out, _ = run(
        capsys, "bijection", "phi", "--dims", "3,6,5", "--orientation", "RL",
        "--parts", "2,1 / 5,1 / 3,3,2,1,1", "--format", "json",
    )
    cut = tmp_path / "cut.json"
    cut.write_text(out)
    code, out, _ = run(capsys, "bijection", "psi", "--dims", "3,6,5", "--orientation", "RL", "--cut", str(cut), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["parts"] == [[2, 1], [5, 1], [3, 3, 2, 1, 1]]
    assert doc["roundtrip"] is True
    assert run(capsys, "bijection", "psi", "--dims", "3,6,4", "--orientation", "RL", "--cut", str(cut))[0] == 2
    cut.write_text("{not json")
    assert run(capsys, "bijection", "psi", "--dims", "3,6,5", "--orientation", "RL", "--cut", str(cut))[0] == 2


def test_output_is_deterministic(capsys):
    a = run(capsys, "laces", "--dims", "2,1,2", "--orientation", "LR", "--format", "json")[1]
    b = run(capsys, "laces", "--dims", "2,1,2", "--orientation", "LR", "--format", "json")[1]
    assert a == b


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quiver_durfee", "wq", "RRLLR"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1/12/123/3214/32145/541236"


def test_usage_error_from_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "bogus", "--dims", "1"])
    assert exc.value.code == 2
