import json
import subprocess
import sys

import pytest

from branchstab.cli import main
from branchstab.hierarchy import gamma_from_json


@pytest.fixture
def files(tmp_path):
    def write(name, rows):
        p = tmp_path / name
        p.write_text("".join(",".join(map(str, r)) + "\n" for r in rows))
        return str(p)

    return {
        "line3": write("line3.csv", [[0], [1], [3]]),
        "line4": write("line4.csv", [[0], [1], [1.5], [3]]),
        "single": write("single.csv", [[2.5, 1]]),
        "ragged": write("ragged.csv", [[0, 1], [2]]),
        "dupes": write("dupes.csv", [[0], [1], [0]]),
        "other": write("other.csv", [[0], [7]]),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hierarchy_json(files, capsys):
    code, out, err = run(capsys, "hierarchy", "--k", "0", files["line3"], "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["scales"] == [0.0, 1.0, 2.0, 3.0]
    tree = gamma_from_json(data)
    assert [tree.partition(i).blocks for i in range(4)] == [
        ((0,), (1,), (2,)),
        ((0, 1), (2,)),
        ((0, 1, 2),),
        ((0, 1, 2),),
    ]
    assert "n=3 k=0 scales=4 nodes=7" in err


def test_hierarchy_to_file_and_dot(files, capsys):
    out_path = files["dir"] / "g.dot"
    code, out, _ = run(capsys, "hierarchy", files["line3"], "--format", "dot", "--out", str(out_path))
    assert code == 0 and "scales=4" in out
    assert out_path.read_text().startswith("digraph gamma")


def test_hierarchy_k_too_large(files, capsys):
    code, out, err = run(capsys, "hierarchy", "--k", "5", files["line3"])
    assert code == 0
    assert json.loads(out)["nodes"] == []
    assert "empty" in err


def test_missing_file(files, capsys):
    code, _, err = run(capsys, "hierarchy", str(files["dir"] / "nope.csv"))
    assert code == 2 and "cannot read" in err


def test_ragged_and_duplicates(files, capsys):
    assert run(capsys, "hierarchy", files["ragged"])[0] == 2
    assert run(capsys, "hierarchy", files["dupes"])[0] == 2
    code, out, err = run(capsys, "hierarchy", "--dedupe", files["dupes"])
    assert code == 0 and "duplicate" in err


def test_usage_errors(files, capsys):
    assert run(capsys, "hierarchy", "--k", "-1", files["line3"])[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "hierarchy", "--metric", "cosine", files["line3"])[0] == 1


def test_header_and_delimiter(tmp_path, capsys):
    p = tmp_path / "h.tsv"
    p.write_text("x\ty\n0\t0\n0\t1\n")
    code, out, _ = run(capsys, "hierarchy", "--header", "--delimiter", "\\t", str(p))
    assert code == 0 and json.loads(out)["scales"] == [0.0, 1.0]


def test_branches(files, capsys):
    code, out, err = run(capsys, "branches", "--k", "0", files["line3"])
    assert code == 0 and "branch_points=5 birth=3 merge=2" in err
    assert len(json.loads(out)["branch_points"]) == 5
    code, out, err = run(capsys, "branches", "--k", "1", files["line3"])
    assert "branch_points=1 birth=1 merge=0" in err
    code, out, err = run(capsys, "branches", files["single"])
    assert "branch_points=1" in err
    code, out, _ = run(capsys, "branches", files["line3"], "--format", "dot")
    assert out.startswith("digraph branch_points")


def test_ultrametric(files, capsys):
    code, out, _ = run(capsys, "ultrametric", "--k", "0", "--scale-index", "0", files["line3"])
    assert code == 0
    assert out == ",0,1,2\n0,0,1,2\n1,1,0,2\n2,2,2,0\n"
    code, out, _ = run(capsys, "ultrametric", "--scale-index", "3", files["line3"])
    assert out == ",0\n0,0\n"
    code, _, err = run(capsys, "ultrametric", "--k", "1", "--scale-index", "0", files["line3"])
    assert code == 2 and "empty" in err
    assert run(capsys, "ultrametric", "--scale-index", "9", files["line3"])[0] == 1


def test_confdist(files, capsys):
    code, out, _ = run(capsys, "confdist", "--k", "1", files["line3"], files["line4"])
    assert code == 0 and out.strip() == "1.0"
    code, out, _ = run(capsys, "confdist", files["line3"], files["line3"])
    assert float(out) == 0
    assert run(capsys, "confdist", "--k", "3", files["line3"], files["line4"])[0] == 1
    assert run(capsys, "confdist", files["line3"], files["single"])[0] == 2


def test_stability(files, capsys):
    code, out, err = run(capsys, "stability", "--k", "0", files["line3"], files["line4"])
    report = json.loads(out)
    assert code == 0 and report["pass"] and report["max_shift"] <= 1.2
    assert set(report["checks"]) >= {"eq4", "eq5", "eq6", "join_compat", "pi0_diagram"}
    code, out, _ = run(capsys, "stability", files["line4"], files["line4"])
    assert code == 0 and json.loads(out)["pass"]


def test_stability_undersized_r(files, capsys):
    code, out, err = run(capsys, "stability", "--k", "1", "--r", "0.1", files["line3"], files["line4"])
    report = json.loads(out)
    assert code == 3
    assert report["pass"] is False and "injective" in report["error"]


def test_stability_not_nested(files, capsys):
    assert run(capsys, "stability", files["other"], files["line4"])[0] == 2


def test_fuzz(capsys, tmp_path):
    code, out, _ = run(capsys, "fuzz", "--seed", "2", "--count", "5", "--max-points", "8", "--out", str(tmp_path / "f.json"))
    assert code == 0 and "failed=0" in out
    assert len(json.loads((tmp_path / "f.json").read_text())) == 5


def test_outputs_byte_identical(files, tmp_path):
    cmds = [
        ["hierarchy", files["line3"]],
        ["branches", files["line4"], "--format", "dot"],
        ["stability", files["line3"], files["line4"]],
    ]
    for cmd in cmds:
        outs = [
            subprocess.run([sys.executable, "-m", "branchstab", *cmd], capture_output=True, check=True).stdout
            for _ in range(2)
        ]
        assert outs[0] == outs[1] and outs[0]
