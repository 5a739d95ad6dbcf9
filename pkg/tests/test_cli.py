import json
import subprocess
import sys

import pytest

from diminimal.cli import main


def run_cli(*argv):
    return main(list(argv))


def write_tree(path, edges, root=0, n=None):
    if n is None:
        n = 1 + max(max(e) for e in edges) if edges else 1
    path.write_text(json.dumps({"n": n, "root": root, "edges": edges}))
    return str(path)


def test_seed_writes_tree(tmp_path, capsys):
    out = tmp_path / "t.json"
    assert run_cli("seed", "--family", "uniform", "--diameter", "5",
                   "--out", str(out)) == 0
    blob = json.loads(out.read_text())
    assert blob["n"] == 8
    assert len(blob["edges"]) == 7


def test_seed_rejects_unknown_family(capsys):
    assert run_cli("seed", "--family", "spooky", "--diameter", "5") == 1
    assert "family" in capsys.readouterr().err


def test_seed_stdout_when_no_out(capsys):
    assert run_cli("seed", "--family", "uniform", "--diameter", "2") == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["n"] == 3


def test_recognize(tmp_path, capsys):
    p = write_tree(tmp_path / "t.json", [[0, 1], [1, 2], [2, 3], [3, 4]])
    assert run_cli("recognize", "--tree", p) == 0
    out = capsys.readouterr().out
    assert "family: short-core" in out
    assert "diameter: 4" in out


def test_recognize_unsupported(tmp_path, capsys):
    p = write_tree(tmp_path / "t.json", [[i, i + 1] for i in range(6)])
    assert run_cli("recognize", "--tree", p) == 0
    assert "family: unsupported" in capsys.readouterr().out


def test_unfold_grows_tree(tmp_path, capsys):
    src = tmp_path / "t.json"
    dst = tmp_path / "u.json"
    write_tree(src, [[0, 1], [1, 2], [2, 3], [3, 4]])
    assert run_cli("unfold", "--tree", str(src), "--vertex", "2",
                   "--branch", "3", "--copies", "2", "--out", str(dst)) == 0
    blob = json.loads(dst.read_text())
    assert blob["n"] == 9


def test_unfold_rejects_bad_branch(tmp_path, capsys):
    src = write_tree(tmp_path / "t.json", [[0, 1], [1, 2], [2, 3]])
    assert run_cli("unfold", "--tree", src, "--vertex", "0",
                   "--branch", "1", "--copies", "1") == 1
    assert capsys.readouterr().err.startswith("error:")


def test_construct_locate_verify_round_trip(tmp_path, capsys):
    tree = tmp_path / "t.json"
    mat = tmp_path / "m.json"
    write_tree(tree, [[0, 1], [1, 2], [2, 3]])
    assert run_cli("construct", "--tree", str(tree), "--alpha", "0",
                   "--beta", "32", "--out", str(mat)) == 0
    summary = capsys.readouterr().out
    assert "4 distinct eigenvalues" in summary

    blob = json.loads(mat.read_text())
    assert set(blob) == {"matrix", "certificate"}
    assert len(blob["certificate"]["dspec"]) == 4

    assert run_cli("locate", "--matrix", str(mat), "--point", "0") == 0
    out = capsys.readouterr().out
    assert "equal: 1" in out

    assert run_cli("locate", "--matrix", str(mat), "--point", "1/3") == 0
    assert "equal: 0" in capsys.readouterr().out

    assert run_cli("verify", "--matrix", str(mat)) == 0
    assert "ok" in capsys.readouterr().out

    assert run_cli("verify", "--matrix", str(mat), "--cross-check") == 0
    assert "ok" in capsys.readouterr().out


def test_construct_integral(tmp_path, capsys):
    tree = tmp_path / "t.json"
    mat = tmp_path / "m.json"
    write_tree(tree, [[0, 1], [1, 2], [2, 3]])
    assert run_cli("construct", "--tree", str(tree), "--alpha", "-2",
                   "--integral", "--out", str(mat)) == 0
    blob = json.loads(mat.read_text())
    vals = [d["value"] for d in blob["certificate"]["dspec"]]
    assert all("/" not in v for v in vals)


def test_construct_rejects_fractional_alpha_in_integral_mode(tmp_path, capsys):
    tree = write_tree(tmp_path / "t.json", [[0, 1]])
    assert run_cli("construct", "--tree", tree, "--alpha", "1/2",
                   "--integral") == 1
    assert "integer" in capsys.readouterr().err


def test_construct_rejects_unsupported_tree(tmp_path, capsys):
    tree = write_tree(tmp_path / "t.json", [[i, i + 1] for i in range(6)])
    assert run_cli("construct", "--tree", tree, "--alpha", "0",
                   "--beta", "1") == 1
    assert "error:" in capsys.readouterr().err


def test_verify_detects_tampering(tmp_path, capsys):
    tree = tmp_path / "t.json"
    mat = tmp_path / "m.json"
    write_tree(tree, [[0, 1], [1, 2]])
    run_cli("construct", "--tree", str(tree), "--alpha", "0", "--beta", "4",
            "--out", str(mat))
    capsys.readouterr()
    blob = json.loads(mat.read_text())
    blob["matrix"]["diag"][0] = "99"
    mat.write_text(json.dumps(blob))
    assert run_cli("verify", "--matrix", str(mat)) == 2
    assert "FAIL" in capsys.readouterr().out


def test_verify_requires_certificate(tmp_path, capsys):
    tree = tmp_path / "t.json"
    mat = tmp_path / "m.json"
    write_tree(tree, [[0, 1]])
    run_cli("construct", "--tree", str(tree), "--alpha", "0", "--beta", "1",
            "--out", str(mat))
    capsys.readouterr()
    bare = json.loads(mat.read_text())["matrix"]
    mat.write_text(json.dumps(bare))
    assert run_cli("verify", "--matrix", str(mat)) == 1
    assert "certificate" in capsys.readouterr().err


def test_isolate(tmp_path, capsys):
    tree = tmp_path / "t.json"
    mat = tmp_path / "m.json"
    # hub with a pendant leaf and two arms: uniform, diameter 4
    write_tree(tree, [[0, 1], [0, 2], [2, 3], [0, 4], [4, 5]])
    run_cli("construct", "--tree", str(tree), "--alpha", "0", "--beta", "32",
            "--out", str(mat))
    capsys.readouterr()
    assert run_cli("isolate", "--matrix", str(mat), "--width", "4") == 0
    lines = capsys.readouterr().out.strip().splitlines()
    counts = [int(ln.rsplit("count=", 1)[1]) for ln in lines]
    assert sum(counts) == 6


def test_locate_accepts_bare_matrix_json(tmp_path, capsys):
    mat = tmp_path / "m.json"
    mat.write_text(json.dumps({
        "tree": {"n": 2, "root": 0, "edges": [[0, 1]]},
        "diag": ["0", "0"],
        "sq_edge": [{"u": 0, "v": 1, "w2": "1"}],
    }))
    assert run_cli("locate", "--matrix", str(mat), "--point", "1") == 0
    assert "equal: 1" in capsys.readouterr().out


def test_export_dot(tmp_path, capsys):
    tree = tmp_path / "t.json"
    mat = tmp_path / "m.json"
    write_tree(tree, [[0, 1]])
    run_cli("construct", "--tree", str(tree), "--alpha", "0", "--beta", "1",
            "--out", str(mat))
    capsys.readouterr()
    assert run_cli("export", "--matrix", str(mat), "--format", "dot") == 0
    assert capsys.readouterr().out.startswith("graph matrix {")
    assert run_cli("export", "--matrix", str(mat), "--format", "json") == 0
    json.loads(capsys.readouterr().out)


def test_negative_rational_option_values(tmp_path, capsys):
    tree = tmp_path / "t.json"
    mat = tmp_path / "m.json"
    write_tree(tree, [[0, 1], [1, 2], [2, 3]])
    assert run_cli("construct", "--tree", str(tree), "--alpha", "-1/2",
                   "--beta", "63/2", "--out", str(mat)) == 0
    capsys.readouterr()
    assert run_cli("locate", "--matrix", str(mat), "--point", "-1/2") == 0
    assert "equal: 1" in capsys.readouterr().out


def test_missing_file_is_a_clean_error(capsys):
    assert run_cli("recognize", "--tree", "/no/such/file.json") == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")


def test_bad_usage_exits_one(capsys):
    assert run_cli("locate", "--matrix") == 1
    assert run_cli() == 1
    assert run_cli("frobnicate") == 1


def test_module_entry_point(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "diminimal", "seed", "--family", "mixed",
         "--diameter", "7"],
        capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["n"] == 14
