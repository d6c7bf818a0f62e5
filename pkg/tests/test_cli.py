import json
import subprocess
import sys

from cuspwatch.cli import main

I2 = '[["1","0"],["0","1"]]'
DIAG2 = '[["2","0"],["0","1/2"]]'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_periodicity_line(capsys):
    code, out, _ = run(capsys, "sl4", "verify-periodicity")
    assert code == 0 and out == '{"ok": true}\n'


def test_nontrivial_both_branches(capsys):
    code, out, _ = run(capsys, "bordered", "check", "--what", "nontrivial",
                       "--phi", "[[1,0],[-1,0]]")
    assert code == 0 and out == '{"result": false, "lambda": ["1", "1"]}\n'
    code, out, _ = run(capsys, "bordered", "check", "--what", "nontrivial",
                       "--phi", "[[1,0],[0,1]]")
    assert code == 0 and out == '{"result": true, "v": ["1", "1"]}\n'


def test_bruhat_factor_identity(capsys):
    code, out, _ = run(capsys, "bruhat", "factor", "--matrix", I2)
    assert code == 0
    data = json.loads(out)
    assert data["n"] == [["1", "0"], ["0", "1"]]
    assert data["b"] == [["1", "0"], ["0", "1"]]
    assert data["bound"] == "0"


def test_radicals_search(capsys):
    code, out, _ = run(capsys, "radicals", "search",
                       "--matrix", '[["5","0"],["0","1/5"]]',
                       "--eps", "1/10", "--height", "3")
    assert code == 0
    hits = json.loads(out)
    assert len(hits) == 1
    assert hits[0]["norm"] == "1/25"
    assert hits[0]["witness"]["rows"] == [[0, 1]]


def test_radicals_profile_json_and_csv(capsys):
    args = ("radicals", "profile", "--matrix", DIAG2, "--grid", "1:1",
            "--digits", "8")
    code, out, _ = run(capsys, *args)
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["value"] for r in rows] == [
        "-0.61370564", "-1.38629436", "-3.38629436",
    ]
    code, out, _ = run(capsys, *args, "--csv")
    assert code == 0
    assert out.splitlines() == [
        "s1,value",
        "-1,-0.61370564",
        "0,-1.38629436",
        "1,-3.38629436",
    ]


def test_csv_rejected_without_table(capsys):
    code, _, err = run(capsys, "sl4", "verify-periodicity", "--csv")
    assert code == 2 and "no CSV form" in err


def test_manifest_line_and_determinism(capsys):
    args = ("radicals", "profile", "--matrix", DIAG2, "--grid", "1:1",
            "--digits", "30", "--manifest")
    code, first, _ = run(capsys, *args)
    assert code == 0
    manifest = json.loads(first.splitlines()[0])
    assert set(manifest) == {
        "command_line", "parameter_hash", "version", "precision_digits",
    }
    assert manifest["precision_digits"] == 50
    code, second, _ = run(capsys, *args)
    assert first == second


def test_precision_env_override(capsys, monkeypatch):
    monkeypatch.setenv("CUSPWATCH_PRECISION", "12")
    code, out, _ = run(capsys, "radicals", "profile", "--matrix", DIAG2,
                       "--grid", "0:1", "--manifest")
    assert code == 0
    lines = out.splitlines()
    assert json.loads(lines[0])["precision_digits"] == 12
    assert json.loads(lines[1])["rows"][0]["value"] == "-1.386294361120"


def test_merged_negative_values(capsys):
    # a value starting with "-" must work in the split --flag value form
    code, out, _ = run(capsys, "sl4", "demo", "--alpha", "-3,-1,1,3")
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = run(capsys, "sl4", "demo", "--alpha", "-3,-1,1,3", "--tamper")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is False and data["uncovered"] == ["-1"]


def test_sl4_grplus_and_xmember(capsys):
    code, out, _ = run(capsys, "sl4", "grplus", "--alpha", "-3,-1,1,3")
    assert code == 0 and out == '{"pair": [1, 3], "dim": 1}\n'
    code, out, _ = run(capsys, "sl4", "xmember",
                       "--basis", "[[1,0,1,0],[0,1,0,0]]")
    assert code == 0 and out == '{"pair": [2, 3]}\n'


def test_bordered_checks(capsys):
    code, out, _ = run(capsys, "bordered", "check", "--what", "bounded",
                       "--phi", "[[1,0],[0,1],[-1,-1]]", "--gauge", "1/8")
    assert code == 0 and json.loads(out) == {"result": True}
    code, out, _ = run(capsys, "bordered", "check", "--what", "invdim",
                       "--phi", "[[1,0],[-1,0]]", "--c", "[0,-1]")
    assert code == 0 and json.loads(out) == {"result": 1}
    code, out, _ = run(capsys, "bordered", "check", "--what", "invdim",
                       "--points", "[[0,0]]", "--rays", "[[0,1],[0,-1]]")
    assert code == 0 and json.loads(out) == {"result": 1}
    code, out, _ = run(capsys, "bordered", "check", "--what", "ktrivial",
                       "--points", "[[0,0]]", "--rays", "[[0,1],[0,-1]]",
                       "--k", "1")
    assert code == 0 and json.loads(out) == {"result": False}
    code, out, _ = run(capsys, "bordered", "check", "--what", "intersect",
                       "--phi", "[[1]]", "--c", "1/2",
                       "--phi2", "[[-1]]", "--c2", "-3/4")
    assert code == 0 and json.loads(out) == {"result": True, "point": ["5/8"]}


def test_cover_commands(capsys):
    code, out, _ = run(capsys, "cover", "local", "--matrix", I2,
                       "--radius", "1", "--c0", "0", "--height", "3")
    assert code == 0
    assert [w["rows"] for w in json.loads(out)] == [
        [[1, 0]], [[-1, 1]], [[1, 1]], [[0, 1]],
    ]
    code, out, _ = run(capsys, "cover", "verify", "--matrix", I2,
                       "--height", "1", "--c0", "-1", "--gauge", "0",
                       "--radius", "2", "--delta", "1/2",
                       "--core-phi", "[[1]]", "--core-c", "10")
    assert code == 0
    assert json.loads(out) == {"covered": True, "checked": 9, "gaps": []}
    code, out, _ = run(capsys, "cover", "goodres",
                       "--subgroup", "[[1,0,0,-1],[0,1,-1,0]]",
                       "--psi", "[[1,-1,0,0],[0,0,1,-1]]", "--l", "2")
    assert code == 0
    assert json.loads(out) == {
        "result": False,
        "violating": [[1, -1, 0, 0], [0, 0, 1, -1]],
    }


def test_diverge_commands(capsys):
    code, out, _ = run(capsys, "diverge", "check", "--matrix", I2,
                       "--subspace", "[[1,0]]", "--subspace", "[[0,1]]")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert data["certificate"]["hyperplanes"] == [["1"]]
    code, out, _ = run(capsys, "diverge", "check", "--matrix", I2,
                       "--subspace", "[[1,0]]")
    assert code == 0
    assert json.loads(out) == {"ok": False, "uncovered": ["1"]}
    code, out, _ = run(capsys, "diverge", "search", "--matrix", I2,
                       "--height", "2")
    assert code == 0
    assert [w["label"] for w in json.loads(out)] == [
        "subspace j=1 rows=((1, 0),)",
        "subspace j=1 rows=((0, 1),)",
    ]


def test_exit_codes(capsys):
    code, _, err = run(capsys, "nosuch")
    assert code == 64 and err.startswith("usage:")
    code, _, err = run(capsys)
    assert code == 64 and err.startswith("usage:")
    # precondition violations surface as exit 2 with a clean message
    code, _, err = run(capsys, "bruhat", "factor",
                       "--matrix", '[["2","0"],["0","1"]]')
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, "sl4", "grplus", "--alpha", "1,2")
    assert code == 2
    # argparse help exits cleanly
    assert run(capsys, "bruhat", "factor", "--help")[0] == 0
    # argparse usage errors map to 2
    assert run(capsys, "bruhat", "unfactor")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cuspwatch.cli", "sl4", "verify-periodicity"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == '{"ok": true}\n'
