import hashlib
import json
import subprocess
import sys

import pytest

from sosfields import cli
from sosfields.cyclo import Check


def run(argv, capsys):
    code = cli.main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_sos_decide_json(capsys):
    code, out, _ = run(["sos", "decide", "-f", "x^2-5", "-e", "3,1"], capsys)
    res = json.loads(out)
    assert code == 0
    assert res["verdict"] == "representable"
    assert res["parts"] == [["0", "1"], ["0", "1"]]  # phi = (1+sqrt5)/2, twice


def test_sos_decide_negative_coordinates(capsys):
    code, out, _ = run(["sos", "decide", "-f", "x^2-2", "-e", "-1,1", "--basis", "integral"], capsys)
    assert code == 1  # -1 + sqrt2 is not totally positive
    code, out, _ = run(["sos", "decide", "-f", "x^2-2", "-e", "4,-2"], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "representable"


def test_sos_decide_all(capsys):
    code, out, _ = run(["sos", "decide", "-f", "x^2-2", "-e", "4,-2", "--all"], capsys)
    res = json.loads(out)
    assert res["decompositions"] == 1 and res["certificates"] == [[["1", "-1"], ["1", "0"]]]


def test_not_representable_and_budget(capsys):
    # 2 alpha for K16 in the power basis of x^4 - 4x^2 + 2 (alpha = 2 + w)
    code, out, _ = run(["sos", "decide", "-f", "x^4-4x^2+2", "-e", "4,2,0,0"], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "not_representable"
    code, _, err = run(["sos", "decide", "-f", "x^4-4x^2+2", "-e", "4,2,0,0", "--node-budget", "0"], capsys)
    assert code == 2 and "indeterminate" in err


def test_zform_witness(capsys):
    code, out, _ = run(["zform", "witness", "-f", "x^2-2", "-e", "2,-1"], capsys)
    res = json.loads(out)
    assert code == 0 and res["verdict"] == "witness" and res["decompositions"] == 1


def test_cyclo_verify_table(capsys):
    code, out, _ = run(["cyclo", "verify", "--q", "16", "--all"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split()[:2] == ["identity", "q"]
    assert all(line.rstrip().endswith("PASS") for line in lines[1:])
    code, out, _ = run(["cyclo", "verify", "--q", "16"], capsys)
    assert len(out.splitlines()) == 3


def test_cyclo_verify_failure_exit(monkeypatch, capsys):
    import sosfields.cyclo as cyclo

    monkeypatch.setattr(cyclo, "verify", lambda q: iter([Check("broken", q, 1, 2)]))
    code, out, _ = run(["cyclo", "verify", "--q", "16"], capsys)
    assert code == 3 and "FAIL" in out


@pytest.mark.parametrize("argv", [
    ["cyclo", "verify", "--q", "6"],
    ["sos", "decide", "-f", "x^2-2", "-e", "1,2,3"],
    ["sos", "decide", "-f", "x^2-2", "-e", "a,b"],
    ["sos", "decide", "-e", "1,1"],
    ["classify", "--degree", "5"],
    ["classify", "--degree", "7"],
    [],
])
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 1


def test_deterministic_output_and_manifest(tmp_path, capsys):
    outs = []
    for i in range(2):
        man = tmp_path / f"m{i}.json"
        dest = tmp_path / f"h{i}.txt"
        code, out, _ = run(["--manifest", str(man), "hunt", "--degree", "2", "--out", str(dest)], capsys)
        assert code == 0
        data = json.loads(man.read_text())
        want = hashlib.sha256(out.encode() + dest.read_bytes()).hexdigest()
        assert data["output_sha256"] == want and data["subcommand"] == "hunt"
        assert data["parameters"]["degree"] == 2
        outs.append((out, dest.read_bytes(), data["output_sha256"]))
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sosfields", "hunt", "--degree", "1", "--count-only"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "9\n"
