import io
import json

import pytest

from bct import cli
from conftest import SCENARIOS


def run(*args):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(args), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_blocks_lists_defects():
    code, out, _ = run("blocks", "--scenario", str(SCENARIOS / "s3_c3_p2.json"))
    assert code == 0
    data = json.loads(out)
    assert [b["defect_order"] for b in data["blocks"]] == [1, 1]
    assert sorted(b["residue_dim"] for b in data["blocks"]) == [1, 2]


def test_extension_needs_block():
    code, _, err = run("extension", "--scenario", str(SCENARIOS / "c6_c3_p3.json"))
    assert code == 2 and "--block" in err


def test_extension_descriptor():
    code, out, _ = run("extension", "--scenario", str(SCENARIOS / "c6_c3_p3.json"), "--block", "0")
    assert code == 0
    ext = json.loads(out)["block"]["extensions"]
    assert {k: v["hU_order"] for k, v in ext.items()} == {"C": 4, "D": 4, "E": 4}


@pytest.mark.parametrize("command", ["verify", "group-algebra-case"])
def test_verify_exit_zero_and_stable(command):
    path = str(SCENARIOS / "s4_v4_p2.json")
    c1, o1, _ = run(command, "--scenario", path, "--all", "--seed", "3")
    c2, o2, _ = run(command, "--scenario", path, "--all", "--seed", "3")
    assert c1 == c2 == 0
    assert o1 == o2


def test_text_format():
    code, out, _ = run("verify", "--scenario", str(SCENARIOS / "c3_c3_p3.json"), "--format", "text")
    assert code == 0 and "status: pass" in out


def test_construction_error_exit_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"p": 4, "H": {"permutations": [[1, 0]]}, "K": {"elements": [0]}}))
    code, out, err = run("verify", "--scenario", str(bad))
    assert code == 2 and out == "" and "not prime" in err


def test_invalid_json_exit_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("blocks", "--scenario", str(bad))[0] == 2


def test_failing_check_exit_one(monkeypatch):
    from bct import clifford as cl
    from bct.errors import TheoremViolation

    def broken(*a, **k):
        raise TheoremViolation("crossed_product", "injected", {"component": 0})

    monkeypatch.setattr(cl, "crossed_product_quotient", broken)
    code, out, _ = run("verify", "--scenario", str(SCENARIOS / "c6_c3_p3.json"))
    assert code == 1
    assert json.loads(out)["status"] == "fail"


def test_console_script(tmp_path):
    import shutil
    import subprocess
    import sys

    exe = shutil.which("bct")
    cmd = [exe] if exe else [sys.executable, "-m", "bct.cli"]
    done = subprocess.run(cmd + ["blocks", "--scenario", str(SCENARIOS / "c3_c3_p3.json"), "--format", "text"], capture_output=True, text=True)
    assert done.returncode == 0
    assert "block 0" in done.stdout
