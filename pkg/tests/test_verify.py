import json

import pytest

from bct import clifford as cl
from bct import scenario as sc
from bct import verify as vf
from bct.errors import ConstructionError, TheoremViolation
from conftest import SCENARIOS


def load(name, **over):
    data = json.loads((SCENARIOS / f"{name}.json").read_text())
    data.update(over)
    return sc.from_dict(data, name=name)


def claims(block):
    return {name: block["checks"][name]["status"] for name, _ in vf.THEOREM_CHECKS}


def test_trivial_scenario_passes_vacuously():
    r = vf.run_scenario(load("c3_c3_p3"))
    assert r["status"] == "pass"
    (b,) = r["blocks"]
    assert r["G_cosets"] == [[0, 1, 2]]
    assert all(v == [0] for v in b["support_subgroups"].values())
    assert set(claims(b).values()) == {"pass"}


def test_c6_c3_values():
    r = vf.run_scenario(load("c6_c3_p3"))
    (b,) = r["blocks"]
    assert b["stabilizers"]["G_b"] == [0, 1]
    assert b["support_subgroups"]["G[b]"] == [0, 1]
    assert b["residue_dims"]["k1"] == b["residue_dims"]["k3"] == 1
    assert set(claims(b).values()) == {"pass"}


def test_s3_c3_p2_defect_zero_block():
    r = vf.run_scenario(load("s3_c3_p2"))
    (b,) = [x for x in r["blocks"] if x["idempotent"] == [0, 1, 1]]
    assert b["defect_order"] == 1
    assert b["stabilizers"]["G_b"] == [0, 1]
    assert b["support_subgroups"]["G[b]"] == b["support_subgroups"]["G[bbar]"] == [0]
    assert set(b["residue_dims"].values()) == {2}
    assert set(claims(b).values()) == {"pass"}


def test_every_claim_recorded_once():
    r = vf.run_scenario(load("s4_a4_p2"))
    for b in r["blocks"]:
        assert sorted(b["checks"]) == sorted(n for n, _ in vf.THEOREM_CHECKS)
        assert sorted(c["claim"] for c in b["checks"].values()) == [1, 2, 3, 4, 5]


def test_explicit_matrix_algebra():
    r = vf.run_scenario(load("s3_a3_p2_matrix"))
    assert r["status"] == "pass"
    (b,) = r["blocks"]
    assert b["residue_dims"] == {"k1": 2, "k2": 2, "k3": 2}
    assert {"check": "oracle_agreement", "reason": "oracle covers group algebras only"} in b["skipped"]


def test_block_selector():
    r = vf.run_scenario(load("s3_c3_p2"), block=1)
    assert [b["index"] for b in r["blocks"]] == [1]
    with pytest.raises(ConstructionError):
        vf.run_scenario(load("s3_c3_p2"), block=7)


def test_json_is_byte_stable():
    a = vf.emit_report(vf.run_group_algebra_case(load("s4_v4_p2")))
    b = vf.emit_report(vf.run_group_algebra_case(load("s4_v4_p2")))
    assert a == b
    assert json.loads(a)["status"] == "pass"


def test_timings_only_on_request():
    r = vf.run_scenario(load("c3_c3_p3"))
    assert "seconds" not in r
    assert "seconds" in vf.run_scenario(load("c3_c3_p3"), timings=True)


def test_fault_injection_marks_claims_failed(monkeypatch):
    def broken(*args, **kwargs):
        raise TheoremViolation("crossed_product", "injected fault", {"component": 1})

    monkeypatch.setattr(cl, "crossed_product_quotient", broken)
    r = vf.run_scenario(load("c6_c3_p3"))
    assert r["status"] == "fail"
    (b,) = r["blocks"]
    for name in ("extension_isomorphism", "action_compatibility", "second_extension_embedding"):
        assert b["checks"][name]["status"] == "fail"
        assert b["checks"][name]["witness"]["component"] == 1
    assert b["checks"]["stabilizer_equality"]["status"] == "pass"
    out = json.loads(vf.emit_report(r))
    assert out["blocks"][0]["invariants"]["crossed_products"]["status"] == "fail"


def test_fault_injection_in_subgroup_normality(monkeypatch):
    monkeypatch.setattr(cl, "is_normal_in", lambda *a: False)
    r = vf.run_scenario(load("c6_c3_p3"))
    assert r["blocks"][0]["invariants"]["support_subgroups_normal_invariant"]["status"] == "fail"
    assert r["status"] == "fail"


def test_group_algebra_case_rejects_explicit():
    with pytest.raises(ConstructionError):
        vf.run_group_algebra_case(load("s3_a3_p2_matrix"))


def test_text_report_lists_claims():
    text = vf.emit_report(vf.run_scenario(load("c6_c3_p3")), "text")
    for name, num in vf.THEOREM_CHECKS:
        assert f"({num}) {name}" in text
    assert text.rstrip().endswith("status: pass")


def test_caps_enforced():
    with pytest.raises(ConstructionError, match="cap"):
        vf.run_scenario(load("s4_a4_p2", caps={"max_dim": 10}))


def test_scenario_errors():
    with pytest.raises(ConstructionError, match="not normal"):
        sc.from_dict({"p": 2, "H": {"permutations": [[1, 0, 2], [1, 2, 0]]}, "K": {"generators": [[1, 0, 2]]}})
    with pytest.raises(ConstructionError, match="missing"):
        sc.from_dict({"p": 2, "H": {"permutations": [[1, 0]]}})
    with pytest.raises(ConstructionError):
        sc.from_dict({"p": 2, "H": {"permutations": [[1, 0]]}, "K": {"elements": [[0, 1]]}, "block": "some"})


def test_explicit_identity_action_rejected():
    data = json.loads((SCENARIOS / "s3_a3_p2_matrix.json").read_text())
    data["algebra"]["act"] = [{"element": g, "value": [[int(i == j) for j in range(4)] for i in range(4)]} for g in data["H"]["permutations"]]
    with pytest.raises(ConstructionError, match="interior_compatibility"):
        sc.from_dict(data).interior()
