from __future__ import annotations

import json
import shutil
from pathlib import Path

import pytest

from malcev_et.cli import run

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fx(tmp_path):
    for p in FIXTURES.glob("*.json"):
        shutil.copy(p, tmp_path / p.name)
    return tmp_path


def call(*args):
    return run([str(a) for a in args])


def test_verify_sl2(fx):
    code, out, _ = call("verify", fx / "sl2.json")
    assert code == 0
    for line in ("malcev: pass", "sagle: pass", "jacobi: pass"):
        assert line in out


def test_verify_octonions_ignores_jacobi_for_exit_status(fx):
    code, out, _ = call("verify", fx / "malcev7.json")
    assert code == 0 and "jacobi: FAIL" in out


def test_verify_failure_exit_code(fx):
    code, out, _ = call("verify", fx / "sl2_perturbed.json")
    assert code == 1 and "malcev: FAIL" in out


def test_check_et(fx):
    assert call("check-et", fx / "et_zero.json")[0] == 0
    assert call("check-etrep", fx / "etrep_aff1_character_twisted.json")[0] == 0


def test_h2_prints_dimension(fx):
    code, out, _ = call("h2", fx / "et_aff1.json", "--coeff", "adjoint")
    assert code == 0 and out.startswith("dim H2 = 0")
    code, out, _ = call("h2", fx / "et_aff1_character.json", "--coeff", fx / "etrep_aff1_character_twisted.json")
    assert code == 0 and out.startswith("dim H2 = 1")


def test_h2_strict_mode_reports_failure(fx):
    code, out, _ = call("h2", fx / "et_sl2.json", "--strict-printed")
    assert code == 1 and "coboundaries are cocycles: NO" in out


def test_constructions_write_parseable_documents(fx):
    for args in (("hemi", fx / "sl2_adjoint.json"), ("induce", fx / "et_aff1.json", "--side", "right"),
                 ("semidirect", fx / "etrep_aff1_character_twisted.json"), ("semidirect", fx / "sl2_adjoint.json")):
        out = fx / "out.json"
        code, _, err = call(*args, "-o", out)
        assert code == 0, err
        assert call("verify", out)[0] == 0, args


def test_cocycle_pipeline(fx):
    et, er = fx / "et_aff1_character.json", fx / "etrep_aff1_character_twisted.json"
    z, b = fx / "cocycle_aff1_character_twisted.json", fx / "one_cochain_aff1_character_twisted.json"
    assert call("cocycle", et, er, z)[0] == 0
    assert call("coboundary", et, er, b, "-o", fx / "db.json")[0] == 0
    assert call("cocycle", et, er, fx / "db.json")[0] == 0
    assert call("extend", et, er, z, "-o", fx / "ext.json")[0] == 0
    assert call("equiv", et, er, fx / "db.json", fx / "db.json")[0] == 0
    assert call("equiv", et, er, z, fx / "db.json")[0] == 1


def test_cocycle_against_wrong_base_is_malformed(fx):
    code, _, err = call("cocycle", fx / "et_aff1.json", fx / "etrep_aff1_character_twisted.json",
                        fx / "cocycle_aff1_character_twisted.json")
    assert code == 2 and "different embedding tensor" in err


def test_deformations(fx):
    assert call("deform", fx / "et_aff1.json", fx / "deformation_aff1_id.json", "--order", "2")[0] == 0
    assert call("deform", fx / "et_aff1.json", fx / "formal_aff1_id.json")[0] == 0
    code, _, _ = call("nijenhuis", fx / "et_aff1.json", fx / "nijenhuis_aff1_id.json", "--emit-deformation", fx / "d.json")
    assert code == 0
    assert (fx / "d.json").read_text() == (fx / "deformation_aff1_id.json").read_text()


def test_rigid(fx):
    code, out, _ = call("rigid", fx / "et_aff1.json")
    assert code == 0 and out.startswith("rigid")


def test_enumerate(fx):
    code, out, _ = call("--json", "enumerate", fx / "et_aff1_F2.json", "--what", "nijenhuis")
    doc = json.loads(out)
    assert code == 0 and doc["results"][0]["count"] == 35
    assert call("enumerate", fx / "sl2_adjoint.json", "--what", "et")[0] == 2


def test_random_is_deterministic():
    args = ("random", "--seed", "5", "--shape", "two_cochain:2,1,1,1", "--field", "F3", "--count", "3")
    assert call(*args) == call(*args)
    assert call(*args)[1] != call("random", "--seed", "6", *args[3:])[1]


def test_malformed_input_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "malcev_algebra", "field": "Q", "dim": 2, "bracket": [{"i": 0, "j": 1, "c": [0, "2/-4"]}]}')
    code, out, err = call("verify", bad)
    assert code == 2 and "$.bracket[0].c[1]" in err
    code, out, _ = call("--json", "verify", bad)
    assert code == 2 and json.loads(out)["exit_code"] == 2
    assert call("verify", tmp_path / "missing.json")[0] == 2
    assert call("no-such-command")[0] == 2


def test_json_report_mirrors_checks(fx):
    code, out, _ = call("--json", "check-et", fx / "et_aff1.json")
    doc = json.loads(out)
    rep = doc["results"][0]["report"]
    assert code == 0 and rep["passed"] and rep["checks"][0]["name"] == "embedding_tensor"


def test_reports_are_byte_identical_across_runs(fx):
    for args in (("--json", "h2", fx / "et_zero.json"), ("verify", fx / "malcev7.json")):
        assert call(*args) == call(*args)
