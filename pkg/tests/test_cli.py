import json

import pytest

from ordhull.cli import main
from ordhull.instancefile import fixture_path, load_instance


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def records(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, [json.loads(line) for line in out.splitlines()]


DIAMOND = str(fixture_path("diamond_swap"))
GAP = str(fixture_path("fixed_point_gap_antichain"))


def edited(tmp_path, edit):
    d = json.loads(open(DIAMOND).read())
    edit(d)
    p = tmp_path / "edited.json"
    p.write_text(json.dumps(d))
    return str(p)


def test_validate(capsys):
    code, recs = records(capsys, "validate", DIAMOND)
    assert code == 0 and recs[-1]["valid"]


def test_validate_monotonicity_violation(tmp_path, capsys):
    # g reverses the diamond: an involution, but not monotone
    path = edited(tmp_path, lambda d: d["action_S"]["g"].update({"00": "11", "01": "01", "10": "10", "11": "00"}))
    code, recs = records(capsys, "validate", path)
    assert code == 2
    assert recs[-1]["error"] == "Ax2Violation" and len(recs[-1]["witness"]) == 3


def test_validate_missing_hom_entry(tmp_path, capsys):
    path = edited(tmp_path, lambda d: d["hom"].pop("g"))
    code, recs = records(capsys, "validate", path)
    assert code == 2 and recs[-1]["error"] == "InstanceFileError"


def test_validate_bad_json(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{")
    assert run(capsys, "validate", str(p))[0] == 2


@pytest.mark.parametrize("algorithm", ["oracle", "orbitwise"])
def test_envelope(capsys, algorithm):
    code, recs = records(capsys, "envelope", DIAMOND, "--function", "f_flat", "--class", "hg",
                         "--side", "lower", "--algorithm", algorithm)
    assert code == 0 and recs[-1]["table"] == {"a": "00", "b": "00"}


def test_envelope_of_sub_member_is_itself(capsys):
    code, recs = records(capsys, "envelope", DIAMOND, "--function", "f_hom", "--class", "sub")
    assert code == 0 and recs[-1]["table"] == recs[-1]["input"]


def test_envelope_orbitwise_precondition(tmp_path, capsys):
    from ordhull.instancefile import save_instance
    from ordhull.verifier import InstanceFamily, enumerate_instances
    inst = next(i for i in enumerate_instances(InstanceFamily(2, 2, 2, h_kind="semigroup", t_group=False))
                if not i.H.is_group)
    inst.functions = {"f": inst.constant(inst.C.bottom)}
    p = save_instance(inst, tmp_path / "semi.json")
    code, recs = records(capsys, "envelope", str(p), "--function", "f", "--class", "hg",
                         "--algorithm", "orbitwise")
    assert code == 2 and recs[-1]["error"] == "OrbitwiseNeedsGroups"


def test_check_exit_codes(capsys):
    assert run(capsys, "check", DIAMOND, "--statements", "all", "--functions", "all")[0] == 0
    code, recs = records(capsys, "check", GAP, "--statements", "THM2_L", "--functions", "f_gap")
    assert code == 1 and recs[1]["witness"]["f"]["c"] == "TOP"
    assert run(capsys, "check", DIAMOND, "--statements", "THM9")[0] == 2
    assert run(capsys, "check", DIAMOND, "--functions", "missing")[0] == 2


def test_check_all_tables(capsys):
    code, recs = records(capsys, "check", DIAMOND, "--functions", "tables")
    assert code == 0 and recs[0]["functions"] == "tables"


def test_regularize_orbits_classify(capsys):
    code, recs = records(capsys, "regularize", DIAMOND, "--function", "f_flat")
    assert recs[-1]["minorant"] == {"a": "00", "b": "00"} and recs[-1]["majorant"] == {"a": "11", "b": "11"}
    code, recs = records(capsys, "orbits", str(fixture_path("fixed_point_gap")))
    stationary = {(r["space"], r["point"]) for r in recs if r.get("stationary")}
    assert ("X", "c") in stationary and ("S", "00") in stationary
    code, recs = records(capsys, "classify", DIAMOND)
    assert {r["function"]: r["classes"] for r in recs[1:]} == {
        "f_flat": [], "f_hom": ["HG", "HGC", "SUB", "SUPER"]}


def test_hunt(tmp_path, capsys):
    out = tmp_path / "findings"
    code, recs = records(capsys, "hunt", "--non-free", "--targets", "THM2_L", "--max-h", "2",
                         "--max-x", "3", "--max-s", "4", "--budget", "1000", "--out", str(out))
    assert code == 1
    files = sorted(out.glob("finding-*.json"))
    assert files and len(files) == recs[-1]["findings"]
    first = files[0]
    assert main(["validate", str(first)]) == 0
    assert main(["check", str(first), "--statements", "THM2_L", "--functions", "witness"]) == 1
    capsys.readouterr()


def test_hunt_lemma1_holds(capsys):
    assert run(capsys, "hunt", "--targets", "LEMMA1", "--budget", "200")[0] == 0


def test_hunt_budget_zero(capsys):
    code, recs = records(capsys, "hunt", "--targets", "LEMMA1", "--budget", "0")
    assert code == 0 and recs[-1]["examined"] == 0


def test_hunt_bad_bounds(capsys):
    assert run(capsys, "hunt", "--targets", "LEMMA1", "--max-h", "9")[0] == 2


def test_demo_presets_and_flags(capsys):
    code, recs = records(capsys, "demo", "--preset", "pos_square")
    rows = [r for r in recs if r["record"] == "demo_row"]
    assert code == 0 and len(rows) == 100
    assert all(abs(r["f_min"] - 2.0 ** -10 * r["x"] ** 2) <= 1e-12 * r["f_min"] for r in rows)
    code, recs = records(capsys, "demo", "--kind", "pos", "--function", "x", "--exponents", "-10", "10")
    assert code == 0 and all(r["f_min"] == pytest.approx(r["x"], rel=1e-12) for r in recs[1:])
    code, recs = records(capsys, "demo", str(fixture_path("demo_bounded_wave")))
    assert code == 0


def test_demo_domain_escape(capsys):
    code, recs = records(capsys, "demo", "--kind", "exp", "--function", "log(x)", "--x-min", "0.1")
    assert code == 2 and recs[-1]["error"] == "DomainEscape"


def test_text_is_rendered_from_records(capsys):
    code, text = run(capsys, "check", GAP, "--statements", "THM2_L", "--functions", "f_gap")
    assert "THM2_L" in text and "fails" in text and "TOP" in text


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("ORDHULL_SEED", "7")
    code, recs = records(capsys, "hunt", "--targets", "LEMMA1", "--budget", "3", "--random",
                         "--max-h", "4", "--max-x", "4", "--max-s", "5")
    assert code == 0 and recs[-1]["examined"] == 3
    a = capsys.readouterr()
    monkeypatch.setenv("ORDHULL_SEED", "x")
    with pytest.raises(SystemExit):
        main(["validate", DIAMOND])


def test_machine_output_is_deterministic(capsys):
    outs = [run(capsys, "check", DIAMOND, "--functions", "tables", "--format", "json")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    code, out = run(capsys, "validate", DIAMOND, "--format", "json", "--timing")
    assert json.loads(out.splitlines()[-1])["record"] == "timing"
