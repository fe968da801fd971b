import json

import pytest

from ckembed.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_isometric_no_for_cantor_into_scattered(capsys):
    code, out, _ = run(capsys, "embeds", "--isometric", "cantor", "I(w^(3)*1,1)")
    assert code == 1 and out.startswith("no")


def test_decision_only_yes_into_unit(capsys):
    code, out, _ = run(capsys, "embeds", "--isometric", "I(w^(1)*1,1)", "unit")
    assert code == 0
    assert "Rosenthal/Miljutin (decision-only)" in out


def test_isomorphic_flag(capsys):
    code, out, _ = run(capsys, "embeds", "--isomorphic", "I(2,1)", "I(w,1)")
    assert code == 0 and out.startswith("yes")
    code, _, _ = run(capsys, "embeds", "--isomorphic", "unit", "I(w,1)")
    assert code == 1


def test_conditions_exit_codes(capsys):
    code, out, _ = run(capsys, "conditions", "op(c,fin(1))", "[1,omega1]")
    assert code == 2 and "iii: independent" in out
    code, out, _ = run(capsys, "conditions", "--assume-ch", "op(c,fin(1))", "[1,omega1]")
    assert code == 2 and "iii: yes" in out
    code, out, _ = run(capsys, "conditions", "[1,omega1]", "unit")
    assert code == 1 and "ii: no [ccc obstruction]" in out


def test_invariants(capsys):
    assert run(capsys, "szlenk", "I(w,1)")[1].strip() == "w^(2)"
    assert run(capsys, "height", "I(w,2)")[1].strip() == "w^(1)+1"
    assert run(capsys, "derive", "I(w^(2),1)", "w")[1].strip() == "I(w^(2),1)"
    assert run(capsys, "kernel", "sum(cantor,I(1,1))")[1].strip() == "sum(cantor)"
    assert run(capsys, "msnf", "sum(I(w,1),I(2,3))")[1].strip() == "I(w^(1),1)"
    code, out, _ = run(capsys, "cellularity", "--json", "sum(I(w,1),I(w,1),fin(2))", "w")
    assert code == 0 and json.loads(out) == {"value": "2", "witness_max": 2}


def test_json_output(capsys):
    code, out, _ = run(capsys, "embeds", "--json", "--isometric", "I(w,1)", "sum(I(w,2),fin(1))")
    obj = json.loads(out)
    assert code == 0 and obj["answer"] == "yes"


def test_errors_exit_3(capsys):
    code, _, err = run(capsys, "height", "foo(")
    assert code == 3 and "line 1, col 1" in err
    code, out, _ = run(capsys, "height", "--json", "fin(0)")
    assert code == 3 and "error" in json.loads(out)
    code, _, _ = run(capsys, "synth", "I(1,1)", "--alpha", "2")
    assert code == 3
    code, _, _ = run(capsys, "embeds", "--isometric", "[1,omega1]", "unit")
    assert code == 3
    code, _, _ = run(capsys, "apply", "/nonexistent.json", "/nonexistent.json")
    assert code == 3


def test_missing_seed_is_an_error(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", str(tmp_path / "op.json")])
    assert e.value.code == 3


def test_output_is_deterministic(capsys):
    argv = ["synth", "sum(I(w,2),cantor,fin(3))", "--alpha", "w", "--m", "2"]
    first = run(capsys, *argv)
    assert first == run(capsys, *argv)


def test_operator_round_trip_through_files(tmp_path, capsys):
    op = tmp_path / "op.json"
    code, _, _ = run(capsys, "synth", "sum(I(w,2),fin(3))", "--alpha", "w", "-o", str(op))
    assert code == 0
    fn = tmp_path / "f.json"
    f = {"children": {"1": "3/1"}, "tail": "1/2"}
    fn.write_text(json.dumps(f))
    code, out, _ = run(capsys, "apply", str(op), str(fn))
    assert code == 0
    # the first copy of I(w,1) inside I(w,2) receives f, everything else is zero
    assert json.loads(out) == {"sum": [{"sum": [f, "0/1"]}, "0/1"]}
    code, out, _ = run(capsys, "verify", "--op", str(op), "--seed", "0", "--trials", "30",
                       "--mutants", "--json")
    report = json.loads(out)
    assert report["ok"] and report["mutants"]["total"] > 0
    code2, out2, _ = run(capsys, "verify", str(op), "--seed", "0", "--trials", "30",
                         "--mutants", "--json")
    assert out2 == out and code2 == code


def test_surjection_round_trip_through_files(tmp_path, capsys):
    sj = tmp_path / "rho.json"
    code, _, _ = run(capsys, "synth", "sum(I(w,1),I(2,2))", "--kind", "surjection",
                     "--alpha", "w", "-o", str(sj))
    assert code == 0
    code, out, _ = run(capsys, "surject-eval", str(sj), '[{"sum": 0}, "inf"]')
    assert code == 0 and json.loads(out) == ["inf"]
    code, _, _ = run(capsys, "surject-eval", str(sj), '[{"sum": 9}]')
    assert code == 3


def test_unknown_check_rejected(tmp_path, capsys):
    op = tmp_path / "op.json"
    run(capsys, "synth", "fin(3)", "--alpha", "0", "--m", "2", "-o", str(op))
    code, _, err = run(capsys, "verify", str(op), "--seed", "1", "--checks", "linear,bogus")
    assert code == 3 and "bogus" in err
