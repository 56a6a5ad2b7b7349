import json

from ubqp_lp.cli import main


def run(capsys, *args):
    code = main(list(args))
    return code, capsys.readouterr()


def test_pipeline(tmp_path, capsys):
    inst, lp, sol = tmp_path / "i.json", tmp_path / "lp.json", tmp_path / "s.json"
    inst.write_text(json.dumps({"n": 3, "Q": [["-10", "-20"], ["-10"]], "b": ["-2", "-2", "-26"]}))
    assert main(["reduce", str(inst), "--out", str(lp)]) == 0
    assert main(["solve", str(lp), "--out", str(sol)]) == 0
    data = json.loads(sol.read_text())
    assert data["status"] == "optimal" and data["objective"] == "-110"
    code, out = run(capsys, "oracle", str(inst))
    assert code == 0 and json.loads(out.out) == {"min": "-110", "argmins": ["111"]}


def test_float_solve(tmp_path, capsys):
    inst, lp = tmp_path / "i.json", tmp_path / "lp.json"
    assert main(["gen", "--n", "4", "--seed", "3", "--out", str(inst)]) == 0
    assert main(["reduce", str(inst), "--out", str(lp)]) == 0
    code, out = run(capsys, "solve", str(lp), "--mode", "float")
    assert code == 0 and isinstance(json.loads(out.out)["objective"], float)


def test_gen_stdout_deterministic(capsys):
    _, a = run(capsys, "gen", "--n", "5", "--seed", "9", "--domain", "real", "--lo=-1/2", "--hi=1/2")
    _, b = run(capsys, "gen", "--n", "5", "--seed", "9", "--domain", "real", "--lo=-1/2", "--hi=1/2")
    assert a.out == b.out and json.loads(a.out)["domain"] == "real"


def test_errors_exit_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "Q": [["x", "1"], ["2"]], "b": [1, 2, 3]}')
    code, out = run(capsys, "oracle", str(bad))
    assert code == 1 and "malformed number" in out.err
    code, out = run(capsys, "oracle", str(tmp_path / "missing.json"))
    assert code == 1
    good = tmp_path / "g.json"
    main(["gen", "--n", "6", "--out", str(good)])
    code, out = run(capsys, "oracle", str(good), "--cap", "5")
    assert code == 1 and "cap" in out.err
    bad.write_text("{not json")
    assert run(capsys, "reduce", str(bad))[0] == 1


def test_selftest(capsys):
    code, out = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out.out
