import json

import pytest

from mfib import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def word(tmp_path):
    def make(text):
        p = tmp_path / "w.txt"
        p.write_text(text)
        return str(p)
    return make


def test_relcheck_identity(capsys, word):
    code, out, _ = run(capsys, "relcheck", word("fiber N genus=2\nu 1\nu 1\n"))
    assert code == 0 and "identity: yes ... PASS" in out


def test_relcheck_not_identity(capsys, word):
    code, out, _ = run(capsys, "relcheck", word("u 1\n"))
    assert code == 1 and "identity: no" in out


def test_relcheck_parse_error(capsys, word):
    code, _, err = run(capsys, "relcheck", word("q 7\n"))
    assert code == 2 and "error" in err


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "relcheck", str(tmp_path / "none"))[0] == 2


def test_unknown_flag_and_command(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["relcheck", "--frobnicate", "x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["nope"])


def test_json_round_trip(capsys, word):
    code, out, _ = run(capsys, "relcheck", "--json", word("u 1\nu 1\n"))
    rec = json.loads(out)
    _, text, _ = run(capsys, "relcheck", word("u 1\nu 1\n"))
    assert cli.text_from_record(rec) == text
    assert out.count("\n") == 1


def test_invariants(capsys, data_dir, word):
    code, out, _ = run(capsys, "invariants", str(data_dir / "x0.fact"))
    assert code == 0 and "chi: 2\n" in out and "cover_chi: 4\n" in out
    code, out, _ = run(capsys, "invariants", str(data_dir / "x1.fact"))
    assert "chi: 0\n" in out
    code, out, _ = run(capsys, "invariants", word("fiber N genus=1\nbase D2\n"))
    assert code == 0 and "handles: 1,1,1,0,0" in out


def test_invariants_failed_condition(capsys, word):
    code, out, _ = run(capsys, "invariants", word("fiber N genus=2\nbase S2\nu 1\n"))
    assert code == 1 and "FAIL" in out


def test_cover(capsys, data_dir):
    code, out, _ = run(capsys, "cover", str(data_dir / "x1.fact"), str(data_dir / "x1.diagram"))
    assert code == 0
    assert "betti: 1,1,0,1,1" in out and "h1: Z + Z/2" in out


def test_cover_mismatched_diagram(capsys, data_dir):
    code, out, _ = run(capsys, "cover", str(data_dir / "x1.fact"), str(data_dir / "x0.diagram"))
    assert code == 1


@pytest.mark.parametrize("name", ["x0", "x1"])
def test_examples(capsys, name):
    code, out, _ = run(capsys, "examples", name)
    assert code == 0 and "FAIL" not in out


def test_examples_unknown(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["examples", "x2"])
    assert exc.value.code == 2


def test_eps_zero_rejected(capsys):
    code, _, err = run(capsys, "localmodel", "verify", "--eps", "0")
    assert code == 2 and "eps" in err


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("MFIB_SEED", "5")
    args = cli.build_parser().parse_args(["localmodel", "verify"])
    assert cli._config(args).seed == 5
    args = cli.build_parser().parse_args(["localmodel", "verify", "--seed", "9"])
    assert cli._config(args).seed == 9


def test_plot(capsys, tmp_path):
    code, out, _ = run(capsys, "localmodel", "plot", "--out", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["attach.svg", "fiber.svg", "gamma.svg"]
    assert "wrote: gamma.svg" in out
