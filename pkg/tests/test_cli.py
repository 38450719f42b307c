import json
import pytest
from somlogic.scripts.somlogic import main
from somlogic.som import save_map, load_map
from somlogic.stimulus import save_stimuli
from .utils import train


@pytest.fixture
def files(tmp_path, toy_stimuli):
    """Stimuli and a map trained on them, saved to disk"""
    stimuli = str(tmp_path / "stimuli.csv")
    save_stimuli(stimuli, toy_stimuli)
    som_map = str(tmp_path / "map.json")
    save_map(train(toy_stimuli, 3, 3, epochs=2, seed=1), som_map)
    return {"stimuli": stimuli, "map": som_map, "dir": tmp_path}


def _write(files, name, text):
    path = files["dir"] / name
    path.write_text(text)
    return str(path)


def _model_args(files, command):
    return [command, "--model", files["map"], "--input", files["stimuli"]]


def test_train(tmp_path, capsys, files):
    out = str(tmp_path / "trained.json")
    code = main(["train", "--input", files["stimuli"], "--grid", "3x3",
                 "--epochs", "2", "--seed", "1", "--out", out])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "trained 3x3 map on 16 stimuli, 32 steps"
    assert lines[1].startswith("category bird: d_max=")
    assert lines[2].startswith("category fish: d_max=")
    assert lines[3].startswith("units won: ")
    assert lines[3].endswith(" of 9")
    assert load_map(out) == load_map(files["map"])


def test_train_bad_grid(files):
    with pytest.raises(SystemExit) as err:
        main(["train", "--input", files["stimuli"], "--grid", "3by3",
              "--out", "unused.json"])
    assert err.value.code == 2


def test_train_missing_input(tmp_path, capsys):
    code = main(["train", "--input", str(tmp_path / "missing.csv"),
                 "--out", str(tmp_path / "map.json")])
    assert code == 2
    assert capsys.readouterr().err.startswith("somlogic: error: ")


def test_train_invalid_option(tmp_path, capsys, files):
    code = main(["train", "--input", files["stimuli"], "--lr0", "2",
                 "--out", str(tmp_path / "map.json")])
    assert code == 2
    assert "somlogic: error:" in capsys.readouterr().err


def test_check(capsys, files):
    queries = _write(files, "queries.txt",
                     "bird <= fish\nT(bird) <= bird\nmem(bird, s0)\n")
    code = main(_model_args(files, "check") + ["--queries", queries])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("[fails] bird <= fish")
    assert lines[1].startswith("[holds] T(bird) <= bird  method=FastExact")
    assert lines[2].startswith("[value] mem(bird, s0) = ")
    assert lines[3] == \
        "queries: 3, holds: 1, fails: 1, values: 1, errors: 0"


def test_check_query_errors(capsys, files):
    queries = _write(files, "queries.txt", "bird <=\nmem(bird, nobody)\n")
    code = main(_model_args(files, "check") + ["--queries", queries,
                                               "--format", "json"])
    assert code == 1
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["error"] == 2


def test_check_strategies(capsys, files):
    queries = _write(files, "queries.txt", "bird <= fish\n")
    assert main(_model_args(files, "check") +
                ["--queries", queries, "--fast"]) == 0
    assert "note=sufficient test only" in capsys.readouterr().out
    assert main(_model_args(files, "check") +
                ["--queries", queries, "--exact"]) == 0
    assert "method=General" in capsys.readouterr().out


def test_check_exclusive_strategies(files):
    with pytest.raises(SystemExit) as err:
        main(_model_args(files, "check") +
             ["--queries", "q.txt", "--fast", "--exact"])
    assert err.value.code == 2


def test_check_fuzzy_mode(capsys, files):
    queries = _write(files, "queries.txt", "bird <= bird\n")
    assert main(_model_args(files, "check") +
                ["--queries", queries, "--mode", "fuzzy"]) == 0
    assert "method=Fuzzy" in capsys.readouterr().out


def test_check_unknown_logic(capsys, files):
    queries = _write(files, "queries.txt", "bird <= fish\n")
    code = main(_model_args(files, "check") +
                ["--queries", queries, "--logic", "boolean"])
    assert code == 2
    assert "unknown fuzzy logic" in capsys.readouterr().err


def test_check_specificity_cycle(capsys, files):
    queries = _write(files, "queries.txt", "bird <= fish\n")
    spec = _write(files, "spec.txt", "bird > fish\nfish > bird\n")
    code = main(_model_args(files, "check") +
                ["--queries", queries, "--spec", spec])
    assert code == 2
    assert "cycle" in capsys.readouterr().err


def test_membership_csv(files):
    queries = _write(files, "queries.txt", "P(bird)\n")
    target = str(files["dir"] / "members.csv")
    assert main(_model_args(files, "check") +
                ["--queries", queries, "--emit-membership-csv", target]) == 0
    with open(target) as handle:
        assert handle.readline().strip() == "id,kind,bird,fish"


def test_extract(capsys, files):
    assert main(_model_args(files, "extract")) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "T(bird) <= bird" not in lines
    assert all(" <= " in line for line in lines if not line.startswith("#"))


def test_extract_to_file(files):
    out = str(files["dir"] / "kb.txt")
    spec = _write(files, "spec.txt", "fish > bird\n")
    assert main(_model_args(files, "extract") +
                ["--out", out, "--spec", spec]) == 0
    with open(out) as handle:
        assert handle.readline() == "# specificity: fish > bird\n"


def test_extract_fuzzy(capsys, files):
    assert main(_model_args(files, "extract") + ["--fuzzy"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("bird <= fish >= ")


def test_extract_threshold(capsys, files):
    assert main(_model_args(files, "extract") + ["--threshold", "2"]) == 2
    assert "threshold" in capsys.readouterr().err


def test_prob(capsys, files):
    queries = _write(files, "queries.txt", "P(top)\nP(bird or not bird)\n")
    assert main(_model_args(files, "prob") + ["--queries", queries]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("[value] P(top) = ")
    assert float(lines[0].split(" = ")[1]) == pytest.approx(1.0)


def test_prob_distribution(capsys, files):
    queries = _write(files, "queries.txt", "P(bird)\n")
    dist = _write(files, "dist.csv", "id,mass\ns0,1\n")
    assert main(_model_args(files, "prob") +
                ["--queries", queries, "--dist", dist]) == 0
    assert "[value] P(bird) = " in capsys.readouterr().out


def test_prob_bad_distribution(capsys, files):
    queries = _write(files, "queries.txt", "P(bird)\n")
    dist = _write(files, "dist.csv", "id,mass\ns0,0.5\n")
    assert main(_model_args(files, "prob") +
                ["--queries", queries, "--dist", dist]) == 2
    assert "sums to" in capsys.readouterr().err


def test_prob_guard(capsys, files):
    queries = _write(files, "queries.txt", "P(bird)\n")
    assert main(_model_args(files, "prob") +
                ["--queries", queries, "--logic", "product"]) == 1
    assert "[error] line 1:" in capsys.readouterr().out


def test_trace(capsys, files):
    assert main(["trace", "--input", files["stimuli"], "--grid", "3x3",
                 "--epochs", "1", "--every", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[:3] == ["step 0", "+ bird <= bot", "+ fish <= bot"]
    steps = [line for line in lines if line.startswith("step ")]
    assert steps == ["step 0", "step 4", "step 8", "step 12", "step 16"]


def test_trace_every_inf(files):
    out = str(files["dir"] / "trace.json")
    assert main(["trace", "--input", files["stimuli"], "--grid", "2x2",
                 "--epochs", "2", "--every", "inf", "--format", "json",
                 "--out", out]) == 0
    with open(out) as handle:
        data = json.load(handle)
    assert [cur["step"] for cur in data] == [0, 32]


def test_trace_bad_interval(files):
    with pytest.raises(SystemExit) as err:
        main(["trace", "--input", files["stimuli"], "--every", "0"])
    assert err.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as err:
        main(["--version"])
    assert err.value.code == 0
    assert capsys.readouterr().out.startswith("somlogic ")


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-s"])
