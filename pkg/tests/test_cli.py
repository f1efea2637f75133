"""End-to-end tests of the gentree command line."""

import json
import sys

import pytest
from loguru import logger

from src.cli import build_parser, main

C50_SPACE_TEXT = "s: 0,1\nt: 0,1\nz: 0,1,2,3,4\n"


@pytest.fixture(autouse=True)
def restore_logging():
    yield
    logger.remove()
    logger.add(sys.__stderr__, level="WARNING")


@pytest.fixture
def fig2_truth_file(tmp_path):
    path = tmp_path / "truth.json"
    assert main(["truth", "--runner", "builtin:fig2", "--out", str(path)]) == 0
    return path


class TestUsage:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["bogus"],
            ["run"],
            ["run", "--runner", "builtin:fig2", "--budget", "many"],
            ["compare", "--inferred", "x.json"],
        ],
    )
    def test_bad_usage_exits_1(self, argv, capsys):
        assert main(argv) == 1
        assert "error" in capsys.readouterr().err

    def test_help_exits_0(self, capsys):
        assert main(["--help"]) == 0
        assert "run" in capsys.readouterr().out

    def test_subcommands(self):
        parser = build_parser()
        args = parser.parse_args(["run", "--runner", "builtin:fig2", "--seed", "3"])
        assert (args.command, args.seed, args.budget) == ("run", 3, None)

    def test_unknown_log_level_exits_1(self, capsys):
        assert main(["demo", "--log-level", "LOUD"]) == 1
        assert "--log-level" in capsys.readouterr().err
        args = build_parser().parse_args(["demo", "--log-level", "debug"])
        assert args.log_level == "DEBUG"

    def test_unknown_builtin(self):
        assert main(["run", "--runner", "builtin:nope"]) == 1

    def test_bad_runner_spec(self):
        assert main(["run", "--runner", "gcov:prog"]) == 1


class TestRun:
    def test_builtin_writes_result(self, tmp_path, capsys):
        out = tmp_path / "run.json"
        log = tmp_path / "log.csv"
        argv = ["run", "--runner", "builtin:fig2", "--seed", "1", "--out", str(out)]
        assert main(argv + ["--csv", str(log)]) == 0

        stdout = capsys.readouterr().out
        assert "L0: true" in stdout
        assert "configs" in stdout
        data = json.loads(out.read_text())
        assert data["kind"] == "run"
        assert data["params"]["runner"] == "builtin:fig2"
        assert data["locations"]["L0"]["formula"] == "true"
        assert (tmp_path / "run.timing.json").exists()
        assert log.read_text().startswith("iteration,mode,")

    def test_same_seed_same_bytes(self, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            assert main(["run", "--runner", "builtin:fig2", "--out", str(path)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_with_truth_reports_exact(self, fig2_truth_file, capsys):
        capsys.readouterr()
        argv = ["run", "--runner", "builtin:fig2", "--truth", str(fig2_truth_file)]
        assert main(argv) == 0
        assert "/9" in capsys.readouterr().out

    def test_missing_oracle_exits_2(self, tmp_path, write_file):
        space = write_file("c50.space", C50_SPACE_TEXT)
        argv = ["run", "--space", str(space), "--runner", f"oracle:{tmp_path / 'missing.db'}"]
        assert main(argv) == 2

    @pytest.mark.parametrize("records", ["9,9,9 -> HIT\n", "# no records\n"])
    def test_bad_oracle_exits_2(self, write_file, records):
        space = write_file("c50.space", C50_SPACE_TEXT)
        db = write_file("oracle.db", records)
        assert main(["run", "--space", str(space), "--runner", f"oracle:{db}"]) == 2

    def test_spec_runner(self, write_file, capsys):
        space = write_file("c50.space", C50_SPACE_TEXT)
        spec = write_file("p.spec", "# two locations\nP: s=1 & t=1\nQ: true\n")
        argv = ["run", "--space", str(space), "--runner", f"spec:{spec}", "--rerun", "2"]
        assert main(argv) == 0
        stdout = capsys.readouterr().out
        assert "Q: true" in stdout
        assert "unstable" not in stdout

    def test_rerun_reports_unstable_command(self, tmp_path, write_file, capsys):
        space = write_file("c50.space", C50_SPACE_TEXT)
        script = write_file(
            "flaky.py",
            "import pathlib, sys\n"
            "counter = pathlib.Path(sys.argv[1])\n"
            "n = int(counter.read_text()) if counter.exists() else 0\n"
            "counter.write_text(str(n + 1))\n"
            "print('COV A')\n"
            "if n % 2:\n"
            "    print('COV B')\n",
        )
        runner = f"cmd:{sys.executable} {script} {tmp_path / 'calls'} {{z}}"
        argv = ["run", "--space", str(space), "--runner", runner, "--rerun", "2"]
        assert main(argv + ["--max-explore", "1"]) == 0
        assert "unstable" in capsys.readouterr().out

    def test_spec_runner_needs_space(self, write_file):
        spec = write_file("p.spec", "P: true\n")
        assert main(["run", "--runner", f"spec:{spec}"]) == 1

    def test_budget(self, tmp_path):
        out = tmp_path / "run.json"
        assert main(["run", "--runner", "builtin:fig2", "--budget", "8", "--out", str(out)]) == 0
        totals = json.loads(out.read_text())["totals"]
        assert totals["executions"] == 8
        assert totals["budget_exhausted"] is True

    def test_initial_configs(self, tmp_path, write_file):
        configs = write_file("init.txt", "1,1,0,0,0,1,2,1,0\n0,1,1,0,2,0,0,2,2\n")
        argv = ["run", "--runner", "builtin:fig2", "--initial-configs", str(configs)]
        assert main(argv) == 0
        bad = write_file("bad.txt", "1,1\n")
        argv = ["run", "--runner", "builtin:fig2", "--initial-configs", str(bad)]
        assert main(argv) == 1


class TestAnalysisCommands:
    def test_truth_and_compare(self, fig2_truth_file, capsys):
        data = json.loads(fig2_truth_file.read_text())
        assert data["kind"] == "truth"
        assert sorted(data["locations"]) == [f"L{i}" for i in range(9)]

        capsys.readouterr()
        argv = ["compare", "--inferred", str(fig2_truth_file), "--truth", str(fig2_truth_file)]
        assert main(argv) == 0
        assert "exact 9/9  delta cov 0" in capsys.readouterr().out

    def test_compare_missing_file(self, fig2_truth_file, tmp_path):
        argv = ["compare", "--inferred", str(tmp_path / "x.json"), "--truth", str(fig2_truth_file)]
        assert main(argv) == 1

    def test_compare_different_spaces(self, fig2_truth_file, tmp_path):
        other = tmp_path / "c50.json"
        assert main(["truth", "--runner", "builtin:c50limit", "--out", str(other)]) == 0
        argv = ["compare", "--inferred", str(other), "--truth", str(fig2_truth_file)]
        assert main(argv) == 1

    def test_mincov(self, fig2_truth_file, capsys):
        capsys.readouterr()
        argv = ["mincov", "--inferred", str(fig2_truth_file), "--exact", "--enabling", "0.3"]
        assert main(argv) == 0
        stdout = capsys.readouterr().out
        assert "optimum 3" in stdout
        assert "# enabling e=2" in stdout

    def test_baseline(self, tmp_path, capsys):
        out = tmp_path / "baseline.json"
        argv = ["baseline", "--runner", "builtin:c50limit", "--configs", "20", "--out", str(out)]
        assert main(argv) == 0
        assert "HIT: s=1 & t=1 & z in {1,2,3}" in capsys.readouterr().out
        assert json.loads(out.read_text())["kind"] == "baseline"

    def test_demo(self, tmp_path, capsys):
        out = tmp_path / "demo.json"
        assert main(["demo", "--seed", "2", "--out", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert "L0: true  [exact" in stdout
        assert out.exists()

    @pytest.mark.slow
    def test_sweep(self, capsys):
        argv = ["sweep", "--runner", "builtin:c50limit", "--seeds", "3", "--max-explore", "2"]
        assert main(argv) == 0
        stdout = capsys.readouterr().out
        assert stdout.count("seed ") == 3
        assert "median configs" in stdout
