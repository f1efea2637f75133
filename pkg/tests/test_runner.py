"""Tests for coverage backends, the cache and batch execution."""

import sys

import pytest

from src.errors import (
    BatchFailedError,
    ConfigurationError,
    FormulaError,
    OracleMissError,
    RunnerError,
)
from src.formula import TRUE, parse_formula
from src.runner import (
    FIG2_ANNOTATIONS,
    CommandBackend,
    CoverageCache,
    CoverageRunner,
    OracleBackend,
    RunnerSpec,
    SpecBackend,
    create_backend,
    eval_builtin,
    eval_spec,
    parse_runner_spec,
    parse_spec_text,
    rerun_diagnostic,
)
from src.runner.backends import CoverageBackend
from src.space import enumerate_all, make_space


def locs(*names):
    return frozenset(f"L{n}" for n in names)


class CountingBackend(CoverageBackend):
    """Wraps another backend and counts executions."""

    def __init__(self, inner):
        super().__init__(inner.space)
        self.inner = inner
        self.calls = 0

    def execute(self, config):
        self.calls += 1
        return self.inner.execute(config)


class TestBuiltins:
    def test_fig3_rows(self, fig3_configs):
        assert eval_builtin("fig2", fig3_configs["c1"]) == locs(0, 4, 6)
        assert eval_builtin("fig2", fig3_configs["c2"]) == locs(0, 4, 6, 7, 8)
        assert eval_builtin("fig2", fig3_configs["c3"]) == locs(0, 1, 3)

    def test_c50limit(self, c50_space):
        assert eval_builtin("c50limit", c50_space.parse_config("1,1,2")) == {"HIT"}
        assert eval_builtin("c50limit", c50_space.parse_config("0,1,2")) == frozenset()
        assert eval_builtin("c50limit", c50_space.parse_config("1,1,4")) == frozenset()

    def test_unknown_program(self, c50_space):
        with pytest.raises(ConfigurationError, match="unknown builtin"):
            eval_builtin("nope", c50_space.parse_config("1,1,2"))

    def test_space_mismatch(self, c50_space):
        with pytest.raises(ConfigurationError):
            eval_builtin("fig2", c50_space.parse_config("1,1,2"))

    def test_fig2_matches_annotations(self, fig2_space):
        spec = {loc: parse_formula(text, fig2_space) for loc, text in FIG2_ANNOTATIONS.items()}
        for config in enumerate_all(fig2_space):
            covered = eval_builtin("fig2", config)
            assert covered == eval_spec(spec, config, fig2_space), str(config)
            assert "L0" in covered
            assert not {"L3", "L6"} <= covered


class TestSpec:
    def test_true_covers_everything(self, c50_space):
        for config in enumerate_all(c50_space):
            assert eval_spec({"P": TRUE}, config, c50_space) == {"P"}

    def test_fig2_c2(self, fig2_space, fig3_configs):
        spec = {loc: parse_formula(text, fig2_space) for loc, text in FIG2_ANNOTATIONS.items()}
        assert eval_spec(spec, fig3_configs["c2"], fig2_space) == locs(0, 4, 6, 7, 8)

    def test_miss(self, fig2_space):
        config = fig2_space.config_from_mapping(
            {"s": 0, "t": 0, "u": 1, "v": 0, "a": 0, "b": 0, "c": 0, "d": 0, "e": 0}
        )
        assert eval_spec({"Q": parse_formula("u=1 & v=1")}, config, fig2_space) == frozenset()

    def test_unknown_option(self, c50_space):
        with pytest.raises(FormulaError):
            eval_spec({"Q": parse_formula("w=1")}, c50_space.parse_config("1,1,1"), c50_space)

    def test_parse_spec_text(self, c50_space):
        spec = parse_spec_text("# comment\nA: s=1 & t=1\nB: true\n\n", c50_space)
        assert list(spec) == ["A", "B"]
        assert spec["B"] == TRUE

    @pytest.mark.parametrize(
        "text", ["A s=1\n", "A: s=1\nA: t=1\n", "A: w=1\n", "A: s=(\n", "A B: s=1\n"]
    )
    def test_bad_spec_text(self, c50_space, text):
        with pytest.raises(FormulaError):
            parse_spec_text(text, c50_space)


class TestOracle:
    def test_lookup_and_miss(self, c50_space, write_file):
        path = write_file("c50.db", "1,1,2 -> HIT\n0,0,0 ->\n1,1,2 -> HIT\n")
        backend = OracleBackend.from_file(path, c50_space)
        assert backend.execute(c50_space.parse_config("1,1,2")) == {"HIT"}
        assert backend.execute(c50_space.parse_config("0,0,0")) == frozenset()
        with pytest.raises(OracleMissError):
            backend.execute(c50_space.parse_config("0,1,0"))

    def test_multiple_locations(self, c50_space, write_file):
        path = write_file("m.db", "0,0,0 -> a; b ;c\n")
        backend = OracleBackend.from_file(path, c50_space)
        assert backend.execute(c50_space.parse_config("0,0,0")) == {"a", "b", "c"}

    @pytest.mark.parametrize("text", ["1,1,2 HIT\n", "1,1 -> HIT\n", "1,1,9 -> HIT\n"])
    def test_malformed(self, c50_space, write_file, text):
        with pytest.raises(RunnerError):
            OracleBackend.from_file(write_file("bad.db", text), c50_space)

    def test_missing_file(self, c50_space, tmp_path):
        with pytest.raises(RunnerError, match="not found"):
            create_backend(parse_runner_spec(f"oracle:{tmp_path / 'missing.db'}"), c50_space)


class TestCommand:
    def test_placeholders_and_cov_lines(self, c50_space, write_file):
        script = write_file(
            "prog.py",
            "import sys\n"
            "s, t, z = sys.argv[1:]\n"
            "print('starting')\n"
            "if s == '1' and t == '1' and z in '123':\n"
            "    print('COV HIT')\n"
            "print('COV END')\n",
        )
        template = f"{sys.executable} {script} {{s}} {{t}} {{z}}"
        backend = CommandBackend(template, c50_space, timeout=30)
        assert backend.execute(c50_space.parse_config("1,1,3")) == {"HIT", "END"}
        assert backend.execute(c50_space.parse_config("1,0,3")) == {"END"}

    def test_nonzero_exit_is_backend_error(self, c50_space, write_file):
        script = write_file("fail.py", "raise SystemExit(3)\n")
        backend = CommandBackend(f"{sys.executable} {script}", c50_space, timeout=30)
        runner = CoverageRunner(backend)
        with pytest.raises(BatchFailedError):
            runner.run_configs([c50_space.parse_config("1,1,3")])
        assert len(runner.cache.failures) == 1

    def test_non_utf8_coverage_fails_only_its_config(self, c50_space, write_file):
        script = write_file(
            "bytes.py",
            "import sys\n"
            "out = sys.stdout.buffer\n"
            "out.write(b'noise \\xff\\n')\n"
            "out.write(b'COV \\xff\\xfe\\n' if sys.argv[1] == '1' else b'COV A\\n')\n",
        )
        backend = CommandBackend(f"{sys.executable} {script} {{z}}", c50_space, timeout=30)
        runner = CoverageRunner(backend)
        good, bad = c50_space.parse_config("0,0,0"), c50_space.parse_config("0,0,1")
        assert runner.run_configs([good, bad]) == {good: frozenset({"A"})}
        assert list(runner.cache.failures) == [bad]
        assert "not UTF-8" in runner.cache.failures[bad]

    def test_unknown_placeholder(self, c50_space):
        with pytest.raises(ConfigurationError):
            CommandBackend("prog {w}", c50_space)


class TestRunnerSpec:
    @pytest.mark.parametrize(
        "text, kind, target",
        [
            ("builtin:fig2", "builtin", "fig2"),
            ("oracle:data/x.db", "oracle", "data/x.db"),
            ("cmd:./prog --a {a}", "cmd", "./prog --a {a}"),
            ("spec:p.spec", "spec", "p.spec"),
        ],
    )
    def test_parse(self, text, kind, target):
        spec = RunnerSpec.parse(text)
        assert (spec.kind, spec.target) == (kind, target)
        assert str(spec) == text

    @pytest.mark.parametrize("text", ["fig2", "gcov:x", "builtin:", "cmd:  "])
    def test_parse_errors(self, text):
        with pytest.raises(ConfigurationError):
            RunnerSpec.parse(text)

    def test_builtin_space_mismatch(self, c50_space):
        with pytest.raises(ConfigurationError):
            create_backend(RunnerSpec.parse("builtin:fig2"), c50_space)

    def test_file_backends_need_space(self, write_file):
        path = write_file("p.spec", "A: true\n")
        with pytest.raises(ConfigurationError, match="space"):
            create_backend(RunnerSpec.parse(f"spec:{path}"))


class TestCoverageRunner:
    def test_cache_hits_skip_backend(self, fig2_backend, fig3_configs):
        backend = CountingBackend(fig2_backend)
        runner = CoverageRunner(backend)
        c1 = fig3_configs["c1"]
        first = runner.run_configs([c1])
        second = runner.run_configs([c1])
        assert first == second == {c1: locs(0, 4, 6)}
        assert backend.calls == 1
        assert runner.cache.executions == 1

    def test_returns_exactly_inputs(self, fig2_runner, fig3_configs):
        c1, c2, c3 = fig3_configs["c1"], fig3_configs["c2"], fig3_configs["c3"]
        fig2_runner.run_configs([c1, c2, c3])
        assert set(fig2_runner.run_configs([c2, c2])) == {c2}
        assert fig2_runner.cache.configs() == [c1, c2, c3]

    def test_parallel_matches_sequential(self, fig2_backend, fig2_space):
        configs = list(enumerate_all(fig2_space))[:200]
        sequential = CoverageRunner(fig2_backend, jobs=1)
        parallel = CoverageRunner(fig2_backend, jobs=4)
        assert sequential.run_configs(configs) == parallel.run_configs(configs)
        assert sequential.cache.configs() == parallel.cache.configs()

    def test_partial_failure_recorded(self, c50_space):
        records = {c50_space.parse_config("1,1,1"): frozenset({"HIT"})}
        runner = CoverageRunner(OracleBackend(records, c50_space))
        good, bad = c50_space.parse_config("1,1,1"), c50_space.parse_config("0,0,0")
        result = runner.run_configs([good, bad])
        assert list(result) == [good]
        assert runner.cache.known(bad)
        assert runner.cache.partition("HIT") == ([good], [])
        # failed configurations are not retried
        runner.run_configs([bad])
        assert runner.cache.executions == 2

    def test_rejects_foreign_config(self, fig2_runner, c50_space):
        with pytest.raises(ConfigurationError):
            fig2_runner.run_configs([c50_space.parse_config("1,1,1")])


class TestCache:
    def test_first_writer_wins(self, c50_space):
        cache = CoverageCache()
        config = c50_space.parse_config("1,1,1")
        assert cache.insert(config, ["HIT"]) == {"HIT"}
        assert cache.insert(config, []) == {"HIT"}
        assert len(cache) == 1

    def test_locations_sorted(self, c50_space):
        cache = CoverageCache()
        cache.insert(c50_space.parse_config("1,1,1"), ["b", "a"])
        cache.insert(c50_space.parse_config("0,1,1"), ["c"])
        assert cache.locations() == ["a", "b", "c"]


def test_rerun_diagnostic_finds_flaky_configs(c50_space):
    class Flaky(CoverageBackend):
        def __init__(self):
            super().__init__(c50_space)
            self.calls = 0

        def execute(self, config):
            self.calls += 1
            if config.values[0] == "1":
                return frozenset({"X"}) if self.calls % 2 else frozenset()
            return frozenset({"Y"})

    configs = [c50_space.parse_config("1,0,0"), c50_space.parse_config("0,0,0")]
    unstable = rerun_diagnostic(Flaky(), configs, 3)
    assert list(unstable) == [configs[0]]
    assert len(unstable[configs[0]]) == 3


def test_spec_backend_validates_formulas(c50_space):
    with pytest.raises(FormulaError):
        SpecBackend({"A": parse_formula("w=1")}, c50_space)
    space = make_space({"s": (0, 1), "t": (0, 1), "z": range(5)})
    backend = SpecBackend({"A": parse_formula("s=1 & t=1")}, space)
    assert backend.execute(c50_space.parse_config("1,1,0")) == {"A"}
