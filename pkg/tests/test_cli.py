"""Pipeline subcommands: wiring, exit codes, manifest recording."""

import json

import pytest
from click.testing import CliRunner

from pagforge.cli import main

SMALL_CORPUS = """\
C[S+](C)C\ts1
CC[S+](C)C\ts2
CC(C)[S+]1CCCC1\ts3
c1ccccc1\tn1
C1CC\tbad1
[S+](c1ccccc1)(c2ccccc2)c3ccccc3\ts4
C[S+]1CCCCC1\ts5
"""


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def workdir(tmp_path):
    (tmp_path / "corpus.smi").write_text(SMALL_CORPUS)
    return tmp_path


class TestIngestFilter:
    def test_ingest_writes_report(self, runner, workdir):
        result = runner.invoke(main, [
            "ingest", "--input", str(workdir / "corpus.smi"),
            "--output", str(workdir / "records.csv"),
            "--manifest", str(workdir / "manifest.json"),
        ])
        assert result.exit_code == 0, result.output
        report = json.loads(
            (workdir / "records.report.json").read_text())
        assert report["parsed"] == 6
        assert report["parse_errors"][0]["line"] == 5
        manifest = json.loads((workdir / "manifest.json").read_text())
        assert manifest["stages"][0]["stage"] == "ingest"
        assert manifest["stages"][0]["outputs"][0]["sha256"]

    def test_missing_input_exit_2(self, runner, workdir):
        result = runner.invoke(main, [
            "ingest", "--input", str(workdir / "nope.smi"),
            "--output", str(workdir / "x.csv"),
        ])
        assert result.exit_code == 2

    def test_bad_window_config_exit_3(self, runner, workdir):
        bad = workdir / "bad_window.json"
        bad.write_text("{not json")
        runner.invoke(main, [
            "ingest", "--input", str(workdir / "corpus.smi"),
            "--output", str(workdir / "records.csv"),
        ])
        result = runner.invoke(main, [
            "filter", "--input", str(workdir / "records.csv"),
            "--window", str(bad),
            "--output", str(workdir / "filtered.csv"),
        ])
        assert result.exit_code == 3

    def test_filter_reports_drop_counts(self, runner, workdir):
        runner.invoke(main, [
            "ingest", "--input", str(workdir / "corpus.smi"),
            "--output", str(workdir / "records.csv"),
        ])
        result = runner.invoke(main, [
            "filter", "--input", str(workdir / "records.csv"),
            "--output", str(workdir / "filtered.csv"),
        ])
        assert result.exit_code == 0, result.output
        report = json.loads(
            (workdir / "filtered.report.json").read_text())
        assert report["dropped_not_cation"] == 1  # benzene
        assert report["kept"] >= 4

    def test_rerun_identical_output_hashes(self, runner, workdir):
        for _ in range(2):
            runner.invoke(main, [
                "ingest", "--input", str(workdir / "corpus.smi"),
                "--output", str(workdir / "records.csv"),
                "--manifest", str(workdir / "m.json"),
            ])
        stages = json.loads((workdir / "m.json").read_text())["stages"]
        assert stages[0]["outputs"][0]["sha256"] == \
            stages[1]["outputs"][0]["sha256"]


class TestHelp:
    @pytest.mark.parametrize("command", [
        "ingest", "filter", "train-vae", "encode", "fit-gmm", "train-clf",
        "sample", "screen", "metrics", "scaffolds", "dice-hist", "serve",
    ])
    def test_every_stage_has_help(self, runner, command):
        result = runner.invoke(main, [command, "--help"])
        assert result.exit_code == 0
        assert "--" in result.output


class TestDiceHist:
    def test_histogram_csv(self, runner, workdir):
        result = runner.invoke(main, [
            "dice-hist", "--input", str(workdir / "corpus.smi"),
            "--output", str(workdir / "hist.csv"),
        ])
        assert result.exit_code == 0, result.output
        lines = (workdir / "hist.csv").read_text().strip().splitlines()
        assert lines[0] == "bin_low,bin_high,count"
        total = sum(int(line.split(",")[2]) for line in lines[1:])
        assert total == 6 * 5 // 2  # 6 valid molecules
