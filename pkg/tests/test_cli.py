"""Exit codes, report formats, figure rendering."""

import re

import pytest

from graphfock import cli
from graphfock.fixtures import write_fixture_files

LINE_RE = re.compile(
    r'^CHECK \S+ \S+ N=\d+ M=(-|\d+) tol=\S+ seed=\d+ '
    r'value=\d\.\d{12}e[+-]\d{2} bound=\d\.\d{12}e[+-]\d{2} '
    r'anchor="[^"]+" (PASS|FAIL)$')


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("carriers")
    write_fixture_files(d)
    return d


def test_check_tck_lines_format(fixture_dir, capsys):
    code = cli.main(["check", "--graph", str(fixture_dir / "loop1.g"),
                     "--suite", "tck", "--N", "4", "--format", "lines"])
    out = capsys.readouterr().out.strip().splitlines()
    assert code == 0
    assert len(out) == 4
    for line in out:
        assert LINE_RE.match(line), line
        assert line.endswith("PASS")


def test_check_hrlemma_kgraph(fixture_dir, capsys):
    code = cli.main(["check", "--kgraph", str(fixture_dir / "torus2.kg"),
                     "--suite", "hrlemma", "--N", "6", "--M", "3",
                     "--tol", "1e-8", "--seed", "42", "--count", "3",
                     "--format", "lines"])
    out = capsys.readouterr().out.strip().splitlines()
    assert code == 0
    assert all(LINE_RE.match(line) for line in out)


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.g"
    bad.write_text("graph\nvertices: x\nedge a : x -> nowhere\n")
    code = cli.main(["check", "--graph", str(bad), "--suite", "tck", "--N", "3"])
    captured = capsys.readouterr()
    assert code == 3
    assert "cannot load carrier" in captured.err


def test_missing_file_exit_code(tmp_path):
    code = cli.main(["check", "--graph", str(tmp_path / "none.g"),
                     "--suite", "tck", "--N", "3"])
    assert code == 3


def test_usage_error_exit_code(fixture_dir, capsys):
    code = cli.main(["check", "--graph", str(fixture_dir / "loop1.g"),
                     "--suite", "nope", "--N", "3"])
    capsys.readouterr()
    assert code == 2
    # suite/carrier combination errors are usage errors too
    code = cli.main(["check", "--kgraph", str(fixture_dir / "torus2.kg"),
                     "--suite", "shift", "--N", "3"])
    assert code == 2


def test_usage_errors_for_missing_parameters(fixture_dir, capsys):
    # k-graph defect checks need M; the grafting suite needs T >= N
    code = cli.main(["check", "--kgraph", str(fixture_dir / "torus2.kg"),
                     "--suite", "ck", "--N", "3"])
    assert code == 2
    code = cli.main(["check", "--graph", str(fixture_dir / "flag.g"),
                     "--suite", "identify", "--N", "6", "--T", "3"])
    assert code == 2
    err = capsys.readouterr().err
    assert "too short" in err


def test_check_failure_exit_code(fixture_dir, capsys, monkeypatch):
    from graphfock.checks import CheckReport

    def fake_run_suite(suite, carrier, N, **kw):
        return [CheckReport(suite, carrier.name, N, None, 1e-8, 0, 1.0, 0.5,
                            "synthetic failing check", False)]

    monkeypatch.setattr(cli, "run_suite", fake_run_suite)
    code = cli.main(["check", "--graph", str(fixture_dir / "loop1.g"),
                     "--suite", "tck", "--N", "3"])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in out


def test_byte_stable_output(fixture_dir, capsys):
    args = ["check", "--graph", str(fixture_dir / "cuntz2.g"), "--suite", "shift",
            "--N", "4", "--count", "3", "--seed", "7", "--format", "lines"]
    cli.main(args)
    first = capsys.readouterr().out
    cli.main(args)
    second = capsys.readouterr().out
    assert first == second


def test_fixtures_subcommand(tmp_path, capsys):
    code = cli.main(["fixtures", "--out", str(tmp_path / "fx")])
    out = capsys.readouterr().out
    assert code == 0
    assert (tmp_path / "fx" / "torus2.kg").exists()
    assert "loop1.g" in out


def test_report_writes_table_and_figures(fixture_dir, tmp_path, capsys):
    out_dir = tmp_path / "rep"
    code = cli.main(["report", "--kgraph", str(fixture_dir / "torus2.kg"),
                     "--N", "3", "--M", "2", "--count", "2",
                     "--out", str(out_dir)])
    capsys.readouterr()
    assert code == 0
    tsv = (out_dir / "checks.tsv").read_text().splitlines()
    assert tsv[0].split("\t")[0] == "suite"
    assert len(tsv) > 3
    profile = out_dir / "torus2_norm_profile.png"
    sandwich = out_dir / "torus2_sandwich.png"
    for png in (profile, sandwich):
        assert png.exists()
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_report_graph_only_profile(fixture_dir, tmp_path, capsys):
    out_dir = tmp_path / "rep2"
    code = cli.main(["report", "--graph", str(fixture_dir / "cuntz2.g"),
                     "--N", "4", "--count", "2", "--out", str(out_dir)])
    capsys.readouterr()
    assert code == 0
    assert (out_dir / "cuntz2_norm_profile.png").exists()
    assert not (out_dir / "cuntz2_sandwich.png").exists()


def test_help_exits_zero(capsys):
    code = cli.main(["--help"])
    capsys.readouterr()
    assert code == 0
