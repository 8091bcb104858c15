import json

import pytest

from apollonite.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, run, \
    verify_circle
from apollonite.packing import Circle


@pytest.fixture(autouse=True)
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("APOLLONITE_CACHE", raising=False)
    return tmp_path


def quiet_config(tmp_path, **options):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(dict(progress=False, **options)))
    return str(path)


def json_lines(out):
    return [json.loads(line) for line in out.splitlines() if line]


def test_circles_below_the_first_child(capsys):
    assert run(["circles", "--max-curv", "1"]) == EXIT_OK
    assert capsys.readouterr().out == ""


def test_circles(capsys):
    assert run(["circles", "--max-curv", "4"]) == EXIT_OK
    records = json_lines(capsys.readouterr().out)
    assert {"c": 4, "cx": 1, "cy": 4} in records


def test_circles_plot(workdir):
    out = workdir / "packing.png"
    assert run(["circles", "--max-curv", "9", "--plot", str(out)]) == EXIT_OK
    assert out.stat().st_size > 0


def test_tile_ascii(capsys):
    assert run(["tile", "--circle", "4,1,4", "--ascii"]) == EXIT_OK
    assert capsys.readouterr().out == "##\n##\n"


def test_tile_json(capsys):
    assert run(["tile", "--circle", "4,1,4", "--json"]) == EXIT_OK
    record = json_lines(capsys.readouterr().out)[0]
    assert record["circle"] == {"c": 4, "cx": 1, "cy": 4}
    assert len(record["squares"]) == 4


def test_vectors(capsys):
    assert run(["vectors", "--circle", "4,1,4"]) == EXIT_OK
    record = json_lines(capsys.readouterr().out)[0]
    assert [p["v"] for p in record["pairs"]] == [[2, 1], [-2, 1], [0, -2]]


def test_vectors_are_cached(workdir, capsys):
    config = quiet_config(workdir, cache_dir=str(workdir))
    assert run(["--config", config, "vectors", "--circle", "9,1,6"]) \
        == EXIT_OK
    assert (workdir / "vectors.json").exists()


@pytest.mark.parametrize("argv", [
    ["tile", "--circle", "4,1,4", "--bogus"],
    ["tile", "--circle", "4,1"],
    ["pattern", "--circle", "4,1,4", "--window", "ax3"],
    ["verify"],
    [],
])
def test_usage_errors(argv):
    assert run(argv) == EXIT_USAGE


def test_foreign_circle():
    assert run(["tile", "--circle", "4,3,4"]) == EXIT_USAGE


def test_missing_config(workdir):
    assert run(["--config", str(workdir / "nope.json"), "table",
                "--max-curv", "4"]) == EXIT_USAGE


def test_bad_schedule_in_config(workdir):
    config = quiet_config(workdir, sandpile_schedule="sideways")
    assert run(["--config", config, "sandpile", "--chips", "4",
                "--ascii"]) == EXIT_USAGE


def test_verify_command(capsys):
    assert run(["verify", "--circle", "4,1,4"]) == EXIT_OK
    records = json_lines(capsys.readouterr().out)
    assert records and all(r["passed"] for r in records)
    assert "maximality_probe" in {r["check"] for r in records}


def test_verify_sweep(workdir, capsys):
    config = quiet_config(workdir)
    assert run(["--config", config, "verify", "--max-curv", "30",
                "--periods", "2"]) == EXIT_OK
    assert all(r["passed"] for r in json_lines(capsys.readouterr().out))


@pytest.mark.slow
def test_verify_sweep_to_100(workdir):
    config = quiet_config(workdir)
    assert run(["--config", config, "verify", "--max-curv", "100"]) \
        == EXIT_OK


def test_verify_circle():
    reports = verify_circle(Circle.of(9, 1, 6), periods=2, probe_size=4)
    assert reports.passed, reports.failed()
    names = {r.name for r in reports}
    assert {"vector_identities", "lattice", "tiling_cover", "peak_matrix",
            "maximality_probe"} <= names
    assert "maximality_probe" not in {
        r.name for r in verify_circle(Circle.of(9, 1, 6), periods=1)}


def test_pattern_file(workdir):
    out = workdir / "pattern.pgm"
    assert run(["pattern", "--circle", "4,1,4", "--window", "5x3",
                "--out", str(out)]) == EXIT_OK
    data = out.read_bytes()
    assert data.startswith(b"P5\n5 3\n255\n")
    assert len(data) == len(b"P5\n5 3\n255\n") + 15


def test_pattern_ascii_outline(capsys):
    assert run(["pattern", "--circle", "4,1,4", "--ascii",
                "--outline"]) == EXIT_OK
    rows = capsys.readouterr().out.splitlines()
    assert len(rows) == 3 and all(len(row) == 3 for row in rows)
    assert rows[1][1] == " "
    assert rows[0] == "ooo"


def test_pattern_png(workdir):
    out = workdir / "pattern.png"
    assert run(["pattern", "--circle", "9,1,6", "--format", "png",
                "--out", str(out)]) == EXIT_OK
    assert out.read_bytes().startswith(b"\x89PNG")


def test_sandpile(workdir, capsys):
    assert run(["sandpile", "--chips", "4", "--ascii"]) == EXIT_OK
    rows = capsys.readouterr().out.splitlines()
    middle = len(rows) // 2
    assert rows[middle][middle - 1:middle + 2] == ". ."
    out = workdir / "pile.pgm"
    assert run(["sandpile", "--chips", "50", "--schedule", "fifo",
                "--out", str(out)]) == EXIT_OK
    assert out.read_bytes().startswith(b"P5\n")


def test_sandpile_compare(workdir, capsys):
    config = quiet_config(workdir)
    assert run(["--config", config, "sandpile-compare", "--chips", "200",
                "--max-curv", "9", "--top", "2"]) == EXIT_OK
    records = json_lines(capsys.readouterr().out)
    assert len(records) == 2
    assert records[0]["area"] >= records[1]["area"]


def test_table(workdir, capsys):
    config = quiet_config(workdir)
    assert run(["--config", config, "table", "--max-curv", "12"]) == EXIT_OK
    records = json_lines(capsys.readouterr().out)
    assert records[0]["circle"] == {"c": 4, "cx": 1, "cy": 4}
    for record in records:
        assert sum(record["counts"].values()) == record["circle"]["c"]


@pytest.mark.parametrize("argv", [
    ["ford", "--p", "1", "--q", "2"],
    ["ford", "--p", "2", "--q", "5"],
    ["diamond", "--k", "2"],
])
def test_families(argv, capsys):
    assert run(argv) == EXIT_OK
    checks = {r["check"] for r in json_lines(capsys.readouterr().out)}
    assert checks == {"family_laplacian", "family_equivalence"}


def test_family_argument_errors():
    assert run(["ford", "--p", "2", "--q", "4"]) == EXIT_USAGE
    assert run(["diamond", "--k", "0"]) == EXIT_USAGE


def test_failed_checks_exit_with_one(monkeypatch):
    from apollonite import cli
    from apollonite.reports import CheckReport, ReportContainer

    monkeypatch.setattr(
        cli, "verify_circle", lambda *args, **kwargs: ReportContainer(
            [CheckReport.from_failures("forced", 1, ["forced failure"])]))
    assert run(["verify", "--circle", "4,1,4"]) == EXIT_FAILED


def test_tile_plot(workdir, capsys):
    out = workdir / "tile.png"
    assert run(["tile", "--circle", "9,1,6", "--plot", str(out)]) == EXIT_OK
    assert out.stat().st_size > 0
    assert capsys.readouterr().out.count("#") == 9


def test_tile_plot_of_a_line(workdir):
    assert run(["tile", "--circle", "0,1,0", "--plot",
                str(workdir / "line.png")]) == EXIT_USAGE
