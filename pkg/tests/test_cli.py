"""End-to-end checks of the command-line interface.

Everything runs in-process through ``cli.main`` so exit codes and stream
routing are observable without spawning subprocesses.
"""

import json

import pytest

from phyllo import cli
from phyllo.export import (
    BOUNDARY_COLUMNS,
    PATTERN_SCHEMA,
    TESSELLATION_SCHEMA,
    load_pattern,
)
from phyllo.analysis import sphere_thresholds
from phyllo.generator import generate


def test_generate_writes_loadable_pattern(tmp_path, capsys):
    out = tmp_path / "pattern.json"
    code = cli.main(
        ["generate", "--geometry", "plane", "--n", "120", "--out", str(out)]
    )
    assert code == 0
    assert "plane pattern: n=120" in capsys.readouterr().out

    loaded = load_pattern(out)
    fresh = generate("plane", 120)
    assert loaded.surface == fresh.surface
    assert loaded.n == fresh.n


def test_generate_is_byte_stable(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        cli.main(
            ["generate", "--geometry", "sphere", "--n", "101", "--out", str(p)]
        )
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_generate_stdout_carries_json_summary_on_stderr(capsys):
    code = cli.main(["generate", "--geometry", "hyperbolic", "--n", "50", "--a", "0.1"])
    captured = capsys.readouterr()
    assert code == 0
    doc = json.loads(captured.out)
    assert doc["schema"] == PATTERN_SCHEMA
    assert doc["n"] == 50
    assert "hyperbolic pattern" in captured.err


def test_analyze_file_matches_inline_arguments(tmp_path, capsys):
    pattern_file = tmp_path / "p400.json"
    cli.main(["generate", "--geometry", "plane", "--n", "400", "--out", str(pattern_file)])
    capsys.readouterr()

    from_file = tmp_path / "from_file"
    inline = tmp_path / "inline"
    assert cli.main(["analyze", "--in", str(pattern_file), "--out", str(from_file)]) == 0
    report = capsys.readouterr().out
    assert (
        cli.main(
            ["analyze", "--geometry", "plane", "--n", "400",
             "--out", str(inline), "--format", "csv"]
        )
        == 0
    )

    # the detector sees the complete rings of ranks 8 and 9 at n = 400
    assert "ring rank=8" in report and "ring rank=9" in report
    assert "FAIL" not in report
    assert (from_file / "summary.json").read_bytes() == (inline / "summary.json").read_bytes()

    tess_doc = json.loads((from_file / "tessellation.json").read_text())
    assert tess_doc["schema"] == TESSELLATION_SCHEMA
    assert len(tess_doc["cells"]) == 400

    header = (inline / "boundaries.csv").read_text().splitlines()[0]
    assert header == ",".join(BOUNDARY_COLUMNS)
    assert (inline / "distances.csv").exists()
    assert (inline / "areas.csv").exists()

    summary = json.loads((inline / "summary.json").read_text())
    assert all(summary["invariants"].values())
    assert summary["n"] == 400


def test_analyze_flags_non_golden_divergence(capsys):
    code = cli.main(
        ["analyze", "--geometry", "plane", "--n", "400", "--lambda", "0.55"]
    )
    assert code == 2
    assert "FAIL distance_confinement" in capsys.readouterr().out


def test_analyze_rejects_tampered_pattern_file(tmp_path):
    path = tmp_path / "pattern.json"
    cli.main(["generate", "--geometry", "plane", "--n", "60", "--out", str(path)])
    doc = json.loads(path.read_text())
    doc["sites"][30]["rho"] *= 1.1
    path.write_text(json.dumps(doc))
    with pytest.raises(SystemExit) as err:
        cli.main(["analyze", "--in", str(path)])
    assert err.value.code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "--geometry", "sphere", "--n", "101", "--a", "0.3"],
        ["generate", "--n", "100"],
        ["generate", "--geometry", "plane", "--n", "100", "--lambda", "phi"],
        ["analyze", "--in", "no-such-file.json"],
        ["analyze", "--in", "x.json", "--geometry", "plane", "--n", "10"],
        ["thresholds", "--u-max", "0"],
        ["render", "--geometry", "plane", "--n", "100", "--projection", "sideways"],
    ],
)
def test_usage_errors_exit_1(argv):
    with pytest.raises(SystemExit) as err:
        cli.main(argv)
    assert err.value.code == 1


def test_threshold_table_and_reports(tmp_path, capsys):
    csv_path = tmp_path / "thresholds.csv"
    assert cli.main(["thresholds", "--u-max", "10", "--out", str(csv_path), "--format", "csv"]) == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "u,threshold"
    values = [int(line.split(",")[1]) for line in lines[1:]]
    assert values == sphere_thresholds(10)

    json_path = tmp_path / "thresholds.json"
    assert cli.main(["thresholds", "--u-max", "4", "--out", str(json_path)]) == 0
    doc = json.loads(json_path.read_text())
    assert [row["threshold"] for row in doc["thresholds"]] == [1, 2, 4, 11]
    curves = {c["u"]: c["points"] for c in doc["polar_angle_curves"]}
    assert set(curves) == {1, 2, 3, 4}
    for pts in curves.values():
        ns = [n for n, _ in pts]
        angles = [angle for _, angle in pts]
        assert ns == sorted(ns)
        # rings drift toward the pole as the sphere grows
        assert angles[-1] < angles[0]
    capsys.readouterr()


def test_threshold_empirical_bracketing(capsys):
    assert cli.main(["thresholds", "--u-max", "5", "--empirical"]) == 0
    out = capsys.readouterr().out
    # thresholds inside the disordered core cannot be checked empirically
    assert "u= 4 threshold=11\n" in out
    assert "u= 5 threshold=28 empirical=confirmed" in out


RENDER_CASES = [
    (["--geometry", "plane", "--n", "400"], 345),
    (["--geometry", "sphere", "--n", "401"], 178),
    (["--geometry", "sphere", "--n", "401", "--projection", "stereographic"], 365),
    (["--geometry", "hyperbolic", "--n", "400", "--a", "0.05"], 337),
]


@pytest.mark.parametrize("argv,n_polygons", RENDER_CASES)
def test_render_polygon_counts(tmp_path, argv, n_polygons):
    out = tmp_path / "figure.svg"
    assert cli.main(["render", *argv, "--out", str(out)]) == 0
    text = out.read_text()
    assert text.count("<polygon") == n_polygons
    assert 'fill="white"' in text  # origin marker


def test_render_hyperbolic_draws_limit_circle(tmp_path):
    out = tmp_path / "disk.svg"
    cli.main(["render", "--geometry", "hyperbolic", "--n", "200", "--a", "0.05",
              "--out", str(out)])
    assert out.read_text().count("<circle") == 2
