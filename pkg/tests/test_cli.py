import json
import subprocess
import sys

import pytest

from passnet.cli import main

from conftest import DATA


@pytest.fixture
def sim_log(tmp_path):
    path = tmp_path / "sim.log"
    assert main(["simulate", "--config", str(DATA / "disruption.cfg"), "--out", str(path)]) == 0
    return path


class TestValidate:
    def test_clean(self, regulation_log_path, capsys):
        assert main(["validate", str(regulation_log_path)]) == 0
        assert "0 errors, 0 warnings" in capsys.readouterr().out

    def test_malformed_line(self, tmp_path, capsys):
        p = tmp_path / "bad.log"
        p.write_text("1 0 8 5 14 5\n1 1 14 5 6 8\n1 2 6 x 7 9\n")
        assert main(["validate", str(p)]) == 1
        out = capsys.readouterr().out
        assert "line 3" in out and "1 errors" in out

    def test_strict_warnings(self, tmp_path, roster, capsys):
        p = tmp_path / "w.log"
        p.write_text("1 0 8 5 99 5\n")
        roster_path = str(DATA / "spain_2010_roster.csv")
        assert main(["validate", str(p), "--roster", roster_path]) == 0
        assert main(["validate", str(p), "--roster", roster_path, "--strict"]) == 1
        assert "unknown player 99" in capsys.readouterr().out

    def test_missing_file(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "nope.log")]) == 1


class TestAnalyze:
    def test_pace_rows(self, regulation_log_path, capsys):
        assert main(["analyze", str(regulation_log_path), "--metric", "pace", "--period", "regulation"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "window_end,value"
        assert len(lines) == 1 + 76

    def test_chains_columns(self, regulation_log_path, capsys):
        main(["analyze", str(regulation_log_path), "--metric", "chains", "--period", "regulation"])
        assert capsys.readouterr().out.splitlines()[0] == "window_end,value,sem,n"

    def test_all_json(self, regulation_log_path, capsys):
        main(["analyze", str(regulation_log_path), "--metric", "all", "--format", "json", "--period", "regulation"])
        doc = json.loads(capsys.readouterr().out)
        assert [s["metric"] for s in doc["series"]] == ["pace", "chains", "clustering", "density"]
        assert all(len(s["points"]) == 76 for s in doc["series"])

    def test_out_dir_and_empty_period(self, regulation_log_path, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["analyze", str(regulation_log_path), "--out-dir", str(out)]) == 0
        names = sorted(p.name for p in out.iterdir())
        assert len(names) == 8
        assert (out / "density_extratime.csv").read_text() == "window_end,value\n"
        assert "no events in period extratime" in capsys.readouterr().err

    def test_json_out_dir_mirrors_csv(self, sim_log, tmp_path):
        main(["analyze", str(sim_log), "--metric", "chains", "--out-dir", str(tmp_path / "c")])
        main(["analyze", str(sim_log), "--metric", "chains", "--format", "json", "--out-dir", str(tmp_path / "j")])
        csv_rows = (tmp_path / "c" / "chains_regulation.csv").read_text().splitlines()[1:]
        points = json.loads((tmp_path / "j" / "chains_regulation.json").read_text())["points"]
        assert len(csv_rows) == len(points)
        first = csv_rows[0].split(",")
        assert float(first[1]) == points[0]["value"] and int(first[3]) == points[0]["n"]

    def test_window_options(self, regulation_log_path, capsys):
        main(["analyze", str(regulation_log_path), "--metric", "pace", "--period", "regulation",
              "--window-length", "10", "--window-step", "5"])
        assert len(capsys.readouterr().out.splitlines()) == 1 + 17

    def test_flags(self, sim_log, capsys):
        base = ["analyze", str(sim_log), "--metric", "clustering", "--period", "regulation"]
        main(base)
        plain = capsys.readouterr().out
        main(base + ["--clustering-include-deg1"])
        assert capsys.readouterr().out != plain
        main(base + ["--clustering-global"])
        assert capsys.readouterr().out != plain
        dens = ["analyze", str(sim_log), "--metric", "density", "--period", "regulation"]
        main(dens)
        active = capsys.readouterr().out
        main(dens + ["--density-full-space", "--roster", str(DATA / "spain_2010_roster.csv")])
        assert capsys.readouterr().out != active

    def test_zero_window_length_is_usage_error(self, regulation_log_path):
        with pytest.raises(SystemExit) as info:
            main(["analyze", str(regulation_log_path), "--window-length", "0"])
        assert info.value.code == 2


class TestCentrality:
    def test_window_scope(self, sim_log, capsys):
        assert main(["centrality", str(sim_log), "--scope", "window:30"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "player,zone,in_deg,out_deg,in_str,out_str"
        assert len(lines) > 1

    def test_roster_names(self, sim_log, capsys):
        main(["centrality", str(sim_log), "--scope", "half:2", "--roster", str(DATA / "spain_2010_roster.csv")])
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].endswith(",name")
        assert any("Xavi Hernández" in line for line in lines)

    def test_period_scope_json(self, sim_log, capsys):
        main(["centrality", str(sim_log), "--scope", "period:extratime", "--format", "json"])
        doc = json.loads(capsys.readouterr().out)
        assert doc["scope"] == "period:extratime"
        assert {"player", "zone", "in_deg", "out_deg", "in_str", "out_str"} <= set(doc["rows"][0])

    def test_outside_span(self, sim_log, capsys):
        assert main(["centrality", str(sim_log), "--scope", "window:500"]) == 1
        assert "no 15-minute window ends at minute 500" in capsys.readouterr().err

    @pytest.mark.parametrize("scope", ["window", "half:9", "period:overtime", "minute:3", "window:abc"])
    def test_bad_scope(self, sim_log, scope):
        assert main(["centrality", str(sim_log), "--scope", scope]) == 2


class TestExportGraph:
    def test_dot(self, regulation_log_path, capsys):
        assert main(["export-graph", str(regulation_log_path), "--minute", "15"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("digraph {")
        assert '"8@Center" -> "14@Center" [weight=15]' in out

    def test_dot_roster_and_collapse(self, regulation_log_path, capsys):
        roster = str(DATA / "spain_2010_roster.csv")
        main(["export-graph", str(regulation_log_path), "--minute", "15", "--roster", roster])
        assert '"Xavi Hernández@Center" -> "Xabi Alonso@Center"' in capsys.readouterr().out
        main(["export-graph", str(regulation_log_path), "--minute", "15", "--collapse-zones"])
        assert '"8" -> "14" [weight=15]' in capsys.readouterr().out

    def test_json(self, regulation_log_path, capsys):
        main(["export-graph", str(regulation_log_path), "--minute", "90", "--format", "json"])
        doc = json.loads(capsys.readouterr().out)
        assert doc["window"] == {"start": 75, "end": 90}
        assert sum(e["weight"] for e in doc["edges"]) == 15


class TestSimulate:
    def test_scenario_seed(self, tmp_path):
        a, b = tmp_path / "a.log", tmp_path / "b.log"
        main(["simulate", "--scenario", "domination", "--seed", "3", "--out", str(a)])
        main(["simulate", "--scenario", "domination", "--seed", "3", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()
        assert main(["validate", str(a)]) == 0

    def test_requires_source(self):
        assert main(["simulate"]) == 2

    def test_unknown_scenario_usage(self):
        with pytest.raises(SystemExit) as info:
            main(["simulate", "--scenario", "nope"])
        assert info.value.code == 2


def test_zone_scheme_env(regulation_log_path, tmp_path, monkeypatch, capsys):
    labels = (DATA / "zones_default.txt").read_text().splitlines()[1:]
    swapped = [line.replace("5=Center", "5=OppBox") if line.startswith("5=") else
               line.replace("9=OppBox", "9=Center") if line.startswith("9=") else line
               for line in labels]
    scheme = tmp_path / "zones.txt"
    scheme.write_text("\n".join(swapped))
    monkeypatch.setenv("PASSNET_ZONE_SCHEME", str(scheme))
    main(["export-graph", str(regulation_log_path), "--minute", "15"])
    assert '"8@OppBox"' in capsys.readouterr().out


def test_module_entry_point(regulation_log_path):
    proc = subprocess.run(
        [sys.executable, "-m", "passnet", "validate", str(regulation_log_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "0 errors, 0 warnings" in proc.stdout
