import json
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from parabolica.cli import main

GOLDEN = Path(__file__).parent / "golden"


def _schema(name):
    return json.loads(resources.files("parabolica").joinpath(f"schemas/{name}").read_text())


def test_analyze_p3(capsys):
    assert main(["analyze", "x^2*y^2*(x+x*y+y^2)"]) == 0
    body = json.loads(capsys.readouterr().out)
    jsonschema.validate(body, _schema("tspp_report.schema.json"))
    assert len(body["points"]) == 3 and body["unresolved"] == []


def test_analyze_degenerate(capsys):
    assert main(["analyze", "x^2+y^2"]) == 1
    assert "degenerate" in capsys.readouterr().err


def test_analyze_parse_error(capsys):
    assert main(["analyze", "x^^2"]) == 1
    assert "parse error" in capsys.readouterr().err


def test_analyze_unresolved_exit_code(capsys):
    assert main(["analyze", "x^2*y^2*(x+x*y+y^2)", "--depth", "2"]) == 2


def test_analyze_reads_files(tmp_path, capsys):
    expr = tmp_path / "p1.txt"
    expr.write_text("x^2*y^2*(1+x+y)\n")
    exch = tmp_path / "p1.poly"
    exch.write_text("# P1 tile\n1 2 2\n1 3 2\n1 2 3\n")
    for arg in (str(expr), "@" + str(exch)):
        assert main(["analyze", arg, "--box=-1,0,-1,0"]) == 0
        assert len(json.loads(capsys.readouterr().out)["points"]) == 1


def test_rejects_float_arguments(capsys):
    assert main(["analyze", "x", "--box", "0.5,1,0,1"]) == 1
    assert main(["patchwork", "x", "--lifting", "l.csv", "--t", "0.001"]) == 1


def test_patchwork_example(tmp_path, capsys):
    lift = tmp_path / "lift.csv"
    lift.write_text("i,j,lambda\n2,2,0\n3,2,0\n2,3,0\n2,4,1\n")
    out = tmp_path / "sub.json"
    assert main(["patchwork", "x^2*y^2*(1+x+y+y^2)", "--lifting", str(lift), "--t", "1/2", "--out", str(out)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["x^2*y^2*(1+x+y+t*y^2)", "x^2*y^2*(1+x+y+1/2*y^2)"]
    sub = json.loads(out.read_text())
    jsonschema.validate(sub, _schema("subdivision.schema.json"))
    assert len(sub["faces"]) == 2


def test_patchwork_coverage_error(tmp_path, capsys):
    lift = tmp_path / "lift.csv"
    lift.write_text("0,0,0\n1,0,0\n0,1,0\n")
    assert main(["patchwork", "x^3", "--lifting", str(lift)]) == 1
    assert "without a lifting value" in capsys.readouterr().err


def test_plot_golden_tile(tmp_path):
    out = tmp_path / "p1.svg"
    assert main(["plot", "x^2*y^2*(1+x+y)", "--window=-2,1,-2,1", "--res", "200", "--out", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / "p1_system.svg").read_bytes()


def test_plot_empty_locus(tmp_path):
    out = tmp_path / "empty.svg"
    assert main(["plot", "x^2+y^2+1", "--window=-1,1,-1,1", "--res", "50", "--out", str(out)]) == 0
    text = out.read_text()
    assert text == (GOLDEN / "empty.svg").read_text()
    assert "polyline" not in text and "circle" not in text


def test_plot_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for p in (a, b):
        assert main(["plot", "x^2*y^2*(x+x*y+y^2)", "--window=0,4,-2,0", "--res", "120", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().count("<circle") == 3


def test_plot_io_error(capsys):
    assert main(["plot", "x", "--out", "/nonexistent/dir/x.svg"]) == 1


def test_reproduce_small_degree(capsys):
    assert main(["reproduce", "4"]) == 1
    assert "d < 5" in capsys.readouterr().err


def test_reproduce_large_degree_guard(capsys):
    assert main(["reproduce", "13"]) == 1


def test_reproduce_d6_with_plots(tmp_path, capsys):
    outdir = tmp_path / "plots"
    code = main(["reproduce", "6", "--t", "1/1024", "--t=-1/1024", "--plot", str(outdir), "--res", "150"])
    assert code == 0
    body = json.loads(capsys.readouterr().out)
    jsonschema.validate(body, _schema("glue_report.schema.json"))
    assert [r["glued_count"] for r in body["reports"]] == [6, 6]
    names = sorted(p.name for p in outdir.iterdir())
    assert names == ["d6_tm1024.svg", "d6_tp1024.svg"]
    for n in names:
        assert (outdir / n).read_bytes() == (GOLDEN / "d6" / n).read_bytes()


def test_reproduce_csv(capsys):
    assert main(["reproduce", "5", "--t", "1/16", "--format", "csv"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[1].split(",")[:5] == ["5", "1/16", "1", "1", "1"]


@pytest.mark.slow
def test_reproduce_d7_bound(capsys):
    assert main(["reproduce", "7", "--t", "1/1024"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["reports"][0]["glued_count"] >= 15
