import csv

from schlicht.cli import main
from schlicht.report import generate_report


def test_report_writes_tables_and_figures(tmp_path):
    out = tmp_path / "rep"
    paths = generate_report(out, seed=1, trials=12, order=64)
    names = {p.name for p in paths}
    for stem in ("sweep_beta", "sweep_alpha", "filtration_beta",
                 "trajectories", "ring_margins"):
        assert f"{stem}.csv" in names
        assert f"{stem}.png" in names
    for p in paths:
        assert p.exists() and p.stat().st_size > 0
    with open(out / "sweep_beta.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert set(rows[0]) == {"lambda_re", "lambda_im", "bound", "attained", "ratio"}
    # figures sit alongside the delimited data they render
    assert (out / "sweep_beta.png").parent == (out / "sweep_beta.csv").parent


def test_report_cli_command(tmp_path, capsys):
    out = tmp_path / "cli-rep"
    code = main(["report", "--output", str(out), "--trials", "12",
                 "--trunc", "64", "--no-timestamp"])
    assert code == 0
    assert (out / "ring_margins.csv").exists()
    assert (out / "ring_margins.png").exists()
    assert str(out) in capsys.readouterr().out
