import os

import pytest

from relres.cli.main import EXIT_CONFIG, EXIT_IO, EXIT_NUMERIC, EXIT_OK, build_parser, main

CONFIG = """\
[sweep]
scenario = unruh
[axis]
name = t_unruh
start = 0.1
stop = 5
points = 5
[series]
kappa0 = 0.1, -1.5
[output]
csv = out.csv
svg = out.svg
"""


def write(tmp_path, text, name="c.ini"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_run_writes_csv_and_svg(tmp_path, capsys):
    assert main(["run", write(tmp_path, CONFIG)]) == EXIT_OK
    csv = (tmp_path / "out.csv").read_text()
    assert csv.splitlines()[0] == "t_unruh,kappa0,C_H,D_T,concurrence,B_d,flags"
    assert len(csv.splitlines()) == 1 + 10
    assert (tmp_path / "out.svg").read_text().startswith("<?xml")
    assert "out.csv" in capsys.readouterr().out


def test_run_is_bit_stable(tmp_path):
    cfg = write(tmp_path, CONFIG)
    main(["run", cfg])
    first = (tmp_path / "out.csv").read_bytes()
    main(["run", cfg, "--threads", "2"])
    assert (tmp_path / "out.csv").read_bytes() == first


def test_preset_into_directory(tmp_path):
    out = tmp_path / "figs"
    assert main(["preset", "fig67", "--out", str(out)]) == EXIT_OK
    assert sorted(os.listdir(out)) == ["fig6.csv", "fig6.svg", "fig7.csv", "fig7.svg"]


def test_config_error_exit_code(tmp_path, capsys):
    bad = CONFIG.replace("kappa0 = 0.1, -1.5", "kappa0 = 2")
    assert main(["run", write(tmp_path, bad)]) == EXIT_CONFIG
    assert "kappa0" in capsys.readouterr().err
    assert main(["run", write(tmp_path, "[sweep]\nscenario = unruh\nwhat\n")]) == EXIT_CONFIG


def test_io_error_exit_code(tmp_path):
    assert main(["run", str(tmp_path / "missing.ini")]) == EXIT_IO
    cfg = write(tmp_path, CONFIG.replace("csv = out.csv", f"csv = {tmp_path}/no/such/dir/out.csv"))
    assert main(["run", cfg]) == EXIT_IO


def test_numeric_failure_exit_code(tmp_path):
    text = """\
[sweep]
scenario = dynamics
[axis]
name = t_unruh
start = 1
stop = 2
points = 2
[fixed]
max_time = 0.01
"""
    assert main(["dynamics", write(tmp_path, text)]) == EXIT_NUMERIC


def test_dynamics_command(tmp_path):
    text = """\
[sweep]
scenario = dynamics
[axis]
name = t_unruh
start = 1
stop = 2
points = 2
[output]
csv = d.csv
trajectory = traj.csv
"""
    assert main(["dynamics", write(tmp_path, text), "--seed", "7"]) == EXIT_OK
    assert (tmp_path / "traj.csv").read_text().startswith("t_unruh,series,t,")
    # the dynamics command insists on the dynamics scenario
    assert main(["dynamics", write(tmp_path, CONFIG, "u.ini")]) == EXIT_CONFIG


def test_oracle_flag(tmp_path):
    cfg = write(tmp_path, CONFIG.replace("points = 5", "points = 2").replace(", -1.5", ""))
    assert main(["run", cfg, "--oracle-discord", "4"]) == EXIT_OK
    rows = (tmp_path / "out.csv").read_text().splitlines()[1:]
    assert all(r.endswith(",oracle") for r in rows)


def test_help_lists_defaults(capsys):
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--help"])
    out = capsys.readouterr().out
    assert "gisin-hawking:" in out and "points=200" in out


def test_unknown_preset_rejected():
    with pytest.raises(SystemExit) as info:
        main(["preset", "fig99"])
    assert info.value.code == 2
