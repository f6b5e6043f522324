import math

import pytest

from relres.cli.config import PRESETS, Axis, emit_config, parse_config, preset
from relres.errors import ParseError, ValidationError

MINIMAL = """\
[sweep]
scenario = gisin-hawking

[axis]
name = t_hawking
start = 0.1
stop = 20

[fixed]
alpha = 1
phi = 0.7853981634
omega = 10
r0 = 1.1
"""


def test_minimal_config():
    spec = parse_config(MINIMAL)
    assert spec.scenario == "gisin-hawking"
    assert spec.axis == Axis("t_hawking", 0.1, 20.0, 200, "linear")
    assert spec.fixed == {"alpha": 1.0, "phi": 0.7853981634, "omega": 10.0, "r0": 1.1}
    assert spec.series is None
    assert spec.output.csv == "sweep.csv" and spec.output.svg is None
    assert spec.axis_label == "T_H"


def test_r0_below_horizon():
    with pytest.raises(ValidationError, match="r0 must exceed 1") as info:
        parse_config(MINIMAL.replace("r0 = 1.1", "r0 = 0.9"))
    assert info.value.key == "r0"


def test_unknown_key_has_line_number():
    with pytest.raises(ParseError, match="unknown key 'beta'") as info:
        parse_config(MINIMAL + "beta = 3\n")
    assert info.value.line == 14


def test_parse_errors():
    with pytest.raises(ParseError) as info:
        parse_config("scenario = unruh\n")
    assert info.value.line == 1
    with pytest.raises(ParseError, match="expected a number") as info:
        parse_config(MINIMAL.replace("omega = 10", "omega = ten"))
    assert info.value.line == 12
    with pytest.raises(ParseError, match="unknown section"):
        parse_config(MINIMAL + "[extra]\nx = 1\n")
    with pytest.raises(ParseError, match="duplicate"):
        parse_config(MINIMAL + "r0 = 1.2\n")
    with pytest.raises(ParseError, match="at most one"):
        parse_config(MINIMAL.replace("alpha = 1\n", "") + "[series]\nalpha = 0.5\nphi = 0.1\n")
    with pytest.raises(ParseError, match="missing"):
        parse_config("[sweep]\nscenario = unruh\n[axis]\nname = t_unruh\nstart = 1\n")


@pytest.mark.parametrize("edit, key", [
    (("points", "points = 1"), "axis.points"),
    (("stop", "stop = 0.05"), "axis.start"),
    (("scale", "scale = cubic"), "axis.scale"),
    (("name", "name = kappa0"), "axis.name"),
])
def test_axis_validation(edit, key):
    what, line = edit
    text = MINIMAL.replace("stop = 20", "stop = 20\npoints = 10\nscale = linear")
    text = "\n".join(line if ln.startswith(what + " ") else ln for ln in text.splitlines())
    with pytest.raises(ValidationError) as info:
        parse_config(text)
    assert info.value.key == key


def test_series_domain_checked():
    text = MINIMAL.replace("alpha = 1\n", "") + "[series]\nalpha = 0.5, 1.5\n"
    with pytest.raises(ValidationError, match="alpha must not exceed 1"):
        parse_config(text)


def test_log_axis_needs_positive_start():
    text = MINIMAL.replace("start = 0.1", "start = 0").replace("stop = 20", "stop = 20\nscale = log")
    with pytest.raises(ValidationError, match="log"):
        parse_config(text)


def test_axis_values_hit_endpoints():
    ax = Axis("t_hawking", 0.1, 20.0, 7)
    v = ax.values()
    assert len(v) == 7 and v[0] == 0.1 and v[-1] == 20.0
    lg = Axis("t_unruh", 0.01, 100.0, 5, "log").values()
    assert lg == pytest.approx([0.01, 0.1, 1.0, 10.0, 100.0])


def test_choice_parameters():
    text = """\
[sweep]
scenario = static-detectors
[axis]
name = t_hawking
start = 0
stop = 10
[fixed]
vacuum = boulware
"""
    spec = parse_config(text)
    assert spec.fixed["vacuum"] == "boulware"
    with pytest.raises(ValidationError, match="vacuum"):
        parse_config(text.replace("boulware", "rindler"))


def test_trajectory_only_for_dynamics():
    with pytest.raises(ValidationError, match="trajectory"):
        parse_config(MINIMAL + "[output]\ntrajectory = t.csv\n")


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_round_trip(name):
    for spec in preset(name):
        assert parse_config(emit_config(spec)) == spec


def test_fig2_preset():
    (spec,) = preset("fig2")
    assert spec.series == ("alpha", (0.2, 0.4, 0.6, 0.8, 1.0))
    assert spec.fixed == {"phi": math.pi / 4, "omega": 10.0, "r0": 1.1}
    assert spec.axis.name == "t_hawking"


def test_fig5_preset_and_docstring():
    (spec,) = preset("fig5")
    assert spec.series == ("kappa0", (-2.0, -1.5, -0.6, 0.6, 1.0))
    assert spec.fixed["epsilon"] == 5.0
    assert "ε=5" in PRESETS["fig5"].__doc__


def test_multi_panel_presets():
    assert [s.output.csv for s in preset("fig67")] == ["fig6.csv", "fig7.csv"]
    fig8, fig9 = preset("fig89")
    assert fig8.fixed["kappa0"] == 0.6 and fig9.fixed["kappa0"] == -2.0
    assert fig8.series == ("r0", (1.01, 1.05, 1.1, 1.2))
    assert fig8.fixed["convention"] == "both"
    with pytest.raises(ValidationError):
        preset("fig12")
