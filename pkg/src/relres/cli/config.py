"""Sweep configuration files and the built-in figure presets.

A configuration is INI-style text::

    [sweep]
    scenario = gisin-hawking

    [axis]
    name = t_hawking
    start = 0
    stop = 20
    points = 401          ; default 200
    scale = linear        ; or log

    [fixed]
    phi = 0.7853981633974483
    omega = 10
    r0 = 1.1

    [series]
    alpha = 0.2, 0.4, 0.6, 0.8, 1

    [output]
    csv = fig2.csv        ; default sweep.csv
    svg = fig2.svg        ; optional

Parameters not given anywhere take the scenario default listed in
:data:`SCENARIOS`. At most one ``[series]`` key is allowed.
"""

from __future__ import annotations

import configparser
import math
import re
from dataclasses import dataclass, field

from relres.errors import ParseError, ValidationError

SECTIONS = ("sweep", "axis", "fixed", "series", "output")
OUTPUT_KEYS = ("csv", "svg", "trajectory")


@dataclass(frozen=True)
class Param:
    default: object
    lo: float | None = None
    hi: float | None = None
    lo_open: bool = False
    choices: tuple | None = None
    why: str = ""

    @property
    def numeric(self) -> bool:
        return self.choices is None

    def check(self, key, value):
        if self.choices is not None:
            if value not in self.choices:
                raise ValidationError(key, f"{key} must be one of {', '.join(self.choices)}, got {value!r}")
            return
        if not math.isfinite(value):
            raise ValidationError(key, f"{key} must be finite, got {value!r}")
        if self.lo is not None:
            bad = value <= self.lo if self.lo_open else value < self.lo
            if bad:
                rel = "exceed" if self.lo_open else "be at least"
                lo = _num(self.lo)
                extra = f" ({self.why})" if self.why else ""
                raise ValidationError(key, f"{key} must {rel} {lo}{extra}, got {_num(value)}")
        if self.hi is not None and value > self.hi:
            raise ValidationError(key, f"{key} must not exceed {_num(self.hi)}, got {_num(value)}")


def _num(v):
    return repr(float(v)).removesuffix(".0") if float(v).is_integer() else repr(float(v))


_HALF_PI = math.pi / 2

SCENARIOS = {
    "gisin-hawking": {
        "alpha": Param(1.0, 0.0, 1.0),
        "phi": Param(math.pi / 4, 0.0, _HALF_PI),
        "omega": Param(10.0, 0.0),
        "r0": Param(1.1, 1.0, lo_open=True, why="observer outside the horizon"),
        "t_hawking": Param(1.0, 0.0),
    },
    "unruh": {
        "kappa0": Param(0.1, -3.0, 1.0),
        "epsilon": Param(5.0, 0.0, lo_open=True),
        "t_unruh": Param(1.0, 0.0, lo_open=True),
    },
    "static-detectors": {
        "vacuum": Param("hh", choices=("hh", "boulware")),
        "convention": Param("both", choices=("both", "tanh", "half")),
        "kappa0": Param(0.6, -3.0, 1.0),
        "omega": Param(50.0, 0.0),
        "r0": Param(1.1, 1.0, lo_open=True, why="detectors outside the horizon"),
        "t_hawking": Param(1.0, 0.0),
    },
    "dynamics": {
        "kappa0": Param(0.1, -3.0, 1.0),
        "epsilon": Param(5.0, 0.0, lo_open=True),
        "t_unruh": Param(1.0, 0.0, lo_open=True),
        "gamma_plus": Param(1.0, 0.0, lo_open=True),
        "gamma_zero": Param(0.0, 0.0),
        "max_time": Param(200.0, 0.0, lo_open=True),
    },
}

AXIS_LABELS = {
    "t_hawking": "T_H",
    "t_unruh": "T_U",
    "alpha": "α",
    "phi": "φ",
    "omega": "ω",
    "r0": "R_0",
    "kappa0": "κ_0",
    "epsilon": "ε",
    "gamma_plus": "Ω_+",
    "gamma_zero": "Ω_0",
}


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    points: int = 200
    scale: str = "linear"

    def values(self) -> list[float]:
        """Grid points with both endpoints hit exactly."""
        n = self.points
        if self.scale == "log":
            a, b = math.log10(self.start), math.log10(self.stop)
            out = [10.0 ** (a + (b - a) * k / (n - 1)) for k in range(n)]
        else:
            out = [self.start + (self.stop - self.start) * k / (n - 1) for k in range(n)]
        out[0], out[-1] = self.start, self.stop
        return out


@dataclass(frozen=True)
class Output:
    csv: str = "sweep.csv"
    svg: str | None = None
    trajectory: str | None = None


@dataclass(frozen=True)
class SweepSpec:
    scenario: str
    axis: Axis
    fixed: dict = field(default_factory=dict)
    series: tuple | None = None  # (name, (v1, v2, ...))
    output: Output = Output()

    def params(self) -> dict:
        """Scenario defaults overlaid with the fixed values."""
        out = {k: p.default for k, p in SCENARIOS[self.scenario].items()}
        out.update(self.fixed)
        return out

    @property
    def axis_label(self) -> str:
        return AXIS_LABELS.get(self.axis.name, self.axis.name)

    @property
    def series_name(self) -> str:
        return self.series[0] if self.series else "series"


def _line_of(text, section, key=None):
    """1-based line of ``[section]`` or of ``key`` inside it, if it can be found."""
    current = None
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        m = re.fullmatch(r"\[([^\]]+)\]", line)
        if m:
            current = m.group(1).strip()
            if key is None and current == section:
                return n
            continue
        if current == section and key is not None:
            k = re.split(r"[=:]", line, maxsplit=1)[0].strip().lower()
            if k == key:
                return n
    return None


def _float(text, section, key, raw):
    try:
        return float(raw)
    except ValueError:
        raise ParseError(f"{section}.{key}: expected a number, got {raw!r}", _line_of(text, section, key)) from None


def parse_config(text: str) -> SweepSpec:
    """Parse and validate a sweep configuration.

    Raises:
        ParseError: malformed text, unknown section or key, non-numeric value.
        ValidationError: a value outside its allowed range.
    """
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    try:
        cp.read_string(text)
    except configparser.MissingSectionHeaderError as e:
        raise ParseError("expected a [section] header", e.lineno) from None
    except configparser.DuplicateSectionError as e:
        raise ParseError(f"duplicate section [{e.section}]", e.lineno) from None
    except configparser.DuplicateOptionError as e:
        raise ParseError(f"duplicate key {e.option!r} in [{e.section}]", e.lineno) from None
    except configparser.ParsingError as e:
        line = e.errors[0][0] if e.errors else None
        raise ParseError("could not parse line", line) from None

    for sec in cp.sections():
        if sec not in SECTIONS:
            raise ParseError(f"unknown section [{sec}]", _line_of(text, sec))

    def unknown(section, allowed):
        for key in cp[section]:
            if key not in allowed:
                raise ParseError(f"unknown key {key!r} in [{section}]", _line_of(text, section, key))

    if not cp.has_option("sweep", "scenario"):
        raise ParseError("missing [sweep] scenario", _line_of(text, "sweep"))
    unknown("sweep", ("scenario",))
    scenario = cp["sweep"]["scenario"].strip()
    if scenario not in SCENARIOS:
        raise ValidationError("scenario", f"scenario must be one of {', '.join(SCENARIOS)}, got {scenario!r}")
    table = SCENARIOS[scenario]

    if not cp.has_section("axis"):
        raise ParseError("missing [axis] section")
    unknown("axis", ("name", "start", "stop", "points", "scale"))
    ax = cp["axis"]
    for key in ("name", "start", "stop"):
        if key not in ax:
            raise ParseError(f"missing [axis] {key}", _line_of(text, "axis"))
    name = ax["name"].strip()
    points_raw = ax.get("points", "200").strip()
    try:
        points = int(points_raw)
    except ValueError:
        raise ParseError(f"axis.points: expected an integer, got {points_raw!r}", _line_of(text, "axis", "points")) from None
    axis = Axis(
        name=name,
        start=_float(text, "axis", "start", ax["start"]),
        stop=_float(text, "axis", "stop", ax["stop"]),
        points=points,
        scale=ax.get("scale", "linear").strip(),
    )

    fixed = {}
    if cp.has_section("fixed"):
        unknown("fixed", table)
        for key, raw in cp["fixed"].items():
            raw = raw.strip()
            fixed[key] = raw if not table[key].numeric else _float(text, "fixed", key, raw)

    series = None
    if cp.has_section("series"):
        items = list(cp["series"].items())
        unknown("series", table)
        if len(items) > 1:
            raise ParseError("at most one [series] key is allowed", _line_of(text, "series", items[1][0]))
        if items:
            key, raw = items[0]
            parts = [p.strip() for p in raw.split(",") if p.strip()]
            if table[key].numeric:
                series = (key, tuple(_float(text, "series", key, p) for p in parts))
            else:
                series = (key, tuple(parts))

    out = Output()
    if cp.has_section("output"):
        unknown("output", OUTPUT_KEYS)
        o = cp["output"]
        out = Output(
            csv=o.get("csv", "sweep.csv").strip(),
            svg=(o.get("svg") or "").strip() or None,
            trajectory=(o.get("trajectory") or "").strip() or None,
        )

    spec = SweepSpec(scenario, axis, fixed, series, out)
    validate(spec)
    return spec


def validate(spec: SweepSpec) -> None:
    """Check every invariant of a spec; raises :class:`ValidationError`."""
    if spec.scenario not in SCENARIOS:
        raise ValidationError("scenario", f"unknown scenario {spec.scenario!r}")
    table = SCENARIOS[spec.scenario]
    ax = spec.axis
    if ax.name not in table or not table[ax.name].numeric:
        allowed = ", ".join(k for k, p in table.items() if p.numeric)
        raise ValidationError("axis.name", f"axis.name must be one of {allowed}, got {ax.name!r}")
    if ax.points < 2:
        raise ValidationError("axis.points", f"axis.points must be at least 2, got {ax.points}")
    if not ax.start < ax.stop:
        raise ValidationError("axis.start", f"axis.start must be below axis.stop, got {ax.start!r} >= {ax.stop!r}")
    if ax.scale not in ("linear", "log"):
        raise ValidationError("axis.scale", f"axis.scale must be linear or log, got {ax.scale!r}")
    if ax.scale == "log" and ax.start <= 0.0:
        raise ValidationError("axis.start", f"axis.start must exceed 0 on a log scale, got {ax.start!r}")
    # interval domains, so the endpoints cover the whole grid
    table[ax.name].check(ax.name, ax.start)
    table[ax.name].check(ax.name, ax.stop)

    for key, value in spec.fixed.items():
        if key not in table:
            raise ValidationError(key, f"{key} is not a parameter of {spec.scenario}")
        if key == ax.name:
            raise ValidationError(key, f"{key} is both the axis and a fixed value")
        table[key].check(key, value)

    if spec.series is not None:
        key, values = spec.series
        if key not in table:
            raise ValidationError(key, f"{key} is not a parameter of {spec.scenario}")
        if key == ax.name or key in spec.fixed:
            raise ValidationError(key, f"{key} is already the axis or a fixed value")
        if not values:
            raise ValidationError(key, f"series {key} has no values")
        for v in values:
            table[key].check(key, v)

    if spec.output.trajectory and spec.scenario != "dynamics":
        raise ValidationError("output.trajectory", "output.trajectory only applies to the dynamics scenario")


def _fmt(v):
    return v if isinstance(v, str) else repr(float(v))


def emit_config(spec: SweepSpec) -> str:
    """Configuration text that parses back to ``spec``."""
    ax = spec.axis
    lines = [
        "[sweep]",
        f"scenario = {spec.scenario}",
        "",
        "[axis]",
        f"name = {ax.name}",
        f"start = {_fmt(ax.start)}",
        f"stop = {_fmt(ax.stop)}",
        f"points = {ax.points}",
        f"scale = {ax.scale}",
    ]
    if spec.fixed:
        lines += ["", "[fixed]"] + [f"{k} = {_fmt(v)}" for k, v in spec.fixed.items()]
    if spec.series:
        key, values = spec.series
        lines += ["", "[series]", f"{key} = " + ", ".join(_fmt(v) for v in values)]
    lines += ["", "[output]", f"csv = {spec.output.csv}"]
    if spec.output.svg:
        lines.append(f"svg = {spec.output.svg}")
    if spec.output.trajectory:
        lines.append(f"trajectory = {spec.output.trajectory}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- presets

_PI = math.pi
_R0_SERIES = (1.01, 1.05, 1.1, 1.2)


def _gh(stem, series, **fixed):
    base = {"alpha": 1.0, "phi": _PI / 4, "omega": 10.0, "r0": 1.1}
    base.update(fixed)
    for k in list(base):
        if k == series[0]:
            del base[k]
    return SweepSpec("gisin-hawking", Axis("t_hawking", 0.0, 20.0, 401), base, series,
                     Output(f"{stem}.csv", f"{stem}.svg"))


def fig1():
    """Gisin state across the horizon, one curve per mode frequency.

    α=1, φ=π/4, R0=1.1; T_H in [0, 20]. The figure names no frequencies, so
    ω ∈ {1, 5, 10, 20} is used.
    """
    return [_gh("fig1", ("omega", (1.0, 5.0, 10.0, 20.0)))]


def fig2():
    """Gisin state across the horizon, one curve per state weight α.

    φ=π/4, ω=10, R0=1.1 as stated; T_H in [0, 20].
    """
    return [_gh("fig2", ("alpha", (0.2, 0.4, 0.6, 0.8, 1.0)))]


def fig3():
    """Gisin state across the horizon, one curve per angle φ.

    α=1, ω=10, R0=1.1; φ ∈ {π/16, π/8, 3π/16, π/4}. Only π/8 and π/4 are
    named in the text, the other two fill in between.
    """
    return [_gh("fig3", ("phi", (_PI / 16, _PI / 8, 3 * _PI / 16, _PI / 4)))]


def fig4():
    """Gisin state across the horizon, one curve per relative distance R0.

    α=1, φ=π/4, ω=10; R0 ∈ {1.01, 1.05, 1.1, 1.2}, the set used for the
    detector figures.
    """
    return [_gh("fig4", ("r0", _R0_SERIES))]


def fig5():
    """Accelerated detectors, one curve per κ0 ∈ {-2, -1.5, -0.6, 0.6, 1}.

    The caption leaves ε open; the text fixes ε=5. T_U in [0.01, 20].
    """
    return [SweepSpec("unruh", Axis("t_unruh", 0.01, 20.0, 400), {"epsilon": 5.0},
                      ("kappa0", (-2.0, -1.5, -0.6, 0.6, 1.0)), Output("fig5.csv", "fig5.svg"))]


def fig67():
    """Accelerated detectors, one curve per level spacing ε.

    Two panels: κ0=0.1 (fig6) and κ0=-1.5 (fig7). No ε values are printed,
    so ε ∈ {1, 3, 5, 7} is used. T_U in [0.01, 10].
    """
    eps = ("epsilon", (1.0, 3.0, 5.0, 7.0))
    return [
        SweepSpec("unruh", Axis("t_unruh", 0.01, 10.0, 400), {"kappa0": k}, eps,
                  Output(f"{stem}.csv", f"{stem}.svg"))
        for stem, k in (("fig6", 0.1), ("fig7", -1.5))
    ]


def fig89():
    """Static detectors in the Hartle-Hawking vacuum, one curve per R0.

    ω=50; κ0=0.6 (fig8) and κ0=-2 (fig9); T_H in [0, 60]. Both Ω
    conventions are emitted as ``:tanh`` / ``:half`` series.
    """
    return [
        SweepSpec("static-detectors", Axis("t_hawking", 0.0, 60.0, 601),
                  {"vacuum": "hh", "convention": "both", "kappa0": k, "omega": 50.0},
                  ("r0", _R0_SERIES), Output(f"{stem}.csv", f"{stem}.svg"))
        for stem, k in (("fig8", 0.6), ("fig9", -2.0))
    ]


def fig1011():
    """Static detectors in the Hartle-Hawking vacuum, one curve per ω.

    R0=1.1; κ0=0.6 (fig10) and κ0=-2 (fig11); ω ∈ {10, 20, 50, 100}, only
    ω=10 being named in the text. T_H in [0, 60], both Ω conventions.
    """
    return [
        SweepSpec("static-detectors", Axis("t_hawking", 0.0, 60.0, 601),
                  {"vacuum": "hh", "convention": "both", "kappa0": k, "r0": 1.1},
                  ("omega", (10.0, 20.0, 50.0, 100.0)), Output(f"{stem}.csv", f"{stem}.svg"))
        for stem, k in (("fig10", 0.6), ("fig11", -2.0))
    ]


PRESETS = {f.__name__: f for f in (fig1, fig2, fig3, fig4, fig5, fig67, fig89, fig1011)}


def preset(name: str) -> list[SweepSpec]:
    if name not in PRESETS:
        raise ValidationError("preset", f"preset must be one of {', '.join(PRESETS)}, got {name!r}")
    specs = PRESETS[name]()
    for s in specs:
        validate(s)
    return specs
