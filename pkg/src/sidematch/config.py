"""Flat key = value experiment configuration.

Format: one `key = value` per line, full-line or trailing comments with '#',
blank lines ignored. A value in [brackets] is a comma-separated list and
marks that key as the sweep axis; at most one key may be a list. Every field
has a default, and the fully resolved config is echoed as comment lines into
the output CSV so results are self-describing.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ConfigError

_INT_KEYS = {"n", "K", "phi", "trials", "r", "r_c", "r_m", "base_seed", "phi_max"}
_FLOAT_KEYS = {"a", "b", "s", "p", "q", "fraction_known",
               "percolation_success_fraction"}
_STR_KEYS = {"mode", "algorithm", "output", "edges", "labels"}
_BOOL_KEYS = {"emit_runtime"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS | _BOOL_KEYS

# keys allowed to carry the sweep list
_AXIS_KEYS = {"n", "K", "a", "b", "p", "q", "s", "phi", "fraction_known",
              "r", "r_c", "r_m"}

ALGORITHMS = ("naive", "A1", "A2", "A3", "community-rounds")

# fixed echo order for reproducible CSV comment blocks
_ECHO_ORDER = (
    "mode", "algorithm", "n", "K", "a", "b", "p", "q", "s", "phi",
    "fraction_known", "r", "r_c", "r_m", "trials", "base_seed",
    "percolation_success_fraction", "emit_runtime", "edges", "labels",
    "phi_max", "output",
)


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str = "synthetic"
    algorithm: str = "A2"
    n: int = 10000
    K: int = 10
    a: float = 4.0
    b: float = 2.0
    p: float | None = None        # explicit override of a·log n / n
    q: float | None = None
    s: float = 0.5
    phi: int = 1
    fraction_known: float = 1.0
    r: int | None = None          # uniform threshold (A1/A3/community-rounds)
    r_c: int = 1
    r_m: int = 2
    trials: int = 1
    base_seed: int = 1
    percolation_success_fraction: float = 0.5
    emit_runtime: bool = False
    edges: str | None = None
    labels: str | None = None
    phi_max: int = 1024
    output: str = "sweep.csv"
    axis: str | None = None                  # the swept key, if any
    axis_values: tuple = ()

    def effective_r(self) -> int:
        """Uniform threshold for the single-threshold algorithms."""
        if self.r is not None:
            return self.r
        return {"A1": 1, "A3": 2, "community-rounds": 2}.get(self.algorithm, 2)

    def combinations(self):
        """Per-combination configs, the swept key substituted in order."""
        if self.axis is None:
            yield self
            return
        for v in self.axis_values:
            yield replace(self, **{self.axis: v}, axis=None, axis_values=())

    def echo_lines(self) -> list[str]:
        """Resolved config as '# key = value' lines, fixed order."""
        out = []
        for k in _ECHO_ORDER:
            v = getattr(self, k)
            if self.axis == k:
                v = "[" + ", ".join(_fmt(x) for x in self.axis_values) + "]"
            elif v is None:
                continue
            else:
                v = _fmt(v)
            out.append(f"# {k} = {v}")
        return out


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _parse_scalar(key: str, tok: str, line_no: int):
    tok = tok.strip()
    try:
        if key in _INT_KEYS:
            return int(tok)
        if key in _FLOAT_KEYS:
            return float(tok)
        if key in _BOOL_KEYS:
            low = tok.lower()
            if low in ("true", "1", "yes"):
                return True
            if low in ("false", "0", "no"):
                return False
            raise ValueError(tok)
        return tok
    except ValueError:
        raise ConfigError(
            f"line {line_no}: cannot parse {tok!r} as a value for {key!r}"
        ) from None


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate; raises ConfigError on any problem."""
    fields: dict = {}
    axis = None
    axis_values: tuple = ()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no}: expected 'key = value', got {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {line_no}: unknown key {key!r}")
        if key in fields or key == axis:
            raise ConfigError(f"line {line_no}: duplicate key {key!r}")
        if val.startswith("["):
            if not val.endswith("]"):
                raise ConfigError(f"line {line_no}: unterminated list for {key!r}")
            if key not in _AXIS_KEYS:
                raise ConfigError(f"line {line_no}: {key!r} cannot be a sweep axis")
            if axis is not None:
                raise ConfigError(
                    f"line {line_no}: second list-valued key {key!r}; "
                    f"only one axis may vary per sweep (already {axis!r})"
                )
            toks = [t for t in val[1:-1].split(",") if t.strip()]
            if not toks:
                raise ConfigError(f"line {line_no}: empty list for {key!r}")
            axis = key
            axis_values = tuple(_parse_scalar(key, t, line_no) for t in toks)
        else:
            fields[key] = _parse_scalar(key, val, line_no)

    cfg = ExperimentConfig(**fields, axis=axis, axis_values=axis_values)
    _validate(cfg)
    return cfg


def load_config(path: str) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def _validate(cfg: ExperimentConfig):
    if cfg.mode not in ("synthetic", "real"):
        raise ConfigError(f"mode must be synthetic|real, got {cfg.mode!r}")
    if cfg.algorithm not in ALGORITHMS:
        raise ConfigError(
            f"algorithm must be one of {', '.join(ALGORITHMS)}, got {cfg.algorithm!r}"
        )
    if cfg.trials < 1:
        raise ConfigError(f"trials must be >= 1, got {cfg.trials}")
    if cfg.mode == "real" and not cfg.edges:
        raise ConfigError("real mode requires an 'edges' file path")
    if cfg.mode == "synthetic":
        scalars = {k: getattr(cfg, k) for k in ("n", "K", "s")}
        if cfg.axis in scalars:
            del scalars[cfg.axis]
        if "n" in scalars and scalars["n"] < 1:
            raise ConfigError(f"n must be >= 1, got {scalars['n']}")
        if "K" in scalars and scalars["K"] < 1:
            raise ConfigError(f"K must be >= 1, got {scalars['K']}")
        if "s" in scalars and not (0.0 < scalars["s"] <= 1.0):
            raise ConfigError(f"s must be in (0, 1], got {scalars['s']}")
    if cfg.axis != "fraction_known" and not (0.0 <= cfg.fraction_known <= 1.0):
        raise ConfigError(
            f"fraction_known must be in [0, 1], got {cfg.fraction_known}"
        )
    if not (0.0 < cfg.percolation_success_fraction <= 1.0):
        raise ConfigError(
            "percolation_success_fraction must be in (0, 1], got "
            f"{cfg.percolation_success_fraction}"
        )
    if cfg.algorithm in ("A1", "A3", "community-rounds"):
        r = cfg.effective_r()
        if cfg.axis not in ("r",) and r < 1:
            raise ConfigError(f"threshold r must be >= 1, got {r}")
    if cfg.algorithm == "A2" and cfg.axis not in ("r_c", "r_m"):
        if not (1 <= cfg.r_c < cfg.r_m):
            raise ConfigError(
                f"A2 needs 1 <= r_c < r_m, got r_c={cfg.r_c}, r_m={cfg.r_m}"
            )
    if cfg.axis != "phi" and cfg.phi < 0:
        raise ConfigError(f"phi must be >= 0, got {cfg.phi}")
