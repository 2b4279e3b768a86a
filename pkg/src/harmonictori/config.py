"""Central numerical defaults and the run configuration.

Every tolerance used across the library lives here so that tests, the CLI
and library callers agree on one set of numbers.  ``RunConfig`` mirrors the
flat key=value config file accepted by the CLI (see ``load_config``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields

#: Environment variable naming the config file the CLI should load.
CONFIG_ENV_VAR = "HARMONICTORI_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    # solver / detection
    solver_tol: float = 1e-10        # |T~ - q| at an accepted level-set root
    detection_tol: float = 1e-9      # residual for rational (p, q) detection
    max_den: int = 50                # denominator cap for rational detection

    # quadrature
    quad_abs_tol: float = 1e-13      # incomplete elliptic integrals
    contour_rel_tol: float = 1e-9    # contour integral refinement target
    clearance: float = 1e-3          # min path distance to branch points/poles
    boundary_eps: float = 1e-9       # "at infinity" chart guard band (radians)

    # sweep grids
    k_min: float = 0.1
    k_max: float = 0.9
    k_grid: int = 8
    angle_grid: int = 16
    angle_start: float = 0.1

    # reporting
    seed: int = 0
    out_path: str = "level_set.csv"
    mesh_path: str = ""

    def validate(self) -> None:
        for name in ("solver_tol", "detection_tol", "quad_abs_tol",
                     "contour_rel_tol", "clearance", "boundary_eps"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not (0.0 < self.k_min < self.k_max < 1.0):
            raise ValueError("need 0 < k_min < k_max < 1")
        if self.k_grid < 2 or self.angle_grid < 2:
            raise ValueError("grids must have at least 2 samples")


DEFAULTS = RunConfig()

_INT_FIELDS = {"max_den", "k_grid", "angle_grid", "seed"}
_STR_FIELDS = {"out_path", "mesh_path"}


def load_config(path: str | None = None) -> RunConfig:
    """Read a flat ``key = value`` file into a RunConfig.

    With no explicit path, the file named by ``HARMONICTORI_CONFIG`` is used;
    if that is unset the defaults are returned.  Unknown keys are rejected.
    """
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR, "")
    if not path:
        return DEFAULTS
    known = {f.name for f in fields(RunConfig)}
    values: dict[str, object] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key not in known:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            if key in _STR_FIELDS:
                values[key] = val
            elif key in _INT_FIELDS:
                values[key] = int(val)
            else:
                values[key] = float(val)
    cfg = RunConfig(**values)  # type: ignore[arg-type]
    cfg.validate()
    return cfg
