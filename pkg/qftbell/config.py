"""
Run configuration: YAML file, defaults and command-line overrides.

The file holds the sections of DEFAULT_CONFIG; any key that is not in the
defaults is rejected. Flags are applied on top with dpath, so they win over
the file. Everything is turned into typed records before any computation.
"""

import copy
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Tuple

import dpath
import yaml

from qftbell.constants import (
    DEFAULT_MASS,
    DEFAULT_SEED,
    PUBLISHED_FITTED_OVERLAPS,
    PUBLISHED_TT_OVERLAPS,
    PUBLISHED_TT_PARAMS,
)
from qftbell.data import SmearDatabase
from qftbell.errors import ConfigError, DomainError, QftBellError
from qftbell.gram import Overlaps
from qftbell.integration import IntegrationSettings
from qftbell.kernels import KernelFamily
from qftbell.modular import BellParams
from qftbell.optimize.objective import DEFAULT_QUARTET, Mode, ModelContext, Objective
from qftbell.optimize.scan import ScanAxis, axes_from_config
from qftbell.optimize.space import SearchSpace, diamond_space, tt_space
from qftbell.propagators import MassParam
from qftbell.smear.cache import KINDS, METHODS
from qftbell.testfn import DiamondBump
from qftbell.utils import hash_object

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = {
    "run": {
        "family": "lorentz",
        "atom_weight": 0.0,
        "seed": DEFAULT_SEED,
        "mass": DEFAULT_MASS,
        "workers": 1,
        "out": None,
        "cache": None,
    },
    "integration": {
        "scheme": "qmc",
        "points": 2 ** 16,
        "replicates": 8,
        "lightcone_guard": 1e-12,
        "quad_tol": 1e-8,
        "quad_rule": "tensor",
        "radial_panels_per_radian": 0.5,
        "momentum_tail_tol": 1e-8,
    },
    "tt": dict(PUBLISHED_TT_PARAMS),
    "diamond": {**DEFAULT_QUARTET, "method": "qmc"},
    "smear": {
        "kind": "hadamard",
        "method": "qmc",
        "first": {"side": "right", "R": 1.0, "sharpness": 2.0, "t0": 0.0},
        "second": {"side": "left", "R": 1.0, "sharpness": 2.0, "t0": 0.0},
    },
    "search": {
        "mode": "tt",
        "objective": "violation",
        "budget": 2000,
        "starts": 8,
        "verify_points": 2 ** 20,
        "targets": list(PUBLISHED_TT_OVERLAPS),
        "bounds": {},
    },
    "scan": {
        "mode": "tt",
        "figure": None,
        "axes": [
            {"name": "eta", "lower": 0.0, "upper": 0.5, "points": 50},
            {"name": "eta_p", "lower": 0.0, "upper": 10.0, "points": 50},
        ],
        "overlaps": list(PUBLISHED_FITTED_OVERLAPS),
    },
    "reproduce": {
        "fit_budget": 200,
        "fit_points": 2 ** 12,
        "grid_points": 50,
        "figures": ["lorentz-surface", "sech-surface", "gauss-surface"],
    },
}

# Mappings whose keys are not fixed by the defaults.
FREE_FORM = {"search/bounds"}
BUMP_KEYS = {"side", "R", "sharpness", "t0"}


def _merge(defaults: dict, given: Mapping, path: str = "") -> dict:
    if not isinstance(given, Mapping):
        raise ConfigError(f"Config section {path or '/'} must be a mapping")
    merged = copy.deepcopy(defaults)
    for key, value in given.items():
        location = f"{path}/{key}" if path else str(key)
        if key not in defaults:
            raise ConfigError(f"Unknown config key {location}")
        if isinstance(defaults[key], dict) and location not in FREE_FORM and defaults[key]:
            merged[key] = _merge(defaults[key], value, location)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def read_config_file(path: Path) -> dict:
    try:
        with open(path) as f:
            loaded = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Config file {path} is not valid YAML: {e}") from e
    return loaded or {}


def apply_overrides(config: dict, overrides: Mapping[str, object]) -> dict:
    """
    Set "section/key" paths on a merged config. None values are skipped.
    """
    for path, value in overrides.items():
        if value is None:
            continue
        try:
            dpath.get(DEFAULT_CONFIG, path)
        except KeyError as e:
            raise ConfigError(f"Unknown config key {path}") from e
        dpath.new(config, path, value)
    return config


def _bump(entry: Mapping, name: str) -> DiamondBump:
    entry = dict(entry)
    extra = set(entry) - BUMP_KEYS
    if extra:
        raise ConfigError(f"Unknown keys in bump {name}: {', '.join(sorted(extra))}")
    try:
        return DiamondBump(entry["side"], float(entry["R"]), float(entry["sharpness"]), float(entry.get("t0", 0.0)))
    except KeyError as e:
        raise ConfigError(f"Bump {name} is missing {e}") from e
    except (DomainError, ValueError) as e:
        raise ConfigError(f"Invalid bump {name}: {e}") from e


def _choice(value: str, allowed, name: str) -> str:
    if value not in allowed:
        raise ConfigError(f"Unknown {name} {value!r}. Available values are: {', '.join(allowed)}")
    return value


def _overlaps(values, name: str) -> Overlaps:
    values = list(values)
    if len(values) != 4:
        raise ConfigError(f"{name} needs four overlaps (alpha, beta, gamma, delta), got {len(values)}")
    return Overlaps(*(float(v) for v in values))


@dataclass(frozen=True)
class SmearConfig:
    kind: str
    method: str
    first: DiamondBump
    second: DiamondBump


@dataclass(frozen=True)
class SearchConfig:
    mode: Mode
    objective: Objective
    budget: int
    starts: int
    verify_points: int
    targets: Overlaps
    space: SearchSpace


@dataclass(frozen=True)
class ScanConfig:
    mode: Mode
    figure: Optional[str]
    axes: Tuple[ScanAxis, ScanAxis]
    overlaps: Overlaps


@dataclass(frozen=True)
class ReproduceConfig:
    fit_budget: int
    fit_points: int
    grid_points: int
    figures: Tuple[str, ...]


@dataclass(frozen=True)
class RunConfig:
    values: dict = field(repr=False, compare=False)
    digest: str
    family: KernelFamily
    settings: IntegrationSettings
    mass: MassParam
    params: BellParams
    quartet: dict = field(hash=False)
    diamond_method: str
    smear: SmearConfig
    search: SearchConfig
    scan: ScanConfig
    reproduce: ReproduceConfig
    out: Optional[Path] = None
    cache: Optional[Path] = None

    @property
    def seed(self) -> int:
        return self.settings.seed

    def database(self) -> SmearDatabase:
        return SmearDatabase(self.cache)

    def context(self, settings: IntegrationSettings = None, **changes) -> ModelContext:
        """A ModelContext for this run; keyword arguments replace its fields."""
        fields = dict(
            fam=self.family,
            settings=settings or self.settings,
            mass=self.mass,
            overlaps=self.scan.overlaps,
            method=self.diamond_method,
        )
        fields.update(changes)
        return ModelContext(**fields)

    def provenance_settings(self) -> dict:
        return dict(run=self.values["run"], integration=self.values["integration"])

    @classmethod
    def from_dict(cls, values: dict) -> "RunConfig":
        run, integration = values["run"], values["integration"]
        settings = IntegrationSettings(
            scheme=integration["scheme"],
            points_per_replicate=int(integration["points"]),
            replicates=int(integration["replicates"]),
            seed=int(run["seed"]),
            lightcone_guard=float(integration["lightcone_guard"]),
            workers=int(run["workers"]),
            quad_tol=float(integration["quad_tol"]),
            quad_rule=integration["quad_rule"],
            radial_panels_per_radian=float(integration["radial_panels_per_radian"]),
            momentum_tail_tol=float(integration["momentum_tail_tol"]),
        )
        mass = MassParam(float(run["mass"]))
        family = KernelFamily.from_name(run["family"], float(run["atom_weight"]))

        diamond = dict(values["diamond"])
        method = _choice(diamond.pop("method"), METHODS, "diamond method")
        quartet = {k: (None if v is None else float(v)) for k, v in diamond.items()}

        smear = values["smear"]
        search = values["search"]
        search_mode = Mode(_choice(search["mode"], [m.value for m in Mode], "search mode"))
        base_space = diamond_space() if search_mode == Mode.DIAMOND else tt_space()
        scan = values["scan"]
        reproduce = values["reproduce"]
        return cls(
            values=values,
            digest=hash_object(values),
            family=family,
            settings=settings,
            mass=mass,
            params=BellParams.from_mapping(values["tt"]),
            quartet=quartet,
            diamond_method=method,
            smear=SmearConfig(
                kind=_choice(smear["kind"], KINDS, "smeared integral"),
                method=_choice(smear["method"], METHODS, "smearing method"),
                first=_bump(smear["first"], "first"),
                second=_bump(smear["second"], "second"),
            ),
            search=SearchConfig(
                mode=search_mode,
                objective=Objective(_choice(search["objective"], [o.value for o in Objective], "objective")),
                budget=int(search["budget"]),
                starts=int(search["starts"]),
                verify_points=int(search["verify_points"]),
                targets=_overlaps(search["targets"], "search/targets"),
                space=base_space.with_overrides(search["bounds"] or {}),
            ),
            scan=ScanConfig(
                mode=Mode(_choice(scan["mode"], [m.value for m in Mode], "scan mode")),
                figure=scan["figure"],
                axes=axes_from_config(scan["axes"]),
                overlaps=_overlaps(scan["overlaps"], "scan/overlaps"),
            ),
            reproduce=ReproduceConfig(
                fit_budget=int(reproduce["fit_budget"]),
                fit_points=int(reproduce["fit_points"]),
                grid_points=int(reproduce["grid_points"]),
                figures=tuple(reproduce["figures"]),
            ),
            out=None if run["out"] is None else Path(run["out"]),
            cache=None if run["cache"] is None else Path(run["cache"]),
        )


def load_run_config(path: Path = None, overrides: Mapping[str, object] = None) -> RunConfig:
    """
    Build a validated run configuration.

    Args:
        path (Path, optional): YAML config file. Defaults to None (defaults only).
        overrides (Mapping[str, object], optional): "section/key" values from flags.

    Returns:
        RunConfig: The typed configuration.
    """
    given = read_config_file(path) if path is not None else {}
    config = _merge(DEFAULT_CONFIG, given)
    apply_overrides(config, overrides or {})
    logger.debug("Run configuration: %s", config)
    try:
        return RunConfig.from_dict(config)
    except QftBellError:
        raise
    except (ValueError, TypeError, KeyError) as e:
        raise ConfigError(f"Invalid configuration: {e}") from e
