import pytest

from qftbell.config import DEFAULT_CONFIG, apply_overrides, load_run_config
from qftbell.constants import DEFAULT_SEED
from qftbell.errors import ConfigError
from qftbell.integration import QuadRule
from qftbell.optimize import Mode, Scale


def write_yaml(tmp_path, text):
    path = tmp_path / "run.yaml"
    path.write_text(text)
    return path


def test_defaults():
    config = load_run_config()
    assert config.seed == DEFAULT_SEED
    assert config.family.name == "lorentz"
    assert config.settings.sample_size == 2 ** 16
    assert config.params.lam == 0.884
    assert config.search.mode == Mode.TT
    assert config.search.space.names == ("eta", "eta_p", "sigma", "sigma_p", "lam")
    assert config.quartet["R_p"] is None
    assert config.out is None


def test_file_values(tmp_path):
    path = write_yaml(
        tmp_path,
        """
run:
  family: gauss-exact
  seed: 17
integration:
  quad_rule: adaptive
search:
  mode: diamond
  bounds:
    R: {lower: 0.5, upper: 2.0}
scan:
  axes:
    - {name: eta, lower: 0.0, upper: 1.0, points: 3}
    - {name: lam, lower: 0.1, upper: 0.9, points: 2}
""",
    )
    config = load_run_config(path)
    assert config.family.name == "gauss-exact"
    assert config.seed == 17
    assert config.settings.quad_rule == QuadRule.ADAPTIVE
    space = dict(zip(config.search.space.names, config.search.space.bounds))
    assert space["R"].lower == 0.5
    assert space["R"].scale == Scale.LOG
    assert len(config.scan.axes[0].values) == 3


def test_overrides_win_over_file(tmp_path):
    path = write_yaml(tmp_path, "run:\n  seed: 17\n  family: sech\n")
    config = load_run_config(path, {"run/seed": 23, "run/family": None})
    assert config.seed == 23
    assert config.family.name == "sech"


def test_digest_tracks_values():
    assert load_run_config().digest == load_run_config().digest
    assert load_run_config(overrides={"run/seed": 1}).digest != load_run_config().digest


@pytest.mark.parametrize(
    "text",
    [
        "runs:\n  seed: 1\n",
        "run:\n  colour: red\n",
        "integration: 3\n",
        "smear:\n  first: {side: right, R: 1, sharpness: 2, width: 3}\n",
        "search:\n  bounds:\n    mu: {lower: 0, upper: 1}\n",
        "scan:\n  axes:\n    - {name: eta, lower: 0, upper: 1, points: 2}\n",
        "run: [1, 2\n",
    ],
)
def test_invalid_files(tmp_path, text):
    with pytest.raises(ConfigError):
        load_run_config(write_yaml(tmp_path, text))


@pytest.mark.parametrize(
    "overrides",
    [
        {"run/family": "cauchy"},
        {"run/colour": "red"},
        {"integration/replicates": 1},
        {"integration/points": 10},
        {"tt/lam": 1.5},
        {"search/mode": "quantum"},
        {"smear/kind": "feynman"},
        {"diamond/method": "analytic"},
        {"integration/scheme": "lattice"},
    ],
)
def test_invalid_overrides(overrides):
    with pytest.raises(ConfigError):
        load_run_config(overrides=overrides)


def test_apply_overrides_sets_nested_values():
    config = {"run": {"seed": 1}}
    apply_overrides(config, {"run/seed": 2, "run/mass": None})
    assert config == {"run": {"seed": 2}}
    assert DEFAULT_CONFIG["run"]["seed"] == DEFAULT_SEED


def test_context_replaces_fields():
    config = load_run_config()
    context = config.context(method="momentum")
    assert context.method == "momentum"
    assert context.fam == config.family
    assert context.settings is config.settings
    assert tuple(context.overlaps) == (0.944, 0.0, 0.732, 0.906)
