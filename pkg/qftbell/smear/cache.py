import logging

from qftbell.data import SmearDatabase
from qftbell.data.data import version_key
from qftbell.errors import ConfigError
from qftbell.integration import Estimate, IntegrationSettings
from qftbell.propagators import MassParam
from qftbell.smear.momentum import momentum_inner_product
from qftbell.smear.position import smeared_hadamard, smeared_pauli_jordan
from qftbell.testfn import DiamondBump
from qftbell.utils import hash_object

logger = logging.getLogger(__name__)

TABLE = "smeared_integral"
KINDS = ("hadamard", "pauli_jordan")
METHODS = ("qmc", "momentum")


def _compute(kind: str, a: DiamondBump, b: DiamondBump, m: MassParam, s: IntegrationSettings, method: str) -> dict:
    """The requested integral, plus any other kind the same computation yields."""
    if method == "momentum":
        inner = momentum_inner_product(a, b, m, s)
        return dict(
            hadamard=inner.real,
            pauli_jordan=Estimate(2.0 * inner.imag.value, 2.0 * inner.std_error),
        )
    if kind == "hadamard":
        return dict(hadamard=smeared_hadamard(a, b, m, s))
    return dict(pauli_jordan=smeared_pauli_jordan(a, b, m, s))


def cached_smear(
    kind: str,
    a: DiamondBump,
    b: DiamondBump,
    m: MassParam,
    s: IntegrationSettings,
    database: SmearDatabase = None,
    method: str = "qmc",
) -> Estimate:
    """
    A smeared integral, looked up in (and written to) the cache when one is given.

    Args:
        kind (str): "hadamard" or "pauli_jordan".
        a (DiamondBump): The first test function.
        b (DiamondBump): The second test function.
        m (MassParam): The mass.
        s (IntegrationSettings): The integration settings; part of the key.
        database (SmearDatabase, optional): The cache. Defaults to None (no caching).
        method (str): "qmc" (position space) or "momentum" (mass shell).

    Returns:
        Estimate: The integral.
    """
    if kind not in KINDS:
        raise ConfigError(f"Unknown smeared integral {kind!r}. Available kinds are: {', '.join(KINDS)}")
    if method not in METHODS:
        raise ConfigError(f"Unknown smearing method {method!r}. Available methods are: {', '.join(METHODS)}")
    if database is None:
        return _compute(kind, a, b, m, s, method)[kind]

    settings_hash = hash_object(s.smearing_key())
    pair_hash = hash_object((a, b))

    def key(k: str) -> dict:
        return dict(
            kind=k,
            pair_hash=pair_hash,
            mass=m.m,
            settings_hash=settings_hash,
            method=method,
            **version_key(),
        )

    row = database.get_in_table(TABLE, **key(kind))
    if row is not None:
        return Estimate(row["value"], row["std_error"])
    logger.debug("Cache miss for %s integral of %s and %s", kind, a, b)
    computed = _compute(kind, a, b, m, s, method)
    for k, estimate in computed.items():
        database.set_in_table(TABLE, key(k), dict(value=estimate.value, std_error=estimate.std_error))
    return computed[kind]
