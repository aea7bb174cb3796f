"""
Gram matrices of explicit diamond test functions.
"""

import logging
from typing import Dict, Tuple

from qftbell.data import SmearDatabase
from qftbell.gram import CHSH_PAIRS, GramMatrix
from qftbell.integration import IntegrationSettings
from qftbell.modular import BellParams
from qftbell.propagators import MassParam
from qftbell.smear.cache import cached_smear
from qftbell.testfn import DiamondQuartet, NormalizedTestFunction

logger = logging.getLogger(__name__)

SQUARED_NORMS = (("ff", "f"), ("fpfp", "fp"), ("gg", "g"), ("gpgp", "gp"))
SAME_SIDE = (("ffp", "f", "fp"), ("ggp", "g", "gp"))
AMPLITUDES = dict(f="eta", fp="eta_p", g="sigma", gp="sigma_p")


def diamond_gram(
    quartet: DiamondQuartet,
    m: MassParam,
    s: IntegrationSettings,
    method: str = "qmc",
    database: SmearDatabase = None,
) -> GramMatrix:
    """
    All ten Hadamard inner products of the four bumps and the four cross
    Pauli-Jordan integrals, each with its error in GramMatrix.errors.

    Args:
        quartet (DiamondQuartet): f, f' (right) and g, g' (left).
        m (MassParam): The mass.
        s (IntegrationSettings): Integration settings.
        method (str): "qmc" or "momentum".
        database (SmearDatabase, optional): Cache for the smeared integrals.

    Returns:
        GramMatrix: The Gram matrix of the unnormalized bumps.
    """
    bumps = quartet.as_dict()
    entries, errors = {}, {}

    def smear(kind: str, name: str, first: str, second: str):
        estimate = cached_smear(kind, bumps[first], bumps[second], m, s, database=database, method=method)
        entries[name] = estimate.value
        errors[name] = estimate.std_error

    logger.info("Computing the diamond Gram matrix by %s", method)
    for label, name in SQUARED_NORMS:
        smear("hadamard", f"H{label}", name, name)
    for label, first, second in CHSH_PAIRS:
        smear("hadamard", f"H{label}", first, second)
        smear("pauli_jordan", f"PJ{label}", first, second)
    for label, first, second in SAME_SIDE:
        smear("hadamard", f"H{label}", first, second)
    return GramMatrix(**entries, errors=errors)


def normalize_quartet(
    hat_gram: GramMatrix, params: BellParams, quartet: DiamondQuartet = None
) -> Tuple[Dict[str, NormalizedTestFunction], GramMatrix]:
    """
    Rescale the bumps to f = eta (1 + lambda^2)^(1/2) f^ / sqrt(H(f^, f^)) and so on.

    Args:
        hat_gram (GramMatrix): Gram matrix of the unnormalized bumps.
        params (BellParams): Amplitudes and lambda.
        quartet (DiamondQuartet, optional): The bumps, attached to the returned functions.

    Returns:
        tuple: The normalized test functions by name, and their Gram matrix.
    """
    bumps = quartet.as_dict() if quartet is not None else {}
    functions = {}
    for name, amplitude in AMPLITUDES.items():
        function = NormalizedTestFunction(
            bump=bumps.get(name), amplitude=getattr(params, amplitude), lambda_factor=params.lam
        )
        function.set_norm(hat_gram.norm(name))
        functions[name] = function

    def scaled(field: str, first: str, second: str):
        return functions[first].scale * functions[second].scale * getattr(hat_gram, field)

    entries, errors = {}, {}
    pairs = [(f"H{label}", name, name) for label, name in SQUARED_NORMS]
    pairs += [(f"H{label}", first, second) for label, first, second in CHSH_PAIRS]
    pairs += [(f"PJ{label}", first, second) for label, first, second in CHSH_PAIRS]
    if hat_gram.complete:
        pairs += [(f"H{label}", first, second) for label, first, second in SAME_SIDE]
    for field, first, second in pairs:
        entries[field] = scaled(field, first, second)
        factor = abs(functions[first].scale * functions[second].scale)
        errors[field] = factor * float(hat_gram.errors.get(field, 0.0))
    return functions, GramMatrix(**entries, errors=errors)
