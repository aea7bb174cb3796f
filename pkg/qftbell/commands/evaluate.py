import logging

from qftbell.config import RunConfig
from qftbell.correlator import BellResult, bell_chsh, tt_bell
from qftbell.gram import overlap_coefficients
from qftbell.optimize.objective import quartet_from_values
from qftbell.smear.diamond import diamond_gram, normalize_quartet
from qftbell.utils import safe_command

logger = logging.getLogger(__name__)

NORMATIVE_FORM = "exponent: -(k^2 F + p^2 G + 2 k p X) / 2 with F, G, X the Hadamard Gram entries of each pair"


@safe_command
def eval_tt(config: RunConfig) -> dict:
    """
    The Bell-CHSH value of the closed-form Gram model at the configured parameters.

    Args:
        config (RunConfig): The run configuration.

    Returns:
        dict: One row with the value, the four terms and the quadrature error.
    """
    result = tt_bell(config.family, config.params, config.settings)
    return dict(
        status="ok",
        message=None,
        result=dict(
            header=[*config.params.as_dict(), *BellResult.header(), "rule"],
            rows=[[*config.params.as_dict().values(), *result.as_row(), config.settings.quad_rule.value]],
            comments=[NORMATIVE_FORM],
        ),
    )


@safe_command
def eval_diamond(config: RunConfig) -> dict:
    """
    The Bell-CHSH value of explicit diamond test functions.

    The bumps come from the diamond section and the amplitudes from the tt
    section; the row also carries the overlaps and the smallest Gram eigenvalue.
    """
    quartet = quartet_from_values(config.quartet)
    hat = diamond_gram(quartet, config.mass, config.settings, method=config.diamond_method, database=config.database())
    overlaps = overlap_coefficients(hat)
    _, gram = normalize_quartet(hat, config.params, quartet)
    result = bell_chsh(config.family, gram, config.settings, provenance=dict(model="diamond"))
    return dict(
        status="ok",
        message=None,
        result=dict(
            header=[*BellResult.header(), *overlaps._fields, "min_eigenvalue", "method"],
            rows=[[*result.as_row(), *overlaps, hat.min_eigenvalue(), config.diamond_method]],
            comments=[f"diamond: {config.quartet}", NORMATIVE_FORM],
        ),
    )
