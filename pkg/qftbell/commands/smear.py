from qftbell.config import RunConfig
from qftbell.smear.cache import cached_smear
from qftbell.utils import safe_command


@safe_command
def smear(config: RunConfig) -> dict:
    """
    One smeared integral of the two configured bumps.

    Args:
        config (RunConfig): The run configuration; the smear section names the
            bumps, the integral and the method.

    Returns:
        dict: A one-row table with the value and its error.
    """
    spec = config.smear
    estimate = cached_smear(
        spec.kind,
        spec.first,
        spec.second,
        config.mass,
        config.settings,
        database=config.database(),
        method=spec.method,
    )
    settings = config.settings
    return dict(
        status="ok",
        message=None,
        result=dict(
            header=["kind", "method", "value", "std_error", "points", "replicates", "mass"],
            rows=[
                [
                    spec.kind,
                    spec.method,
                    estimate.value,
                    estimate.std_error,
                    settings.sample_size,
                    settings.replicates,
                    config.mass.m,
                ]
            ],
            comments=[
                f"first: {spec.first}",
                f"second: {spec.second}",
                "Hadamard values include the ln(1/m) infrared enhancement of bumps with nonzero integral",
            ],
        ),
    )
