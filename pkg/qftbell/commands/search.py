import logging

from qftbell.config import RunConfig
from qftbell.optimize.objective import Mode
from qftbell.optimize.scan import figure_scan, scan_grid
from qftbell.optimize.violation import maximize_violation
from qftbell.utils import safe_command

logger = logging.getLogger(__name__)


def _fixed(config: RunConfig, mode: Mode, varied) -> dict:
    fixed = config.params.as_dict()
    if mode == Mode.DIAMOND:
        fixed.update({k: v for k, v in config.quartet.items() if v is not None})
    return {k: v for k, v in fixed.items() if k not in varied}


@safe_command
def scan(config: RunConfig) -> dict:
    """
    The Bell-CHSH value over a 2D grid, or over one of the published surfaces.

    Args:
        config (RunConfig): The run configuration; the scan section selects
            the mode, the axes or a figure.

    Returns:
        dict: One row per cell with the value, its error and the exceedance flag.
    """
    spec = config.scan
    context = config.context(database=config.database())
    if spec.figure is not None:
        grid = figure_scan(spec.figure, context, points=len(spec.axes[0].values))
        mode = Mode.OVERLAPS
    else:
        axis1, axis2 = spec.axes
        mode = spec.mode
        grid = scan_grid(mode, axis1, axis2, _fixed(config, mode, (axis1.name, axis2.name)), context)
    comments = [f"mode: {mode.value}", f"fixed: {grid.fixed}"]
    if mode == Mode.OVERLAPS:
        comments.append(f"overlaps: {tuple(context.overlaps)}")
    return dict(
        status="ok",
        message=None,
        result=dict(header=grid.header(), rows=grid.rows(), comments=comments),
    )


@safe_command
def optimize(config: RunConfig) -> dict:
    """
    Search for the largest Bell-CHSH violation, or for the diamond overlaps
    closest to the targets.

    Returns:
        dict: The best parameters, the verified Bell result and, if requested,
            the evaluation trace as a second table.
    """
    spec = config.search
    context = config.context(database=config.database())
    verify = config.settings.with_points(spec.verify_points) if spec.mode == Mode.DIAMOND else None
    found = maximize_violation(
        spec.mode,
        spec.space,
        spec.budget,
        config.seed,
        context,
        objective=spec.objective,
        fixed=_fixed(config, spec.mode, spec.space.names),
        targets=spec.targets,
        starts=spec.starts,
        verify_settings=verify,
    )
    rows = [[name, value] for name, value in found.best_params.items()]
    rows.append(["objective", found.search.best_value])
    rows += [[name, value] for name, value in zip(found.result.header(), found.result.as_row())]
    if found.overlaps is not None:
        rows += [[name, value] for name, value in found.overlaps._asdict().items()]
    rows.append(["evaluations", found.search.evaluations])
    trace = [
        [i, *params.values(), value, best]
        for i, ((params, value), best) in enumerate(zip(found.search.trace, found.search.best_so_far))
    ]
    return dict(
        status="ok",
        message=None,
        result=dict(
            header=["quantity", "value"],
            rows=rows,
            comments=[f"mode: {spec.mode.value}", f"objective: {spec.objective.value}", f"budget: {spec.budget}"],
            trace=dict(header=["evaluation", *spec.space.names, "objective", "best_so_far"], rows=trace),
        ),
    )
