"""
Comparison of computed numbers with published reference values.
"""

import math

MATCH = "match"
MISMATCH = "mismatch-documented"
HEADER = ["quantity", "expected", "computed", "tolerance", "status"]


def compare_value(quantity: str, expected: float, computed: float, tolerance: float) -> list:
    """
    One report row; a deviation beyond the tolerance is documented, not raised.

    Args:
        quantity (str): Name of the compared quantity.
        expected (float): The published value.
        computed (float): The value computed here.
        tolerance (float): Largest accepted absolute deviation.

    Returns:
        list: quantity, expected, computed, tolerance, status.
    """
    matches = math.isfinite(computed) and abs(computed - expected) <= tolerance
    return [quantity, float(expected), float(computed), float(tolerance), MATCH if matches else MISMATCH]


def compare_presence(quantity: str, count: int) -> list:
    """A row for features reported only qualitatively, such as a nonempty violation region."""
    return [quantity, ">0", int(count), "", MATCH if count > 0 else MISMATCH]


def overall_status(rows: list) -> str:
    return MISMATCH if any(row[-1] == MISMATCH for row in rows) else "ok"
