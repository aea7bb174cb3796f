"""
Gram matrix of the four test functions f, f' (right) and g, g' (left).

Entries are Hadamard inner products H(x, y); the cross Pauli-Jordan entries are
kept alongside; they vanish for spacelike supports.
"""

import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Optional

import numpy as np

from qftbell.errors import DomainError

ORDER = ("f", "fp", "g", "gp")

# (label, first, second) of the four CHSH terms in the order <AB>, <A'B>, <AB'>, <A'B'>.
CHSH_PAIRS = (
    ("fg", "f", "g"),
    ("fpg", "fp", "g"),
    ("fgp", "f", "gp"),
    ("fpgp", "fp", "gp"),
)
CHSH_SIGNS = (1.0, 1.0, 1.0, -1.0)

# Relative slack for Gram entries that carry no error estimate.
ROUNDOFF = 1e-12


class Overlaps(NamedTuple):
    alpha: float
    beta: float
    gamma: float
    delta: float


@dataclass(frozen=True)
class GramMatrix:
    Hff: float
    Hfpfp: float
    Hgg: float
    Hgpgp: float
    Hfg: float
    Hfpg: float
    Hfgp: float
    Hfpgp: float
    PJfg: float = 0.0
    PJfpg: float = 0.0
    PJfgp: float = 0.0
    PJfpgp: float = 0.0
    Hffp: Optional[float] = None
    Hggp: Optional[float] = None
    errors: Mapping[str, float] = field(default_factory=dict, compare=False, hash=False)

    def norm(self, name: str) -> float:
        return {"f": self.Hff, "fp": self.Hfpfp, "g": self.Hgg, "gp": self.Hgpgp}[name]

    def cross(self, label: str) -> float:
        return getattr(self, f"H{label}")

    def error(self, label: str) -> float:
        return float(self.errors.get(f"H{label}", 0.0))

    def pair_quadratics(self) -> list:
        """(F, G, X) of the four CHSH terms, in CHSH order."""
        return [(self.norm(a), self.norm(b), self.cross(label)) for label, a, b in CHSH_PAIRS]

    @property
    def complete(self) -> bool:
        return self.Hffp is not None and self.Hggp is not None

    def hadamard_matrix(self) -> np.ndarray:
        """
        The symmetric 4x4 matrix in the order (f, f', g, g').

        Same-side entries that are unknown (the closed-form model does not fix
        them) are NaN.
        """
        nan = float("nan")
        ffp = nan if self.Hffp is None else self.Hffp
        ggp = nan if self.Hggp is None else self.Hggp
        return np.array(
            [
                [self.Hff, ffp, self.Hfg, self.Hfgp],
                [ffp, self.Hfpfp, self.Hfpg, self.Hfpgp],
                [self.Hfg, self.Hfpg, self.Hgg, ggp],
                [self.Hfgp, self.Hfpgp, ggp, self.Hgpgp],
            ]
        )

    def min_eigenvalue(self) -> float:
        """
        Smallest eigenvalue of the Hadamard Gram matrix.

        Without the same-side entries, the smallest eigenvalue over the four
        2x2 blocks of the CHSH pairs is returned instead.
        """
        if self.complete:
            return float(np.linalg.eigvalsh(self.hadamard_matrix())[0])
        lowest = math.inf
        for F, G, X in self.pair_quadratics():
            lowest = min(lowest, float(np.linalg.eigvalsh(np.array([[F, X], [X, G]]))[0]))
        return lowest

    def check_psd(self, sigmas: float = 3.0) -> None:
        for label, a, b in CHSH_PAIRS:
            F, G, X = self.norm(a), self.norm(b), self.cross(label)
            if F < 0 or G < 0:
                raise DomainError(f"Negative squared norm in Gram entry {label}: ({F}, {G})")
            slack = sigmas * self.error(label) + ROUNDOFF * max(1.0, math.sqrt(F * G))
            if abs(X) > math.sqrt(F * G) + slack:
                raise DomainError(
                    f"Gram pair {label} violates Cauchy-Schwarz: |{X}| > sqrt({F} * {G})"
                )


def overlap_coefficients(g: GramMatrix) -> Overlaps:
    """
    Normalized cross inner products of the Gram matrix.

    Each cross entry is divided by the geometric mean of its own two squared
    norms, e.g. beta = H(f', g) / sqrt(H(f', f') H(g, g)).

    Args:
        g (GramMatrix): The Gram matrix.

    Returns:
        Overlaps: (alpha, beta, gamma, delta).
    """
    values = []
    for label, a, b in CHSH_PAIRS:
        denominator = g.norm(a) * g.norm(b)
        if not denominator > 0:
            raise DomainError(f"Overlap {label} needs positive squared norms, got {g.norm(a)} and {g.norm(b)}")
        values.append(g.cross(label) / math.sqrt(denominator))
    return Overlaps(*values)
