from pathlib import Path

REPO = Path(__file__).parents[1]
VERSION = "0.1.0"

EULER_GAMMA = 0.5772156649015329

# Infrared cutoff used for the diamond computations.
DEFAULT_MASS = 1e-8
DEFAULT_SEED = 20240601

CLASSICAL_BOUND = 2.0
TSIRELSON_BOUND = 2.8284271247461903

FAMILIES = ("sech", "lorentz", "gauss-printed", "gauss-exact")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

# Published reference numbers that the reproduce command compares against.
PUBLISHED_TT_PARAMS = dict(eta=0.024, eta_p=4.732, sigma=0.086, sigma_p=9.307, lam=0.884)
PUBLISHED_TT_VALUE = 2.723
PUBLISHED_NUMERICAL_VALUE = 2.752
PUBLISHED_TT_OVERLAPS = (0.992, 0.0, 0.0, 0.992)
PUBLISHED_FITTED_OVERLAPS = (0.944, 0.0, 0.732, 0.906)
PUBLISHED_VALUE_TOLERANCE = 0.05
PUBLISHED_OVERLAP_TOLERANCE = 5e-4

# (family, sigma, sigma_p) of the three published (eta, eta_p) surfaces, all at lambda = 0.884.
FIGURE_SLICES = {
    "lorentz-surface": ("lorentz", 0.011, 2.102),
    "sech-surface": ("sech", 0.144, 8.714),
    "gauss-surface": ("gauss-printed", 0.104, 8.784),
}
FIGURE_LAMBDA = 0.884
