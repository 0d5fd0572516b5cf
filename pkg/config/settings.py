"""
Configuration settings for the torsion toolkit.
"""

from pathlib import Path

VERSION = "0.3.0"

# ──────────────────────────────────────────────────────────────
# Paths
# ──────────────────────────────────────────────────────────────
PROJECT_ROOT = Path(__file__).parent.parent
DEFAULT_OUTPUT_DIR = PROJECT_ROOT / "out"
CATALOG_PATH = PROJECT_ROOT / "config" / "catalog.yaml"

# Ensure directories exist
DEFAULT_OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

# ──────────────────────────────────────────────────────────────
# Precision (bits)
# ──────────────────────────────────────────────────────────────
DEFAULT_PRECISION = 256
MIN_PRECISION = 53

# ──────────────────────────────────────────────────────────────
# Root finding
# ──────────────────────────────────────────────────────────────
ROOT_ITERATION_FACTOR = 200  # Aberth sweeps per degree before precision doubling

# ──────────────────────────────────────────────────────────────
# Tolerances
# ──────────────────────────────────────────────────────────────
SOLUTION_RESIDUAL_TOL = 1e-12   # |s^p L^q - 1| filter for surgery solutions
ACYCLIC_TOL = 1e-12             # torsion denominator treated as zero below this
FACTOR_MATCH_TOL = 1e-10        # |factor(tau)| < tol * (1 + |tau|)^deg
TABLE_MATCH_TOL = 1e-4          # six printed digits
INTEGER_ROUNDING_TOL = 1e-15
PERRON_MARGIN = 1e-6
CERTIFICATE_RESIDUAL_TOL = 1e-20
SPLICE_RESIDUAL_TOL = 1e-10
SPLICE_TRIVIAL_TOL = 1e-8       # witnesses this close to (±1, ±1) are discarded

# ──────────────────────────────────────────────────────────────
# Verification grids
# ──────────────────────────────────────────────────────────────
TWIST_RANGE = (-3, 3)
SLOPE_Q_VALUES = (1, 3, 5)
DIV16_P_RANGE = (-5, 5)
