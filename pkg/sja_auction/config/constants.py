"""
Numeric defaults for the SJA toolkit.

Every tolerance and cap used across the package lives here so that the
CLI, the library and the tests agree on the same values.
"""

# Bisection solver
DEFAULT_TOL = 1e-12
MAX_BISECTION_ITERATIONS = 200

# Volume recursion
MAX_RECURSION_ORDER = 8

# Prices for m above this are computed but flagged conjectural
CONJECTURE_THRESHOLD = 6

# Verification tolerances
SLICE_EXACT_TOL = 1e-9
POLYNOMIAL_RESIDUAL_TOL = 1e-8
ROOT_AGREEMENT_TOL = 1e-8
WEAK_DUALITY_TOL = 1e-9
SIGMA_MULTIPLIER = 4.0

# Mechanism argmax: utilities within this distance of the maximum count as ties
TIE_TOL = 1e-9

# Monte Carlo
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 1_000_000
DEFAULT_CHUNK_SIZE = 1 << 16

# Exact revenue and certification limits
MAX_EXACT_REVENUE_ITEMS = 3
MAX_DEFAULT_CERTIFY_ITEMS = 3

# Deficiency search
MAX_EXHAUSTIVE_DIM = 3
MAX_EXHAUSTIVE_CANDIDATES = 1 << 16
MAX_LOCAL_ITERATIONS = 10_000

# Central-difference step for user densities without an analytic derivative
DENSITY_DIFF_STEP = 1e-6

# Environment variables
SETTINGS_JSON_ENV_VAR = "SJA_SETTINGS_JSON"
SETTINGS_FILE_ENV_VAR = "SJA_SETTINGS_FILE"
THREADS_ENV_VAR = "SJA_THREADS"
CHUNK_SIZE_ENV_VAR = "SJA_CHUNK_SIZE"
LOG_LEVEL_ENV_VAR = "SJA_LOG_LEVEL"
MAX_ORDER_ENV_VAR = "SJA_MAX_ORDER"

# Example settings document
SETTINGS_EXAMPLE = """
{
  "threads": 4,
  "chunk_size": 65536,
  "log_level": "INFO",
  "max_order": 8,
  "default_samples": 1000000
}
"""
