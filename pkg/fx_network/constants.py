# noqa
import math

ENV_PREFIX = "FX_NETWORK_"
DEFAULT_QUOTE = "USD"
DEFAULT_CLIP_SIGMA = 10.0
DEFAULT_MAX_GAP = 3
DEFAULT_MAX_MISSING_FRAC = 0.05
# Six months of trading days, stepped by one trading month.
DEFAULT_WINDOW_LENGTH = 126
DEFAULT_WINDOW_STEP = 21
MIN_WINDOW_LENGTH = 20

SQRT2 = math.sqrt(2.0)
CORRELATION_TOLERANCE = 1e-9
POWER_ITERATION_CAP = 10_000
POWER_ITERATION_TOL = 1e-12
PSD_TOLERANCE = -1e-10
# Spread below this fraction of the largest magnitude is rounding noise.
DEGENERATE_SPREAD_TOLERANCE = 1e-12
FLOAT_FORMAT = "%.17g"
