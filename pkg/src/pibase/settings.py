# encoding: utf-8

import os

from .exceptions import ConfigurationError

# Highest cardinal atom level accepted by the notation system. Level k stands for
# the atom w_k (omega_k). Multi-term sigma-normal forms need several distinct
# cardinality levels, so 5 leaves room for up to 5-term forms above w.
DEFAULT_MAX_LEVEL = 5
# Environment variable overriding DEFAULT_MAX_LEVEL (read at call time)
MAX_LEVEL_ENV_VAR = "PIBASE_MAXLEVEL"
# Environment variable used by the command line to configure logging
LOG_LEVEL_ENV_VAR = "PIBASE_LOG_LEVEL"
DEFAULT_LOG_LEVEL = "WARNING"

# ===== Brute force guards for finite spaces =====
# Maximum number of points of a finite space accepted by the invariant calculators
POINTS_CAP = 8
# Maximum number of open sets (empty set and whole space included) accepted by the
# invariant calculators
OPENS_CAP = 256
# Maximum number of non-empty open sets for the exhaustive search over subfamilies
# (min_pibase_order enumerates 2 ** PIBASE_FAMILY_CAP subfamilies in the worst case)
PIBASE_FAMILY_CAP = 16
# Largest point count for the exhaustive reflection exploration (6942 topologies at 5)
LEMMA24_MAX_POINTS = 5

# ===== Canonical function witnesses =====
# Number of candidates scanned by the fallback witness search (kappa = w only)
WITNESS_SEARCH_CAP = 10_000
# Default sample count and seed of the condition (2) sampler
DEFAULT_SAMPLES = 50
DEFAULT_SEED = 0
# Depth of the random ordinal generator (nesting of exponents)
RANDOM_ORDINAL_DEPTH = 2
# Largest pattern size drawn by the condition (2) sampler
RANDOM_PATTERN_MAX_SIZE = 4

# ===== Builder =====
# Width of local pi-bases produced by the oracles when none is requested
DEFAULT_KAPPA_ANALOG = 1

# Number of jobs used by joblib for independent brute force tasks. Results are
# always merged in input order.
N_JOBS = 1

# Prefix of the "schema" field of the JSON outputs
JSON_SCHEMA_PREFIX = "pibase"
JSON_SCHEMA_VERSION = "v1"


def max_level() -> int:
    """Return the configured highest atom level.

    The value of the ``PIBASE_MAXLEVEL`` environment variable is used when set,
    ``DEFAULT_MAX_LEVEL`` otherwise.

    Returns
    -------
    int
        Highest atom level accepted by the notation system

    Raises
    ------
    ConfigurationError
        If ``PIBASE_MAXLEVEL`` is not a non-negative integer
    """
    raw_value = os.environ.get(MAX_LEVEL_ENV_VAR)
    if raw_value is None or raw_value.strip() == "":
        return DEFAULT_MAX_LEVEL
    try:
        level = int(raw_value)
    except ValueError:
        raise ConfigurationError(
            f"{MAX_LEVEL_ENV_VAR} must be a non-negative integer, found {raw_value!r}"
        )
    if level < 0:
        raise ConfigurationError(
            f"{MAX_LEVEL_ENV_VAR} must be a non-negative integer, found {level}"
        )
    return level
