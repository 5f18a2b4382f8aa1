"""
some constants that are shared between the modules
"""

from typing import Tuple


# default prime field, the Mersenne prime 2^61 - 1
DEFAULT_MODULUS: int = (1 << 61) - 1

# checked integer arithmetic works inside signed 64 bits
INT64_MAX: int = (1 << 63) - 1

# coded plans with a larger output degree are rejected up front
MAX_DEGREE: int = 1 << 40

# guards for the brute force engines
EXHAUSTIVE_LIMIT: int = 100_000
RANDOM_SUBSET_SAMPLES: int = 1_000
BRUTE_FORCE_LIMIT: int = 10_000_000
SYMBOLIC_DEGREE_LIMIT: int = 4096
OFFSET_CHUNK: int = 1 << 16

# the REAL64 backend is not trusted above this interpolation degree
REAL64_MAX_STABLE_DEGREE: int = 20

# random tensor data, integers uniform in [low, high]
RANDOM_LOW: int = 0
RANDOM_HIGH: int = 100
RANDOM_GENERATOR: str = "numpy.random.PCG64"

# field selection strings
FIELD_REAL64: str = "f64"
FIELD_COMPLEX128: str = "c128"
FIELD_PRIME: str = "gf"

# scheme selection strings
SCHEME_REPLICATE: str = "replicate"
SCHEME_TWO_NODE: str = "2node"
SCHEME_HYPEREDGE: str = "hyper"
SCHEME_PARTIAL_TWO_NODE: str = "partial2node"
SCHEME_PARTIAL_ONE_INDEX: str = "partial1"
SCHEME_AUTO: str = "auto"
SCHEME_NAMES: Tuple[str, ...] = (
    SCHEME_REPLICATE,
    SCHEME_TWO_NODE,
    SCHEME_HYPEREDGE,
    SCHEME_PARTIAL_TWO_NODE,
    SCHEME_PARTIAL_ONE_INDEX,
    SCHEME_AUTO,
)

# files
SPEC_SCHEMA_VERSION: int = 1
REPORT_SCHEMA_VERSION: int = 1

# exit codes of the command line
EXIT_OK: int = 0
EXIT_FAILURE: int = 1
EXIT_USAGE: int = 2


__all__ = [
    "DEFAULT_MODULUS",
    "INT64_MAX",
    "MAX_DEGREE",
    "EXHAUSTIVE_LIMIT",
    "RANDOM_SUBSET_SAMPLES",
    "BRUTE_FORCE_LIMIT",
    "SYMBOLIC_DEGREE_LIMIT",
    "OFFSET_CHUNK",
    "REAL64_MAX_STABLE_DEGREE",
    "RANDOM_LOW",
    "RANDOM_HIGH",
    "RANDOM_GENERATOR",
    "FIELD_REAL64",
    "FIELD_COMPLEX128",
    "FIELD_PRIME",
    "SCHEME_REPLICATE",
    "SCHEME_TWO_NODE",
    "SCHEME_HYPEREDGE",
    "SCHEME_PARTIAL_TWO_NODE",
    "SCHEME_PARTIAL_ONE_INDEX",
    "SCHEME_AUTO",
    "SCHEME_NAMES",
    "SPEC_SCHEMA_VERSION",
    "REPORT_SCHEMA_VERSION",
    "EXIT_OK",
    "EXIT_FAILURE",
    "EXIT_USAGE",
]
