"""
Constants and Configuration
Centralized constants to avoid duplication and magic strings
"""
from enum import Enum

PROGRAM_NAME = 'charkit'

# Largest admissible characteristic (exclusive)
MAX_CHARACTERISTIC = 2 ** 31

# Monomial order names accepted by the DSL and the ring constructor
ORDER_GREVLEX = 'grevlex'
ORDER_LEX = 'lex'
ORDER_ELIMINATION = 'elim'
ORDER_NAMES = (ORDER_GREVLEX, ORDER_LEX, ORDER_ELIMINATION)

# Process exit status per error category
EXIT_CODES = {
    'success': 0,
    'user_error': 1,
    'system_error': 1,
    'parse_error': 2,
    'hypothesis_failed': 3,
    'resource_limit': 4,
}


class Certification(Enum):
    """Certification attached to every report"""
    EXACT = 'EXACT'
    CERTIFIED_EQUAL = 'CERTIFIED_EQUAL'
    LOWER_BOUND = 'LOWER_BOUND'
    UNSTABILIZED = 'UNSTABILIZED'
    BOUNDED = 'BOUNDED'  # affirmative only up to a search bound
    REFUTED = 'REFUTED'
    PARTIAL = 'PARTIAL'


# Verdict labels, printed as LABEL(bound)
IN_CLOSURE_UP_TO = 'IN_CLOSURE_UP_TO'
NOT_IN_CLOSURE = 'NOT_IN_CLOSURE'
NOT_A_REDUCTION = 'NOT_A_REDUCTION'
UNKNOWN_ABOVE = 'UNKNOWN_ABOVE'

# Output formats
OUTPUT_FORMATS = ('csv', 'json')

# CLI subcommands, in help order
SUBCOMMANDS = (
    'gb', 'member', 'colon', 'sat', 'intersect', 'bracket', 'symbolic',
    'length', 'dim', 'ext', 'resolve', 'koszul', 'lcb', 'tc', 'ftc', 'chain',
    'ehk', 'fsig', 'wy-check', 'colon-lemma', 'ext-annih', 'ext-iso',
    'rees', 'spread', 'redno', 'run',
)

# Search bounds used when neither the flag nor config.yaml supplies one
DEFAULT_SEARCH_BOUNDS = {
    'emax': 2,
    'tmax': 4,
    'jmax': 4,
    'kmax': 6,
    'nmax': 4,
}

# Names reserved for auxiliary variables introduced by eliminations
TAG_VARIABLE = 'tag'
REES_VARIABLE_PREFIX = 'T'
REES_TAG_VARIABLE = 'rees_t'
