import os
import re

# Version tag of the JSON documents written by the command line
SCHEMA_VERSION = 'pairings/1'

# The worker ID in pytest-xdist, or master in any other case.
WORKER_ID = os.environ.get('PYTEST_XDIST_WORKER', 'master')

# Where events are logged (an empty path disables the event log)
EVENTS_PATH = 'events'

# Where runtime information is stored
RUNTIME_PATH = '.runtime'

# Where locks are stored
LOCKS_PATH = f'{RUNTIME_PATH}/locks'

# How many decompositions may be computed in parallel in a single call
CONCURRENCY_LIMIT = 4

# Identifiers that may be used as symbolic weights, as in "x[v+w-3]"
SYMBOLS = ('k', 'l', 'm', 't', 'u', 'v', 'w')

# A crossed node, optionally with a bracketed weight expression
CROSSED_NODE = re.compile(r'^x(?:(?P<number>-?[0-9]+)|\[(?P<expr>[^\]]+)\])$')

# An uncrossed node
UNCROSSED_NODE = re.compile(r'^o(?P<number>[0-9]+)$')

# Placeholder that expands to as many "o0" nodes as the rank requires
ELLIPSIS = '...'

# Default bounds of the exhaustive sweeps in the test suite
SWEEP_RANK = 5
SWEEP_ORDER = 4
SWEEP_LABEL = 3
