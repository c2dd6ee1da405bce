from os import getenv

OPTIMAL = 'optimal'
INFEASIBLE = 'infeasible'
UNBOUNDED = 'unbounded'

EXIT_OPTIMAL = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_UNBOUNDED = 3
EXIT_CHECK_FAILED = 4

SCHEMA_VERSION = 1

THREADS = int(getenv('NFOLD_THREADS', 1))
DIRECT_FOLDS = int(getenv('NFOLD_DIRECT_FOLDS', 3))
VERIFY_COMPLEXITY = bool(int(getenv('NFOLD_VERIFY_COMPLEXITY', 0)))
VERIFY_MAX_COLUMNS = int(getenv('NFOLD_VERIFY_MAX_COLUMNS', 24))
PHASE_ONE = getenv('NFOLD_PHASE_ONE', 'lattice')
MAX_AUGMENTATIONS = int(getenv('NFOLD_MAX_AUGMENTATIONS', 1000000))

CACHE_DIR = getenv('NFOLD_CACHE_DIR', 'data')
CACHE_FILE = getenv('NFOLD_CACHE_FILE', 'GraverCache')


def exit_code(status: str) -> int:
    '''
    map a solve status onto the process exit code
    '''
    return {
        OPTIMAL: EXIT_OPTIMAL,
        INFEASIBLE: EXIT_INFEASIBLE,
        UNBOUNDED: EXIT_UNBOUNDED,
    }[status]


def chunks(l, n):
    n = max(1, n)
    return (l[i:i+n] for i in range(0, len(l), n))
