"""Top-level package for nfold."""

__author__ = """Shrinivas Vijay Deshmukh"""
__email__ = 'shrinivas.deshmukh11@gmail.com'
__version__ = '0.2.0'

from nfold.log import Logging
from os import getenv

log_level = getenv('LOG_LEVEL', 'INFO')
logger = Logging(log_level, getenv('LOG_FILENAME')).get_logger()

from nfold import config as cfg
from nfold.core import (ContractViolation, IntMatrix, NFoldInstance,
                        SolveOutcome, nfold_matrix)
from nfold.graver import GraverBasis, graver_basis
from nfold.nfold import graver_complexity, nfold_graver_basis
from nfold.solve import NFoldSolver, solve
