'''
End-to-end solver for generalized n-fold programs.

Phase I finds a feasible point, either by pushing an unrestricted integer
solution into the nonnegative orthant or through the auxiliary n-fold program
that minimizes total slack; Phase II augments along Graver directions. Up to
``cfg.DIRECT_FOLDS`` blocks the Graver basis is written out in full, beyond that
the augmentation works on its block-permutation orbits.
'''
import time
from threading import Lock
from typing import NamedTuple, Optional, Sequence, Tuple

from nfold import cfg, logger
from nfold.augment import deficit, minimize_deficit, optimize, optimize_scaled
from nfold.core import (ContractViolation, IntMatrix, IntVec, NFoldInstance,
                        SolveOutcome, dot, identity, negative_part,
                        nfold_matrix, positive_part, vec, zeros)
from nfold.graver import integer_solution
from nfold.nfold import nfold_graver_basis
from nfold.orbits import block_orbits, orbit_minimize_deficit, orbit_optimize
from nfold.store import BasisStore, basis_key

AUXILIARY = 'auxiliary'
LATTICE = 'lattice'
PHASE_ONE_STRATEGIES = (AUXILIARY, LATTICE)


class AuxiliaryProgram(NamedTuple):
    '''
    The slack program ``min{1 z_aux : [Ā,B̄]^(n) z = b, z >= 0}`` with its
    written-down feasible point.

    ``original_var_index[i]`` is the position in the auxiliary layout of the
    i-th variable of the original program.
    '''
    instance: NFoldInstance
    initial: IntVec
    original_var_index: Tuple[int, ...]

    def restrict(self, z: Sequence[int]) -> IntVec:
        return tuple(z[i] for i in self.original_var_index)


def _hstack(*blocks: IntMatrix) -> IntMatrix:
    rows = blocks[0].rows
    return IntMatrix.from_rows(
        [[e for M in blocks for e in M.row(i)] for i in range(rows)],
        cols=sum(M.cols for M in blocks))


def _negate(M: IntMatrix) -> IntMatrix:
    return IntMatrix(M.rows, M.cols, [-e for e in M.entries])


def auxiliary_instance(A: IntMatrix, B: IntMatrix, n: int,
                       b: Sequence[int]) -> AuxiliaryProgram:
    '''
    Build ``Ā = (A, 0, 0, I_r, -I_r)`` and ``B̄ = (B, I_s, -I_s, 0, 0)``
    with cost 1 on every slack, and the point that puts ``b0`` on the
    linking slacks of block 1 and ``bk`` on the slacks of block k.

    :rtype: AuxiliaryProgram
    '''
    q, r, s = A.cols, A.rows, B.rows
    b = vec(b)
    NFoldInstance.build(A, B, n, b, [0] * (n * q))
    A_bar = _hstack(A, zeros(r, 2 * s), identity(r), _negate(identity(r)))
    B_bar = _hstack(B, identity(s), _negate(identity(s)), zeros(s, 2 * r))
    width = q + 2 * s + 2 * r
    cost = ([0] * q + [1] * (2 * s + 2 * r)) * n
    instance = NFoldInstance.build(A_bar, B_bar, n, b, cost)
    b0 = b[:s]
    z = []
    for k in range(1, n + 1):
        bk = instance.b_block(k)
        if k == 1:
            linking = positive_part(b0) + negative_part(b0)
        else:
            linking = (0,) * (2 * s)
        z.extend((0,) * q + linking + positive_part(bk) + negative_part(bk))
    index = tuple(k * width + j for k in range(n) for j in range(q))
    return AuxiliaryProgram(instance, tuple(z), index)


class NFoldSolver:
    '''
    Re-entrant solver owning a cache of Graver bases, so that programs over
    the same pair ``A, B`` share their bases across calls.

    :param store_type: ``memory`` or ``disk`` cache backend
    :type store_type: str

    :param data_dir: directory of the disk cache
    :type data_dir: str

    :param phase_one: ``lattice`` or ``auxiliary``, ``cfg.PHASE_ONE`` when omitted
    :type phase_one: str

    :param scaled: run Phase II with cost bit-scaling
    :type scaled: bool
    '''

    def __init__(self, store_type: str = 'memory', data_dir: str = cfg.CACHE_DIR,
                 phase_one: Optional[str] = None, scaled: bool = False):
        self.store = BasisStore(store_type, data_dir)
        self.phase_one = phase_one or cfg.PHASE_ONE
        if self.phase_one not in PHASE_ONE_STRATEGIES:
            raise ValueError(f'unknown Phase I strategy {self.phase_one!r}')
        self.scaled = scaled

    def graver_basis(self, A: IntMatrix, B: IntMatrix, n: int):
        return nfold_graver_basis(A, B, n, store=self.store)

    def uses_orbits(self, n: int) -> bool:
        '''
        whether programs with n blocks augment over block orbits
        '''
        return n > cfg.DIRECT_FOLDS

    def block_orbits(self, A: IntMatrix, B: IntMatrix, n: int):
        return block_orbits(A, B, store=self.store).restricted(n)

    def known_complexity(self, A: IntMatrix, B: IntMatrix) -> Optional[int]:
        '''
        g(A,B) if some computation already asked for it, else None
        '''
        complexity = self.store.get(basis_key('complexity', A, B))
        return None if complexity is None else complexity.value

    def _optimize(self, A: IntMatrix, B: IntMatrix, n: int, x: IntVec,
                  c: Sequence[int], scaled: bool = False) -> Tuple[SolveOutcome, Optional[int]]:
        if self.uses_orbits(n):
            orbits = self.block_orbits(A, B, n)
            return orbit_optimize(orbits, n, x, c, scaled=scaled), None
        G = self.graver_basis(A, B, n)
        engine = optimize_scaled if scaled else optimize
        return engine(nfold_matrix(A, B, n), G, x, c), len(G)

    def _auxiliary_phase(self, A, B, n, b) -> Tuple[Optional[IntVec], int]:
        aux = auxiliary_instance(A, B, n, b)
        outcome, _ = self._optimize(aux.instance.A, aux.instance.B, n, aux.initial, aux.instance.c)
        if not outcome.is_optimal:
            raise RuntimeError('auxiliary program reported unbounded')
        steps = outcome.stats['augmentation_steps']
        logger.info(f'[PHASE I] auxiliary optimum {outcome.objective} after {steps} steps')
        if outcome.objective > 0:
            return None, steps
        return aux.restrict(outcome.x), steps

    def _lattice_phase(self, A, B, n, b) -> Tuple[Optional[IntVec], int]:
        x = integer_solution(nfold_matrix(A, B, n), b)
        if x is None:
            logger.info('[PHASE I] no integer solution at all')
            return None, 0
        if self.uses_orbits(n):
            y, steps = orbit_minimize_deficit(self.block_orbits(A, B, n), n, x)
        else:
            y, steps = minimize_deficit(self.graver_basis(A, B, n), x)
        logger.info(f'[PHASE I] deficit {deficit(y)} after {steps} steps')
        if deficit(y) > 0:
            return None, steps
        return y, steps

    def find_feasible(self, A: IntMatrix, B: IntMatrix, n: int, b: Sequence[int],
                      strategy: Optional[str] = None) -> Tuple[Optional[IntVec], int]:
        '''
        :returns: ``(x, steps)`` with a feasible ``x`` or None when the
                  program has no feasible point
        '''
        strategy = strategy or self.phase_one
        if strategy == AUXILIARY:
            return self._auxiliary_phase(A, B, n, vec(b))
        if strategy == LATTICE:
            return self._lattice_phase(A, B, n, vec(b))
        raise ValueError(f'unknown Phase I strategy {strategy!r}')

    def solve(self, instance: NFoldInstance, start: Optional[Sequence[int]] = None) -> SolveOutcome:
        '''
        Solve one generalized n-fold program.

        :param instance: the program
        :type instance: NFoldInstance

        :param start: a known feasible point; Phase I is skipped when given
        :type start: tuple

        :returns: Infeasible, Unbounded or a verified Optimal outcome with
                  ``graver_size``, ``graver_complexity``, ``augmentation_steps``,
                  ``phase1_steps`` and ``wall_ms`` in its stats
        :rtype: SolveOutcome
        '''
        started = time.time()
        instance.validate()
        A, B, n = instance.A, instance.B, instance.n
        stats = {'graver_size': None, 'graver_complexity': None,
                 'augmentation_steps': 0, 'phase1_steps': 0, 'wall_ms': 0}

        def finish(outcome: SolveOutcome) -> SolveOutcome:
            stats['graver_complexity'] = self.known_complexity(A, B)
            stats['wall_ms'] = int((time.time() - started) * 1000)
            logger.info(f'[SOLVE] {outcome.status} in {stats["wall_ms"]} ms')
            return outcome.with_stats(stats)

        if start is None:
            x, stats['phase1_steps'] = self.find_feasible(A, B, n, instance.b)
            if x is None:
                return finish(SolveOutcome.infeasible())
        else:
            x = vec(start)
            if not instance.is_feasible(x):
                raise ContractViolation('starting point is not feasible')
        outcome, stats['graver_size'] = self._optimize(A, B, n, x, instance.c, self.scaled)
        stats['augmentation_steps'] = outcome.stats['augmentation_steps']
        logger.info(f'[PHASE II] {outcome.status} after {stats["augmentation_steps"]} steps')
        if outcome.is_optimal:
            if not instance.is_feasible(outcome.x) or \
                    outcome.objective != dot(instance.c, outcome.x):
                raise RuntimeError('optimal point failed verification')
        return finish(outcome)


_default_solver = None
_default_lock = Lock()


def default_solver() -> NFoldSolver:
    global _default_solver
    with _default_lock:
        if _default_solver is None:
            _default_solver = NFoldSolver()
        return _default_solver


def find_feasible(A: IntMatrix, B: IntMatrix, n: int, b: Sequence[int],
                  strategy: Optional[str] = None) -> Optional[IntVec]:
    '''
    a feasible point of ``[A,B]^(n) x = b, x >= 0`` or None when there is none
    '''
    x, _ = default_solver().find_feasible(A, B, n, b, strategy)
    return x


def solve(instance: NFoldInstance, start: Optional[Sequence[int]] = None) -> SolveOutcome:
    return default_solver().solve(instance, start)
