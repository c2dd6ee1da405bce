'''
Augmentation along Graver directions.

A Graver basis of ``M`` is a universal test set: a feasible ``x`` of
``min{cx : My = Mx, y >= 0}`` is optimal exactly when no element ``g`` keeps
``x - g`` nonnegative while ``c g > 0``. Moves are always ``x := x - λ g``.
'''
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

from nfold import cfg, logger
from nfold.core import (ContractViolation, IntMatrix, IntVec, SolveOutcome,
                        dot, is_nonnegative, negative_part, positive_part, vec)
from nfold.graver import GraverBasis


class _Unbounded:
    __slots__ = ()

    def __repr__(self):
        return 'UNBOUNDED'

    def __reduce__(self):
        return 'UNBOUNDED'


UNBOUNDED = _Unbounded()


class AugmentStep(NamedTuple):
    '''
    one move ``x := x - step * direction`` that lowered the objective by
    ``improvement``
    '''
    direction: IntVec
    step: int
    improvement: int


def _check_lengths(G: GraverBasis, *vectors):
    for v in vectors:
        if len(v) != G.matrix_cols:
            raise ContractViolation(
                f'vector of length {len(v)} against a basis for {G.matrix_cols} columns')


def _applicable(x: IntVec, g: IntVec) -> bool:
    return all(a >= b for a, b in zip(x, g))


def max_step(x: Sequence[int], g: Sequence[int]) -> Union[int, _Unbounded]:
    '''
    Longest step along g that keeps ``x - λ g`` nonnegative.

    :param x: nonnegative point
    :type x: tuple

    :param g: direction with ``x - g >= 0``
    :type g: tuple

    :returns: ``min(x_i // g_i)`` over ``g_i > 0``, or UNBOUNDED when g has no
              positive entry
    '''
    if len(x) != len(g):
        raise ContractViolation(f'lengths {len(x)} and {len(g)} differ')
    if not _applicable(x, g):
        raise ContractViolation(f'{tuple(g)} cannot be applied at {tuple(x)}')
    steps = [a // b for a, b in zip(x, g) if b > 0]
    if not steps:
        return UNBOUNDED
    return min(steps)


def directed_improving_direction(G: GraverBasis, x: Sequence[int],
                                 c_pos: Sequence[int],
                                 c_neg: Sequence[int]) -> Optional[IntVec]:
    '''
    first element g of G, in canonical order, with ``x - g >= 0`` and
    ``c_pos g+ - c_neg g- > 0``; None certifies that no integer vector at
    all has that property
    '''
    x = vec(x)
    _check_lengths(G, x, c_pos, c_neg)
    for g in G.elements:
        if not _applicable(x, g):
            continue
        if dot(c_pos, positive_part(g)) - dot(c_neg, negative_part(g)) > 0:
            return g
    return None


def improving_direction(G: GraverBasis, x: Sequence[int],
                        c: Sequence[int]) -> Optional[IntVec]:
    return directed_improving_direction(G, x, c, c)


def ray_direction(G: GraverBasis, c: Sequence[int]) -> Optional[IntVec]:
    '''
    an element ``h <= 0`` with ``c h > 0``; from any feasible point the
    objective then decreases without bound along ``-h``
    '''
    _check_lengths(G, c)
    for g in G.elements:
        if all(a <= 0 for a in g) and dot(c, g) > 0:
            return g
    return None


def _best_step(G: GraverBasis, x: IntVec, c: Sequence[int]):
    best = None
    best_gain = 0
    for g in G.elements:
        gain = dot(c, g)
        if gain <= 0 or not _applicable(x, g):
            continue
        step = max_step(x, g)
        if step is UNBOUNDED:
            return g, UNBOUNDED, gain
        if step * gain > best_gain:
            best, best_gain = (g, step, step * gain), step * gain
    return best


def _prepare(M: IntMatrix, G: GraverBasis, x: Sequence[int], c: Sequence[int]):
    x, c = vec(x), vec(c)
    _check_lengths(G, x, c)
    if M.cols != G.matrix_cols:
        raise ContractViolation(
            f'basis for {G.matrix_cols} columns used with {M.cols} columns')
    if not is_nonnegative(x):
        raise ContractViolation(f'starting point {x} is not nonnegative')
    if G.matrix is None or G.matrix != M:
        G.check_against(M)
    return x, c


def optimize(M: IntMatrix, G: GraverBasis, x: Sequence[int], c: Sequence[int],
             trace: Optional[List[AugmentStep]] = None,
             max_steps: Optional[int] = None) -> SolveOutcome:
    '''
    Minimize ``c y`` over ``{y >= 0 : M y = M x}`` by Graver-best long steps.

    :param M: constraint matrix
    :type M: IntMatrix

    :param G: the Graver basis of M
    :type G: GraverBasis

    :param x: feasible starting point
    :type x: tuple

    :param c: objective
    :type c: tuple

    :param trace: list receiving every AugmentStep taken
    :type trace: list

    :param max_steps: step cap, ``cfg.MAX_AUGMENTATIONS`` when omitted
    :type max_steps: int

    :returns: Unbounded or Optimal, with ``augmentation_steps`` in stats
    :rtype: SolveOutcome
    '''
    x, c = _prepare(M, G, x, c)
    if max_steps is None:
        max_steps = cfg.MAX_AUGMENTATIONS
    if ray_direction(G, c) is not None:
        logger.info('[AUGMENT] nonpositive Graver element with positive gain, unbounded')
        return SolveOutcome.unbounded({'augmentation_steps': 0})
    steps = 0
    while True:
        best = _best_step(G, x, c)
        if best is None:
            break
        g, step, improvement = best
        if step is UNBOUNDED:
            return SolveOutcome.unbounded({'augmentation_steps': steps})
        if steps >= max_steps:
            raise RuntimeError(f'augmentation stopped after {steps} steps')
        x = tuple(a - step * b for a, b in zip(x, g))
        steps += 1
        if trace is not None:
            trace.append(AugmentStep(g, step, improvement))
        logger.debug(f'[AUGMENT] step {steps}: {step} x {g}, gain {improvement}')
    logger.debug(f'[AUGMENT] optimal after {steps} steps, objective {dot(c, x)}')
    return SolveOutcome.optimal(x, dot(c, x), {'augmentation_steps': steps})


def optimize_scaled(M: IntMatrix, G: GraverBasis, x: Sequence[int], c: Sequence[int],
                    trace: Optional[List[AugmentStep]] = None,
                    max_steps: Optional[int] = None) -> SolveOutcome:
    '''
    Same contract as :func:`optimize`, reached through cost bit-scaling:
    each level ``c // 2^k`` is driven to optimality by the augmentation
    oracle before the next bit is revealed. Levels whose truncated cost is
    unbounded are skipped; the last level is the exact cost.
    '''
    x, c = _prepare(M, G, x, c)
    bits = max((abs(a) for a in c), default=0).bit_length()
    if bits <= 1:
        return optimize(M, G, x, c, trace, max_steps)
    if max_steps is None:
        max_steps = cfg.MAX_AUGMENTATIONS
    if ray_direction(G, c) is not None:
        return SolveOutcome.unbounded({'augmentation_steps': 0})
    steps = 0
    for k in range(bits - 1, 0, -1):
        level = tuple(a >> k for a in c)
        if ray_direction(G, level) is not None:
            logger.debug(f'[AUGMENT] scaling level {k} unbounded, skipped')
            continue
        g = improving_direction(G, x, level)
        while g is not None:
            if steps >= max_steps:
                raise RuntimeError(f'augmentation stopped after {steps} steps')
            step = max_step(x, g)
            x = tuple(a - step * b for a, b in zip(x, g))
            steps += 1
            if trace is not None:
                trace.append(AugmentStep(g, step, step * dot(level, g)))
            g = improving_direction(G, x, level)
        logger.debug(f'[AUGMENT] scaling level {k} done after {steps} steps')
    outcome = optimize(M, G, x, c, trace, max_steps - steps)
    return outcome.with_stats(
        {'augmentation_steps': steps + outcome.stats['augmentation_steps']})


def deficit(x: Sequence[int]) -> int:
    '''
    total amount by which x falls below zero
    '''
    return sum(-a for a in x if a < 0)


def _step_candidates(x: IntVec, g: IntVec):
    candidates = {1}
    for a, b in zip(x, g):
        if b:
            quotient, remainder = divmod(a, b)
            for step in (quotient, quotient + (1 if remainder else 0)):
                if step >= 1:
                    candidates.add(step)
    return sorted(candidates)


def minimize_deficit(G: GraverBasis, x: Sequence[int],
                     trace: Optional[List[AugmentStep]] = None) -> Tuple[IntVec, int]:
    '''
    Minimize the separable convex deficit ``sum(max(-x_i, 0))`` over
    ``x + ker(M)`` by Graver steps.

    :param G: Graver basis of the matrix fixing ``M x``
    :type G: GraverBasis

    :param x: integer point of any sign
    :type x: tuple

    :returns: ``(y, steps)`` with ``y`` of minimum deficit; the minimum is 0
              exactly when ``{y >= 0 : M y = M x}`` is nonempty
    :rtype: tuple
    '''
    x = vec(x)
    _check_lengths(G, x)
    current = deficit(x)
    steps = 0
    while current > 0:
        best = None
        for g in G.elements:
            for step in _step_candidates(x, g):
                value = deficit(a - step * b for a, b in zip(x, g))
                if value < current and (best is None or value < best[2]):
                    best = (g, step, value)
        if best is None:
            break
        g, step, value = best
        x = tuple(a - step * b for a, b in zip(x, g))
        if trace is not None:
            trace.append(AugmentStep(g, step, current - value))
        steps += 1
        current = value
        logger.debug(f'[PHASE I] deficit {current} after {steps} steps')
    return x, steps
