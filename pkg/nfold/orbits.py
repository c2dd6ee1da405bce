'''
Graver bases of n-fold matrices up to permutations of the blocks.

Permuting the blocks of ``[A,B]^(n)`` maps its kernel onto itself, so
``G([A,B]^(n))`` is a union of orbits, and an orbit is determined by the
multiset of its nonzero blocks. Every block is a conformal sum of elements
of ``G(A)``; counting the summands of a Graver element gives a minimal
nonnegative relation among the columns of ``B Γ``. The orbits are read off
those relations, so their number does not grow with ``n``.

Augmentation over orbits places the blocks of an orbit on distinct blocks of
the current point through a minimum cost assignment, which finds the best
placement without listing the ``n! / (n - j)!`` elements of the orbit.
'''
from itertools import permutations
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from nfold import cfg, logger
from nfold.core import (ContractViolation, IntMatrix, IntVec, SolveOutcome,
                        dot, is_nonnegative, nfold_matrix, one_norm, vec)
from nfold.graver import (GraverBasis, conformal_decompose, graver_basis,
                          minimal_elements, nonnegative_graver)
from nfold.store import basis_key

Orbit = Tuple[IntVec, ...]


def _compatible(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a * b >= 0 for a, b in zip(u, v))


class BlockOrbits:
    '''
    Orbits of ``G([A,B]^(n))`` under block permutations, each kept as the
    sorted tuple of its nonzero blocks. Every Graver element is a placement
    of one of them; the few candidates that are not minimal still place to
    kernel vectors.

    :param A: the diagonal block
    :type A: IntMatrix

    :param B: the linking block
    :type B: IntMatrix

    :param orbits: tuples of nonzero blocks of length ``A.cols``
    :type orbits: iterable
    '''
    __slots__ = ('A', 'B', 'orbits')

    def __init__(self, A: IntMatrix, B: IntMatrix, orbits):
        self.A = A
        self.B = B
        orbits = set(tuple(sorted(vec(y) for y in orbit)) for orbit in orbits)
        self.orbits = tuple(sorted(orbits, key=lambda o: (sum(map(one_norm, o)), o)))

    def __len__(self):
        return len(self.orbits)

    def __iter__(self) -> Iterator[Orbit]:
        return iter(self.orbits)

    def __repr__(self):
        return f'BlockOrbits({len(self.orbits)} orbits, {self.A.cols} columns per block)'

    @property
    def q(self) -> int:
        return self.A.cols

    def max_type(self) -> int:
        return max((len(o) for o in self.orbits), default=0)

    def restricted(self, n: int) -> 'BlockOrbits':
        '''
        the orbits that fit into n blocks
        '''
        return BlockOrbits(self.A, self.B, [o for o in self.orbits if len(o) <= n])

    def placements(self, orbit: Orbit, n: int) -> Iterator[IntVec]:
        '''
        every n-block vector carrying the orbit's blocks on distinct blocks
        '''
        if len(orbit) > n:
            return
        q = self.q
        seen = set()
        for positions in permutations(range(n), len(orbit)):
            y = [0] * (n * q)
            for block, k in zip(orbit, positions):
                y[k * q:(k + 1) * q] = block
            y = tuple(y)
            if y not in seen:
                seen.add(y)
                yield y

    def expand(self, n: int) -> GraverBasis:
        '''
        Write out ``G([A,B]^(n))`` in full.

        :param n: number of blocks
        :type n: int

        :rtype: GraverBasis
        '''
        elements = set()
        for orbit in self.orbits:
            elements.update(self.placements(orbit, n))
        return GraverBasis(minimal_elements(elements), n * self.q, nfold_matrix(self.A, self.B, n))


def _groups(kinds: List[IntVec], counts: Sequence[int],
            GA: GraverBasis) -> List[Tuple[Tuple[int, ...], IntVec]]:
    '''
    Sub-multisets of a relation that can make up one block: pairwise sign
    compatible, and for more than one summand exactly the greedy conformal
    decomposition of their sum.

    :returns: ``(multiplicities, block)`` pairs
    '''
    q = len(kinds[0])
    found = []

    def walk(i: int, taken: List[int], total: List[int]):
        if i == len(kinds):
            size = sum(taken)
            if size == 0:
                return
            block = tuple(total)
            if size > 1:
                parts = conformal_decompose(block, GA)
                wanted = [k for k, t in zip(kinds, taken) for _ in range(t)]
                if sorted(parts) != sorted(wanted):
                    return
            found.append((tuple(taken), block))
            return
        walk(i + 1, taken + [0], total)
        if not _compatible(kinds[i], total):
            return
        for t in range(1, counts[i] + 1):
            walk(i + 1, taken + [t], [a + t * b for a, b in zip(total, kinds[i])])

    walk(0, [], [0] * q)
    return found


def _covers(counts: Sequence[int], groups) -> Iterator[List[IntVec]]:
    def walk(remaining: Tuple[int, ...], chosen: List[IntVec]):
        first = next((i for i, c in enumerate(remaining) if c), None)
        if first is None:
            yield chosen
            return
        for taken, block in groups:
            if taken[first] and all(t <= r for t, r in zip(taken, remaining)):
                rest = tuple(r - t for r, t in zip(remaining, taken))
                yield from walk(rest, chosen + [block])

    yield from walk(tuple(counts), [])


def block_orbits(A: IntMatrix, B: IntMatrix, store=None) -> BlockOrbits:
    '''
    Compute the orbits of n-fold Graver elements for all ``n`` at once.

    The relations are the nonnegative elements of ``G(B Γ)``, the columns of
    ``Γ`` being ``G(A)``; every way of grouping a relation into blocks that
    are greedy conformal decompositions gives an orbit. The largest number of
    blocks is the Graver complexity ``g(A,B)``.

    :param A: the diagonal block
    :type A: IntMatrix

    :param B: the linking block
    :type B: IntMatrix

    :param store: optional BasisStore memoizing the orbits
    :type store: BasisStore

    :rtype: BlockOrbits
    '''
    if A.cols != B.cols:
        raise ContractViolation(f'A has {A.cols} columns but B has {B.cols}')

    def compute() -> BlockOrbits:
        GA = graver_basis(A)
        if not len(GA):
            return BlockOrbits(A, B, [])
        columns = list(GA.elements)
        gamma = IntMatrix.from_rows([[e[i] for e in columns] for i in range(A.cols)],
                                    cols=len(columns))
        relations = nonnegative_graver(B.mul(gamma))
        orbits = set()
        for h in relations:
            support = [i for i, c in enumerate(h) if c]
            kinds = [columns[i] for i in support]
            counts = [h[i] for i in support]
            for blocks in _covers(counts, _groups(kinds, counts, GA)):
                orbits.add(tuple(sorted(blocks)))
        result = BlockOrbits(A, B, orbits)
        logger.info(f'[NFOLD] {len(result)} block orbits from {len(relations)} relations, '
                    f'largest type {result.max_type()}')
        return result

    if store is None:
        return compute()
    return store.get_or_compute(basis_key('orbits', A, B), compute)


def _blocks(x: IntVec, n: int, q: int) -> List[IntVec]:
    return [x[k * q:(k + 1) * q] for k in range(n)]


def _place(orbit: Orbit, positions: Sequence[int], n: int, q: int) -> IntVec:
    y = [0] * (n * q)
    for block, k in zip(orbit, positions):
        y[k * q:(k + 1) * q] = block
    return tuple(y)


Change = Callable[[int, IntVec, IntVec], Optional[int]]


def best_placement(orbit: Orbit, blocks: Sequence[IntVec],
                   change: Change) -> Optional[Tuple[int, Tuple[int, ...]]]:
    '''
    Cheapest placement of an orbit on distinct blocks.

    :param orbit: the nonzero blocks ``y_1, ..., y_j``
    :type orbit: tuple

    :param blocks: the blocks of the current point
    :type blocks: sequence

    :param change: ``change(k, x_k, y)`` is the objective change of replacing
                   block k by ``x_k - y``, None when that is not allowed
    :type change: callable

    :returns: ``(total change, positions)`` with ``positions[t]`` the block
              receiving ``y_t``, or None when no placement is allowed
    '''
    if len(orbit) > len(blocks):
        return None
    table = [[change(k, xk, y) for k, xk in enumerate(blocks)] for y in orbit]
    big = 1 + 2 * sum(abs(v) for row in table for v in row if v is not None)
    cost = np.array([[big if v is None else v for v in row] for row in table], dtype=float)
    rows, cols = linear_sum_assignment(cost)
    positions = [0] * len(orbit)
    total = 0
    for t, k in zip(rows, cols):
        v = table[t][k]
        if v is None:
            return None
        positions[t] = int(k)
        total += v
    return total, tuple(positions)


def _descend(orbits: BlockOrbits, x: IntVec, n: int, change: Change,
             step_length: Callable[[IntVec, IntVec], int],
             max_steps: int, tag: str) -> Tuple[IntVec, int]:
    '''
    Take improving placements, cycling through the orbits, until a whole
    round finds none.
    '''
    q = orbits.q
    candidates = [o for o in orbits if len(o) <= n]
    blocks = _blocks(x, n, q)
    steps = idle = i = 0
    while candidates and idle < len(candidates):
        orbit = candidates[i]
        found = best_placement(orbit, blocks, change)
        if found is None or found[0] >= 0:
            idle += 1
            i = (i + 1) % len(candidates)
            continue
        if steps >= max_steps:
            raise RuntimeError(f'augmentation stopped after {steps} steps')
        g = _place(orbit, found[1], n, q)
        step = step_length(x, g)
        x = tuple(a - step * b for a, b in zip(x, g))
        blocks = _blocks(x, n, q)
        steps += 1
        idle = 0
        logger.debug(f'[{tag}] step {steps}: {step} x orbit {i}, change {found[0]} per unit')
    return x, steps


def _deficit(v: Sequence[int]) -> int:
    return sum(-a for a in v if a < 0)


def _deficit_change(k: int, xk: IntVec, y: IntVec) -> int:
    return _deficit([a - b for a, b in zip(xk, y)]) - _deficit(xk)


def _deficit_step(x: IntVec, g: IntVec) -> int:
    def value(step: int) -> int:
        return _deficit([a - step * b for a, b in zip(x, g)])

    lo = 1
    while value(2 * lo) < value(lo):
        lo *= 2
    hi = 2 * lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if value(mid + 1) < value(mid):
            lo = mid + 1
        else:
            hi = mid
    return lo if value(lo) <= value(hi) else hi


def orbit_minimize_deficit(orbits: BlockOrbits, n: int, x: Sequence[int],
                           max_steps: Optional[int] = None) -> Tuple[IntVec, int]:
    '''
    Minimize ``sum(max(-x_i, 0))`` over ``x + ker([A,B]^(n))``.

    :param orbits: block orbits of the pair
    :type orbits: BlockOrbits

    :param n: number of blocks
    :type n: int

    :param x: integer point of any sign
    :type x: tuple

    :returns: ``(y, steps)``; the deficit of y is 0 exactly when the fiber of
              x has a nonnegative point
    :rtype: tuple
    '''
    x = vec(x)
    if len(x) != n * orbits.q:
        raise ContractViolation(f'vector of length {len(x)} for {n} blocks of {orbits.q}')
    if max_steps is None:
        max_steps = cfg.MAX_AUGMENTATIONS
    if _deficit(x) == 0:
        return x, 0
    y, steps = _descend(orbits, x, n, _deficit_change, _deficit_step, max_steps, 'PHASE I')
    logger.debug(f'[PHASE I] deficit {_deficit(y)} after {steps} orbit steps')
    return y, steps


def _linear_change(c_blocks: List[IntVec]) -> Change:
    def change(k: int, xk: IntVec, y: IntVec) -> Optional[int]:
        if any(a < b for a, b in zip(xk, y)):
            return None
        return -dot(c_blocks[k], y)
    return change


def _longest_step(x: IntVec, g: IntVec) -> int:
    return min(a // b for a, b in zip(x, g) if b > 0)


def _ray(orbits: BlockOrbits, n: int, c_blocks: List[IntVec]) -> bool:
    '''
    whether some orbit with only nonpositive blocks lowers the cost, which
    makes every feasible fiber unbounded
    '''
    zero = [(0,) * orbits.q] * n

    def change(k: int, xk: IntVec, y: IntVec) -> int:
        return -dot(c_blocks[k], y)

    for orbit in orbits:
        if len(orbit) <= n and all(a <= 0 for y in orbit for a in y):
            found = best_placement(orbit, zero, change)
            if found is not None and found[0] < 0:
                return True
    return False


def orbit_optimize(orbits: BlockOrbits, n: int, x: Sequence[int], c: Sequence[int],
                   scaled: bool = False, max_steps: Optional[int] = None) -> SolveOutcome:
    '''
    Minimize ``c y`` over ``{y >= 0 : [A,B]^(n) y = [A,B]^(n) x}``.

    :param orbits: block orbits of the pair
    :type orbits: BlockOrbits

    :param n: number of blocks
    :type n: int

    :param x: feasible starting point
    :type x: tuple

    :param c: objective
    :type c: tuple

    :param scaled: reach the cost through its bit-scaled truncations first
    :type scaled: bool

    :returns: Unbounded or Optimal, with ``augmentation_steps`` in stats
    :rtype: SolveOutcome
    '''
    x, c = vec(x), vec(c)
    q = orbits.q
    if len(x) != n * q or len(c) != n * q:
        raise ContractViolation(f'vectors of length {len(x)} and {len(c)} for {n} blocks of {q}')
    if not is_nonnegative(x):
        raise ContractViolation(f'starting point {x} is not nonnegative')
    if max_steps is None:
        max_steps = cfg.MAX_AUGMENTATIONS
    c_blocks = _blocks(c, n, q)
    if _ray(orbits, n, c_blocks):
        logger.info('[AUGMENT] nonpositive orbit with positive gain, unbounded')
        return SolveOutcome.unbounded({'augmentation_steps': 0})
    steps = 0
    if scaled:
        bits = max((abs(a) for a in c), default=0).bit_length()
        for k in range(bits - 1, 0, -1):
            level = _blocks(tuple(a >> k for a in c), n, q)
            if _ray(orbits, n, level):
                logger.debug(f'[AUGMENT] scaling level {k} unbounded, skipped')
                continue
            x, taken = _descend(orbits, x, n, _linear_change(level), _longest_step,
                                max_steps - steps, 'AUGMENT')
            steps += taken
    x, taken = _descend(orbits, x, n, _linear_change(c_blocks), _longest_step,
                        max_steps - steps, 'AUGMENT')
    steps += taken
    logger.debug(f'[AUGMENT] optimal after {steps} orbit steps, objective {dot(c, x)}')
    return SolveOutcome.optimal(x, dot(c, x), {'augmentation_steps': steps})
