'''
Exhaustive ground truth for small instances. Everything here is exponential
and only meant for tests.
'''
from collections import deque
from itertools import product
from typing import Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

from nfold.core import (ContractViolation, IntMatrix, IntVec, conformal_leq,
                        dot, one_norm, vec)
from nfold.encoders import CuttingStockInstance, line_sum_matrix


class BoxBound(NamedTuple):
    bound: int

    @classmethod
    def of(cls, bound: int) -> 'BoxBound':
        if bound < 0:
            raise ContractViolation(f'box bound must be nonnegative, got {bound}')
        return cls(int(bound))


def lattice_points(M: IntMatrix, b: Sequence[int], lo: int, hi: int) -> Iterator[IntVec]:
    '''
    all integer x with ``lo <= x_i <= hi`` and ``M x = b``, in lexicographic order
    '''
    n = M.cols
    rows = M.rows_list()
    columns = M.columns()
    last = [max((j for j, a in enumerate(row) if a), default=-1) for row in rows]
    nonneg = [i for i, row in enumerate(rows) if lo >= 0 and all(a >= 0 for a in row)]
    reach = {i: [hi * sum(rows[i][j + 1:]) for j in range(n)] for i in nonneg}
    for i in range(M.rows):
        if last[i] < 0 and b[i] != 0:
            return
    partial = [0] * M.rows
    x = [0] * n

    def rec(j: int):
        if j == n:
            yield tuple(x)
            return
        col = columns[j]
        for value in range(lo, hi + 1):
            for i, a in enumerate(col):
                partial[i] += a * value
            x[j] = value
            ok = True
            overshoot = False
            for i in nonneg:
                if partial[i] > b[i]:
                    ok = False
                    overshoot = overshoot or col[i] > 0
                elif partial[i] + reach[i][j] < b[i]:
                    ok = False
            if ok:
                ok = all(partial[i] == b[i] for i in range(M.rows) if last[i] == j)
            if ok:
                yield from rec(j + 1)
            for i, a in enumerate(col):
                partial[i] -= a * value
            if overshoot:
                break
        x[j] = 0

    yield from rec(0)


def brute_force_solve(M: IntMatrix, b: Sequence[int], c: Sequence[int],
                      box: BoxBound) -> Optional[Tuple[IntVec, int]]:
    '''
    Minimize ``c x`` over ``{x in [0, bound]^cols : M x = b}``.

    :returns: ``(x, cx)`` for the lexicographically first minimizer, or None
              when the box holds no feasible point
    :rtype: tuple
    '''
    b, c = vec(b), vec(c)
    if len(b) != M.rows or len(c) != M.cols:
        raise ContractViolation('dimensions of M, b and c disagree')
    best = None
    for x in lattice_points(M, b, 0, box.bound):
        value = dot(c, x)
        if best is None or value < best[1]:
            best = (x, value)
    return best


def brute_force_graver(M: IntMatrix, box: BoxBound) -> Set[IntVec]:
    '''
    ⊑-minimal nonzero kernel vectors with entries in ``[-bound, bound]``
    '''
    zero = (0,) * M.rows
    kernel = sorted((v for v in lattice_points(M, zero, -box.bound, box.bound) if any(v)),
                    key=one_norm)
    minimal = []
    for v in kernel:
        if not any(conformal_leq(u, v) for u in minimal):
            minimal.append(v)
    return set(minimal)


def brute_force_ray(M: IntMatrix, c: Sequence[int], bound: int) -> Optional[IntVec]:
    '''
    first nonzero ``d`` in ``[0, bound]^cols`` with ``M d = 0`` and ``c d < 0``
    '''
    c = vec(c)
    for d in lattice_points(M, (0,) * M.rows, 0, bound):
        if any(d) and dot(c, d) < 0:
            return d
    return None


def _patterns(cs: CuttingStockInstance) -> List[IntVec]:
    ranges = [range(cs.stock_width // w + 1) for w in cs.widths]
    return [p for p in product(*ranges)
            if any(p) and dot(p, cs.widths) <= cs.stock_width]


def brute_force_rolls(cs: CuttingStockInstance) -> int:
    '''
    fewest rolls covering the demands, by breadth-first search over the
    remaining demand
    '''
    start = tuple(cs.demands)
    if not any(start):
        return 0
    patterns = _patterns(cs)
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        left, rolls = queue.popleft()
        for p in patterns:
            nxt = tuple(max(0, a - b) for a, b in zip(left, p))
            if not any(nxt):
                return rolls + 1
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, rolls + 1))
    raise ContractViolation('demands cannot be covered')


def _flatten(array, depth: int) -> list:
    if depth == 0:
        return [array]
    return [e for sub in array for e in _flatten(sub, depth - 1)]


def _unflatten(flat: Sequence[int], shape: Sequence[int]):
    if not shape:
        return flat[0]
    step = len(flat) // shape[0]
    return [_unflatten(flat[i * step:(i + 1) * step], shape[1:]) for i in range(shape[0])]


def brute_force_tables(dims: Sequence[int], l: int, margins: list,
                       cost) -> Optional[Tuple[list, int]]:
    '''
    Cheapest ``dims x l`` table with the given axis sums.

    :param margins: ``margins[a]`` is the array of sums over axis ``a``
    :type margins: list

    :param cost: cost array shaped like the table
    :type cost: list

    :returns: ``(table, cost)`` or None when no table has these margins
    :rtype: tuple
    '''
    shape = tuple(dims) + (l,)
    M = line_sum_matrix(shape)
    b = []
    for axis in range(len(shape) - 1, -1, -1):
        b.extend(_flatten(margins[axis], len(shape) - 1))
    bound = max(_flatten(margins[-1], len(shape) - 1), default=0)
    found = brute_force_solve(M, b, _flatten(cost, len(shape)), BoxBound.of(max(0, bound)))
    if found is None:
        return None
    x, value = found
    return _unflatten(x, shape), value
