'''
Applications written as generalized n-fold programs.

Long multiway transportation tables put one layer per block with the long
line sums in the linking rows. Shipment and cutting stock put one vessel or
standard roll per block with the row ``(w_1, ..., w_t, 1)`` as ``A``.
Every encoder returns an :class:`EncodedProblem` carrying the map back to
natural coordinates.
'''
from itertools import product
from math import prod
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

from nfold import logger
from nfold.core import (BlockVector, ContractViolation, IntMatrix, IntVec,
                        NFoldInstance, SolveOutcome, identity, vec)
from nfold.solve import default_solver


class EncodedProblem(NamedTuple):
    '''
    An application instance in n-fold form.

    ``infeasible`` is set when infeasibility is already evident from the
    data; ``instance`` is None then. ``decode`` maps a feasible n-fold point
    back to the application's natural coordinates.
    '''
    instance: Optional[NFoldInstance]
    decode: Callable
    infeasible: bool = False


class ThreeWayInstance(NamedTuple):
    '''
    ``r x s x l`` table with long line sums ``u`` (``r x s``, over the
    layers), ``v`` (``r x l``, over ``j``) and ``w`` (``s x l``, over ``i``)
    '''
    r: int
    s: int
    l: int
    cost: list
    u: list
    v: list
    w: list

    def validate(self):
        if min(self.r, self.s, self.l) < 1:
            raise ContractViolation(f'bad table shape {self.r} x {self.s} x {self.l}')
        _check_shape(self.cost, (self.r, self.s, self.l), 'cost')
        _check_shape(self.u, (self.r, self.s), 'u')
        _check_shape(self.v, (self.r, self.l), 'v')
        _check_shape(self.w, (self.s, self.l), 'w')


class DWayInstance(NamedTuple):
    '''
    ``m_1 x ... x m_{d-1} x l`` table. ``margins[a]`` holds the sums over
    axis ``a``, shaped like the table without that axis; the last one is the
    array of long sums over the layers.
    '''
    dims: Tuple[int, ...]
    l: int
    cost: list
    margins: list

    @property
    def d(self) -> int:
        return len(self.dims) + 1

    def validate(self):
        dims = tuple(self.dims)
        if not dims or self.l < 1 or any(m < 1 for m in dims):
            raise ContractViolation(f'bad table shape {dims} x {self.l}')
        if len(self.margins) != len(dims) + 1:
            raise ContractViolation(f'{len(dims) + 1} margin arrays are required')
        shape = dims + (self.l,)
        _check_shape(self.cost, shape, 'cost')
        for axis, margin in enumerate(self.margins):
            _check_shape(margin, _drop(shape, axis), f'margins[{axis}]')


class ShipmentInstance(NamedTuple):
    '''
    ``counts[j]`` items of weight ``weights[j]`` to ship in vessels of the
    given ``capacities``; ``costs[j][k]`` is paid per item of type j on
    vessel k
    '''
    weights: Tuple[int, ...]
    counts: Tuple[int, ...]
    capacities: Tuple[int, ...]
    costs: list

    @property
    def t(self) -> int:
        return len(self.weights)

    @property
    def v(self) -> int:
        return len(self.capacities)


class ShipmentPlan(NamedTuple):
    items: List[IntVec]
    unused: IntVec
    cost: int


class CuttingStockInstance(NamedTuple):
    widths: Tuple[int, ...]
    demands: Tuple[int, ...]
    stock_width: int

    @property
    def t(self) -> int:
        return len(self.widths)

    @classmethod
    def build(cls, widths: Sequence[int], demands: Sequence[int],
              stock_width: int) -> 'CuttingStockInstance':
        cs = cls(vec(widths), vec(demands), int(stock_width))
        cs.validate()
        return cs

    def validate(self):
        if not self.widths or len(self.widths) != len(self.demands):
            raise ContractViolation('one demand per width is required')
        if self.stock_width < 1 or any(w < 1 for w in self.widths):
            raise ContractViolation('widths must be positive')
        if any(w > self.stock_width for w in self.widths):
            raise ContractViolation(
                f'width {max(self.widths)} exceeds the stock width {self.stock_width}')
        if any(n < 0 for n in self.demands):
            raise ContractViolation('demands must be nonnegative')


def _check_shape(array, shape: Sequence[int], name: str):
    '''
    raise ContractViolation unless ``array`` is nested lists of exactly
    ``shape`` with integer leaves
    '''
    def walk(node, depth, where):
        if depth == len(shape):
            if isinstance(node, bool) or not isinstance(node, int):
                raise ContractViolation(f'{name}{where} must be an integer, got {node!r}')
            return
        if not isinstance(node, (list, tuple)) or len(node) != shape[depth]:
            size = len(node) if isinstance(node, (list, tuple)) else 'no'
            raise ContractViolation(
                f'{name}{where} must have {shape[depth]} entries, got {size}')
        for i, child in enumerate(node):
            walk(child, depth + 1, f'{where}[{i}]')
    walk(array, 0, '')


def _at(array, index: Sequence[int]):
    for i in index:
        array = array[i]
    return array


def _nested(shape: Sequence[int], value: Callable):
    def build(prefix):
        if len(prefix) == len(shape):
            return value(prefix)
        return [build(prefix + (i,)) for i in range(shape[len(prefix)])]
    return build(())


def _cells(shape: Sequence[int]):
    return product(*(range(m) for m in shape))


def _drop(index: Sequence[int], axis: int) -> Tuple[int, ...]:
    return tuple(index[:axis]) + tuple(index[axis + 1:])


def line_sum_matrix(dims: Sequence[int]) -> IntMatrix:
    '''
    Line-sum equations of an ``m_1 x ... x m_k`` array, variables in row-major
    order. Lines along the last axis come first, the first axis last; lines of
    one family follow the row-major order of the remaining indices.
    '''
    dims = tuple(dims)
    cells = list(_cells(dims))
    rows = []
    for axis in range(len(dims) - 1, -1, -1):
        rest = _drop(dims, axis)
        for line in _cells(rest):
            rows.append([1 if _drop(cell, axis) == line else 0 for cell in cells])
    return IntMatrix.from_rows(rows, cols=len(cells))


def dway_margins(table, dims: Sequence[int], l: int) -> list:
    '''
    all axis sums of a ``dims x l`` table, indexed by the summed axis
    '''
    shape = tuple(dims) + (l,)
    margins = []
    for axis in range(len(shape)):
        rest = _drop(shape, axis)
        sums = {}
        for cell in _cells(shape):
            key = _drop(cell, axis)
            sums[key] = sums.get(key, 0) + _at(table, cell)
        margins.append(_nested(rest, lambda index, sums=sums: sums.get(index, 0)))
    return margins


def three_way_margins(table) -> Tuple[list, list, list]:
    '''
    ``(u, v, w)`` of an ``r x s x l`` table
    '''
    r, s, l = len(table), len(table[0]), len(table[0][0])
    w, v, u = dway_margins(table, (r, s), l)
    return u, v, w


def encode_dway(tp: DWayInstance) -> EncodedProblem:
    '''
    Encode a long d-way transportation problem with ``n = l`` layers,
    ``A`` the line-sum matrix of one ``m_1 x ... x m_{d-1}`` layer and
    ``B = I_q``.

    :param tp: the table data
    :type tp: DWayInstance

    :rtype: EncodedProblem
    '''
    tp.validate()
    dims, l = tuple(tp.dims), tp.l
    q = prod(dims)
    cells = list(_cells(dims))
    A = line_sum_matrix(dims)
    b = [_at(tp.margins[-1], cell) for cell in cells]
    for k in range(l):
        for axis in range(len(dims) - 1, -1, -1):
            for line in _cells(_drop(dims, axis)):
                b.append(_at(tp.margins[axis], line + (k,)))
    c = [_at(tp.cost, cell + (k,)) for k in range(l) for cell in cells]
    instance = NFoldInstance.build(A, identity(q), l, b, c)
    logger.debug(f'[ENCODE] {dims} x {l} table: A is {A.rows}x{A.cols}')

    def decode(x: Sequence[int]):
        blocks = BlockVector.of(x, l, q)
        position = {cell: j for j, cell in enumerate(cells)}
        return _nested(dims + (l,),
                       lambda index: blocks.block(index[-1] + 1)[position[index[:-1]]])

    return EncodedProblem(instance, decode)


def encode_3way(tp: ThreeWayInstance) -> EncodedProblem:
    '''
    Encode an ``r x s x l`` line-sum transportation problem; variable
    ``x[i][j][k]`` becomes entry ``(i, j)`` of block ``k``.
    '''
    tp.validate()
    return encode_dway(DWayInstance((tp.r, tp.s), tp.l, tp.cost, [tp.w, tp.v, tp.u]))


def encode_shipment(sp: ShipmentInstance) -> EncodedProblem:
    '''
    One block per vessel over the variables ``(x_1, ..., x_t, slack)``,
    ``A = (w_1, ..., w_t, 1)`` against the vessel capacity and ``B = I``
    fixing the item counts and the total unused capacity.
    '''
    t, v = sp.t, sp.v
    if t < 1 or v < 1 or len(sp.counts) != t or any(w < 1 for w in sp.weights):
        raise ContractViolation('shipment needs positive weights and one count per type')
    if len(sp.costs) != t or any(len(row) != v for row in sp.costs):
        raise ContractViolation(f'costs must be {t} x {v}')
    q = t + 1
    spare = sum(sp.capacities) - sum(n * w for n, w in zip(sp.counts, sp.weights))

    def decode(x: Sequence[int]) -> ShipmentPlan:
        blocks = BlockVector.of(x, v, q).blocks()
        cost = sum(sp.costs[j][k] * blocks[k][j] for j in range(t) for k in range(v))
        return ShipmentPlan([blk[:t] for blk in blocks], tuple(blk[t] for blk in blocks), cost)

    if spare < 0:
        logger.info(f'[ENCODE] shipment short of capacity by {-spare}')
        return EncodedProblem(None, decode, infeasible=True)
    A = IntMatrix.from_rows([list(sp.weights) + [1]])
    b = list(sp.counts) + [spare] + list(sp.capacities)
    c = [e for k in range(v) for e in [sp.costs[j][k] for j in range(t)] + [0]]
    return EncodedProblem(NFoldInstance.build(A, identity(q), v, b, c), decode)


def _roll_row(cs: CuttingStockInstance) -> IntMatrix:
    return IntMatrix.from_rows([list(cs.widths) + [1]])


def encode_cutting_stock(cs: CuttingStockInstance, rolls: int) -> EncodedProblem:
    '''
    Encode "cut the demands out of ``rolls`` standard rolls" with one block
    per roll; piece variables cost their width and the waste slack costs one.

    :param rolls: number of standard rolls, at least one
    :type rolls: int

    :returns: the encoding; decode gives the piece counts per roll
    :rtype: EncodedProblem
    '''
    cs.validate()
    if rolls < 1:
        raise ContractViolation(f'at least one roll is required, got {rolls}')
    t, q = cs.t, cs.t + 1
    waste = rolls * cs.stock_width - sum(n * w for n, w in zip(cs.demands, cs.widths))

    def decode(x: Sequence[int]) -> List[IntVec]:
        return [blk[:t] for blk in BlockVector.of(x, rolls, q).blocks()]

    if waste < 0:
        return EncodedProblem(None, decode, infeasible=True)
    b = list(cs.demands) + [waste] + [cs.stock_width] * rolls
    c = (list(cs.widths) + [1]) * rolls
    return EncodedProblem(NFoldInstance.build(_roll_row(cs), identity(q), rolls, b, c), decode)


def single_width_roll_bound(cs: CuttingStockInstance) -> int:
    '''
    rolls needed when every roll is cut into pieces of a single width
    '''
    return sum(-(-n // (cs.stock_width // w)) for n, w in zip(cs.demands, cs.widths))


def _single_width_plan(cs: CuttingStockInstance) -> List[IntVec]:
    plan = []
    for j, (n, w) in enumerate(zip(cs.demands, cs.widths)):
        per_roll = cs.stock_width // w
        while n > 0:
            pieces = min(n, per_roll)
            plan.append(tuple(pieces if i == j else 0 for i in range(cs.t)))
            n -= pieces
    return plan


def _solver(solver):
    return default_solver() if solver is None else solver


def _feasible_rolls(cs: CuttingStockInstance, rolls: int, solver) -> Optional[IntVec]:
    encoded = encode_cutting_stock(cs, rolls)
    if encoded.infeasible:
        return None
    instance = encoded.instance
    x, _ = solver.find_feasible(instance.A, instance.B, instance.n, instance.b)
    return x


def min_rolls(cs: CuttingStockInstance, solver=None,
              trace: Optional[List[Tuple[int, bool]]] = None) -> int:
    '''
    Smallest number of standard rolls that covers the demands, by binary
    search between the width lower bound and :func:`single_width_roll_bound`.

    :param solver: NFoldSolver deciding each roll count, the shared one when omitted
    :type solver: NFoldSolver

    :param trace: list receiving ``(rolls, feasible)`` for every roll count tried
    :type trace: list

    :rtype: int
    '''
    cs.validate()
    total = sum(n * w for n, w in zip(cs.demands, cs.widths))
    if total == 0:
        return 0
    solver = _solver(solver)
    lo, hi = -(-total // cs.stock_width), single_width_roll_bound(cs)
    while lo < hi:
        mid = (lo + hi) // 2
        feasible = _feasible_rolls(cs, mid, solver) is not None
        if trace is not None:
            trace.append((mid, feasible))
        logger.debug(f'[ENCODE] {mid} rolls feasible: {feasible}')
        if feasible:
            hi = mid
        else:
            lo = mid + 1
    return hi


def cut_plan(cs: CuttingStockInstance, solver=None) -> Tuple[int, List[List[int]]]:
    '''
    ``(rolls, cuts)`` for a minimum number of rolls, ``cuts[k]`` listing the
    piece widths cut from roll k; rolls left blank are omitted
    '''
    rolls = min_rolls(cs, solver)
    if rolls == 0:
        return 0, []
    if rolls == single_width_roll_bound(cs):
        counts = _single_width_plan(cs)
    else:
        x = _feasible_rolls(cs, rolls, _solver(solver))
        counts = encode_cutting_stock(cs, rolls).decode(x)
    cuts = [[w for w, k in zip(cs.widths, roll) for _ in range(k)] for roll in counts]
    return rolls, [c for c in cuts if c]


def solve_encoded(encoded: EncodedProblem, solver=None):
    '''
    solve an encoded application

    :returns: ``(outcome, decoded)``, decoded being None unless optimal
    :rtype: tuple
    '''
    if encoded.infeasible:
        return SolveOutcome.infeasible(), None
    outcome = _solver(solver).solve(encoded.instance)
    if not outcome.is_optimal:
        return outcome, None
    return outcome, encoded.decode(outcome.x)
