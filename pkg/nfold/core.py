'''
Exact integer vectors and matrices, the conformal order and n-fold matrices.

Vectors are plain tuples of python ``int`` (arbitrary precision), matrices are
immutable :class:`IntMatrix` values. Nothing in here ever touches floating
point.
'''
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from sympy import Matrix

from nfold import cfg

IntVec = Tuple[int, ...]


class ContractViolation(ValueError):
    '''
    raised when an operation is called outside of its preconditions
    (length or dimension mismatch, malformed indices, foreign vectors, ...)
    '''


def vec(values: Iterable) -> IntVec:
    '''
    build an IntVec from any iterable of integers (or decimal strings)
    '''
    return tuple(int(v) for v in values)


def _same_length(u: Sequence[int], v: Sequence[int]):
    if len(u) != len(v):
        raise ContractViolation(
            f'length mismatch: {len(u)} != {len(v)}')


def positive_part(v: Sequence[int]) -> IntVec:
    '''
    componentwise ``max(v_i, 0)``
    '''
    return tuple(x if x > 0 else 0 for x in v)


def negative_part(v: Sequence[int]) -> IntVec:
    '''
    componentwise ``-min(v_i, 0)``; ``v == positive_part(v) - negative_part(v)``
    '''
    return tuple(-x if x < 0 else 0 for x in v)


def conformal_leq(u: Sequence[int], v: Sequence[int]) -> bool:
    '''
    decide whether ``u`` is conformal to ``v``: both lie in the same closed
    orthant and ``|u_i| <= |v_i|`` for every coordinate

    :param u: the candidate smaller vector
    :type u: tuple

    :param v: the candidate larger vector
    :type v: tuple

    :returns: True if u ⊑ v
    :rtype: bool
    '''
    _same_length(u, v)
    for a, b in zip(u, v):
        if a == 0:
            continue
        if a > 0:
            if b < a:
                return False
        elif b > a:
            return False
    return True


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    _same_length(u, v)
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence[int], v: Sequence[int]) -> IntVec:
    _same_length(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> IntVec:
    _same_length(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(k: int, v: Sequence[int]) -> IntVec:
    return tuple(k * a for a in v)


def neg(v: Sequence[int]) -> IntVec:
    return tuple(-a for a in v)


def one_norm(v: Sequence[int]) -> int:
    return sum(abs(a) for a in v)


def is_zero(v: Sequence[int]) -> bool:
    return not any(v)


def is_nonnegative(v: Sequence[int]) -> bool:
    return all(a >= 0 for a in v)


class IntMatrix:
    '''
    Immutable dense integer matrix stored row major.

    :param rows: number of rows
    :type rows: int

    :param cols: number of columns
    :type cols: int

    :param entries: ``rows * cols`` integers, row major
    :type entries: iterable
    '''
    __slots__ = ('rows', 'cols', '_data')

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = vec(entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ContractViolation(
                f'{len(entries)} entries do not fill a {rows}x{cols} matrix')
        self.rows = rows
        self.cols = cols
        self._data = tuple(entries[i * cols:(i + 1) * cols]
                           for i in range(rows))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None):
        '''
        build a matrix from a list of rows; ``cols`` is only needed for a
        matrix without rows
        '''
        rows = [vec(r) for r in rows]
        if cols is None:
            if not rows:
                raise ContractViolation(
                    'column count of an empty matrix must be given')
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ContractViolation('ragged rows')
        return cls(len(rows), cols, [e for r in rows for e in r])

    @property
    def entries(self) -> IntVec:
        return tuple(e for r in self._data for e in r)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> int:
        return self._data[i][j]

    def row(self, i: int) -> IntVec:
        return self._data[i]

    def rows_list(self) -> List[IntVec]:
        return list(self._data)

    def column(self, j: int) -> IntVec:
        return tuple(r[j] for r in self._data)

    def columns(self) -> List[IntVec]:
        return [self.column(j) for j in range(self.cols)]

    def mul_vec(self, x: Sequence[int]) -> IntVec:
        if len(x) != self.cols:
            raise ContractViolation(
                f'vector of length {len(x)} against {self.cols} columns')
        return tuple(sum(a * b for a, b in zip(r, x) if a) for r in self._data)

    def mul(self, other: 'IntMatrix') -> 'IntMatrix':
        if self.cols != other.rows:
            raise ContractViolation(
                f'cannot multiply {self.shape} by {other.shape}')
        cols = other.columns()
        return IntMatrix.from_rows(
            [[dot(r, c) for c in cols] for r in self._data], cols=other.cols)

    def rank(self) -> int:
        '''
        exact rank over the rationals
        '''
        if not self.rows or not self.cols:
            return 0
        return Matrix(self.rows_list()).rank()

    def max_abs(self) -> int:
        return max((abs(e) for r in self._data for e in r), default=0)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.cols == other.cols
                and self._data == other._data)

    def __hash__(self):
        return hash((self.cols, self._data))

    def __repr__(self):
        return f'IntMatrix({self.rows}x{self.cols}, {list(self._data)})'


def identity(q: int) -> IntMatrix:
    return IntMatrix(q, q, [1 if i == j else 0 for i in range(q) for j in range(q)])


def zeros(rows: int, cols: int) -> IntMatrix:
    return IntMatrix(rows, cols, [0] * (rows * cols))


def nfold_matrix(A: IntMatrix, B: IntMatrix, n: int) -> IntMatrix:
    '''
    assemble the n-fold matrix of the ordered pair A, B: ``n`` copies of
    ``B`` side by side on top, ``n`` diagonal copies of ``A`` below

    :param A: r x q matrix repeated on the diagonal
    :type A: IntMatrix

    :param B: s x q matrix repeated along the top block row
    :type B: IntMatrix

    :param n: number of blocks, at least one
    :type n: int

    :returns: the (s + n r) x (n q) matrix
    :rtype: IntMatrix
    '''
    if A.cols != B.cols:
        raise ContractViolation(
            f'A has {A.cols} columns but B has {B.cols}')
    if n < 1:
        raise ContractViolation(f'n must be positive, got {n}')
    q = A.cols
    rows = [list(B.row(i)) * n for i in range(B.rows)]
    for k in range(n):
        for i in range(A.rows):
            row = [0] * (n * q)
            row[k * q:(k + 1) * q] = A.row(i)
            rows.append(row)
    return IntMatrix.from_rows(rows, cols=n * q)


def nfold_program_matrix(A: IntMatrix, n: int) -> IntMatrix:
    '''
    the plain n-fold matrix of a single matrix, i.e. ``B`` is the identity
    '''
    return nfold_matrix(A, identity(A.cols), n)


class BlockVector(NamedTuple):
    '''
    View of a flat vector as ``n`` consecutive blocks of length ``q``.
    Blocks are numbered from 1.
    '''
    flat: IntVec
    n: int
    q: int

    @classmethod
    def of(cls, flat: Sequence[int], n: int, q: int) -> 'BlockVector':
        flat = vec(flat)
        if len(flat) != n * q:
            raise ContractViolation(
                f'{len(flat)} entries cannot form {n} blocks of {q}')
        return cls(flat, n, q)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> 'BlockVector':
        blocks = [vec(b) for b in blocks]
        if not blocks:
            raise ContractViolation('at least one block is required')
        q = len(blocks[0])
        if any(len(b) != q for b in blocks):
            raise ContractViolation('blocks of unequal length')
        return cls(tuple(e for b in blocks for e in b), len(blocks), q)

    def block(self, k: int) -> IntVec:
        if not 1 <= k <= self.n:
            raise ContractViolation(f'block {k} outside 1..{self.n}')
        return self.flat[(k - 1) * self.q:k * self.q]

    def blocks(self) -> List[IntVec]:
        return [self.block(k) for k in range(1, self.n + 1)]


class NFoldInstance(NamedTuple):
    '''
    One generalized n-fold program ``min{cx : [A,B]^(n) x = b, x >= 0}``.

    ``b`` is the flat right-hand side ``(b0, b1, ..., bn)`` with ``b0`` of
    length ``s`` and every ``bk`` of length ``r``; ``c`` is flat of length
    ``n q``.
    '''
    A: IntMatrix
    B: IntMatrix
    n: int
    b: IntVec
    c: IntVec

    @classmethod
    def build(cls, A: IntMatrix, B: IntMatrix, n: int,
              b: Sequence[int], c: Sequence[int]) -> 'NFoldInstance':
        instance = cls(A, B, int(n), vec(b), vec(c))
        instance.validate()
        return instance

    @classmethod
    def from_blocks(cls, A: IntMatrix, B: IntMatrix, b0: Sequence[int],
                    b_blocks: Sequence[Sequence[int]],
                    c_blocks: Sequence[Sequence[int]]) -> 'NFoldInstance':
        b = list(vec(b0))
        for bk in b_blocks:
            b.extend(vec(bk))
        c = [e for ck in c_blocks for e in vec(ck)]
        return cls.build(A, B, len(c_blocks), b, c)

    @property
    def q(self) -> int:
        return self.A.cols

    @property
    def r(self) -> int:
        return self.A.rows

    @property
    def s(self) -> int:
        return self.B.rows

    def validate(self):
        '''
        check the dimension invariants, raising ContractViolation
        '''
        if self.A.cols != self.B.cols or self.A.cols < 1:
            raise ContractViolation(
                f'A and B need the same positive column count, got '
                f'{self.A.cols} and {self.B.cols}')
        if self.n < 1:
            raise ContractViolation(f'n must be positive, got {self.n}')
        if len(self.b) != self.s + self.n * self.r:
            raise ContractViolation(
                f'b has {len(self.b)} entries, expected '
                f'{self.s} + {self.n}*{self.r}')
        if len(self.c) != self.n * self.q:
            raise ContractViolation(
                f'c has {len(self.c)} entries, expected {self.n}*{self.q}')

    def matrix(self) -> IntMatrix:
        return nfold_matrix(self.A, self.B, self.n)

    @property
    def b0(self) -> IntVec:
        return self.b[:self.s]

    def b_block(self, k: int) -> IntVec:
        start = self.s + (k - 1) * self.r
        return self.b[start:start + self.r]

    def c_block(self, k: int) -> IntVec:
        return BlockVector(self.c, self.n, self.q).block(k)

    def objective(self, x: Sequence[int]) -> int:
        return dot(self.c, x)

    def residual(self, x: Sequence[int]) -> Optional[int]:
        '''
        index of the first equation of ``[A,B]^(n) x = b`` that fails, or
        None when every equation holds
        '''
        q, s, r = self.q, self.s, self.r
        if len(x) != self.n * q:
            raise ContractViolation(
                f'x has {len(x)} entries, expected {self.n * q}')
        blocks = [x[k * q:(k + 1) * q] for k in range(self.n)]
        for i in range(s):
            row = self.B.row(i)
            if sum(dot(row, xk) for xk in blocks) != self.b[i]:
                return i
        for k, xk in enumerate(blocks):
            for i in range(r):
                if dot(self.A.row(i), xk) != self.b[s + k * r + i]:
                    return s + k * r + i
        return None

    def is_feasible(self, x: Sequence[int]) -> bool:
        return is_nonnegative(x) and self.residual(x) is None


class SolveOutcome(NamedTuple):
    '''
    Exactly one of infeasible, unbounded or optimal (with point and value).
    '''
    status: str
    x: Optional[IntVec] = None
    objective: Optional[int] = None
    stats: Optional[dict] = None

    @classmethod
    def infeasible(cls, stats: dict = None) -> 'SolveOutcome':
        return cls(cfg.INFEASIBLE, stats=stats)

    @classmethod
    def unbounded(cls, stats: dict = None) -> 'SolveOutcome':
        return cls(cfg.UNBOUNDED, stats=stats)

    @classmethod
    def optimal(cls, x: Sequence[int], objective: int,
                stats: dict = None) -> 'SolveOutcome':
        return cls(cfg.OPTIMAL, vec(x), int(objective), stats)

    @property
    def is_optimal(self) -> bool:
        return self.status == cfg.OPTIMAL

    @property
    def is_infeasible(self) -> bool:
        return self.status == cfg.INFEASIBLE

    @property
    def is_unbounded(self) -> bool:
        return self.status == cfg.UNBOUNDED

    def with_stats(self, stats: dict) -> 'SolveOutcome':
        return self._replace(stats=stats)
