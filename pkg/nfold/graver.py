'''
Graver bases of integer matrices.

The basis is computed by a completion procedure over the kernel lattice: a
lattice basis found by exact column reduction seeds a queue of candidates,
every candidate is reduced by the conformal elements found so far and each
irreducible remainder is paired with the known elements until the queue runs
dry. Columns that vanish or repeat up to sign are folded before completion and
unfolded afterwards, which keeps bases of slack-heavy matrices cheap.
'''
import heapq
from itertools import combinations, product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from nfold import logger
from nfold.core import (ContractViolation, IntMatrix, IntVec, conformal_leq,
                        is_zero, neg, one_norm, vec)


class GraverBasis:
    '''
    Finite set of ⊑-minimal kernel vectors, kept in lexicographic order.

    :param elements: the basis vectors
    :type elements: iterable

    :param matrix_cols: length of every element
    :type matrix_cols: int

    :param matrix: the generating matrix, when known; it enables kernel
                   membership checks
    :type matrix: IntMatrix
    '''
    __slots__ = ('elements', 'matrix_cols', 'matrix')

    def __init__(self, elements: Iterable[Sequence[int]], matrix_cols: int,
                 matrix: Optional[IntMatrix] = None):
        elements = sorted(set(vec(e) for e in elements))
        for e in elements:
            if len(e) != matrix_cols:
                raise ContractViolation(
                    f'element of length {len(e)} in a basis for '
                    f'{matrix_cols} columns')
        self.elements = tuple(elements)
        self.matrix_cols = matrix_cols
        self.matrix = matrix

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[IntVec]:
        return iter(self.elements)

    def __contains__(self, v) -> bool:
        return vec(v) in set(self.elements)

    def __eq__(self, other):
        return (isinstance(other, GraverBasis)
                and self.matrix_cols == other.matrix_cols
                and self.elements == other.elements)

    def __repr__(self):
        return f'GraverBasis({len(self.elements)} elements, {self.matrix_cols} columns)'

    def as_set(self) -> set:
        return set(self.elements)

    def max_abs(self) -> int:
        return max((abs(a) for e in self.elements for a in e), default=0)

    def check_against(self, M: IntMatrix):
        '''
        raise ContractViolation unless every element lies in the kernel of M
        '''
        if M.cols != self.matrix_cols:
            raise ContractViolation(
                f'basis for {self.matrix_cols} columns used with a '
                f'{M.rows}x{M.cols} matrix')
        for e in self.elements:
            if not is_zero(M.mul_vec(e)):
                raise ContractViolation(f'{e} is not in the kernel')


def _extgcd(a: int, b: int) -> Tuple[int, int, int]:
    '''
    return ``(g, x, y)`` with ``x a + y b = g = gcd(a, b) >= 0``
    '''
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_s, s = s, old_s - quotient * s
        old_t, t = t, old_t - quotient * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def column_echelon(M: IntMatrix) -> Tuple[IntMatrix, IntMatrix, List[Tuple[int, int]]]:
    '''
    Reduce the columns of M by unimodular operations.

    :param M: any integer matrix
    :type M: IntMatrix

    :returns: ``(H, U, pivots)`` with ``M U = H``, ``U`` unimodular, ``H`` in
              column echelon form and ``pivots`` the ``(row, column)``
              positions of the leading entries; the columns of ``H`` after
              the last pivot are zero
    :rtype: tuple
    '''
    m, n = M.rows, M.cols
    h_cols = [list(M.column(j)) for j in range(n)]
    u_cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    pivots = []
    p = 0
    for i in range(m):
        if p == n:
            break
        for j in range(p + 1, n):
            b = h_cols[j][i]
            if b == 0:
                continue
            a = h_cols[p][i]
            g, x, y = _extgcd(a, b)
            fa, fb = a // g, b // g
            hp, hj = h_cols[p], h_cols[j]
            h_cols[p] = [x * u + y * v for u, v in zip(hp, hj)]
            h_cols[j] = [fa * v - fb * u for u, v in zip(hp, hj)]
            up, uj = u_cols[p], u_cols[j]
            u_cols[p] = [x * u + y * v for u, v in zip(up, uj)]
            u_cols[j] = [fa * v - fb * u for u, v in zip(up, uj)]
        if h_cols[p][i] != 0:
            pivots.append((i, p))
            p += 1
    H = IntMatrix.from_rows(
        [[h_cols[j][i] for j in range(n)] for i in range(m)], cols=n)
    U = IntMatrix.from_rows(
        [[u_cols[j][i] for j in range(n)] for i in range(n)], cols=n)
    return H, U, pivots


def _size_reduce(basis: List[IntVec]) -> List[IntVec]:
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                for sign in (1, -1):
                    candidate = tuple(a - sign * b for a, b in zip(basis[i], basis[j]))
                    if one_norm(candidate) < one_norm(basis[i]):
                        basis[i] = candidate
                        changed = True
    return basis


def _canonical_sign(v: IntVec) -> IntVec:
    for a in v:
        if a:
            return v if a > 0 else neg(v)
    return v


def kernel_lattice_basis(M: IntMatrix) -> List[IntVec]:
    '''
    Integer generators of the lattice ``{x : M x = 0}``.

    :param M: any integer matrix
    :type M: IntMatrix

    :returns: a lattice basis of the kernel, each vector with a positive
              leading entry; empty when the kernel is ``{0}``
    :rtype: list
    '''
    _, U, pivots = column_echelon(M)
    basis = [U.column(j) for j in range(len(pivots), M.cols)]
    basis = [_canonical_sign(v) for v in _size_reduce(basis)]
    if len(basis) != M.cols - M.rank():
        raise RuntimeError(
            f'kernel basis of size {len(basis)} for a matrix of rank {M.rank()}')
    return basis


def integer_solution(M: IntMatrix, b: Sequence[int]) -> Optional[IntVec]:
    '''
    Find some ``x`` in ``Z^cols`` with ``M x = b`` (signs unrestricted).

    :returns: a solution or None when the system has no integer solution
    :rtype: tuple
    '''
    b = vec(b)
    if len(b) != M.rows:
        raise ContractViolation(
            f'right-hand side of length {len(b)} for {M.rows} rows')
    H, U, pivots = column_echelon(M)
    pivot_col = dict(pivots)
    y = [0] * M.cols
    for i in range(M.rows):
        row = H.row(i)
        rest = b[i] - sum(a * t for a, t in zip(row, y) if a)
        if i in pivot_col:
            lead = row[pivot_col[i]]
            if rest % lead:
                return None
            y[pivot_col[i]] = rest // lead
        elif rest:
            return None
    x = U.mul_vec(y)
    if M.mul_vec(x) != b:
        raise RuntimeError('integer solution failed verification')
    return x


def _masks(v: Sequence[int]) -> Tuple[int, int]:
    pos = neg_ = 0
    for i, a in enumerate(v):
        if a > 0:
            pos |= 1 << i
        elif a < 0:
            neg_ |= 1 << i
    return pos, neg_


class _Reducer:
    '''
    Elements found so far, with their sign masks, for conformal reduction.
    '''

    def __init__(self):
        self.vectors: List[IntVec] = []
        self.masks: List[Tuple[int, int]] = []

    def add(self, v: IntVec):
        self.vectors.append(v)
        self.masks.append(_masks(v))

    def reduce(self, v: IntVec) -> IntVec:
        vp, vn = _masks(v)
        for g, (gp, gn) in zip(self.vectors, self.masks):
            if gp & ~vp or gn & ~vn:
                continue
            times = min(v[i] // g[i] for i, a in enumerate(g) if a)
            if times <= 0:
                continue
            v = tuple(a - times * b for a, b in zip(v, g))
            vp, vn = _masks(v)
            if not (vp or vn):
                break
        return v


def _orbit(v: IntVec, symmetries: Sequence[Sequence[int]]) -> List[IntVec]:
    '''
    images of v under the group generated by the coordinate permutations
    '''
    images = {v}
    frontier = [v]
    while frontier:
        u = frontier.pop()
        for perm in symmetries:
            w = tuple(u[p] for p in perm)
            if w not in images:
                images.add(w)
                frontier.append(w)
    return sorted(images)


def _complete(M: IntMatrix, seed: Iterable[IntVec] = (), block: int = 0,
              symmetries: Sequence[Sequence[int]] = ()) -> List[IntVec]:
    '''
    Run the completion procedure and return the ⊑-minimal elements.

    ``seed`` vectors are queued next to the lattice basis. With ``block``
    set, the coordinates fall into blocks of that length and a pair that
    vanishes on a common block is never summed; the seed must then hold the
    Graver basis of every sublattice with one block fixed to zero.
    ``symmetries`` are coordinate permutations leaving the kernel invariant;
    found elements are added together with their whole orbit and only the
    new element itself is paired.
    '''
    basis = kernel_lattice_basis(M)
    if not basis:
        return []
    queue: List[Tuple[int, IntVec]] = []
    queued = set()

    def push(v: IntVec):
        if v not in queued:
            queued.add(v)
            heapq.heappush(queue, (one_norm(v), v))

    for b in basis:
        push(b)
        push(neg(b))
    for v in seed:
        push(vec(v))
    blocks = [((1 << block) - 1) << (k * block) for k in range(M.cols // block)] if block else []
    found = _Reducer()
    known = set()
    skipped = 0
    while queue:
        _, candidate = heapq.heappop(queue)
        r = found.reduce(candidate)
        if is_zero(r) or r in known:
            continue
        for image in _orbit(r, symmetries):
            if image not in known:
                known.add(image)
                found.add(image)
        rp, rn = _masks(r)
        for g, (gp, gn) in zip(found.vectors, found.masks):
            if not (rp & gn or rn & gp):
                continue
            support = rp | rn | gp | gn
            if any(not support & mask for mask in blocks):
                skipped += 1
                continue
            s = tuple(a + b for a, b in zip(r, g))
            if not is_zero(s):
                push(s)
    logger.debug(
        f'[GRAVER] completion on {M.rows}x{M.cols} produced {len(found.vectors)} '
        f'elements from {len(queued)} candidates, {skipped} pairs skipped')
    return _minimal(found.vectors)


def _minimal(vectors: List[IntVec]) -> List[IntVec]:
    ordered = sorted(set(vectors), key=lambda v: (one_norm(v), v))
    masks = [_masks(v) for v in ordered]
    keep = []
    for idx, v in enumerate(ordered):
        vp, vn = masks[idx]
        dominated = False
        for jdx in range(idx):
            gp, gn = masks[jdx]
            if gp & ~vp or gn & ~vn:
                continue
            if conformal_leq(ordered[jdx], v):
                dominated = True
                break
        if not dominated:
            keep.append(v)
    return keep


def _column_classes(M: IntMatrix):
    '''
    group the nonzero columns of M that agree up to sign

    :returns: ``(reduced, classes, zero_cols)`` where ``reduced`` has one
              column per class and ``classes[c]`` lists ``(column, sign)``
              with ``M[:, column] == sign * reduced[:, c]``
    '''
    order: List[IntVec] = []
    members: Dict[IntVec, List[Tuple[int, int]]] = {}
    zero_cols = []
    for j in range(M.cols):
        column = M.column(j)
        if is_zero(column):
            zero_cols.append(j)
            continue
        rep = _canonical_sign(column)
        sign = 1 if rep == column else -1
        if rep not in members:
            members[rep] = []
            order.append(rep)
        members[rep].append((j, sign))
    reduced = IntMatrix.from_rows(
        [[rep[i] for rep in order] for i in range(M.rows)], cols=len(order))
    return reduced, [members[rep] for rep in order], zero_cols


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _expand(h: IntVec, classes, cols: int) -> Iterator[IntVec]:
    '''
    all full-length Graver elements that fold onto the class vector h
    '''
    options = []
    for t, copies in zip(h, classes):
        if t == 0:
            options.append([()])
            continue
        sign = 1 if t > 0 else -1
        options.append([
            tuple((col, sign * sigma * part)
                  for (col, sigma), part in zip(copies, parts) if part)
            for parts in _compositions(abs(t), len(copies))])

    def build(idx: int, assignment: list) -> Iterator[IntVec]:
        if idx == len(options):
            v = [0] * cols
            for col, value in assignment:
                v[col] = value
            yield tuple(v)
            return
        for choice in options[idx]:
            yield from build(idx + 1, assignment + list(choice))

    yield from build(0, [])


def _unit(cols: int, j: int, value: int) -> IntVec:
    v = [0] * cols
    v[j] = value
    return tuple(v)


def graver_basis(M: IntMatrix, seed: Iterable[Sequence[int]] = (), block: int = 0,
                 symmetries: Sequence[Sequence[int]] = ()) -> GraverBasis:
    '''
    Compute the Graver basis of M, the ⊑-minimal nonzero vectors of its
    kernel lattice.

    :param M: any integer matrix
    :type M: IntMatrix

    :param seed: known Graver elements to start the completion from
    :type seed: iterable

    :param block: block length for skipping pairs that vanish on a common
                  block; only valid when ``seed`` contains the Graver basis
                  of every sublattice with one block fixed to zero
    :type block: int

    :param symmetries: coordinate permutations ``p`` with ``M x = 0`` exactly
                       when ``M (x[p[0]], x[p[1]], ...) = 0``
    :type symmetries: sequence

    :returns: the basis, closed under negation and in lexicographic order
    :rtype: GraverBasis
    '''
    reduced, classes, zero_cols = _column_classes(M)
    if zero_cols or reduced.cols != M.cols:
        seed, block, symmetries = (), 0, ()
    else:
        signs = [copies[0][1] for copies in classes]
        seed = [tuple(s * a for s, a in zip(signs, v)) for v in seed]
        symmetries = [p for p in symmetries
                      if all(signs[i] == signs[j] for i, j in enumerate(p))]
    folded = _complete(reduced, seed, block, symmetries) if reduced.cols else []
    elements = set()
    for h in folded:
        elements.update(_expand(h, classes, M.cols))
    for copies in classes:
        for (a, sa), (b, sb) in combinations(copies, 2):
            circuit = [0] * M.cols
            circuit[a] = sa
            circuit[b] = -sb
            elements.add(tuple(circuit))
            elements.add(neg(circuit))
    for j in zero_cols:
        elements.add(_unit(M.cols, j, 1))
        elements.add(_unit(M.cols, j, -1))
    logger.debug(
        f'[GRAVER] {M.rows}x{M.cols} matrix: {len(folded)} folded elements, '
        f'{len(elements)} in total')
    return GraverBasis(elements, M.cols, M)


def nonnegative_graver(M: IntMatrix) -> List[IntVec]:
    '''
    The elements of G(M) without negative entries, which are the minimal
    nonzero points of the monoid ``{h >= 0 : M h = 0}``. Repeated columns
    are folded and only the nonnegative unfoldings are generated.

    :rtype: list
    '''
    reduced, classes, zero_cols = _column_classes(M)
    folded = _complete(reduced) if reduced.cols else []
    elements = set()
    for h in folded:
        options = []
        for t, copies in zip(h, classes):
            if t == 0:
                options.append([()])
                continue
            sign = 1 if t > 0 else -1
            eligible = [col for col, sigma in copies if sign * sigma > 0]
            options.append([tuple(zip(eligible, parts))
                            for parts in _compositions(abs(t), len(eligible))]
                           if eligible else [])
        for choice in product(*options):
            v = [0] * M.cols
            for pairs in choice:
                for col, part in pairs:
                    v[col] = part
            elements.add(tuple(v))
    for copies in classes:
        for (a, sa), (b, sb) in combinations(copies, 2):
            if sa != sb:
                v = [0] * M.cols
                v[a] = v[b] = 1
                elements.add(tuple(v))
    for j in zero_cols:
        elements.add(_unit(M.cols, j, 1))
    return sorted(elements)


def minimal_elements(vectors: Iterable[Sequence[int]]) -> List[IntVec]:
    '''
    the ⊑-minimal vectors among the given nonzero ones
    '''
    return _minimal([vec(v) for v in vectors])


def max_graver_norm(M: IntMatrix) -> int:
    '''
    largest 1-norm of an element of G(M), 0 for a trivial kernel; repeated
    columns are folded and never expanded
    '''
    reduced, classes, zero_cols = _column_classes(M)
    folded = _complete(reduced) if reduced.cols else []
    norm = max((one_norm(h) for h in folded), default=0)
    if any(len(copies) > 1 for copies in classes):
        norm = max(norm, 2)
    if zero_cols:
        norm = max(norm, 1)
    return norm


def conformal_normal_form(v: Sequence[int], G: GraverBasis) -> IntVec:
    '''
    subtract basis elements conformal to v, in canonical order, until none
    is left; the remainder is returned
    '''
    v = vec(v)
    if len(v) != G.matrix_cols:
        raise ContractViolation(
            f'vector of length {len(v)} against a basis for {G.matrix_cols} columns')
    for g in G.elements:
        while not is_zero(v) and conformal_leq(g, v):
            v = tuple(a - b for a, b in zip(v, g))
    return v


def conformal_decompose(v: Sequence[int], G: GraverBasis) -> List[IntVec]:
    '''
    Write a kernel vector as a conformal sum of basis elements.

    :param v: a vector in the kernel of the basis' matrix
    :type v: tuple

    :param G: the Graver basis
    :type G: GraverBasis

    :returns: basis elements, repetitions allowed, each ⊑ v and summing to v
    :rtype: list
    '''
    v = vec(v)
    if len(v) != G.matrix_cols:
        raise ContractViolation(
            f'vector of length {len(v)} against a basis for {G.matrix_cols} columns')
    if G.matrix is not None and not is_zero(G.matrix.mul_vec(v)):
        raise ContractViolation(f'{v} is not in the kernel')
    parts = []
    while not is_zero(v):
        for g in G.elements:
            if conformal_leq(g, v):
                parts.append(g)
                v = tuple(a - b for a, b in zip(v, g))
                break
        else:
            raise ContractViolation(
                f'no basis element is conformal to {v}; it is not in the kernel')
    return parts
