'''
Graver bases of n-fold matrices.

For a fixed pair ``A, B`` every element of ``G([A,B]^(n))`` has at most
``g(A,B)`` nonzero blocks, so for ``n > g`` the basis is the union of the
images of ``G([A,B]^(g))`` under all embeddings of ``g`` blocks into ``n``.
'''
from itertools import combinations
from math import ceil
from threading import Lock, Thread
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

from nfold import cfg, logger
from nfold.core import (BlockVector, ContractViolation, IntMatrix, IntVec,
                        is_zero, nfold_matrix)
from nfold.graver import GraverBasis, graver_basis, max_graver_norm
from nfold.store import basis_key

FORMULA = 'formula'
DIRECT = 'direct-stabilization'


class ComplexityMismatch(RuntimeError):
    '''
    the Graver complexity from the composition formula disagrees with the
    largest type observed on directly computed n-fold bases
    '''


class GraverComplexity(NamedTuple):
    value: int
    certified_by: str = FORMULA


def type_of(x: BlockVector) -> int:
    '''
    number of nonzero blocks of x
    '''
    return sum(1 for block in x.blocks() if not is_zero(block))


def max_type(G: Union[GraverBasis, Sequence[IntVec]], q: int) -> int:
    '''
    largest type of an element of G read as blocks of length q, 0 if empty
    '''
    return max((type_of(BlockVector.of(e, len(e) // q, q)) for e in G), default=0)


def _check_indices(indices: Sequence[int], g: int, n: int):
    if len(indices) != g:
        raise ContractViolation(f'{len(indices)} indices for {g} blocks')
    if any(k < 1 or k > n for k in indices):
        raise ContractViolation(f'indices {tuple(indices)} outside 1..{n}')
    if any(a >= b for a, b in zip(indices, indices[1:])):
        raise ContractViolation(f'indices {tuple(indices)} not strictly increasing')


def _place(flat: IntVec, indices: Sequence[int], n: int, q: int) -> IntVec:
    y = [0] * (n * q)
    for t, k in enumerate(indices):
        y[(k - 1) * q:k * q] = flat[t * q:(t + 1) * q]
    return tuple(y)


def embed(x: BlockVector, indices: Sequence[int], n: int) -> IntVec:
    '''
    Place the blocks of x at the given positions of an n-block vector.

    :param x: vector of ``g`` blocks
    :type x: BlockVector

    :param indices: strictly increasing block positions ``k_1 < ... < k_g``
                    in ``1..n``
    :type indices: sequence

    :param n: block count of the result
    :type n: int

    :returns: ``y`` with ``y^{k_t} = x^t`` and every other block zero
    :rtype: tuple
    '''
    _check_indices(tuple(indices), x.n, n)
    return _place(x.flat, indices, n, x.q)


def graver_complexity(A: IntMatrix, B: IntMatrix, verify: Optional[bool] = None,
                      store=None) -> GraverComplexity:
    '''
    Compute g(A,B) as the largest 1-norm in the Graver basis of ``B Γ``
    where the columns of ``Γ`` are all elements of ``G(A)``.

    :param A: the diagonal block
    :type A: IntMatrix

    :param B: the linking block
    :type B: IntMatrix

    :param verify: cross-check against the largest type of directly computed
                   bases of ``[A,B]^(m)`` for ``m <= g + 1``; None runs the
                   check when it is cheap or when ``cfg.VERIFY_COMPLEXITY``
                   is set
    :type verify: bool

    :param store: optional BasisStore memoizing the value
    :type store: BasisStore

    :returns: the complexity, 1 by convention when ``G(A)`` is empty
    :rtype: GraverComplexity
    '''
    if A.cols != B.cols:
        raise ContractViolation(f'A has {A.cols} columns but B has {B.cols}')
    if verify is None:
        verify = cfg.VERIFY_COMPLEXITY

    def compute() -> GraverComplexity:
        return _formula_complexity(A, B)

    if store is None:
        complexity = compute()
    else:
        complexity = store.get_or_compute(basis_key('complexity', A, B), compute)
    columns = (complexity.value + 1) * A.cols
    if (verify or columns <= cfg.VERIFY_MAX_COLUMNS) \
            and complexity.certified_by != DIRECT:
        complexity = _cross_check(A, B, complexity, store)
        if store is not None:
            store.put(basis_key('complexity', A, B), complexity)
    return complexity


def _formula_complexity(A: IntMatrix, B: IntMatrix) -> GraverComplexity:
    GA = graver_basis(A)
    if not len(GA):
        logger.info('[COMPLEXITY] G(A) is empty, using g = 1')
        return GraverComplexity(1, FORMULA)
    gamma = IntMatrix.from_rows(
        [[e[i] for e in GA] for i in range(A.cols)], cols=len(GA))
    value = max(1, max_graver_norm(B.mul(gamma)))
    logger.info(f'[COMPLEXITY] g(A,B) = {value} from {len(GA)} elements of G(A)')
    return GraverComplexity(value, FORMULA)


def _cross_check(A: IntMatrix, B: IntMatrix, complexity: GraverComplexity,
                 store=None) -> GraverComplexity:
    observed = 0
    for m in range(1, complexity.value + 2):
        G = direct_nfold_graver_basis(A, B, m, store=store)
        observed = max(observed, max_type(G, A.cols))
        logger.debug(f'[COMPLEXITY] m={m}: {len(G)} elements, max type {observed}')
    if observed and observed != complexity.value:
        raise ComplexityMismatch(
            f'formula gives g(A,B) = {complexity.value} but the largest type '
            f'up to {complexity.value + 1} folds is {observed}')
    logger.info(f'[COMPLEXITY] g(A,B) = {complexity.value} confirmed by direct stabilization')
    return GraverComplexity(complexity.value, DIRECT)


def _block_generators(n: int, q: int) -> List[Tuple[int, ...]]:
    '''
    coordinate permutations generating all permutations of n blocks of length q
    '''
    if n < 2:
        return []
    orders = [(1, 0) + tuple(range(2, n))]
    if n > 2:
        orders.append(tuple(range(1, n)) + (0,))
    return [tuple(k * q + j for k in order for j in range(q)) for order in orders]


def direct_nfold_graver_basis(A: IntMatrix, B: IntMatrix, n: int,
                              store=None) -> GraverBasis:
    '''
    Completion on the assembled n-fold matrix.

    From two blocks on, the completion starts from ``G([A,B]^(n-1))`` placed
    at every choice of ``n - 1`` blocks; pairs that vanish on a common block
    are then never summed, and elements are found whole block-permutation
    orbits at a time.
    '''
    def compute() -> GraverBasis:
        M = nfold_matrix(A, B, n)
        if n == 1:
            return graver_basis(M)
        q = A.cols
        smaller = direct_nfold_graver_basis(A, B, n - 1, store=store)
        seed = [_place(e, indices, n, q)
                for indices in combinations(range(1, n + 1), n - 1) for e in smaller]
        logger.debug(f'[NFOLD] completion for n={n} seeded with {len(seed)} elements')
        return graver_basis(M, seed=seed, block=q, symmetries=_block_generators(n, q))

    if store is None:
        return compute()
    return store.get_or_compute(basis_key('graver', A, B, n=n), compute)


def embedded_nfold_graver_basis(A: IntMatrix, B: IntMatrix, n: int, g: int,
                                store=None) -> GraverBasis:
    '''
    Union of the embeddings of ``G([A,B]^(g))`` over all ``(n choose g)``
    block positions.

    :param g: a valid type bound for the pair, usually g(A,B)
    :type g: int

    :returns: ``G([A,B]^(n))`` for ``n >= g``
    :rtype: GraverBasis
    '''
    if n < g:
        raise ContractViolation(f'cannot embed {g} blocks into {n}')
    q = A.cols
    base = direct_nfold_graver_basis(A, B, g, store=store).elements
    positions = list(combinations(range(1, n + 1), g))
    elements = set()
    lock = Lock()

    def work(part):
        local = set()
        for indices in part:
            for x in base:
                local.add(_place(x, indices, n, q))
        with lock:
            elements.update(local)

    threads = max(1, cfg.THREADS)
    if threads > 1 and len(positions) > 1:
        workers = [Thread(target=work, args=(part,))
                   for part in cfg.chunks(positions, ceil(len(positions) / threads))]
        for t in workers:
            t.start()
        for t in workers:
            t.join()
    else:
        work(positions)
    logger.debug(
        f'[NFOLD] {len(base)} elements embedded at {len(positions)} positions: '
        f'{len(elements)} distinct')
    return GraverBasis(elements, n * q, nfold_matrix(A, B, n))


def nfold_graver_basis(A: IntMatrix, B: IntMatrix, n: int,
                       complexity: Union[None, int, GraverComplexity] = None,
                       store=None) -> GraverBasis:
    '''
    Compute ``G([A,B]^(n))``.

    Up to ``cfg.DIRECT_FOLDS`` folds, or while ``n <= g(A,B)``, the basis is
    computed by completion on the n-fold matrix; beyond that it is assembled
    from embeddings of the ``g``-fold basis.

    :param A: the diagonal block
    :type A: IntMatrix

    :param B: the linking block
    :type B: IntMatrix

    :param n: number of blocks
    :type n: int

    :param complexity: g(A,B) when already known
    :type complexity: int or GraverComplexity

    :param store: optional BasisStore memoizing bases and complexities
    :type store: BasisStore

    :rtype: GraverBasis
    '''
    if A.cols != B.cols:
        raise ContractViolation(f'A has {A.cols} columns but B has {B.cols}')
    if n < 1:
        raise ContractViolation(f'n must be positive, got {n}')
    g = getattr(complexity, 'value', complexity)
    if g is None and n > cfg.DIRECT_FOLDS:
        g = graver_complexity(A, B, store=store).value
    if g is None or n <= g:
        logger.debug(f'[NFOLD] direct completion for n={n}')
        return direct_nfold_graver_basis(A, B, n, store=store)
    if store is None:
        return embedded_nfold_graver_basis(A, B, n, g)
    return store.get_or_compute(
        basis_key('graver', A, B, n=n),
        lambda: embedded_nfold_graver_basis(A, B, n, g, store=store))
