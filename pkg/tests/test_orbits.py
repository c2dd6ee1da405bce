#!/usr/bin/env python

"""Tests for `nfold.orbits`."""

import random
import unittest

from nfold.augment import deficit, minimize_deficit, optimize
from nfold.core import ContractViolation, IntMatrix, identity, nfold_matrix
from nfold.nfold import direct_nfold_graver_basis
from nfold.orbits import (BlockOrbits, best_placement, block_orbits,
                          orbit_minimize_deficit, orbit_optimize)
from nfold.store import BasisStore

PAIRS = [
    ([[1, 1]], [[1, 0], [0, 1]]),
    ([[1, -2]], [[1, 1]]),
    ([[1, 2, -1]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
    ([[1, -1]], [[0, 0]]),
]


def pair(rows_a, rows_b):
    return IntMatrix.from_rows(rows_a), IntMatrix.from_rows(rows_b)


class TestBlockOrbits(unittest.TestCase):
    """Tests for computing n-fold Graver bases up to block permutations."""

    def test_identity_linking(self):
        A, B = pair(*PAIRS[0])
        orbits = block_orbits(A, B)
        self.assertEqual(list(orbits), [((-1, 1), (1, -1))])
        self.assertEqual(orbits.max_type(), 2)
        self.assertEqual(orbits.q, 2)
        self.assertEqual(len(orbits.restricted(1)), 0)

    def test_expand_equals_direct_completion(self):
        for rows_a, rows_b in PAIRS:
            A, B = pair(rows_a, rows_b)
            orbits = block_orbits(A, B)
            for n in (1, 2, 3):
                self.assertEqual(orbits.expand(n), direct_nfold_graver_basis(A, B, n),
                                 (rows_a, rows_b, n))

    def test_placements(self):
        A, B = pair(*PAIRS[0])
        orbit = next(iter(block_orbits(A, B)))
        placed = set(block_orbits(A, B).placements(orbit, 3))
        self.assertEqual(len(placed), 6)
        M = nfold_matrix(A, B, 3)
        for y in placed:
            self.assertFalse(any(M.mul_vec(y)))
        self.assertEqual(list(block_orbits(A, B).placements(orbit, 1)), [])

    def test_trivial_kernel(self):
        one = IntMatrix.from_rows([[1]])
        self.assertEqual(len(block_orbits(one, one)), 0)

    def test_cached(self):
        store = BasisStore()
        A, B = pair(*PAIRS[1])
        first = block_orbits(A, B, store=store)
        self.assertIs(block_orbits(A, B, store=store), first)
        self.assertGreater(store.hits, 0)

    def test_bad_pair(self):
        with self.assertRaises(ContractViolation):
            block_orbits(IntMatrix.from_rows([[1, 1]]), identity(3))

    def test_orbits_are_sorted_tuples(self):
        A, B = pair(*PAIRS[0])
        orbits = BlockOrbits(A, B, [[(1, -1), (-1, 1)], [(-1, 1), (1, -1)]])
        self.assertEqual(len(orbits), 1)
        self.assertIn('1 orbits', repr(orbits))


class TestBestPlacement(unittest.TestCase):
    """Tests for placing an orbit by minimum cost assignment."""

    @classmethod
    def setUpClass(cls):
        cls.c = [1, 3, 2]

        def change(k, xk, y):
            if xk[0] < y[0]:
                return None
            return -cls.c[k] * y[0]

        cls.change = staticmethod(change)

    def test_cheapest(self):
        found = best_placement(((-1,), (1,)), [(0,), (5,), (2,)], self.change)
        self.assertEqual(found, (-2, (0, 1)))

    def test_nothing_allowed(self):
        self.assertIsNone(best_placement(((1,),), [(0,), (0,)], self.change))

    def test_too_many_blocks(self):
        self.assertIsNone(best_placement(((-1,), (1,)), [(3,)], self.change))


class TestOrbitAugmentation(unittest.TestCase):
    """Tests for Phase I and Phase II over block orbits."""

    @classmethod
    def setUpClass(cls):
        cls.rng = random.Random(67)

    def test_deficit_matches_full_basis(self):
        for rows_a, rows_b in PAIRS[:3]:
            A, B = pair(rows_a, rows_b)
            orbits = block_orbits(A, B)
            for n in (2, 3):
                G = direct_nfold_graver_basis(A, B, n)
                for _ in range(5):
                    x = tuple(self.rng.randint(-2, 2) for _ in range(n * A.cols))
                    y, _ = orbit_minimize_deficit(orbits, n, x)
                    full, _ = minimize_deficit(G, x)
                    M = nfold_matrix(A, B, n)
                    self.assertEqual(M.mul_vec(y), M.mul_vec(x))
                    self.assertEqual(deficit(y), deficit(full), (rows_a, rows_b, x))

    def test_optimize_matches_full_basis(self):
        for rows_a, rows_b in PAIRS[:3]:
            A, B = pair(rows_a, rows_b)
            orbits = block_orbits(A, B)
            for n in (2, 3):
                M = nfold_matrix(A, B, n)
                G = direct_nfold_graver_basis(A, B, n)
                for _ in range(5):
                    x = tuple(self.rng.randint(0, 2) for _ in range(n * A.cols))
                    c = tuple(self.rng.randint(-5, 5) for _ in range(n * A.cols))
                    expected = optimize(M, G, x, c)
                    for scaled in (False, True):
                        outcome = orbit_optimize(orbits, n, x, c, scaled=scaled)
                        self.assertEqual(outcome.status, expected.status)
                        if expected.is_optimal:
                            self.assertEqual(outcome.objective, expected.objective)
                            self.assertEqual(M.mul_vec(outcome.x), M.mul_vec(x))

    def test_unbounded(self):
        A, B = pair(*PAIRS[3])
        orbits = block_orbits(A, B)
        zero = (0,) * 8
        self.assertTrue(orbit_optimize(orbits, 4, zero, (-1, 0) * 4).is_unbounded)
        outcome = orbit_optimize(orbits, 4, zero, (1, 0) * 4)
        self.assertTrue(outcome.is_optimal)
        self.assertEqual(outcome.objective, 0)
        self.assertEqual(outcome.stats['augmentation_steps'], 0)

    def test_feasible_start(self):
        A, B = pair(*PAIRS[0])
        orbits = block_orbits(A, B)
        x = (1, 0, 0, 1, 0, 0, 0, 0)
        self.assertEqual(orbit_minimize_deficit(orbits, 4, x), (x, 0))
        y, steps = orbit_minimize_deficit(orbits, 4, (2, -1, -1, 2, 0, 0, 0, 0))
        self.assertEqual(deficit(y), 0)
        self.assertGreater(steps, 0)

    def test_bad_vectors(self):
        A, B = pair(*PAIRS[0])
        orbits = block_orbits(A, B)
        with self.assertRaises(ContractViolation):
            orbit_minimize_deficit(orbits, 4, (0, 0))
        with self.assertRaises(ContractViolation):
            orbit_optimize(orbits, 2, (1, -1, 0, 0), (0, 0, 0, 0))
        with self.assertRaises(ContractViolation):
            orbit_optimize(orbits, 2, (1, 1, 0, 0), (0, 0))


if __name__ == '__main__':
    unittest.main()
