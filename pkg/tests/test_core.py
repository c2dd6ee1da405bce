#!/usr/bin/env python

"""Tests for `nfold.core`."""

import random
import unittest

from nfold.core import (BlockVector, ContractViolation, IntMatrix,
                        NFoldInstance, SolveOutcome, conformal_leq, identity,
                        negative_part, nfold_matrix, one_norm, positive_part,
                        sub)


class TestConformalOrder(unittest.TestCase):
    """Tests for the vector parts and the conformal order."""

    @classmethod
    def setUpClass(cls):
        cls.rng = random.Random(7)

    def test_parts(self):
        self.assertEqual(positive_part((1, -2, 0)), (1, 0, 0))
        self.assertEqual(negative_part((1, -2, 0)), (0, 2, 0))
        self.assertEqual(positive_part(()), ())

    def test_parts_recombine(self):
        for _ in range(200):
            v = tuple(self.rng.randint(-5, 5) for _ in range(self.rng.randint(0, 6)))
            p, m = positive_part(v), negative_part(v)
            self.assertEqual(sub(p, m), v)
            self.assertTrue(all(a >= 0 for a in p + m))
            self.assertTrue(all(a == 0 or b == 0 for a, b in zip(p, m)))

    def test_conformal_examples(self):
        self.assertTrue(conformal_leq((1, 0, -1), (2, 0, -3)))
        self.assertFalse(conformal_leq((1, -1), (2, 1)))
        self.assertTrue(conformal_leq((0, 0), (5, -5)))
        self.assertFalse(conformal_leq((3, 0), (2, 0)))

    def test_conformal_length_mismatch(self):
        with self.assertRaises(ContractViolation):
            conformal_leq((1, 2), (1, 2, 3))

    def test_conformal_order_properties(self):
        for _ in range(300):
            size = self.rng.randint(1, 4)
            u, v, w = (tuple(self.rng.randint(-2, 2) for _ in range(size)) for _ in range(3))
            self.assertTrue(conformal_leq(u, u))
            if conformal_leq(u, v) and conformal_leq(v, w):
                self.assertTrue(conformal_leq(u, w))
            if conformal_leq(u, v) and conformal_leq(v, u):
                self.assertEqual(u, v)
            if conformal_leq(u, v):
                self.assertLessEqual(one_norm(u), one_norm(v))


class TestNFoldMatrix(unittest.TestCase):
    """Tests for matrix assembly."""

    @classmethod
    def setUpClass(cls):
        cls.A = IntMatrix.from_rows([[1, 1]])
        cls.B = identity(2)

    def test_two_folds(self):
        expected = IntMatrix.from_rows([
            [1, 0, 1, 0],
            [0, 1, 0, 1],
            [1, 1, 0, 0],
            [0, 0, 1, 1],
        ])
        self.assertEqual(nfold_matrix(self.A, self.B, 2), expected)

    def test_four_folds(self):
        expected = IntMatrix.from_rows([
            [1, 0, 1, 0, 1, 0, 1, 0],
            [0, 1, 0, 1, 0, 1, 0, 1],
            [1, 1, 0, 0, 0, 0, 0, 0],
            [0, 0, 1, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 1, 0, 0],
            [0, 0, 0, 0, 0, 0, 1, 1],
        ])
        M = nfold_matrix(self.A, self.B, 4)
        self.assertEqual(M.shape, (6, 8))
        self.assertEqual(M, expected)

    def test_single_fold_stacks(self):
        M = nfold_matrix(self.A, self.B, 1)
        self.assertEqual(M.rows_list(), [(1, 0), (0, 1), (1, 1)])

    def test_shape_errors(self):
        with self.assertRaises(ContractViolation):
            nfold_matrix(self.A, identity(3), 2)
        with self.assertRaises(ContractViolation):
            nfold_matrix(self.A, self.B, 0)
        with self.assertRaises(ContractViolation):
            IntMatrix.from_rows([[1, 2], [3]])

    def test_matrix_arithmetic(self):
        M = IntMatrix.from_rows([[1, 2], [3, 4]])
        self.assertEqual(M.mul_vec((1, -1)), (-1, -1))
        self.assertEqual(M.mul(identity(2)), M)
        self.assertEqual(M.rank(), 2)
        self.assertEqual(IntMatrix.from_rows([[1, 2], [2, 4]]).rank(), 1)
        self.assertEqual(M.column(1), (2, 4))
        self.assertEqual(M.max_abs(), 4)
        with self.assertRaises(ContractViolation):
            M.mul_vec((1, 2, 3))

    def test_big_entries_stay_exact(self):
        big = 10 ** 40
        M = IntMatrix.from_rows([[big, 1]])
        self.assertEqual(M.mul_vec((big, -1)), (big * big - 1,))


class TestInstance(unittest.TestCase):
    """Tests for block vectors, instances and outcomes."""

    @classmethod
    def setUpClass(cls):
        cls.instance = NFoldInstance.from_blocks(
            IntMatrix.from_rows([[1, 1]]), identity(2),
            (1, 1), [(1,), (1,)], [(1, 2), (4, 3)])

    def test_blocks(self):
        x = BlockVector.of((1, 2, 3, 4, 5, 6), 3, 2)
        self.assertEqual(x.block(2), (3, 4))
        self.assertEqual(x.blocks(), [(1, 2), (3, 4), (5, 6)])
        self.assertEqual(BlockVector.from_blocks([(1, 2), (3, 4)]).flat, (1, 2, 3, 4))
        with self.assertRaises(ContractViolation):
            x.block(4)
        with self.assertRaises(ContractViolation):
            BlockVector.of((1, 2, 3), 2, 2)

    def test_instance_layout(self):
        instance = self.instance
        self.assertEqual((instance.q, instance.r, instance.s, instance.n), (2, 1, 2, 2))
        self.assertEqual(instance.b0, (1, 1))
        self.assertEqual(instance.b_block(2), (1,))
        self.assertEqual(instance.c_block(2), (4, 3))
        self.assertEqual(instance.objective((1, 0, 0, 1)), 4)

    def test_feasibility(self):
        self.assertTrue(self.instance.is_feasible((1, 0, 0, 1)))
        self.assertTrue(self.instance.is_feasible((0, 1, 1, 0)))
        self.assertEqual(self.instance.residual((1, 0, 1, 0)), 0)
        self.assertEqual(self.instance.residual((1, 0, 0, 0)), 1)
        self.assertIsNone(self.instance.residual((1, 0, 0, 1)))
        self.assertFalse(self.instance.is_feasible((2, -1, -1, 2)))
        with self.assertRaises(ContractViolation):
            self.instance.residual((1, 0, 0))

    def test_validation(self):
        A = IntMatrix.from_rows([[1, 1]])
        with self.assertRaises(ContractViolation):
            NFoldInstance.build(A, identity(2), 2, (1, 1, 1), (0, 0, 0, 0))
        with self.assertRaises(ContractViolation):
            NFoldInstance.build(A, identity(2), 2, (1, 1, 1, 1), (0, 0, 0))
        with self.assertRaises(ContractViolation):
            NFoldInstance.build(A, identity(3), 1, (1, 1, 1, 1), (0, 0))

    def test_outcomes(self):
        self.assertTrue(SolveOutcome.infeasible().is_infeasible)
        self.assertTrue(SolveOutcome.unbounded().is_unbounded)
        outcome = SolveOutcome.optimal((1, 0), 3)
        self.assertTrue(outcome.is_optimal)
        self.assertEqual(outcome.x, (1, 0))
        self.assertEqual(outcome.with_stats({'wall_ms': 1}).stats, {'wall_ms': 1})


if __name__ == '__main__':
    unittest.main()
