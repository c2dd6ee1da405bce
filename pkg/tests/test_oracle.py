#!/usr/bin/env python

"""Tests for `nfold.oracle`."""

import unittest

from nfold.core import ContractViolation, IntMatrix, identity, nfold_matrix
from nfold.encoders import CuttingStockInstance, three_way_margins
from nfold.oracle import (BoxBound, brute_force_graver, brute_force_ray,
                          brute_force_rolls, brute_force_solve,
                          brute_force_tables, lattice_points)


class TestOracle(unittest.TestCase):
    """Tests for the exhaustive reference solvers."""

    @classmethod
    def setUpClass(cls):
        cls.M = nfold_matrix(IntMatrix.from_rows([[1, 1]]), identity(2), 2)

    def test_box(self):
        self.assertEqual(BoxBound.of(3).bound, 3)
        with self.assertRaises(ContractViolation):
            BoxBound.of(-1)

    def test_points(self):
        M = IntMatrix.from_rows([[1, 1]])
        self.assertEqual(list(lattice_points(M, (2,), 0, 2)), [(0, 2), (1, 1), (2, 0)])
        self.assertEqual(list(lattice_points(M, (0,), -1, 1)), [(-1, 1), (0, 0), (1, -1)])
        self.assertEqual(list(lattice_points(IntMatrix.from_rows([[0, 0]]), (1,), 0, 3)), [])

    def test_solve(self):
        self.assertEqual(brute_force_solve(self.M, (1, 1, 1, 1), (1, 2, 4, 3), BoxBound.of(1)),
                         ((1, 0, 0, 1), 4))
        self.assertIsNone(brute_force_solve(self.M, (1, 1, 1, 3), (0, 0, 0, 0), BoxBound.of(3)))
        self.assertEqual(brute_force_solve(self.M, (0, 0, 0, 0), (1, 0, 2, 5), BoxBound.of(2)),
                         ((0, 0, 0, 0), 0))
        with self.assertRaises(ContractViolation):
            brute_force_solve(self.M, (1, 1), (0, 0, 0, 0), BoxBound.of(1))

    def test_graver(self):
        self.assertEqual(brute_force_graver(IntMatrix.from_rows([[1, 1]]), BoxBound.of(2)),
                         {(1, -1), (-1, 1)})
        self.assertEqual(brute_force_graver(self.M, BoxBound.of(1)),
                         {(1, -1, -1, 1), (-1, 1, 1, -1)})
        self.assertEqual(brute_force_graver(IntMatrix.from_rows([[1, 2]]), BoxBound.of(1)), set())
        self.assertEqual(brute_force_graver(identity(3), BoxBound.of(3)), set())

    def test_ray(self):
        M = IntMatrix.from_rows([[1, -1]])
        self.assertEqual(brute_force_ray(M, (1, -2), 2), (1, 1))
        self.assertIsNone(brute_force_ray(M, (1, 1), 2))

    def test_rolls(self):
        self.assertEqual(brute_force_rolls(CuttingStockInstance.build((3, 5), (4, 2), 7)), 4)
        self.assertEqual(brute_force_rolls(CuttingStockInstance.build((3,), (0,), 7)), 0)
        self.assertEqual(brute_force_rolls(CuttingStockInstance.build((3, 4), (1, 2), 7)), 2)

    def test_tables(self):
        table = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
        u, v, w = three_way_margins(table)
        cost = [[[0, 1], [1, 0]], [[1, 0], [0, 1]]]
        best, value = brute_force_tables((2, 2), 2, [w, v, u], cost)
        self.assertEqual(value, 0)
        self.assertEqual(three_way_margins(best), (u, v, w))
        self.assertIsNone(brute_force_tables((2, 2), 2, [w, v, [[2, 0], [0, 1]]], cost))


if __name__ == '__main__':
    unittest.main()
