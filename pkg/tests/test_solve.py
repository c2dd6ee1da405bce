#!/usr/bin/env python

"""Tests for `nfold.solve`."""

import random
import unittest

from nfold.core import (ContractViolation, IntMatrix, NFoldInstance, identity,
                        nfold_matrix)
from nfold.oracle import BoxBound, brute_force_solve
from nfold.solve import (AUXILIARY, LATTICE, NFoldSolver, auxiliary_instance,
                         find_feasible, solve)


def random_identity_instance(rng):
    r, q = rng.randint(1, 2), rng.randint(1, 3)
    A = IntMatrix.from_rows([[rng.randint(-2, 2) for _ in range(q)] for _ in range(r)])
    n = rng.randint(1, 3)
    x = [rng.randint(0, 3) for _ in range(n * q)]
    b = list(nfold_matrix(A, identity(q), n).mul_vec(x))
    if rng.random() < 0.3:
        b[rng.randrange(len(b))] += rng.choice([-1, 1])
    c = [rng.randint(-5, 5) for _ in range(n * q)]
    return NFoldInstance.build(A, identity(q), n, b, c)


class TestAuxiliaryProgram(unittest.TestCase):
    """Tests for the Phase I slack program."""

    @classmethod
    def setUpClass(cls):
        cls.rng = random.Random(31)
        cls.A = IntMatrix.from_rows([[1, 1]])
        cls.B = identity(2)

    def test_initial_point(self):
        aux = auxiliary_instance(self.A, self.B, 2, (1, 1, 1, 1))
        self.assertTrue(aux.instance.is_feasible(aux.initial))
        self.assertEqual(aux.instance.objective(aux.initial), 4)
        self.assertEqual(aux.original_var_index, (0, 1, 8, 9))

    def test_zero_rhs(self):
        aux = auxiliary_instance(self.A, self.B, 2, (0, 0, 0, 0))
        self.assertEqual(aux.initial, (0,) * 16)

    def test_negative_rhs(self):
        aux = auxiliary_instance(self.A, self.B, 2, (0, 0, -1, 0))
        self.assertEqual(aux.initial[7], 1)
        self.assertEqual(aux.initial[6], 0)
        self.assertTrue(aux.instance.is_feasible(aux.initial))

    def test_random_right_hand_sides(self):
        A = IntMatrix.from_rows([[1, -2, 3]])
        B = IntMatrix.from_rows([[2, 0, -1], [1, 1, 1]])
        for _ in range(100):
            n = self.rng.randint(1, 4)
            b = [self.rng.randint(-9, 9) for _ in range(2 + n)]
            aux = auxiliary_instance(A, B, n, b)
            self.assertTrue(aux.instance.is_feasible(aux.initial))
            self.assertEqual(aux.restrict(aux.initial), (0,) * (3 * n))


class TestFindFeasible(unittest.TestCase):
    """Tests for both Phase I strategies."""

    @classmethod
    def setUpClass(cls):
        cls.A = IntMatrix.from_rows([[1, 1]])
        cls.B = identity(2)
        cls.solvers = [NFoldSolver(phase_one=AUXILIARY), NFoldSolver(phase_one=LATTICE)]

    def test_example(self):
        for solver in self.solvers:
            x, _ = solver.find_feasible(self.A, self.B, 2, (1, 1, 1, 1))
            self.assertIn(x, ((1, 0, 0, 1), (0, 1, 1, 0)))

    def test_infeasible(self):
        for solver in self.solvers:
            x, _ = solver.find_feasible(self.A, self.B, 1, (1, 1, 3))
            self.assertIsNone(x)

    def test_zero_rhs(self):
        for solver in self.solvers:
            x, _ = solver.find_feasible(self.A, self.B, 2, (0, 0, 0, 0))
            self.assertEqual(x, (0, 0, 0, 0))

    def test_module_level(self):
        self.assertIn(find_feasible(self.A, self.B, 2, (1, 1, 1, 1)),
                      ((1, 0, 0, 1), (0, 1, 1, 0)))

    def test_unknown_strategy(self):
        with self.assertRaises(ValueError):
            NFoldSolver(phase_one='simplex')
        with self.assertRaises(ValueError):
            self.solvers[0].find_feasible(self.A, self.B, 1, (1, 1, 2), 'simplex')


class TestSolve(unittest.TestCase):
    """Tests for end-to-end solving."""

    @classmethod
    def setUpClass(cls):
        cls.rng = random.Random(37)
        cls.example = NFoldInstance.from_blocks(
            IntMatrix.from_rows([[1, 1]]), identity(2),
            (1, 1), [(1,), (1,)], [(1, 2), (4, 3)])

    def test_example(self):
        outcome = NFoldSolver().solve(self.example)
        self.assertTrue(outcome.is_optimal)
        self.assertEqual(outcome.x, (1, 0, 0, 1))
        self.assertEqual(outcome.objective, 4)
        for key in ('graver_size', 'graver_complexity', 'augmentation_steps',
                    'phase1_steps', 'wall_ms'):
            self.assertIn(key, outcome.stats)
        self.assertEqual(outcome.stats['graver_size'], 2)

    def test_module_level(self):
        self.assertEqual(solve(self.example).objective, 4)

    def test_infeasible(self):
        instance = NFoldInstance.build(IntMatrix.from_rows([[1, 1]]), identity(2), 1,
                                       (1, 1, 3), (0, 0))
        self.assertTrue(NFoldSolver().solve(instance).is_infeasible)

    def test_unbounded_single_column(self):
        zero = IntMatrix.from_rows([[0]])
        instance = NFoldInstance.build(zero, zero, 1, (0, 0), (-1,))
        for strategy in (AUXILIARY, LATTICE):
            self.assertTrue(NFoldSolver(phase_one=strategy).solve(instance).is_unbounded)

    def test_start_point(self):
        solver = NFoldSolver()
        outcome = solver.solve(self.example, start=(0, 1, 1, 0))
        self.assertEqual(outcome.objective, 4)
        self.assertEqual(outcome.stats['phase1_steps'], 0)
        with self.assertRaises(ContractViolation):
            solver.solve(self.example, start=(1, 1, 0, 0))

    def test_rays(self):
        A = IntMatrix.from_rows([[1, -1]])
        B = IntMatrix.from_rows([[0, 0]])
        solver = NFoldSolver(phase_one=AUXILIARY)
        for _ in range(10):
            n = self.rng.randint(1, 2)
            b = [0] + [self.rng.randint(-2, 2) for _ in range(n)]
            c = []
            for _ in range(n):
                first = self.rng.randint(-4, 3)
                c.extend([first, self.rng.randint(-4, -first - 1)])
            instance = NFoldInstance.build(A, B, n, b, c)
            self.assertTrue(solver.solve(instance).is_unbounded)
            negated = NFoldInstance.build(A, B, n, b, [-e for e in c])
            outcome = solver.solve(negated)
            self.assertTrue(outcome.is_optimal)
            self.assertTrue(negated.is_feasible(outcome.x))

    def test_against_brute_force(self):
        solver = NFoldSolver()
        scaled = NFoldSolver(scaled=True)
        scaled.store = solver.store
        for _ in range(100):
            instance = random_identity_instance(self.rng)
            bound = max(0, max(instance.b0))
            expected = brute_force_solve(instance.matrix(), instance.b, instance.c,
                                         BoxBound.of(bound))
            for engine in (solver, scaled):
                outcome = engine.solve(instance)
                if expected is None:
                    self.assertTrue(outcome.is_infeasible, instance)
                else:
                    self.assertTrue(outcome.is_optimal, instance)
                    self.assertEqual(outcome.objective, expected[1], instance)
                    self.assertTrue(instance.is_feasible(outcome.x))

    def test_many_blocks_against_brute_force(self):
        solver = NFoldSolver()
        scaled = NFoldSolver(scaled=True)
        scaled.store = solver.store
        rng = random.Random(59)
        A = IntMatrix.from_rows([[1, 2, -1]])
        n = 4
        for _ in range(4):
            x = [rng.randint(0, 1) for _ in range(3 * n)]
            b = nfold_matrix(A, identity(3), n).mul_vec(x)
            c = [rng.randint(-5, 5) for _ in range(3 * n)]
            instance = NFoldInstance.build(A, identity(3), n, b, c)
            expected = brute_force_solve(instance.matrix(), b, c, BoxBound.of(max(b[:3])))
            for engine in (solver, scaled):
                outcome = engine.solve(instance)
                self.assertTrue(outcome.is_optimal)
                self.assertEqual(outcome.objective, expected[1])
                self.assertTrue(instance.is_feasible(outcome.x))
                self.assertIsNone(outcome.stats['graver_size'])

    def test_auxiliary_against_brute_force(self):
        solver = NFoldSolver(phase_one=AUXILIARY)
        rng = random.Random(41)
        A = IntMatrix.from_rows([[1, 1]])
        for _ in range(6):
            n = rng.randint(1, 2)
            x = [rng.randint(0, 2) for _ in range(2 * n)]
            b = nfold_matrix(A, identity(2), n).mul_vec(x)
            c = [rng.randint(-5, 5) for _ in range(2 * n)]
            instance = NFoldInstance.build(A, identity(2), n, b, c)
            expected = brute_force_solve(instance.matrix(), b, c, BoxBound.of(max(b[:2])))
            self.assertEqual(solver.solve(instance).objective, expected[1])

    def test_reentrant_cache(self):
        solver = NFoldSolver()
        solver.solve(self.example)
        misses = solver.store.misses
        solver.solve(self.example)
        self.assertEqual(solver.store.misses, misses)


if __name__ == '__main__':
    unittest.main()
