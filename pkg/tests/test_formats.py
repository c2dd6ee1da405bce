#!/usr/bin/env python

"""Tests for `nfold.formats`."""

import unittest
from json import loads

from nfold.core import IntMatrix, NFoldInstance, SolveOutcome, identity
from nfold.encoders import CuttingStockInstance, ShipmentInstance
from nfold.formats import (FormatError, dump_instance, dump_solution,
                           format_matrix, parse_encoder_input,
                           parse_instance, parse_matrix, parse_solution,
                           solution_to_dict)

EXAMPLE = '''{
  "schema_version": 1,
  "A": [["1", "1"]],
  "B": [["1", "0"], ["0", "1"]],
  "n": 2,
  "b": {"b0": ["1", "1"], "blocks": [["1"], ["1"]]},
  "c": [["1", "2"], ["4", "3"]]
}
'''


class TestInstanceFiles(unittest.TestCase):
    """Tests for instance and solution documents."""

    @classmethod
    def setUpClass(cls):
        cls.instance = NFoldInstance.from_blocks(
            IntMatrix.from_rows([[1, 1]]), identity(2),
            (1, 1), [(1,), (1,)], [(1, 2), (4, 3)])

    def test_parse(self):
        self.assertEqual(parse_instance(EXAMPLE), self.instance)

    def test_dump_is_readable(self):
        text = dump_instance(self.instance)
        self.assertEqual(loads(text)['c'], [['1', '2'], ['4', '3']])
        self.assertEqual(parse_instance(text), self.instance)

    def test_plain_json_integers(self):
        self.assertEqual(parse_instance(EXAMPLE.replace('"1"', '1')), self.instance)

    def test_big_integers(self):
        big = str(10 ** 30)
        instance = parse_instance(EXAMPLE.replace('["4", "3"]', f'["{big}", "3"]'))
        self.assertEqual(instance.c[2], 10 ** 30)
        self.assertIn(big, dump_instance(instance))

    def test_malformed_json_line(self):
        broken = EXAMPLE.replace('"n": 2,', '"n": 2')
        with self.assertRaises(FormatError) as context:
            parse_instance(broken, 'broken.json')
        self.assertEqual(context.exception.path, 'broken.json')
        self.assertEqual(context.exception.lineno, 6)
        self.assertTrue(str(context.exception).startswith('broken.json:6:'))

    def test_schema_errors(self):
        with self.assertRaises(FormatError) as context:
            parse_instance(EXAMPLE.replace('["4", "3"]', '["4.5", "3"]'))
        self.assertEqual(context.exception.lineno, 7)
        with self.assertRaises(FormatError) as context:
            parse_instance(EXAMPLE.replace('"n": 2,', '"m": 2,'))
        self.assertIn('missing key "n"', str(context.exception))
        with self.assertRaises(FormatError):
            parse_instance(EXAMPLE.replace('"schema_version": 1', '"schema_version": 2'))
        with self.assertRaises(FormatError):
            parse_instance(EXAMPLE.replace('"n": 2', '"n": 3'))
        with self.assertRaises(FormatError):
            parse_instance(EXAMPLE.replace('[["1", "1"]]', '[["1", "1", "1"]]'))
        with self.assertRaises(FormatError):
            parse_instance('[1, 2]')

    def test_optimal_solution(self):
        outcome = SolveOutcome.optimal((1, 0, 0, 1), 4, {'graver_size': 2})
        data = solution_to_dict(outcome, 2, 2)
        self.assertEqual(data['x'], [['1', '0'], ['0', '1']])
        self.assertEqual(data['objective'], '4')
        self.assertEqual(data['stats']['graver_size'], 2)
        parsed = parse_solution(dump_solution(outcome, 2, 2))
        self.assertEqual(parsed.x, (1, 0, 0, 1))
        self.assertEqual(parsed.objective, 4)

    def test_other_solutions(self):
        data = solution_to_dict(SolveOutcome.infeasible(), 2, 2)
        self.assertNotIn('x', data)
        self.assertNotIn('objective', data)
        self.assertEqual(data['status'], 'infeasible')
        text = '{"schema_version": 1, "status": "unbounded", "objective": "3"}'
        with self.assertRaises(FormatError):
            parse_solution(text)
        with self.assertRaises(FormatError):
            parse_solution('{"schema_version": 1, "status": "done"}')
        self.assertTrue(parse_solution('{"schema_version": 1, "status": "unbounded"}').is_unbounded)


class TestMatrixFiles(unittest.TestCase):
    """Tests for whitespace matrix files."""

    def test_parse(self):
        text = '# the diagonal block\n1 1 0\n\n0 -1 2   # second row\n'
        self.assertEqual(parse_matrix(text), IntMatrix.from_rows([[1, 1, 0], [0, -1, 2]]))

    def test_format(self):
        M = IntMatrix.from_rows([[1, -1], [0, 2]])
        self.assertEqual(format_matrix(M), '1 -1\n0 2\n')
        self.assertEqual(parse_matrix(format_matrix(M)), M)

    def test_errors(self):
        with self.assertRaises(FormatError) as context:
            parse_matrix('1 2\n3\n', 'A.txt')
        self.assertEqual(str(context.exception).split(':')[:2], ['A.txt', '2'])
        with self.assertRaises(FormatError) as context:
            parse_matrix('1 2\n# note\n3 x\n')
        self.assertEqual(context.exception.lineno, 3)
        with self.assertRaises(FormatError):
            parse_matrix('# nothing here\n')


class TestEncoderInputs(unittest.TestCase):
    """Tests for application documents."""

    def test_cutstock(self):
        text = '{"schema_version": 1, "widths": ["3", "5"], "demands": ["4", "2"], "stock_width": "7"}'
        self.assertEqual(parse_encoder_input('cutstock', text),
                         CuttingStockInstance((3, 5), (4, 2), 7))
        with self.assertRaises(FormatError):
            parse_encoder_input('cutstock', text.replace('"3"', '"8"'))

    def test_shipment(self):
        text = ('{"schema_version": 1, "weights": [2], "counts": [3], '
                '"capacities": [4, 4], "costs": [[1, 1]]}')
        self.assertEqual(parse_encoder_input('shipment', text),
                         ShipmentInstance((2,), (3,), (4, 4), [[1, 1]]))

    def test_dway(self):
        text = ('{"schema_version": 1, "dims": [2], "l": 2, "cost": [[0, 0], [0, 0]], '
                '"margins": [[1, 1], [1, 1]]}')
        problem = parse_encoder_input('dway', text)
        self.assertEqual(problem.dims, (2,))
        self.assertEqual(problem.margins, [[1, 1], [1, 1]])
        with self.assertRaises(FormatError):
            parse_encoder_input('dway', text.replace('"margins": [[1, 1], [1, 1]]',
                                                     '"margins": [[1, 1]]'))

    def test_table_shapes(self):
        text = ('{"schema_version": 1, "r": 1, "s": 1, "l": 1, "cost": [[[0, 9]]], '
                '"u": [[1]], "v": [[1]], "w": [[1]]}')
        with self.assertRaises(FormatError):
            parse_encoder_input('3way', text)
        with self.assertRaises(FormatError):
            parse_encoder_input('3way', text.replace('"r": 1, "s": 1', '"r": 2, "s": 2'))
        problem = parse_encoder_input('3way', text.replace('[[[0, 9]]]', '[[[0]]]'))
        self.assertEqual(problem.cost, [[[0]]])
        text = ('{"schema_version": 1, "dims": [2], "l": 2, "cost": [[0, 0]], '
                '"margins": [[1, 1], [1, 1]]}')
        with self.assertRaises(FormatError):
            parse_encoder_input('dway', text)

    def test_unknown_kind(self):
        with self.assertRaises(FormatError):
            parse_encoder_input('knapsack', '{"schema_version": 1}')


if __name__ == '__main__':
    unittest.main()
