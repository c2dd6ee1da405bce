'''
Versioned JSON files for instances, solutions and application inputs, and
the whitespace grid format of matrix files.

Integers are written as decimal strings so no value is ever squeezed through
a fixed-width number type.
'''
import re
from json import JSONDecodeError, dumps, loads
from typing import Sequence

from nfold import cfg
from nfold.core import (BlockVector, ContractViolation, IntMatrix,
                        NFoldInstance, SolveOutcome)
from nfold.encoders import (CuttingStockInstance, DWayInstance,
                            ShipmentInstance, ThreeWayInstance)

_DECIMAL = re.compile(r'^-?[0-9]+$')


class FormatError(ValueError):
    '''
    malformed or schema-invalid input; renders as ``path:line: message``
    '''

    def __init__(self, message: str, lineno: int = 1, path: str = '<input>'):
        super().__init__(message)
        self.message = message
        self.lineno = lineno
        self.path = path

    def __str__(self):
        return f'{self.path}:{self.lineno}: {self.message}'


def encode_json(data: dict) -> str:
    return dumps(data, indent=2) + '\n'


def decode_json(text: str, path: str = '<input>') -> dict:
    try:
        data = loads(text)
    except JSONDecodeError as e:
        raise FormatError(e.msg, e.lineno, path)
    if not isinstance(data, dict):
        raise FormatError('top level must be an object', 1, path)
    return data


def _line_of(text: str, key: str) -> int:
    position = text.find(f'"{key}"')
    return 1 if position < 0 else text.count('\n', 0, position) + 1


class _Reader:
    '''
    typed access to one decoded document, raising FormatError with the line
    of the offending key
    '''

    def __init__(self, text: str, path: str):
        self.text = text
        self.path = path
        self.data = decode_json(text, path)

    def fail(self, key: str, message: str):
        raise FormatError(message, _line_of(self.text, key), self.path)

    def require(self, key: str):
        if key not in self.data:
            self.fail(key, f'missing key "{key}"')
        return self.data[key]

    def integer(self, value, key: str) -> int:
        if isinstance(value, bool):
            self.fail(key, f'"{key}" holds a boolean where an integer is expected')
        if isinstance(value, int):
            return value
        if isinstance(value, str) and _DECIMAL.match(value.strip()):
            return int(value.strip())
        self.fail(key, f'"{key}" holds {value!r}, not a decimal integer')

    def array(self, value, key: str, depth: int):
        if depth == 0:
            return self.integer(value, key)
        if not isinstance(value, list):
            self.fail(key, f'"{key}" must be a nested array of depth {depth}')
        return [self.array(e, key, depth - 1) for e in value]

    def get_int(self, key: str) -> int:
        return self.integer(self.require(key), key)

    def get_array(self, key: str, depth: int = 1):
        return self.array(self.require(key), key, depth)

    def check_version(self):
        version = self.get_int('schema_version')
        if version != cfg.SCHEMA_VERSION:
            self.fail('schema_version', f'unsupported schema version {version}')


def _strings(value):
    if isinstance(value, (list, tuple)):
        return [_strings(e) for e in value]
    return str(value)


def _matrix(reader: _Reader, key: str) -> IntMatrix:
    rows = reader.get_array(key, 2)
    if not rows:
        reader.fail(key, f'"{key}" needs at least one row')
    try:
        return IntMatrix.from_rows(rows)
    except ContractViolation as e:
        reader.fail(key, f'"{key}": {e}')


def parse_instance(text: str, path: str = '<input>') -> NFoldInstance:
    '''
    Read an instance document.

    :param text: the JSON document
    :type text: str

    :param path: file name used in diagnostics
    :type path: str

    :rtype: NFoldInstance
    '''
    reader = _Reader(text, path)
    reader.check_version()
    A, B = _matrix(reader, 'A'), _matrix(reader, 'B')
    n = reader.get_int('n')
    rhs = reader.require('b')
    if not isinstance(rhs, dict):
        reader.fail('b', '"b" must be an object with "b0" and "blocks"')
    if 'b0' not in rhs or 'blocks' not in rhs:
        reader.fail('b', '"b" needs "b0" and "blocks"')
    b0 = reader.array(rhs['b0'], 'b0', 1)
    blocks = reader.array(rhs['blocks'], 'blocks', 2)
    c = reader.get_array('c', 2)
    if len(blocks) != n:
        reader.fail('blocks', f'{len(blocks)} right-hand side blocks for n = {n}')
    if len(c) != n:
        reader.fail('c', f'{len(c)} cost blocks for n = {n}')
    b = list(b0) + [e for blk in blocks for e in blk]
    try:
        return NFoldInstance.build(A, B, n, b, [e for blk in c for e in blk])
    except ContractViolation as e:
        raise FormatError(str(e), 1, path)


def instance_to_dict(instance: NFoldInstance) -> dict:
    n = instance.n
    return {
        'schema_version': cfg.SCHEMA_VERSION,
        'A': _strings(instance.A.rows_list()),
        'B': _strings(instance.B.rows_list()),
        'n': n,
        'b': {
            'b0': _strings(instance.b0),
            'blocks': [_strings(instance.b_block(k)) for k in range(1, n + 1)],
        },
        'c': [_strings(instance.c_block(k)) for k in range(1, n + 1)],
    }


def dump_instance(instance: NFoldInstance) -> str:
    return encode_json(instance_to_dict(instance))


def solution_to_dict(outcome: SolveOutcome, n: int, q: int) -> dict:
    '''
    the solution document of an outcome; ``x`` and ``objective`` appear only
    when it is optimal
    '''
    data = {'schema_version': cfg.SCHEMA_VERSION, 'status': outcome.status}
    if outcome.is_optimal:
        data['x'] = [_strings(blk) for blk in BlockVector.of(outcome.x, n, q).blocks()]
        data['objective'] = str(outcome.objective)
    stats = dict(outcome.stats or {})
    data['stats'] = {key: stats.get(key) for key in
                     ('graver_size', 'graver_complexity', 'augmentation_steps',
                      'phase1_steps', 'wall_ms')}
    return data


def dump_solution(outcome: SolveOutcome, n: int, q: int) -> str:
    return encode_json(solution_to_dict(outcome, n, q))


def parse_solution(text: str, path: str = '<input>') -> SolveOutcome:
    '''
    read a solution document back into an outcome; an optimal outcome keeps
    the stored ``objective`` as is, without recomputing it
    '''
    reader = _Reader(text, path)
    reader.check_version()
    status = reader.require('status')
    if status not in (cfg.OPTIMAL, cfg.INFEASIBLE, cfg.UNBOUNDED):
        reader.fail('status', f'unknown status {status!r}')
    stats = reader.data.get('stats') or {}
    if status != cfg.OPTIMAL:
        for key in ('x', 'objective'):
            if key in reader.data:
                reader.fail(key, f'"{key}" is only allowed for an optimal solution')
        return SolveOutcome(status, stats=stats)
    blocks = reader.get_array('x', 2)
    objective = reader.get_int('objective')
    return SolveOutcome(status, tuple(e for blk in blocks for e in blk), objective, stats)


def parse_matrix(text: str, path: str = '<input>') -> IntMatrix:
    '''
    Whitespace separated rows, one per line; ``#`` starts a comment and
    blank lines are skipped.
    '''
    rows, cols = [], None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        for token in tokens:
            if not _DECIMAL.match(token):
                raise FormatError(f'{token!r} is not a decimal integer', lineno, path)
        if cols is not None and len(tokens) != cols:
            raise FormatError(f'row of {len(tokens)} entries, expected {cols}', lineno, path)
        cols = len(tokens)
        rows.append([int(t) for t in tokens])
    if not rows:
        raise FormatError('matrix file has no rows', 1, path)
    return IntMatrix.from_rows(rows)


def format_vector(v: Sequence[int]) -> str:
    return ' '.join(str(e) for e in v)


def format_matrix(M: IntMatrix) -> str:
    return ''.join(format_vector(r) + '\n' for r in M.rows_list())


def _validated(path: str, table):
    try:
        table.validate()
    except ContractViolation as e:
        raise FormatError(str(e), 1, path)
    return table


def parse_encoder_input(kind: str, text: str, path: str = '<input>'):
    '''
    Read the natural-coordinate input of one application.

    :param kind: ``3way``, ``dway``, ``shipment`` or ``cutstock``
    :type kind: str

    :returns: the matching instance type of :mod:`nfold.encoders`
    '''
    reader = _Reader(text, path)
    reader.check_version()
    if kind == '3way':
        table = ThreeWayInstance(reader.get_int('r'), reader.get_int('s'), reader.get_int('l'),
                                 reader.get_array('cost', 3), reader.get_array('u', 2),
                                 reader.get_array('v', 2), reader.get_array('w', 2))
        return _validated(path, table)
    if kind == 'dway':
        dims = tuple(reader.get_array('dims', 1))
        depth = len(dims)
        margins = reader.require('margins')
        if not isinstance(margins, list) or len(margins) != depth + 1:
            reader.fail('margins', f'"margins" must hold {depth + 1} arrays')
        return _validated(path, DWayInstance(dims, reader.get_int('l'),
                                             reader.get_array('cost', depth + 1),
                                             [reader.array(m, 'margins', depth) for m in margins]))
    if kind == 'shipment':
        return ShipmentInstance(tuple(reader.get_array('weights')),
                                tuple(reader.get_array('counts')),
                                tuple(reader.get_array('capacities')),
                                reader.get_array('costs', 2))
    if kind == 'cutstock':
        try:
            return CuttingStockInstance.build(reader.get_array('widths'),
                                              reader.get_array('demands'),
                                              reader.get_int('stock_width'))
        except ContractViolation as e:
            raise FormatError(str(e), 1, path)
    raise FormatError(f'unknown encoder kind {kind!r}', 1, path)


def decoded_to_dict(kind: str, outcome: SolveOutcome, decoded) -> dict:
    '''
    the natural-coordinate answer of ``encode --solve``
    '''
    data = {'schema_version': cfg.SCHEMA_VERSION, 'status': outcome.status}
    if outcome.is_optimal:
        data['objective'] = str(outcome.objective)
        if kind == 'shipment':
            data['items'] = _strings(decoded.items)
            data['unused'] = _strings(decoded.unused)
        else:
            data['table'] = _strings(decoded)
    return data


def read_text(path: str) -> str:
    with open(path) as f:
        return f.read()
