"""Console script for nfold."""
import argparse
import sys

from fabulous.color import bold, highlight_red, magenta, yellow

from nfold import cfg, logger
from nfold.core import ContractViolation, is_nonnegative
from nfold.encoders import (encode_3way, encode_cutting_stock, encode_dway,
                            encode_shipment, cut_plan, single_width_roll_bound,
                            solve_encoded)
from nfold.formats import (FormatError, decoded_to_dict, dump_instance,
                           dump_solution, encode_json, format_vector,
                           instance_to_dict, parse_encoder_input,
                           parse_instance, parse_matrix, parse_solution,
                           read_text)
from nfold.nfold import ComplexityMismatch, graver_complexity, nfold_graver_basis
from nfold.solve import PHASE_ONE_STRATEGIES, NFoldSolver

ENCODERS = {
    '3way': encode_3way,
    'dway': encode_dway,
    'shipment': encode_shipment,
}


def render_help(msg: str):
    msg = bold(magenta(msg))
    return msg


def render_examples(msg: str):
    msg = yellow(msg)
    return msg


def _help(text: str, *examples: str) -> str:
    return '\n'.join([str(render_help(text))] + [str(render_examples(e)) for e in examples])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False,
                                     formatter_class=argparse.RawTextHelpFormatter)
    common.add_argument('--out', default=None,
                        help=_help('write the result document to this file instead of standard output;',
                                   'Example: --out solution.json'))
    common.add_argument('--threads', type=int, default=cfg.THREADS,
                        help=_help('worker threads used to assemble n-fold Graver bases;',
                                   f'Default: {cfg.THREADS}'))
    common.add_argument('--verify-complexity', action='store_true', default=cfg.VERIFY_COMPLEXITY,
                        help=_help('always cross-check g(A,B) against directly computed n-fold bases;',
                                   'Default: only when the check is cheap'))
    common.add_argument('--cache-dir', default=None,
                        help=_help('keep computed Graver bases in a persistent cache in this directory;',
                                   'Example: --cache-dir ./data'))
    common.add_argument('--phase-one', choices=PHASE_ONE_STRATEGIES, default=cfg.PHASE_ONE,
                        help=_help('how a first feasible point is found;',
                                   f'Default: {cfg.PHASE_ONE}'))

    parser = argparse.ArgumentParser(
        prog='nfold', formatter_class=argparse.RawTextHelpFormatter,
        description=str(render_help('exact solver for generalized n-fold integer programs')))
    commands = parser.add_subparsers(dest='command', required=True)

    solve = commands.add_parser('solve', parents=[common], formatter_class=argparse.RawTextHelpFormatter,
                                help='solve an instance file')
    solve.add_argument('instance', help=_help('instance document;', 'Example: nfold solve example.json'))

    graver = commands.add_parser('graver', parents=[common], formatter_class=argparse.RawTextHelpFormatter,
                                 help='print the Graver basis of an n-fold matrix')
    graver.add_argument('A', help=_help('matrix file of A, one row per line'))
    graver.add_argument('B', help=_help('matrix file of B, one row per line'))
    graver.add_argument('n', type=int, help=_help('number of blocks', 'Example: nfold graver A.txt B.txt 4'))

    encode = commands.add_parser('encode', parents=[common], formatter_class=argparse.RawTextHelpFormatter,
                                 help='encode an application as an n-fold instance')
    encode.add_argument('kind', choices=['3way', 'dway', 'shipment', 'cutstock'])
    encode.add_argument('input', help=_help('application document'))
    encode.add_argument('--solve', action='store_true', default=False,
                        help=_help('also solve and report the answer in natural coordinates'))
    encode.add_argument('--rolls', type=int, default=None,
                        help=_help('standard rolls for cutstock without --solve;',
                                   'Default: one width per roll bound'))

    check = commands.add_parser('check', parents=[common], formatter_class=argparse.RawTextHelpFormatter,
                                help='verify a solution against its instance')
    check.add_argument('instance')
    check.add_argument('solution')

    complexity = commands.add_parser('complexity', parents=[common],
                                     formatter_class=argparse.RawTextHelpFormatter,
                                     help='print the Graver complexity g(A,B)')
    complexity.add_argument('A')
    complexity.add_argument('B')
    return parser


def _emit(text: str, out: str = None):
    if out:
        with open(out, 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _solver(args) -> NFoldSolver:
    if args.cache_dir:
        return NFoldSolver('disk', args.cache_dir, args.phase_one)
    return NFoldSolver('memory', phase_one=args.phase_one)


def cmd_solve(args) -> int:
    instance = parse_instance(read_text(args.instance), args.instance)
    outcome = _solver(args).solve(instance)
    _emit(dump_solution(outcome, instance.n, instance.q), args.out)
    return cfg.exit_code(outcome.status)


def cmd_graver(args) -> int:
    A = parse_matrix(read_text(args.A), args.A)
    B = parse_matrix(read_text(args.B), args.B)
    if args.n < 1:
        raise ContractViolation(f'n must be positive, got {args.n}')
    store = _solver(args).store
    complexity = graver_complexity(A, B, verify=args.verify_complexity, store=store)
    G = nfold_graver_basis(A, B, args.n, complexity=complexity, store=store)
    lines = [format_vector(g) + '\n' for g in G]
    lines.append(f'# cardinality {len(G)}, graver complexity {complexity.value}\n')
    _emit(''.join(lines), args.out)
    return cfg.EXIT_OPTIMAL


def cmd_encode(args) -> int:
    data = parse_encoder_input(args.kind, read_text(args.input), args.input)
    solver = _solver(args)
    if args.kind == 'cutstock':
        if args.solve:
            rolls, cuts = cut_plan(data, solver)
            document = {'schema_version': cfg.SCHEMA_VERSION, 'status': cfg.OPTIMAL,
                        'min_rolls': str(rolls),
                        'cuts': [[str(w) for w in roll] for roll in cuts]}
            _emit(encode_json(document), args.out)
            return cfg.EXIT_OPTIMAL
        encoded = encode_cutting_stock(data, args.rolls or max(1, single_width_roll_bound(data)))
    else:
        encoded = ENCODERS[args.kind](data)
    if not args.solve:
        if encoded.infeasible:
            logger.info('[CLI] the data admit no solution, nothing to encode')
            _emit(encode_json({'schema_version': cfg.SCHEMA_VERSION, 'status': cfg.INFEASIBLE}),
                  args.out)
            return cfg.EXIT_INFEASIBLE
        _emit(dump_instance(encoded.instance), args.out)
        return cfg.EXIT_OPTIMAL
    outcome, decoded = solve_encoded(encoded, solver)
    document = {
        'schema_version': cfg.SCHEMA_VERSION,
        'instance': None if encoded.infeasible else instance_to_dict(encoded.instance),
        'solution': decoded_to_dict(args.kind, outcome, decoded),
    }
    _emit(encode_json(document), args.out)
    return cfg.exit_code(outcome.status)


def cmd_check(args) -> int:
    instance = parse_instance(read_text(args.instance), args.instance)
    solution = parse_solution(read_text(args.solution), args.solution)
    verdict = _verdict(instance, solution)
    if verdict:
        _emit(f'fail: {verdict}\n', args.out)
        return cfg.EXIT_CHECK_FAILED
    _emit('pass\n', args.out)
    return cfg.EXIT_OPTIMAL


def _verdict(instance, solution) -> str:
    '''
    reason the solution does not fit the instance, empty when it does
    '''
    if not solution.is_optimal:
        return ''
    x = solution.x
    if len(x) != instance.n * instance.q:
        return f'x has {len(x)} entries, expected {instance.n * instance.q}'
    if not is_nonnegative(x):
        return f'x is negative at position {min(i for i, e in enumerate(x) if e < 0)}'
    failing = instance.residual(x)
    if failing is not None:
        return f'equation {failing} does not hold'
    if solution.objective != instance.objective(x):
        return f'objective {solution.objective} differs from c.x = {instance.objective(x)}'
    return ''


def cmd_complexity(args) -> int:
    A = parse_matrix(read_text(args.A), args.A)
    B = parse_matrix(read_text(args.B), args.B)
    complexity = graver_complexity(A, B, verify=args.verify_complexity,
                                   store=_solver(args).store)
    _emit(f'{complexity.value}\n# certified by {complexity.certified_by}\n', args.out)
    return cfg.EXIT_OPTIMAL


COMMANDS = {
    'solve': cmd_solve,
    'graver': cmd_graver,
    'encode': cmd_encode,
    'check': cmd_check,
    'complexity': cmd_complexity,
}


def main(argv=None) -> int:
    """Console script for nfold."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return cfg.EXIT_ERROR if e.code else cfg.EXIT_OPTIMAL
    cfg.THREADS = max(1, args.threads)
    cfg.VERIFY_COMPLEXITY = args.verify_complexity
    try:
        return COMMANDS[args.command](args)
    except (FormatError, ContractViolation, ComplexityMismatch, OSError) as e:
        sys.stderr.write(str(highlight_red(str(e))) + '\n')
        return cfg.EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())  # pragma: no cover
