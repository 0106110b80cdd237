"""
Command-line interface for adhesive-egg.

Exit codes: 0 success, 1 error, 2 saturation limit reached, 3 predicate or
campaign failure, 130 interrupted.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, Optional

from ..core.dpo import extract_with_cost, saturate
from ..core.egraph import is_e_hypergraph, is_egg, maximally_share, term_to_egg
from ..core.eqhyp import is_T_morphism, is_mono_eq, is_pb_mono, is_regular_mono_eq
from ..core.errors import EggError, SchemaError
from ..core.termgraph import Signature, example_signature, is_acyclic_labelling, is_term_graph
from ..lab import campaigns
from ..utils.config import MATCH_CLASSES, Config, get_config, load_cost_table, set_config
from ..utils.dot import to_dot
from ..utils.logging import (get_logger, log_error, log_info, log_success, log_verdict, log_warning,
                             setup_logging)
from ..utils.serialization import dump_doc, dump_graph, load_egraph, load_graph, load_morphism, report_to_doc
from ..utils.sexpr import parse_rules, parse_term

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_LIMIT = 2
EXIT_CHECK_FAILED = 3

PREDICATES = ('term-graph', 'e-hypergraph', 'egg', 'acyclic')
MORPHISM_CLASSES = ('mono', 'regular', 'pb', 'T')
RANDOM_CAMPAIGNS = ('stability', 'vk', 'kernel', 'closure')
EXHAUSTIVE_CAMPAIGNS = ('universal', 'star', 'mono', 'regular-tg')

logger = get_logger('cli')


def _read(path: str) -> str:
    if path == '-':
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}") from e


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding='utf-8')
        log_info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _signature(args) -> Signature:
    if getattr(args, 'sig', None):
        return Signature.from_text(_read(args.sig))
    return example_signature()


def _verdict(name: str, passed: bool, **extra) -> int:
    print(json.dumps({'check': name, 'passed': passed, **extra}, sort_keys=True))
    log_verdict(name, passed)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def load_config(args) -> Config:
    """Defaults, then the --config file, then the environment; flags are merged per command."""
    base = Config.from_file(args.config) if getattr(args, 'config', None) else Config()
    config = Config.from_environment(base)
    set_config(config)
    return config


def parse_command(args) -> int:
    """Turn a term into its e-graph JSON."""
    sig = _signature(args)
    text = args.expr if args.expr is not None else _read(args.term_file)
    G = term_to_egg(parse_term(text, sig), sig)
    if args.max_share:
        G = maximally_share(G)
    _emit(dump_graph(G), args.out)
    return EXIT_OK


def saturate_command(args) -> int:
    """Run equality saturation of an e-graph document with a rule file."""
    G = load_egraph(_read(args.egraph))
    rules = parse_rules(_read(args.rules), G.signature) if args.rules else []
    config = get_config().merged(max_iters=args.max_iters, max_classes=args.max_classes,
                                 max_edges=args.max_edges, match_class=args.match_class)
    set_config(config)
    result, report = saturate(G, rules)
    _emit(dump_graph(result), args.out)
    doc = dump_doc(report_to_doc(report))
    if args.report:
        Path(args.report).write_text(doc, encoding='utf-8')
    else:
        sys.stderr.write(doc)
    if not report.fixpoint:
        log_warning(f"Saturation stopped at a limit: {report.status}")
        return EXIT_LIMIT
    log_success(f"Saturated after {report.iterations} rounds, {report.applications} applications")
    return EXIT_OK


def extract_command(args) -> int:
    """Print the cheapest term of a class."""
    G = load_egraph(_read(args.egraph))
    config = get_config()
    costs = dict(config.costs)
    if args.cost:
        costs.update(load_cost_table(args.cost))
    t, cost = extract_with_cost(G, args.root, costs, config.default_cost)
    print(str(t))
    logger.info(f"cost {cost}")
    return EXIT_OK


def check_command(args) -> int:
    """Evaluate an object predicate on a graph document."""
    loaded = load_graph(_read(args.egraph))
    predicate = args.predicate
    if predicate == 'acyclic':
        return _verdict(predicate, is_acyclic_labelling(loaded.eq.hyp))
    if predicate == 'e-hypergraph':
        labels = loaded.labelled.labels if loaded.labelled is not None else None
        return _verdict(predicate, is_e_hypergraph(loaded.eq, labels))
    if loaded.labelled is None:
        raise SchemaError(f"--predicate {predicate} needs a labelled document")
    if predicate == 'term-graph':
        return _verdict(predicate, is_term_graph(loaded.labelled.labelling))
    return _verdict(predicate, is_egg(loaded.labelled))


def check_morphism_command(args) -> int:
    """Evaluate a class predicate on a morphism document."""
    loaded = load_morphism(_read(args.morphism))
    m, cls = loaded.morphism, args.morphism_class
    if cls == 'mono':
        passed = is_mono_eq(m)
    elif cls == 'regular':
        passed = is_regular_mono_eq(m)
    elif cls == 'pb':
        passed = is_pb_mono(m)
    else:
        if loaded.source.labelled is None or loaded.target.labelled is None:
            raise SchemaError("--class T needs labelled source and target documents")
        passed = is_T_morphism(m, loaded.source.labelled, loaded.target.labelled)
    return _verdict(cls, passed)


def export_dot_command(args) -> int:
    """Render a graph document as DOT."""
    loaded = load_graph(_read(args.egraph))
    graph = loaded.labelled if loaded.labelled is not None else loaded.eq
    _emit(to_dot(graph, args.name), args.out)
    return EXIT_OK


def _bounds(args, *names: str) -> Dict[str, int]:
    """The exhaustive bounds given on the command line; ``--max-size`` stands in for ``--max-nodes``."""
    bounds = {name: getattr(args, name) for name in names if getattr(args, name) is not None}
    if 'max_nodes' in names and 'max_nodes' not in bounds and args.max_size is not None:
        bounds['max_nodes'] = args.max_size
    return bounds


def lab_command(args) -> int:
    """Run one lab campaign and report it."""
    config = get_config().merged(trials=args.trials, seed=args.seed, max_size=args.max_size,
                                 workers=args.workers)
    set_config(config)
    name = args.campaign
    if name == 'counterexample':
        verdict = campaigns.check_counterexample()
        print(json.dumps(verdict, indent=2, sort_keys=True))
        return EXIT_OK
    if name == 'stability':
        report = campaigns.check_pb_stability(relaxed=args.relaxed)
    elif name in RANDOM_CAMPAIGNS:
        report = campaigns.CAMPAIGNS[name]()
    elif name == 'universal':
        report = campaigns.check_universal_property(**_bounds(args, 'max_size', 'max_target'))
    elif name == 'star':
        report = campaigns.check_star_pullbacks(**_bounds(args, 'max_size', 'max_len'))
    elif name == 'mono':
        report = campaigns.check_mono_characterizations(
            **_bounds(args, 'max_edges', 'max_nodes', 'max_classes', 'max_word'))
    else:
        report = campaigns.check_regular_tg(**_bounds(args, 'max_edges', 'max_nodes'))

    if args.json:
        _emit(dump_doc(report.to_doc()), args.out)
    else:
        print(f"{report.campaign}: {report.passed} passed, {report.failed} failed, "
              f"{report.skipped} skipped ({report.trials} trials, seed {report.seed})")
        for key, value in sorted(report.details.items()):
            print(f"  {key}: {value}")
    log_verdict(f"campaign {report.campaign}", report.ok, f"{report.failed} failures")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser."""
    parser = argparse.ArgumentParser(
        prog='adhesive-egg',
        description='E-graphs as hypergraphs with equivalence: saturation, extraction and adhesivity checks'
    )

    # Global options
    parser.add_argument(
        '--log-level',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        default='INFO',
        help='Set logging level (default: INFO)'
    )
    parser.add_argument(
        '--config',
        help='YAML or TOML configuration file'
    )
    parser.add_argument(
        '--sig',
        help='Signature file (one "op NAME ARITY" per line); the arithmetic example signature by default'
    )
    parser.add_argument(
        '--out', '-o',
        help='Write the main output to this file instead of stdout'
    )

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    # Parse command
    parse_parser = subparsers.add_parser('parse', help='Build the e-graph of a term')
    parse_parser.add_argument('term_file', nargs='?', default='-',
                              help='File holding one s-expression (default: stdin)')
    parse_parser.add_argument('--expr', '-e', help='Term given inline instead of a file')
    parse_parser.add_argument(
        '--max-share',
        action='store_true',
        help='Emit the maximally shared representation'
    )
    parse_parser.set_defaults(func=parse_command)

    # Saturate command
    saturate_parser = subparsers.add_parser('saturate', help='Apply rewrite rules until fixpoint or a limit')
    saturate_parser.add_argument('egraph', help='E-graph JSON document')
    saturate_parser.add_argument('--rules', '-r', help='Rule file')
    saturate_parser.add_argument('--match-class', choices=MATCH_CLASSES, help='Admissible matches')
    saturate_parser.add_argument('--max-iters', type=int, help='Round limit')
    saturate_parser.add_argument('--max-classes', type=int, help='Class limit')
    saturate_parser.add_argument('--max-edges', type=int, help='Edge limit')
    saturate_parser.add_argument('--report', help='Write the JSON report here (default: stderr)')
    saturate_parser.set_defaults(func=saturate_command)

    # Extract command
    extract_parser = subparsers.add_parser('extract', help='Print a minimum-cost term')
    extract_parser.add_argument('egraph', help='E-graph JSON document')
    extract_parser.add_argument('--root', type=int, help='Class to extract (default: class of the root node)')
    extract_parser.add_argument('--cost', help='YAML or TOML table of symbol costs')
    extract_parser.set_defaults(func=extract_command)

    # Check command
    check_parser = subparsers.add_parser('check', help='Check an object predicate')
    check_parser.add_argument('egraph', help='Graph JSON document')
    check_parser.add_argument('--predicate', '-p', choices=PREDICATES, required=True)
    check_parser.set_defaults(func=check_command)

    # Check-morphism command
    morphism_parser = subparsers.add_parser('check-morphism', help='Check membership in a morphism class')
    morphism_parser.add_argument('morphism', help='Morphism JSON document')
    morphism_parser.add_argument('--class', dest='morphism_class', choices=MORPHISM_CLASSES, required=True)
    morphism_parser.set_defaults(func=check_morphism_command)

    # Export-dot command
    dot_parser = subparsers.add_parser('export-dot', help='Render a graph document as DOT')
    dot_parser.add_argument('egraph', help='Graph JSON document')
    dot_parser.add_argument('--name', default='egraph', help='Graph name (default: egraph)')
    dot_parser.set_defaults(func=export_dot_command)

    # Lab command
    lab_parser = subparsers.add_parser('lab', help='Run a property campaign')
    lab_parser.add_argument('campaign', choices=RANDOM_CAMPAIGNS + EXHAUSTIVE_CAMPAIGNS + ('counterexample',))
    lab_parser.add_argument('--trials', type=int, help='Random trials (default from config)')
    lab_parser.add_argument('--seed', type=int, help='Campaign seed (default from config or ADHESIVE_EGG_SEED)')
    lab_parser.add_argument('--max-size', type=int,
                            help='Size bound of generated objects (node bound of mono and regular-tg)')
    lab_parser.add_argument('--max-target', type=int, help='universal: size bound of the (co)cone apex')
    lab_parser.add_argument('--max-len', type=int, help='star: word length bound')
    lab_parser.add_argument('--max-edges', type=int, help='mono, regular-tg: edge bound')
    lab_parser.add_argument('--max-nodes', type=int, help='mono, regular-tg: node bound')
    lab_parser.add_argument('--max-classes', type=int, help='mono: class bound')
    lab_parser.add_argument('--max-word', type=int, help='mono: length bound of source and target words')
    lab_parser.add_argument('--workers', type=int, help='Worker processes for random campaigns')
    lab_parser.add_argument(
        '--relaxed',
        action='store_true',
        help='stability: glue along regular monos that cut a class (failures expected)'
    )
    lab_parser.add_argument('--json', action='store_true', help='Print the full JSON report')
    lab_parser.set_defaults(func=lab_command)

    return parser


def main(argv: Optional[list] = None) -> int:
    """
    Main CLI entry point.

    Args:
        argv: Command line arguments (defaults to sys.argv[1:])

    Returns:
        Exit code (0 for success, non-zero for failure)
    """
    parser = create_parser()
    args = parser.parse_args(argv)

    # If no command specified, show help
    if not args.command:
        parser.print_help()
        return EXIT_ERROR

    setup_logging(args.log_level)
    try:
        load_config(args)
        return args.func(args)
    except KeyboardInterrupt:
        log_info("Operation cancelled by user")
        return 130
    except EggError as e:
        log_error(str(e), e.hint)
        return EXIT_ERROR
    except Exception as e:
        log_error(f"Unexpected error: {e}")
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
