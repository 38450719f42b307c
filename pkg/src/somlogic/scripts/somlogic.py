"""Command line interface: train maps, check queries, extract knowledge
bases and trace training"""
import argparse
import logging
import re
import sys
from somlogic.cwm import (
    build_cwm, load_specificity, save_kb, dumps_kb)
from somlogic.exceptions import SomLogicError, ConfigurationError
from somlogic.fuzzy import save_membership_csv
from somlogic.metrics import category_stats
from somlogic.parser import print_axiom
from somlogic.probability import load_distribution
from somlogic.queries import QueryEngine
from somlogic.som import SomConfig, init_map, load_map, save_map
from somlogic.stimulus import load_stimuli, data_range
from somlogic.trace import run_trace, format_trace
from somlogic.utils.plugin_api import get_connective_family, DEFAULT_LOGIC
from somlogic.version import __version__

GRAMMAR = """query language, one statement per line, '#' starts a comment:

  concept   := concept "or" concept | concept "and" concept
             | "not" concept | "top" | "bot" | NAME | "(" concept ")"
  statement := concept "<=" concept                     strict inclusion
             | "T(" concept ")" "<=" concept            typicality inclusion
             | concept "<=" concept CMP NUMBER          fuzzy inclusion
             | concept "(" individual ")" CMP NUMBER    fuzzy assertion
             | "P(" concept ")" | "P(" concept "|" concept ")"
             | "P(" concept "|" "elem:" ID ")" | "P(" "elem:" ID "|" concept ")"
             | "deg(" concept "<=" concept ")"
             | "mem(" concept "," individual ")"
             | "plaus(" NAME "," NAME ")"
  CMP       := ">=" | "<=" | ">" | "<"
  individual:= "elem:" ID | NAME | NUMBER

"not" binds tighter than "and", which binds tighter than "or".

exit codes: 0 success, 1 query errors, 2 configuration or I/O errors"""

# Exit codes
EXIT_OK = 0
EXIT_QUERY_ERRORS = 1
EXIT_SETUP_ERRORS = 2

_GRID = re.compile(r"\s*(\d+)\s*[xX]\s*(\d+)\s*\Z")


def _grid(value):
    match = _GRID.match(value)
    if match is None:
        raise argparse.ArgumentTypeError(
            "grid must be given as ROWSxCOLS, not {0!r}".format(value))
    return int(match.group(1)), int(match.group(2))


def _every(value):
    if value.strip().lower() in ("inf", "never"):
        return sys.maxsize
    try:
        retval = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "interval must be a positive integer or 'inf'")
    if retval < 1:
        raise argparse.ArgumentTypeError("interval must be positive")
    return retval


def _add_training_options(parser):
    parser.add_argument("--input", required=True,
                        help="training stimuli CSV (id,category,f1,...)")
    parser.add_argument("--grid", type=_grid, default=(10, 10),
                        help="map size as ROWSxCOLS (default: 10x10)")
    parser.add_argument("--epochs", type=int, default=10,
                        help="passes over the dataset (default: 10)")
    parser.add_argument("--seed", type=int, default=0,
                        help="unsigned 64-bit random seed (default: 0)")
    parser.add_argument("--lr0", type=float, default=0.5,
                        help="initial learning rate (default: 0.5)")
    parser.add_argument("--lr-decay", type=float, default=1.0,
                        help="learning rate decay constant (default: 1.0)")
    parser.add_argument("--sigma0", type=float, default=None,
                        help="initial neighbourhood radius (default: half "
                             "the largest grid side)")
    parser.add_argument("--sigma-decay", type=float, default=1.0,
                        help="radius decay constant (default: 1.0)")
    parser.add_argument("--init-margin", type=float, default=0.5,
                        help="initialisation margin outside the data range "
                             "as a fraction of its span (default: 0.5)")
    parser.add_argument("--shuffle", action="store_true",
                        help="present each epoch in a seeded random order")
    parser.add_argument("--progress", action="store_true",
                        help="show a progress bar")


def _add_model_options(parser):
    parser.add_argument("--model", required=True, help="trained map file")
    parser.add_argument("--input", required=True,
                        help="stimuli CSV the map was trained on")
    parser.add_argument("--probes", default=None,
                        help="CSV of extra stimuli added to the domain")
    parser.add_argument("--spec", default=None,
                        help="specificity overrides, one 'Ch > Cj' per line")
    parser.add_argument("--logic", default=DEFAULT_LOGIC,
                        help="fuzzy connectives: zadeh, goedel, lukasiewicz "
                             "or product (default: zadeh)")


def _add_report_options(parser):
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="report format (default: text)")
    parser.add_argument("--emit-membership-csv", default=None,
                        metavar="PATH",
                        help="also write the atom memberships of every "
                             "domain element to a CSV file")


def _get_args(args):
    """Parses the command line arguments

    :param list args: arguments, the process arguments when None
    :rtype: :class:`argparse.Namespace`
    """
    parser = argparse.ArgumentParser(
        prog="somlogic",
        description="Reason about the categories learned by a "
                    "self-organising map",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version",
                        version="%(prog)s " + __version__)
    parser.add_argument("--verbose", "-v", action="store_true",
                        help="log diagnostics to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    train = commands.add_parser("train", help="train a map")
    _add_training_options(train)
    train.add_argument("--out", required=True, help="output map file")
    train.set_defaults(handler=cmd_train)

    check = commands.add_parser(
        "check", help="evaluate a query file", epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_model_options(check)
    _add_report_options(check)
    check.add_argument("--queries", required=True, help="query file")
    check.add_argument("--mode", choices=("pref", "fuzzy"), default="pref",
                       help="semantics of plain strict inclusions "
                            "(default: pref)")
    strategy = check.add_mutually_exclusive_group()
    strategy.add_argument("--fast", dest="strategy", action="store_const",
                          const="fast",
                          help="category-level tests only, no fallback")
    strategy.add_argument("--exact", dest="strategy", action="store_const",
                          const="exact",
                          help="always compare extensions over the domain")
    check.set_defaults(handler=cmd_check, strategy="default")

    extract = commands.add_parser("extract",
                                  help="extract a weighted knowledge base")
    _add_model_options(extract)
    extract.add_argument("--threshold", type=float, default=0.0,
                         help="smallest plausibility or degree emitted "
                              "(default: 0)")
    extract.add_argument("--fuzzy", action="store_true",
                         help="extract fuzzy inclusions with their degrees")
    extract.add_argument("--out", default=None,
                         help="output file (default: stdout)")
    extract.set_defaults(handler=cmd_extract)

    prob = commands.add_parser(
        "prob", help="evaluate probability queries", epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_model_options(prob)
    _add_report_options(prob)
    prob.add_argument("--queries", required=True, help="query file")
    prob.add_argument("--dist", default="uniform",
                      help="'uniform' or a CSV file of id,mass rows")
    prob.set_defaults(handler=cmd_prob)

    trace = commands.add_parser("trace",
                                help="trace knowledge during training")
    _add_training_options(trace)
    trace.add_argument("--every", type=_every, default=1,
                       help="steps between snapshots, or 'inf' "
                            "(default: 1)")
    trace.add_argument("--probes", default=None,
                       help="CSV of extra stimuli added to the domain")
    trace.add_argument("--spec", default=None,
                       help="specificity overrides, one 'Ch > Cj' per line")
    trace.add_argument("--format", choices=("text", "json"), default="text",
                       help="report format (default: text)")
    trace.add_argument("--out", default=None,
                       help="output file (default: stdout)")
    trace.set_defaults(handler=cmd_trace)

    return parser.parse_args(args)


def _config(args, stimuli):
    if not stimuli:
        raise ConfigurationError("no stimuli in " + args.input)
    rows, cols = args.grid
    return SomConfig(rows, cols, stimuli[0].dim, epochs=args.epochs,
                     lr0=args.lr0, lr_decay=args.lr_decay,
                     sigma0=args.sigma0, sigma_decay=args.sigma_decay,
                     seed=args.seed, init_margin=args.init_margin,
                     shuffle=args.shuffle)


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _load_model(args):
    som_map = load_map(args.model)
    stimuli = load_stimuli(args.input)
    probes = load_stimuli(args.probes) if args.probes else []
    overrides = load_specificity(args.spec) if args.spec else []
    return build_cwm(som_map, stimuli, probes, overrides), overrides


def cmd_train(args):
    """Trains a map and prints the category precisions"""
    stimuli = load_stimuli(args.input)
    config = _config(args, stimuli)
    som_map = init_map(config, data_range(stimuli))
    som_map = som_map.train(stimuli, show_progress=args.progress)
    save_map(som_map, args.out)

    print("trained {0}x{1} map on {2} stimuli, {3} steps".format(
        config.rows, config.cols, len(stimuli), som_map.trained_steps))
    for name, stats in category_stats(som_map, stimuli).items():
        print("category {0}: d_max={1!r} b={2}".format(
            name, stats.d_max, stats.b))
    print("units won: {0} of {1}".format(
        len(som_map.bmu_counts(stimuli)), config.units))
    return EXIT_OK


def _run_queries(args, dist, mode, strategy):
    model, _ = _load_model(args)
    family = get_connective_family(args.logic)
    engine = QueryEngine(model, family, dist, mode, strategy)
    if dist is not None:
        # surfaces distribution problems before any query runs
        engine.prob  # pylint: disable=pointless-statement
    with open(args.queries, encoding="utf-8") as handle:
        text = handle.read()
    if args.emit_membership_csv:
        save_membership_csv(args.emit_membership_csv, engine.fuzzy)
    report = engine.run(text)
    sys.stdout.write(report.format(args.format))
    return report.exit_code


def cmd_check(args):
    """Evaluates a query file against the models of a trained map"""
    return _run_queries(args, None, args.mode, args.strategy)


def cmd_prob(args):
    """Evaluates probability queries under a chosen distribution"""
    dist = None
    if args.dist.strip().lower() != "uniform":
        dist = load_distribution(args.dist)
    return _run_queries(args, dist, "pref", "default")


def cmd_extract(args):
    """Writes the knowledge satisfied by a trained map"""
    model, overrides = _load_model(args)
    if args.fuzzy:
        family = get_connective_family(args.logic)
        engine = QueryEngine(model, family)
        entries = engine.fuzzy.extract_fuzzy_kb(args.threshold)
        text = "".join(print_axiom(axiom) + "\n" for axiom, _ in entries)
        _write(args.out, text)
        return EXIT_OK
    entries = model.extract_kb(args.threshold)
    if args.out is None:
        sys.stdout.write(dumps_kb(entries, overrides))
    else:
        save_kb(args.out, entries, overrides)
    return EXIT_OK


def cmd_trace(args):
    """Trains a fresh map while recording knowledge snapshots"""
    stimuli = load_stimuli(args.input)
    config = _config(args, stimuli)
    probes = load_stimuli(args.probes) if args.probes else []
    overrides = load_specificity(args.spec) if args.spec else []
    snapshots = run_trace(config, stimuli, args.every, probes, overrides,
                          show_progress=args.progress)
    _write(args.out, format_trace(snapshots, args.format))
    return EXIT_OK


def _configure_logging(verbose):
    if not verbose:
        return
    log = logging.getLogger("somlogic")
    log.setLevel(logging.DEBUG)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(
        "%(asctime)s(%(levelname)s->%(module)s):%(message)s",
        "%Y-%m-%d %H:%M:%S"))
    log.addHandler(handler)


def main(args=None):
    """Entry point function

    :param list args: command line arguments, the process ones when None
    :returns: process exit code
    :rtype: :class:`int`
    """
    args = _get_args(args)
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except (SomLogicError, OSError) as err:
        logging.getLogger(__name__).debug("command failed", exc_info=True)
        sys.stderr.write("somlogic: error: {0}\n".format(
            str(err).splitlines()[0] if str(err) else type(err).__name__))
        return EXIT_SETUP_ERRORS


if __name__ == "__main__":
    sys.exit(main())
