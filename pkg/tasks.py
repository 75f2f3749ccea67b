import json
import oracle
import re
import report

from constants import EVENTS_PATH
from dataclasses import dataclass
from datetime import datetime
from errors import InvariantViolation
from errors import PairingException
from errors import SpecParseError
from events import with_trigger
from firstorder import classify_first_order
from higher import classify_pairings
from higher import diagnostics_for
from higher import excluded_weights
from invoke import Exit
from invoke import task
from mbundle import MModule
from mbundle import gmodule_series
from mbundle import g_split
from mbundle import series
from mbundle import tensor_series
from mbundle import verify_slot_consistency
from pathlib import Path
from pmodule import GModuleSpec
from pmodule import PModuleSpec
from pmodule import parse_bundle
from rich.console import Console
from tensor import symbol_space
from types import SimpleNamespace


# Those keys must be at the beginning
HEAD = (
    'command',
    'specs',
    'v',
    'w',
    'order',
    'status',
    'result',
    'took',
)

# Those keys must be at the end
TAIL = (
    'error',
    'diff',
)

# Exit status for malformed requests and specs
USAGE_ERROR = 2

# Exit status for failed internal checks
INVARIANT_VIOLATION = 3


@dataclass(frozen=True)
class Request:
    """ A single command line invocation, before any spec is parsed. """

    command: str
    specs: tuple
    rank: int = None
    order: int = 1
    json: bool = False
    oracle: bool = False
    ascii: bool = False


@dataclass(frozen=True)
class Outcome:
    status: int
    text: str


def as_mmodule(bundle, order):
    """ g-modules carry their own order, p-modules become the top of the
    M-module of the requested order.

    """

    if isinstance(bundle, GModuleSpec):
        return MModule(base=bundle.base, order=bundle.order)

    return MModule.of(bundle, order)


def require_pmodules(bundles):
    for bundle in bundles:
        if not isinstance(bundle, PModuleSpec):
            raise ValueError(f"Expected a crossed node in {bundle}")


def do_classify(request, bundles):
    require_pmodules(bundles)
    result = classify_pairings(*bundles, request.order)

    return (
        report.pairing_report_json(result),
        report.render_pairing_report(result),
    )


def do_firstorder(request, bundles):
    require_pmodules(bundles)
    families = classify_first_order(*bundles)

    return (
        {'families': [report.first_order_family_json(f) for f in families]},
        report.render_first_order(families),
    )


def do_exclude(request, bundles):
    require_pmodules(bundles)
    p, = bundles

    records = excluded_weights(p.labels, request.order)
    diagnostics = diagnostics_for('V', p, request.order)

    text = report.render_exclusions(records)

    if diagnostics:
        text = f'{text}\n\n{report.render_diagnostics(diagnostics)}'

    return (
        {
            'spec': report.spec_json(p),
            'order': request.order,
            'excluded': [report.exclusion_json(r) for r in records],
            'diagnostics': [report.diagnostic_json(d) for d in diagnostics],
        },
        text,
    )


def do_series(request, bundles):
    bundle, = bundles

    # M = 0 has no M-module, but still a composition series
    if isinstance(bundle, GModuleSpec) and bundle.order == 0:
        result = gmodule_series(bundle)
    else:
        result = series(as_mmodule(bundle, request.order))

    return report.series_json(result), report.render_series(result)


def do_tensor(request, bundles):
    v, w = (as_mmodule(b, request.order) for b in bundles)
    result = tensor_series(v, w)
    summands = g_split(v, w)

    text = '\n\n'.join((
        report.render_series(result),
        report.render_summands(summands),
    ))

    return (
        {
            'series': report.series_json(result),
            'summands': [
                {'gmodule': report.gspec_json(g), 'multiplicity': m}
                for g, m in summands
            ],
        },
        text,
    )


def do_splitcheck(request, bundles):
    v, w = (as_mmodule(b, request.order) for b in bundles)
    result = verify_slot_consistency(v, w)

    return report.slot_report_json(result), report.render_slot_report(result)


def do_symbol(request, bundles):
    require_pmodules(bundles)
    result = symbol_space(*bundles, request.order)

    return report.symbol_space_json(result), report.render_symbol_space(result)


# Command -> (number of specs, handler)
COMMANDS = {
    'classify': (2, do_classify),
    'firstorder': (2, do_firstorder),
    'exclude': (1, do_exclude),
    'series': (1, do_series),
    'tensor': (2, do_tensor),
    'splitcheck': (2, do_splitcheck),
    'symbol': (2, do_symbol),
}


def parse_specs(request):
    bundles = []

    for text in request.specs:
        try:
            bundles.append(parse_bundle(text, request.rank))
        except SpecParseError as e:
            raise SpecParseError(
                report.render_parse_error(text, e), e.position) from e

    return tuple(bundles)


@with_trigger('cli.run')
def run(request):
    """ Runs the given request and returns the exit status and the text to
    print. Nothing in here writes to stdout.

    """

    if request.command not in COMMANDS:
        return Outcome(USAGE_ERROR, f"Unknown command: {request.command}")

    arity, handler = COMMANDS[request.command]

    if len(request.specs) != arity:
        return Outcome(USAGE_ERROR, (
            f"{request.command} takes {arity} bundle spec(s), "
            f"got {len(request.specs)}"))

    if request.order < 0:
        return Outcome(USAGE_ERROR, f"Order {request.order} is negative")

    if request.json and request.ascii:
        return Outcome(USAGE_ERROR, "Choose either --json or --ascii")

    # The oracle may already be on for the whole process
    owns_oracle = request.oracle and not oracle.enabled()

    if owns_oracle:
        oracle.enable()

    try:
        payload, text = handler(request, parse_specs(request))

    except SpecParseError as e:
        return Outcome(USAGE_ERROR, e.message)

    except InvariantViolation as e:
        diff = json.dumps(e.diff, indent=2, sort_keys=True, default=str)
        return Outcome(INVARIANT_VIOLATION, f"{e}\n{diff}")

    except (PairingException, ValueError) as e:
        return Outcome(USAGE_ERROR, str(e))

    finally:
        if owns_oracle:
            oracle.disable()

    if request.json:
        return Outcome(0, report.dumps(request.command, payload))

    return Outcome(0, text)


def execute(request):
    outcome = run(request)

    if outcome.status != 0:
        raise Exit(outcome.text, code=outcome.status)

    print(outcome.text)


def rank_of(rank):
    return rank and int(rank) or None


COMMON_HELP = {
    'rank': "The n of CP_n, required to expand '...' in specs",
    'order': "The order M of the pairings (default 1)",
    'json': "Print versioned JSON instead of text",
    'ascii': "Print plain text, the default",
    'oracle': "Cross-check every tensor product by brute force",
}

PAIR_HELP = {
    **COMMON_HELP,
    'v': "Spec of the first bundle, e.g. 'x[1+v] o0 o0 o1'",
    'w': "Spec of the second bundle, e.g. 'x[w-3] o0 o1 o0'",
}

SINGLE_HELP = {
    **COMMON_HELP,
    'spec': "Spec of the bundle, e.g. 'x[v] o0 ... o0 o2'",
}


@task(help=PAIR_HELP)
def classify(c, v, w, order=1, rank=None, json=False, oracle=False,
             ascii=False):
    """ Classify the invariant pairings of order M between two bundles. """

    execute(Request(
        'classify', (v, w), rank_of(rank), order, json, oracle, ascii))


@task(help={k: v for k, v in PAIR_HELP.items() if k != 'order'})
def firstorder(c, v, w, rank=None, json=False, oracle=False, ascii=False):
    """ Classify first order pairings, with explicit coefficients. """

    execute(Request(
        'firstorder', (v, w), rank_of(rank), 1, json, oracle, ascii))


@task(help=SINGLE_HELP)
def exclude(c, spec, order=1, rank=None, json=False, oracle=False,
            ascii=False):
    """ List the excluded weights of a bundle up to order M. """

    execute(Request(
        'exclude', (spec, ), rank_of(rank), order, json, oracle, ascii))


@task(name='series', help=SINGLE_HELP)
def show_series(c, spec, order=1, rank=None, json=False, oracle=False,
                ascii=False):
    """ Show the composition series of an M-module or g-module. """

    execute(Request(
        'series', (spec, ), rank_of(rank), order, json, oracle, ascii))


@task(help=PAIR_HELP)
def tensor(c, v, w, order=1, rank=None, json=False, oracle=False, ascii=False):
    """ Show the tensor product of two composition series. """

    execute(Request(
        'tensor', (v, w), rank_of(rank), order, json, oracle, ascii))


@task(help=PAIR_HELP)
def splitcheck(c, v, w, order=1, rank=None, json=False, oracle=False,
               ascii=False):
    """ Check the product series against the series of its g-summands. """

    execute(Request(
        'splitcheck', (v, w), rank_of(rank), order, json, oracle, ascii))


@task(help=PAIR_HELP)
def symbol(c, v, w, order=1, rank=None, json=False, oracle=False, ascii=False):
    """ Show the symbol space of pairings of order M. """

    execute(Request(
        'symbol', (v, w), rank_of(rank), order, json, oracle, ascii))


@task
def events(c, file=None, regex=None):
    """ Pretty print the latest or the given events log. """

    console = Console(soft_wrap=True)
    regex = regex and re.compile(regex) or None

    logs = tuple(sorted(Path(EVENTS_PATH).glob('*.log')))

    if not file and not logs:
        raise Exit(f"No event logs in {EVENTS_PATH}", code=USAGE_ERROR)

    with open(file or logs[-1], 'r') as f:
        for line in f:
            line = process_event_line(line)

            if regex and not regex.search(strip_styles(line)):
                continue

            console.print(line)


@task
def lint(c):
    """ Lint the code base. """

    c.run('flake8 --exclude examples,.runtime')


def format_event_attribute(event, key, value):

    # Shorten durations
    if key == 'took':
        return f'{key}=[not bold][blue]{round(value, 3)}s[/blue][/not bold]'

    # Highlight successes/failures
    if key == 'result' and value == 'success':
        return f'{key}=[green]{value}[/green]'

    if key == 'result' and value == 'failure':
        return f'{key}=[red]{value}[/red]'

    # Quote commands and specs
    if key == 'command':
        return f'{key}="[cyan]{value}[/cyan]"'

    if key in ('v', 'w'):
        return f'{key}="[magenta]{value}[/magenta]"'

    if key == 'specs':
        specs = ', '.join(f'"{s}"' for s in value)
        return f'{key}=[magenta]{specs}[/magenta]'

    # Highlight run ids
    if key == 'run_id':
        return f'{key}=[not bold][cyan]{value}[/cyan][/not bold]'

    # Color exit statuses
    if key == 'status' and value is not None:
        if value == 0:
            return f'{key}=[not bold][green]{value}[/green][/not bold]'

        if value == USAGE_ERROR:
            return f'{key}=[not bold][orange1]{value}[/orange1][/not bold]'

        return f'{key}=[red]{value}[/red]'

    # Failed checks
    if key == 'ok':
        color = value and 'green' or 'red'
        return f'{key}=[{color}]{value}[/{color}]'

    if key == 'message' and event.event == 'invariant.violation':
        return f'{key}="[red]{value}[/red]"'

    return f'{key}={value}'


def event_name_style(name):
    if name.startswith('test.') and name != 'test.call':
        return 'dim'

    if name == 'invariant.violation':
        return 'bold red'

    return 'bold'


def key_order(key):

    try:
        return HEAD.index(key)
    except ValueError:
        pass

    try:
        return 1000 + TAIL.index(key)
    except ValueError:
        pass

    return len(HEAD) + 1


def exclude_key(evt, key):

    # Empty attributes only add noise
    return evt.__dict__[key] is None


def process_event_line(line):
    evt = json.loads(line, object_hook=lambda d: SimpleNamespace(**d))
    evt.time = datetime.fromisoformat(evt.time)

    header = f"[blue]{evt.time:%Y-%m-%d %H:%M:%S}[/blue] {evt.worker}"

    if evt.test:
        header = f"{header} [not bold][default]{evt.test}[/default][/not bold]"

    style = event_name_style(evt.event)
    header = f"{header} [{style}]{evt.event}[/{style}]"

    body = ' '.join(
        format_event_attribute(evt, k, evt.__dict__[k])
        for k in sorted(evt.__dict__, key=key_order) if k not in (
            'time', 'worker', 'test', 'event'
        ) and not exclude_key(evt, k)
    )

    return f"{header} {body}".strip()


def strip_styles(line):
    console = Console(soft_wrap=True)
    return ''.join(s.text for s in console.render(line))
