import functools
import json

from constants import EVENTS_PATH
from constants import LOCKS_PATH
from constants import WORKER_ID
from datetime import datetime
from errors import InvariantViolation
from filelock import FileLock
from observable import Observable
from pathlib import Path
from time import perf_counter
from types import SimpleNamespace
from util import arguments_as_namespace
from util import dot_access
from util import global_run_id

# Global observable object
OBS = Observable()

# Global context
CTX = SimpleNamespace(
    current_test=None,
    worker_id=WORKER_ID,
    events_path=EVENTS_PATH,
)

# Undefined return value
UNDEFINED = object()


def trigger(event, **attributes):
    """ Triggers the event with the given name, passing the given attributes
    to any handler connected to it.

    Returns True if any handlers were invoked. False if there were none.

    """

    return OBS.trigger(event, **attributes)


def with_trigger(event):
    """ Announces every call of the decorated function on the bus:

        @with_trigger('classify.pairings')
        def classify_pairings(V, W, M):
            ...

    fires 'classify.pairings.before' with `args`, a namespace of the call's
    arguments, and 'classify.pairings.after' with `args`, `exception` (None
    on success), `result` (UNDEFINED on failure) and `took` in seconds.

    Handlers of the after event may raise, which is how the oracle rejects
    results.

    """

    def decorator(fn):

        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            call = arguments_as_namespace(fn, args, kwargs)
            trigger(f'{event}.before', args=call)

            started = perf_counter()
            outcome = {'exception': None, 'result': UNDEFINED}

            try:
                outcome['result'] = fn(*args, **kwargs)
            except Exception as e:
                outcome['exception'] = e

            trigger(
                f'{event}.after',
                args=call,
                took=perf_counter() - started,
                **outcome,
            )

            if outcome['exception'] is not None:
                raise outcome['exception']

            return outcome['result']

        return wrapper

    return decorator


def event_line(event, attributes):
    """ One JSON line of the event log. The context comes first, followed
    by the attributes in alphabetical order.

    """

    clashes = {'time', 'worker', 'test'} & set(attributes)
    assert not clashes, f"Reserved attributes: {clashes}"

    line = {
        'time': datetime.now().isoformat(),
        'worker': CTX.worker_id,
        'test': CTX.current_test,
        'event': event,
        **{key: attributes[key] for key in sorted(attributes)},
    }

    return json.dumps(line, default=str)


def record(event, **attributes):
    """ Appends an event, e.g. 'classify.pairings.after', to the log of the
    current run. Workers of the same run share the log, so writes are
    serialized through a lock file.

    Nothing is written if the events path is empty.

    """

    if not CTX.events_path:
        return

    line = event_line(event, attributes)

    logs, locks = Path(CTX.events_path), Path(LOCKS_PATH)
    logs.mkdir(parents=True, exist_ok=True)
    locks.mkdir(parents=True, exist_ok=True)

    run_id = global_run_id()

    with FileLock(str(locks / f'{run_id}.lock')):
        with (logs / f'{run_id}.log').open('a') as f:
            f.write(f'{line}\n')


def resolve(attributes, how):
    """ A path like 'args.M' is looked up in the event's attributes, a
    callable gets them as a namespace. Missing paths resolve to None.

    """

    if callable(how):
        return how(SimpleNamespace(**attributes))

    if not isinstance(how, str):
        raise RuntimeError(f"Cannot resolve an attribute with {how!r}")

    try:
        return dot_access(how, attributes)
    except AttributeError:
        return None


def track_in_event_log(event, include=None):
    """ Writes every occurrence of the event to the event log, with the
    attributes named in `include`:

        track_in_event_log('classify.pairings.after', include={
            'order': 'args.M',
            'pairings': lambda a: a.result.pairing_count,
        })

    """

    include = include or {}

    @OBS.on(event)
    def on_record_event(**attributes):
        record(event, **{
            key: resolve(attributes, how) for key, how in include.items()
        })


def violation(message, diff=None):
    """ Announces a failed internal check and returns the exception to raise:

        raise violation("slot 2 differs", diff=diff)

    """

    trigger('invariant.violation', message=message, diff=diff)
    return InvariantViolation(message, diff)


def succeeded(attributes):
    return attributes.exception is None


# Often tracked attributes
RESULT = {
    'took': 'took',
    'result': lambda a: a.exception and 'failure' or 'success',
    'error': lambda a: a.exception and str(a.exception) or None,
}

SOURCES = {
    'v': lambda a: str(a.args.V),
    'w': lambda a: str(a.args.W),
}


# Keep track of test runs
track_in_event_log('run.start', include={'run_id': 'run_id'})
track_in_event_log('run.end', include={'result': 'result', 'run_id': 'run_id'})


# Keep track of test items, recording their start and their result
track_in_event_log('test.start')


@OBS.on('test.start')
def on_test_start(name):
    CTX.current_test = name.split('::')[-1]


@OBS.on('test.teardown')
def on_test_teardown(name, outcome, error, short_error):
    CTX.current_test = None


for phase in ('call', 'setup', 'teardown'):
    track_in_event_log(f'test.{phase}', include={
        'outcome': 'outcome',
        'error': 'error',
        'short_error': 'short_error',
    })


# Keep track of command line runs
track_in_event_log('cli.run.after', include={
    **RESULT,
    'command': 'args.request.command',
    'specs': lambda a: list(a.args.request.specs),
    'order': 'args.request.order',
    'status': lambda a: a.result.status if succeeded(a) else None,
})


# Keep track of classifications
track_in_event_log('classify.first-order.after', include={
    **RESULT,
    **SOURCES,
    'families': lambda a: len(a.result) if succeeded(a) else None,
})

track_in_event_log('classify.pairings.after', include={
    **RESULT,
    **SOURCES,
    'order': 'args.M',
    'families': lambda a: len(a.result.families) if succeeded(a) else None,
    'pairings': lambda a: a.result.pairing_count if succeeded(a) else None,
})

track_in_event_log('classify.functions.after', include={
    **RESULT,
    'v': lambda a: str(a.args.V),
    'order': 'args.M',
})


# Keep track of slot consistency checks
track_in_event_log('split.check.after', include={
    **RESULT,
    'v': lambda a: str(a.args.v),
    'w': lambda a: str(a.args.w),
    'ok': lambda a: succeeded(a) and a.result.ok or False,
})


# Keep track of failed internal checks
track_in_event_log('invariant.violation', include={
    'message': 'message',
    'diff': lambda a: a.diff and str(a.diff) or None,
})
