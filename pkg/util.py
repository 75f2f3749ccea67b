import atexit
import inspect
import os

from concurrent.futures import ThreadPoolExecutor
from constants import CONCURRENCY_LIMIT
from constants import RUNTIME_PATH
from datetime import datetime
from functools import lru_cache
from functools import reduce
from hashlib import blake2b
from pathlib import Path
from psutil import AccessDenied
from psutil import NoSuchProcess
from psutil import Process
from types import SimpleNamespace


@lru_cache(maxsize=1)
def global_run_id():
    """ The id under which all processes of a run write their events.

    pytest-xdist workers are separate processes, so the id cannot simply be
    generated once in memory. Instead, the first process to ask writes it
    to a file named after the root process (see `root_process`), and every
    later process reads it from there.

    """

    root = root_process()

    fingerprint = f'{root.pid}/{root.create_time()}'.encode('utf-8')
    fingerprint = blake2b(fingerprint, digest_size=8).hexdigest()

    Path(RUNTIME_PATH).mkdir(parents=True, exist_ok=True)
    path = Path(RUNTIME_PATH) / f'cp-{fingerprint}.runid'

    if path.exists():
        return path.read_text()

    started = datetime.now().isoformat(timespec='seconds')
    run_id = f'cp-{started}-{fingerprint}'.replace(':', '-')
    path.write_text(run_id)

    if root.pid == os.getpid():
        atexit.register(path.unlink, missing_ok=True)

    return run_id


def root_process(pid=None):
    """ The pytest process that started the given process, or the given
    process itself if it does not run under pytest.

    """

    process = Process(pid or os.getpid())
    ancestor = process

    while ancestor is not None:
        try:
            command = ' '.join(ancestor.cmdline())
        except (AccessDenied, NoSuchProcess):
            break

        if 'pytest' in command or 'py.test' in command:
            return ancestor

        if 'python' not in command:
            break

        ancestor = ancestor.parent()

    return process


def in_parallel(fn, calls):
    """ Calls fn once per tuple of positional arguments, on a thread pool,
    and returns the results in the order of the calls:

        left, right = in_parallel(lr_tensor, (
            (tau, labels, n),
            (sigma, labels, n),
        ))

    """

    calls = tuple(calls)

    if len(calls) < 2:
        return tuple(fn(*c) for c in calls)

    with ThreadPoolExecutor(max_workers=CONCURRENCY_LIMIT) as pool:
        return tuple(pool.map(lambda c: fn(*c), calls))


def arguments_as_namespace(fn, args, kwargs):
    """ The arguments of a call by parameter name, defaults included. """

    bound = inspect.signature(fn).bind(*args, **kwargs)
    bound.apply_defaults()

    return SimpleNamespace(**bound.arguments)


def dot_access(path, obj):
    """ Follows a dotted path through attributes and mapping keys:

    >>> dot_access('args.M', {'args': SimpleNamespace(M=2)})
    2

    """

    def step(current, name):
        if isinstance(current, dict) and name in current:
            return current[name]

        return getattr(current, name)

    return reduce(step, path.split('.'), obj)


def extract_short_error(longrepr):
    """ The first 'E' line below the last '>' marker of a pytest failure
    report, which is usually the message of the assertion that failed.

    """

    if not longrepr:
        return None

    lines = longrepr.splitlines()
    markers = [i for i, line in enumerate(lines) if line.startswith('>')]

    for line in lines[markers[-1] if markers else 0:]:
        if line.startswith('E'):
            return line[1:].strip()

    return None
