import json
import oracle
import os
import pytest

from constants import LOCKS_PATH
from constants import SWEEP_LABEL
from constants import SWEEP_ORDER
from constants import SWEEP_RANK
from datetime import datetime
from datetime import timedelta
from events import CTX
from events import trigger
from pathlib import Path
from util import extract_short_error
from util import global_run_id
from xdist import is_xdist_master
from xdist import is_xdist_worker


# Locks older than this belong to runs that are long gone
STALE_LOCKS = timedelta(hours=12)

SWEEP_OPTIONS = (
    ('--sweep-rank', SWEEP_RANK, "Largest n of CP_n covered by sweeps"),
    ('--sweep-order', SWEEP_ORDER, "Largest order M covered by sweeps"),
    ('--sweep-label', SWEEP_LABEL, "Largest Dynkin label covered by sweeps"),
)


def pytest_addoption(parser):
    """ Sweep bounds and the oracle switch. """

    for name, default, text in SWEEP_OPTIONS:
        parser.addoption(name, action='store', type=int, default=default,
                         help=text)

    parser.addoption(
        '--oracle',
        action='store_true',
        default=False,
        help="Cross-check every tensor product by brute force",
    )


def collects_worker_reports():
    """ The xdist master sees the reports of its workers, which already
    announced them.

    """

    return os.environ.get('PYTEST_XDIST_MASTER') == '1'


def pytest_sessionstart(session):
    """ Announces the run and enables the oracle if requested. """

    if session.config.option.oracle:
        oracle.enable()

    # Workers inherit the environment of the master, so both set the flag
    if is_xdist_master(session) or is_xdist_worker(session):
        os.environ['PYTEST_XDIST_MASTER'] = str(int(
            is_xdist_master(session)))

    if not is_xdist_worker(session):
        trigger('run.start', run_id=global_run_id())


def pytest_sessionfinish(session, exitstatus):
    """ Announces the end of the run and removes stale locks. """

    if is_xdist_worker(session):
        return

    trigger(
        'run.end',
        result='success' if exitstatus == 0 else 'failure',
        run_id=global_run_id(),
    )

    # Other runs may still hold younger locks
    horizon = datetime.now() - STALE_LOCKS

    for lock in Path(LOCKS_PATH).glob('*.lock'):
        if datetime.fromtimestamp(lock.stat().st_mtime) < horizon:
            lock.unlink(missing_ok=True)


def pytest_generate_tests(metafunc):
    """ Parametrizes the sweep fixtures, one test per rank or order, so
    that pytest-xdist can spread a sweep over its workers.

        def test_something_for_every_rank(sweep_rank):
            ...

    The bounds are given on the command line:

        py.test --sweep-rank 6 --sweep-order 3 -n auto

    """

    option = metafunc.config.option

    if 'sweep_rank' in metafunc.fixturenames:
        metafunc.parametrize(
            'sweep_rank', range(2, option.sweep_rank + 1),
            ids=lambda n: f'CP{n}')

    if 'sweep_order' in metafunc.fixturenames:
        metafunc.parametrize(
            'sweep_order', range(1, option.sweep_order + 1),
            ids=lambda m: f'M{m}')


def pytest_report_header(config):
    """ The run id and the sweep bounds, printed below the pytest banner. """

    option = config.option

    return [
        f'run-id: {global_run_id()}',
        f'sweeps: rank <= {option.sweep_rank}, order <= '
        f'{option.sweep_order}, label <= {option.sweep_label}',
        f'oracle: {"enabled" if option.oracle else "disabled"}',
    ]


def pytest_collection_modifyitems(session, config, items):
    """ Runs the tests of a module together, in the order of their names. """

    items.sort(key=lambda item: item.nodeid)


def pytest_runtest_logstart(nodeid, location):
    """ Announces the test before its fixtures are set up. """

    if not collects_worker_reports():
        trigger('test.start', name=nodeid)


def pytest_runtest_logreport(report):
    """ Announces the setup, call and teardown phases of a test. """

    if collects_worker_reports():
        return

    trigger(
        f'test.{report.when}',
        name=report.nodeid,
        outcome=report.outcome,
        error=report.longreprtext,
        short_error=extract_short_error(report.longreprtext),
    )


@pytest.fixture(scope='session')
def sweep_label(request):
    """ The largest Dynkin label covered by exhaustive sweeps. """

    yield request.config.option.sweep_label


@pytest.fixture(scope='function')
def with_oracle():
    """ Cross-checks every tensor product made during the test. """

    # Already enabled for the whole session
    if oracle.enabled():
        yield
        return

    oracle.enable()
    yield
    oracle.disable()


@pytest.fixture(scope='function')
def event_log(tmp_path):
    """ Redirects the event log into a temporary directory and yields a
    function that returns the records written so far.

    """

    previous = CTX.events_path
    CTX.events_path = str(tmp_path / 'events')

    def records():
        lines = []

        for log in sorted(Path(CTX.events_path).glob('*.log')):
            with log.open('r') as f:
                lines.extend(json.loads(line) for line in f)

        return lines

    yield records

    CTX.events_path = previous
