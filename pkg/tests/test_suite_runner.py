"""Suite runner: task expansion, order-stable assembly and flagged task failures"""
import pytest

from models import CheckReport
from services import suite_runner
from services.suite_runner import SuiteRunner
from utils.errors import ConvergenceError, DomainError


def test_suite_names_end_with_all():
    names = suite_runner.suite_names()
    assert names[-1] == 'all'
    assert {'specfun', 'fredholm', 'expansion', 'dirichlet'} <= set(names)


def test_unknown_suite():
    with pytest.raises(DomainError):
        SuiteRunner(max_workers=1).run('no_such_suite')


def test_specfun_suite_passes_and_is_sorted():
    result = SuiteRunner(max_workers=2, profile='fast').run('specfun')
    assert result.ok, [c.to_dict() for c in result.cases if not c.passed]
    keys = [(c.id, c.params_token()) for c in result.cases]
    assert keys == sorted(keys)
    assert result.pass_count == len(result.cases)


def test_results_do_not_depend_on_worker_count():
    one = SuiteRunner(max_workers=1, profile='fast').run('specfun')
    many = SuiteRunner(max_workers=4, profile='fast').run('specfun')
    assert one.to_dict(timing=False) == many.to_dict(timing=False)


def test_raising_task_is_flagged(monkeypatch):
    def broken(profile, seed):
        def fails():
            raise ConvergenceError("tail estimate too large")

        def holds():
            return [CheckReport.build('holds', {}, 1.0, 1.0, 1e-12)]

        return [('broken.fails', fails), ('broken.holds', holds)]

    monkeypatch.setitem(suite_runner.SUITES, 'broken', broken)
    result = SuiteRunner(max_workers=2).run('broken')
    assert not result.ok
    assert (result.pass_count, result.fail_count) == (1, 1)
    flagged = next(c for c in result.cases if c.id == 'broken.fails')
    assert flagged.note == 'CONVERGENCE_FAILURE'
    assert result.to_dict(timing=False)['summary'] == {'pass': 1, 'fail': 1, 'seconds': 0.0}


def test_memory_monitor():
    from utils.memory_monitor import MemoryMonitor
    monitor = MemoryMonitor(threshold_mb=0)
    with monitor.track('block') as before:
        assert before.rss_mb > 0
    assert monitor.over_threshold()
    assert not MemoryMonitor(threshold_mb=10 ** 9).over_threshold()
