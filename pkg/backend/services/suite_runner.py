"""
Suite Runner - runs the verification suites using ThreadPoolExecutor

A suite is a list of named tasks; each task returns CheckReports. Tasks run
concurrently and the result is assembled in a fixed order, so reports do not
depend on scheduling.
"""
import gc
import logging
import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Callable, Dict, List, Optional, Tuple

import mpmath
import numpy as np

from config import get_config, get_tolerance
from models import CheckReport, SuiteResult
from utils.errors import DomainError, LabError
from utils.memory_monitor import MemoryMonitor
from . import dirichlet, discretize, expansion, extended, fredholm, identities, scattering, spectral, specfun

logger = logging.getLogger(__name__)

SuiteTask = Tuple[str, Callable[[], List[CheckReport]]]


# ---------------------------------------------------------------------------
# Suite builders
# ---------------------------------------------------------------------------

def _specfun_tasks(profile: str, seed: int) -> List[SuiteTask]:
    tol = get_tolerance(profile, 'mellin_rel')

    def k_half():
        return [CheckReport.build('k_half_order', {'x': x}, specfun.bessel_k_complex(0.5, x),
                                  math.sqrt(math.pi / (2.0 * x)) * math.exp(-x), tol)
                for x in (0.5, 2.0, 6.0)]

    def k_mpmath():
        reports = []
        for s in (0.5 + 3j, 0.3 - 1.5j, 2.0 + 10j):
            for x in (1.0, 2.0):
                reports.append(CheckReport.build('k_complex_order', {'sigma': s.real, 'gamma': s.imag, 'x': x},
                                                 specfun.bessel_k_complex(s, x),
                                                 complex(mpmath.besselk(s, x)), tol))
        return reports

    def k_recurrence():
        return [CheckReport.build('k_recurrence', {'sigma': 0.4, 'gamma': 2.0, 'x': x},
                                  specfun.bessel_k_recurrence_residual(0.4 + 2j, x), 0.0, tol)
                for x in (1.0, 3.0)]

    def gamma_and_e1():
        reports = [CheckReport.build('gamma_complex', {'sigma': s.real, 'gamma': s.imag},
                                     specfun.gamma_complex(s), complex(mpmath.gamma(s)), 1e-12)
                   for s in (0.5 + 0.5j, 3.2 - 4j, -1.5 + 0.1j)]
        reports += [CheckReport.build('exp_integral_e1', {'x': x}, specfun.exp_integral_e1(x),
                                      float(mpmath.e1(x)), 1e-12) for x in (0.1, 4.0)]
        return reports

    def laguerre():
        return [CheckReport.build('laguerre', {'n': n, 'x': x}, specfun.laguerre(n, x),
                                  float(mpmath.laguerre(n, 0, x)), 1e-9)
                for n in (0, 5, 40) for x in (0.5, 4.0, 20.0)]

    return [('specfun.k_half', k_half), ('specfun.k_mpmath', k_mpmath),
            ('specfun.k_recurrence', k_recurrence), ('specfun.gamma_e1', gamma_and_e1),
            ('specfun.laguerre', laguerre)]


def _discretize_tasks(profile: str, seed: int) -> List[SuiteTask]:
    tol = get_tolerance(profile, 'phi_abs')
    n = get_tolerance(profile, 'grid_n')

    def phi_case(a):
        reports = []
        for sign in ('+', '-'):
            solved = discretize.solve_phi(a, sign, n=n)
            closed = discretize.closed_phi(a, sign, solved.grid.nodes)
            params = {'a': a, 'sign': 1.0 if sign == '+' else -1.0}
            reports.append(CheckReport.build('phi_nodes', params,
                                             float(np.max(np.abs(solved.values - closed))), 0.0, tol))
            endpoint = float(discretize.interpolate(solved, np.array([a]))[0])
            reports.append(CheckReport.build('phi_endpoint', params, endpoint,
                                             1.0 - a if sign == '+' else 1.0 + a, tol))
        return reports

    def self_adjoint():
        gap = discretize.self_adjointness_gap(lambda x: np.exp(-((x - 2.0) / 0.5) ** 2),
                                              lambda x: x * np.exp(-((x - 3.0) / 0.4) ** 2), 6.0)
        return [CheckReport.build('h_self_adjoint', {'support': 6.0}, gap, 0.0, 1e-10)]

    tasks = [(f'discretize.phi.{a}', partial(phi_case, a)) for a in (0.5, 1.0, 2.0)]
    tasks.append(('discretize.self_adjoint', self_adjoint))
    return tasks


def _fredholm_tasks(profile: str, seed: int) -> List[SuiteTask]:
    det_rel = get_tolerance(profile, 'det_rel')
    n = get_tolerance(profile, 'grid_n')

    def determinants():
        reports = []
        for a in (0.25, 0.5, 1.0, 2.0, 4.0):
            record = fredholm.det_record(a, n=n)
            reports.append(CheckReport.build('det_plus', {'a': a}, record.det_plus, record.closed_plus, det_rel))
            reports.append(CheckReport.build('det_minus', {'a': a}, record.det_minus, record.closed_minus, det_rel))
            reports.append(CheckReport.build('det_D', {'a': a}, record.det_D,
                                             record.det_plus * record.det_minus, 1e-10))
        return reports

    def mu_case(a):
        return [CheckReport.build('mu_numeric', {'a': a}, fredholm.mu_numeric(a, n=n), fredholm.mu(a),
                                  get_tolerance(profile, 'mu_abs')),
                CheckReport.build('mu_closed', {'a': a}, fredholm.mu(a), 2.0 * a, det_rel)]

    def gaudin(a):
        return [*fredholm.gaudin_check(a, 'closed', get_tolerance(profile, 'gaudin_abs')),
                *fredholm.gaudin_check(a, 'nystrom', get_tolerance(profile, 'gaudin_fd_abs'), n=n),
                *fredholm.endpoint_flow_check(a),
                *fredholm.phi_at_endpoint_check(a, n=n)]

    tasks = [('fredholm.determinants', determinants)]
    tasks += [(f'fredholm.mu.{a}', partial(mu_case, a)) for a in (0.5, 1.0, 2.0)]
    tasks += [(f'fredholm.gaudin.{a}', partial(gaudin, a)) for a in (0.5, 1.0)]
    return tasks


def _spectral_tasks(profile: str, seed: int) -> List[SuiteTask]:
    kernel_rel = get_tolerance(profile, 'kernel_rel')
    mellin_rel = get_tolerance(profile, 'mellin_rel')

    def e_half():
        point = spectral.spectral_point(1.0, 0.5)
        return [CheckReport.build('E_half', {'a': 1.0}, point.E, math.sqrt(math.pi) * math.exp(-2.0), mellin_rel),
                CheckReport.build('E_equals_A_minus_iB', {'a': 1.0}, point.E, point.A - 1j * point.B, 1e-12)]

    def kernel_case(s, z):
        return [CheckReport.build('rep_kernel', {'a': 1.0, 's_re': s.real, 's_im': s.imag,
                                                 'z_re': z.real, 'z_im': z.imag},
                                  spectral.rep_kernel(1.0, s, z), spectral.rep_kernel_oracle(1.0, s, z),
                                  kernel_rel)]

    def mellin():
        return [CheckReport.build('mellin_E', {'a': a, 'sigma': s.real, 'gamma': s.imag},
                                  spectral.mellin_E_quadrature(a, s), spectral.mellin_E(a, s), mellin_rel)
                for a, s in ((1.0, 0.75 + 0j), (0.5, 0.6 + 2j))]

    def norms():
        reports = [CheckReport.build('evaluator_norm_half', {'a': a}, spectral.evaluator_norm_half(a),
                                     spectral.evaluator_norm_half_quadrature(a), get_tolerance(profile, 'norm_rel'))
                   for a in (0.5, 1.0)]
        reports.append(spectral.evaluator_norm_flow_check(0.5, 2.0, 0.6 + 1j))
        reports.append(spectral.mellin_functional_check(1.5, 0.4 + 0.7j, mellin_rel))
        reports += spectral.mu_from_spectral(1.0)
        return reports

    def chi_strip():
        return [spectral.chi_integral_check(s, get_tolerance(profile, 'chi_rel'))
                for s in (0.8 + 0.5j, 0.9 - 1j, 0.85 + 2j)]

    return [('spectral.E_half', e_half),
            ('spectral.kernel.real', partial(kernel_case, 0.6 + 0j, 0.7 + 0j)),
            ('spectral.kernel.complex', partial(kernel_case, 0.5 + 0.3j, 0.5 - 0.3j)),
            ('spectral.mellin', mellin), ('spectral.norms', norms), ('spectral.chi', chi_strip)]


def _identities_tasks(profile: str, seed: int) -> List[SuiteTask]:
    count = get_tolerance(profile, 'draws')
    tasks = []
    for identity_id, _ in identities.list_catalog():
        def run_id(identity_id=identity_id):
            cases = identities.draw_cases(identity_id, count=count, seed=seed, profile=profile)
            return [identities.verify(case, profile) for case in cases]
        tasks.append((f'identities.{identity_id}', run_id))
    return tasks


def _extended_tasks(profile: str, seed: int) -> List[SuiteTask]:
    ext_det_rel = get_tolerance(profile, 'ext_det_rel')
    n = get_tolerance(profile, 'grid_n')

    def determinants():
        return [CheckReport.build(f'ext_det_{name}', {'a': 1.0}, extended.ext_det_nystrom(1.0, sign, n=n),
                                  extended.ext_det(1.0, sign), ext_det_rel)
                for sign, name in (('+', 'plus'), ('-', 'minus'))]

    def mu_ext():
        # Differences against the asymptotic forms, so only the absolute error can pass
        reports = []
        for a, tol in ((10.0, 0.15), (40.0, 0.05)):
            reports.append(CheckReport.build('mu_ext_asymptotic', {'a': a},
                                             extended.ext_state(a).mu_ext - (2.0 * a - 2.0), 0.0, tol))
        reports.append(CheckReport.build('mu_ext_refined', {'a': 10.0},
                                         extended.ext_state(10.0).mu_ext - (18.0 - 0.1), 0.0, 0.05))
        return reports

    def kernels():
        tol = get_tolerance(profile, 'y_kernel_rel')
        return [CheckReport.build('y_kernel_ratio', {'a': 1.0, 's_re': s.real, 's_im': s.imag,
                                                     'z_re': z.real, 'z_im': z.imag},
                                  extended.y_kernel(1.0, s, z), extended.y_kernel_ratio(1.0, s, z), tol)
                for s, z in ((0.6 + 0j, 0.7 + 0j), (0.3 + 1j, 0.8 - 0.5j))]

    def norms(a):
        quad, closed = extended.ext_norm_half(a)
        tol = get_tolerance(profile, 'ext_norm_rel')
        return [CheckReport.build('ext_norm_half', {'a': a}, quad, closed, tol),
                *extended.ext_relations_check(a),
                *extended.ext_state_check(a, n=n)]

    def dirac():
        reports = []
        for z in (0.5 + 1j, 0.3 + 0j):
            residual = extended.ext_dirac_residual(1.0, z)
            params = {'a': 1.0, 'z_re': z.real, 'z_im': z.imag}
            reports.append(CheckReport.build('ext_dirac_A', params, residual.residual_A, 0.0,
                                             get_tolerance(profile, 'ode_rel')))
            reports.append(CheckReport.build('ext_dirac_B', params, residual.residual_B, 0.0,
                                             get_tolerance(profile, 'ode_rel')))
        return reports

    def transform():
        return extended.ext_transform_check(1.0, [0.5, 1.0, 2.0])

    tasks = [('extended.determinants', determinants), ('extended.mu_ext', mu_ext),
             ('extended.kernels', kernels), ('extended.dirac', dirac), ('extended.transform', transform)]
    tasks += [(f'extended.norms.{a}', partial(norms, a)) for a in (0.5, 1.0)]
    return tasks


def _scattering_tasks(profile: str, seed: int) -> List[SuiteTask]:
    ode_rel = get_tolerance(profile, 'ode_rel')
    jost_rel = get_tolerance(profile, 'jost_rel')

    def odes(a):
        reports = []
        for gamma in (0.5, 1.0, 2.0):
            reports += scattering.ode_residual_check(a, gamma, ode_rel)
        return reports

    def jost():
        reports = []
        for s in (0.5 + 1j, 0.3 + 0.2j):
            reports += scattering.jost_relation_check(1.0, s, jost_rel)
        reports.append(scattering.jost_condition_check(2.0))
        reports += scattering.a_half_routes_check(1.0, n=get_tolerance(profile, 'grid_n'), tol=jost_rel)
        return reports

    def zeros():
        roots = scattering.find_B_zeros(1.0, (0.0, 10.0))
        return scattering.b_zero_orthogonality(1.0, roots[:4])

    def flow():
        return scattering.norm_flow_check(0.5, 2.0)

    tasks = [(f'scattering.ode.{a}', partial(odes, a)) for a in (0.5, 1.0, 2.0)]
    tasks += [('scattering.jost', jost), ('scattering.zeros', zeros), ('scattering.flow', flow)]
    return tasks


def _expansion_tasks(profile: str, seed: int) -> List[SuiteTask]:
    rel = get_tolerance(profile, 'expansion_rel')
    count = get_tolerance(profile, 'draws')

    def bump():
        k = expansion.gaussian_bump()
        return [expansion.parseval_check(k, rel), expansion.round_trip_check(k, rel)]

    def random_bumps():
        rng = np.random.default_rng(np.random.SeedSequence([seed, 9]))
        reports = []
        for _ in range(count):
            center = float(rng.uniform(2.0, 4.0))
            width = float(rng.uniform(0.4, 0.8))
            k = expansion.gaussian_bump(center, width)
            report = expansion.parseval_check(k, rel)
            reports.append(report.model_copy(update={'params': {'center': center, 'width': width}}))
        return reports

    def involution():
        return expansion.involution_check(expansion.gaussian_bump(), [0.5, 1.5, 3.0, 5.0],
                                          get_tolerance(profile, 'involution_abs'))

    def psi():
        return expansion.psi_isometry_check(2.0, rel)

    def laguerre():
        return expansion.laguerre_agreement_check(expansion.gaussian_bump(), tol=get_tolerance(profile, 'laguerre_abs'))

    return [('expansion.bump', bump), ('expansion.random_bumps', random_bumps),
            ('expansion.involution', involution), ('expansion.psi', psi), ('expansion.laguerre', laguerre),
            ('expansion.exponential', partial(expansion.exponential_invariance_check, 40.0, rel)),
            ('expansion.ka', expansion.ka_checks)]


def _dirichlet_tasks(profile: str, seed: int) -> List[SuiteTask]:
    tol = get_tolerance(profile, 'dirichlet_rel')
    return [(f'dirichlet.{s}', partial(dirichlet.dirichlet_checks, s, tol=tol)) for s in (0.5, 1.0, 2.0)]


SUITES: Dict[str, Callable[[str, int], List[SuiteTask]]] = {
    'specfun': _specfun_tasks,
    'discretize': _discretize_tasks,
    'fredholm': _fredholm_tasks,
    'spectral': _spectral_tasks,
    'identities': _identities_tasks,
    'extended': _extended_tasks,
    'scattering': _scattering_tasks,
    'expansion': _expansion_tasks,
    'dirichlet': _dirichlet_tasks,
}


def suite_names() -> List[str]:
    return [*SUITES, 'all']


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

class SuiteRunner:
    """Runs suite tasks on a ThreadPoolExecutor and assembles order-stable results"""

    def __init__(self, max_workers: Optional[int] = None, profile: str = None, seed: int = None):
        config = get_config()
        self.max_workers = max_workers or config.MAX_WORKERS
        self.profile = profile or config.DEFAULT_TOL_PROFILE
        self.seed = config.DEFAULT_SEED if seed is None else seed
        self.memory = MemoryMonitor(config.MEMORY_THRESHOLD_MB)
        self.lock = threading.Lock()
        self.completed = 0

    def tasks(self, suite: str) -> List[SuiteTask]:
        """Tasks of one suite, or of every suite for 'all'"""
        if suite == 'all':
            return [task for name in SUITES for task in SUITES[name](self.profile, self.seed)]
        if suite not in SUITES:
            raise DomainError(f"Unknown suite: {suite}")
        return SUITES[suite](self.profile, self.seed)

    def _run_task(self, task_id: str, func: Callable[[], List[CheckReport]]) -> List[CheckReport]:
        try:
            reports = list(func())
        except LabError as e:
            logger.warning(f"Task {task_id} flagged: {e.code}: {e}")
            reports = [CheckReport.failure(task_id, {}, 0.0, note=e.code)]
        for report in reports:
            if not report.passed:
                logger.warning(f"Check failed: {report.id} {report.params_token()} "
                               f"abs_err={report.abs_err:.3e} rel_err={report.rel_err:.3e} tol={report.tol:.1e}")
        with self.lock:
            self.completed += 1
        return reports

    def run(self, suite: str) -> SuiteResult:
        """
        Run one suite

        Args:
            suite: A module name from SUITES, or 'all'

        Returns:
            SuiteResult with cases sorted by (id, params)
        """
        tasks = self.tasks(suite)
        logger.info(f"Suite {suite}: {len(tasks)} tasks on {self.max_workers} workers, profile={self.profile}")
        start = time.perf_counter()
        with self.memory.track(f"suite {suite}"), ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = [executor.submit(self._run_task, task_id, func) for task_id, func in tasks]
            # Collected in submission order
            cases = [report for future in futures for report in future.result()]
        elapsed = time.perf_counter() - start

        gc.collect()
        if self.memory.over_threshold():
            logger.warning("High memory usage after suite, forcing garbage collection")
            gc.collect()

        result = SuiteResult.assemble(suite, cases, elapsed)
        logger.info(f"Suite {suite} finished: {result.pass_count} passed, {result.fail_count} failed "
                    f"in {elapsed:.1f}s")
        return result
