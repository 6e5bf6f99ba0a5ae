"""
Report models - serializable results of every check the lab runs
"""
import math
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class ComplexValue(BaseModel):
    """Complex number with explicit real/imaginary parts"""
    model_config = ConfigDict(frozen=True)

    re: float
    im: float = 0.0

    @classmethod
    def of(cls, z) -> 'ComplexValue':
        z = complex(z)
        return cls(re=z.real, im=z.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class CheckReport(BaseModel):
    """
    One identity verification

    A check passes when either the absolute or the relative error is within tolerance.
    """
    model_config = ConfigDict(populate_by_name=True)

    id: str
    params: Dict[str, float] = Field(default_factory=dict)
    lhs: ComplexValue
    rhs: ComplexValue
    abs_err: float
    rel_err: float
    tol: float
    passed: bool = Field(alias='pass')
    note: Optional[str] = None

    @classmethod
    def build(cls, id: str, params: Dict[str, float], lhs, rhs, tol: float,
              note: str = None) -> 'CheckReport':
        """
        Build a report from the two sides of an identity

        Args:
            id: Catalog or check identifier
            params: Named real parameters
            lhs: Left side (real or complex)
            rhs: Right side (real or complex)
            tol: Tolerance applied to both error measures
            note: Free-form annotation

        Returns:
            CheckReport with errors and pass flag filled in
        """
        lhs, rhs = complex(lhs), complex(rhs)
        abs_err = abs(lhs - rhs)
        scale = max(abs(lhs), abs(rhs))
        rel_err = abs_err / scale if scale > 0 else abs_err
        finite = math.isfinite(abs_err)
        return cls(
            id=id,
            params={k: float(v) for k, v in params.items()},
            lhs=ComplexValue.of(lhs),
            rhs=ComplexValue.of(rhs),
            abs_err=abs_err if finite else float('inf'),
            rel_err=rel_err if finite else float('inf'),
            tol=tol,
            passed=finite and (abs_err <= tol or rel_err <= tol),
            note=note,
        )

    @classmethod
    def failure(cls, id: str, params: Dict[str, float], tol: float, note: str) -> 'CheckReport':
        """A flagged case whose evaluation raised"""
        nan = ComplexValue(re=float('nan'), im=float('nan'))
        return cls(id=id, params={k: float(v) for k, v in params.items()}, lhs=nan, rhs=nan,
                   abs_err=float('inf'), rel_err=float('inf'), tol=tol, passed=False, note=note)

    def params_token(self) -> str:
        """Stable `k=v;k=v` rendering used by CSV rows and sort keys"""
        return ';'.join(f"{k}={self.params[k]:.12g}" for k in sorted(self.params))

    def csv_row(self):
        """Row for REPORT_CSV_HEADER"""
        return [self.id, self.params_token(), self.lhs.re, self.lhs.im, self.rhs.re, self.rhs.im,
                self.abs_err, self.rel_err, self.tol, self.passed]

    def to_dict(self):
        """JSON row: id, params, lhs, rhs, abs_err, rel_err, tol, pass"""
        data = {
            'id': self.id,
            'params': {k: self.params[k] for k in sorted(self.params)},
            'lhs': {'re': self.lhs.re, 'im': self.lhs.im},
            'rhs': {'re': self.rhs.re, 'im': self.rhs.im},
            'abs_err': self.abs_err,
            'rel_err': self.rel_err,
            'tol': self.tol,
            'pass': self.passed,
        }
        if self.note:
            data['note'] = self.note
        return data


REPORT_CSV_HEADER = ['id', 'params', 'lhs_re', 'lhs_im', 'rhs_re', 'rhs_im', 'abs_err', 'rel_err',
                     'tol', 'pass']


class SuiteResult(BaseModel):
    """Outcome of one suite; fail_count == 0 is the success condition"""
    suite: str
    cases: List[CheckReport] = Field(default_factory=list)
    pass_count: int = 0
    fail_count: int = 0
    wall_time: float = 0.0

    @classmethod
    def assemble(cls, suite: str, cases: List[CheckReport], wall_time: float) -> 'SuiteResult':
        """Order-stable assembly: cases sorted by (id, params)"""
        ordered = sorted(cases, key=lambda c: (c.id, c.params_token()))
        passed = sum(1 for c in ordered if c.passed)
        return cls(suite=suite, cases=ordered, pass_count=passed,
                   fail_count=len(ordered) - passed, wall_time=wall_time)

    @property
    def ok(self) -> bool:
        return self.fail_count == 0

    def to_dict(self, timing: bool = False):
        return {
            'suite': self.suite,
            'cases': [c.to_dict() for c in self.cases],
            'summary': {
                'pass': self.pass_count,
                'fail': self.fail_count,
                'seconds': round(self.wall_time, 3) if timing else 0.0,
            },
        }


class DetRecord(BaseModel):
    """Fredholm determinants of one operator with their closed forms"""
    a: float
    kernel_id: str
    det_plus: float
    det_minus: float
    det_D: float
    closed_plus: float
    closed_minus: float

    def to_dict(self):
        return {
            'a': self.a,
            'kernel': self.kernel_id,
            'det_plus': self.det_plus,
            'det_minus': self.det_minus,
            'closed_plus': self.closed_plus,
            'closed_minus': self.closed_minus,
            'abs_err_plus': abs(self.det_plus - self.closed_plus),
            'abs_err_minus': abs(self.det_minus - self.closed_minus),
        }


class ExtendedState(BaseModel):
    """Closed-form scalars of the extended spaces at one endpoint a"""
    model_config = ConfigDict(frozen=True)

    a: float
    r: float
    s: float
    p: float
    q: float
    alpha: float
    beta: float
    mu_ext: float


class OdeResidual(BaseModel):
    """Residuals of the canonical systems at one point, with the step used"""
    u: float
    gamma: ComplexValue
    residual_A: float
    residual_B: float
    step: float


class IdentityCase(BaseModel):
    """A catalog identity with concrete parameters"""
    id: str
    params: Dict[str, float] = Field(default_factory=dict)
    tol: Optional[float] = None
