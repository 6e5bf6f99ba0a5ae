"""Models package"""
from .grid import Grid, GridFn, KernelOp, ExpansionPair, ResolventDisc
from .spectral import SpectralPoint, SPECTRAL_CSV_HEADER
from .report import (
    ComplexValue,
    CheckReport,
    REPORT_CSV_HEADER,
    SuiteResult,
    DetRecord,
    ExtendedState,
    OdeResidual,
    IdentityCase
)

__all__ = [
    'Grid',
    'GridFn',
    'KernelOp',
    'ExpansionPair',
    'ResolventDisc',
    'SpectralPoint',
    'SPECTRAL_CSV_HEADER',
    'ComplexValue',
    'CheckReport',
    'REPORT_CSV_HEADER',
    'SuiteResult',
    'DetRecord',
    'ExtendedState',
    'OdeResidual',
    'IdentityCase'
]
