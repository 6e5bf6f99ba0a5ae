"""Services package"""
from .suite_runner import SuiteRunner, SUITES, suite_names

__all__ = ['SuiteRunner', 'SUITES', 'suite_names']
