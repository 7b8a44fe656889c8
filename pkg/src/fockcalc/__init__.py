"""Exact formal-calculus engine for the rank-1 Heisenberg vertex algebra:
truncated Laurent/rational arithmetic, Fock-module vertex operators,
delta-function identity checkers, regular-representation functionals,
intertwining maps, dual tensor-functor actions, and a verification harness.
"""

from .errors import (ConfigError, FockcalcError, InsufficientWindow,
                     KindError, NoMatch, NonIntegerMonodromy, ParseError,
                     UnsupportedWeight)
from .fock import FockFunctional, FockVector, HeisenbergAlgebra, partitions_of
from .harness import (ANCHORS, FAULT_POINTS, REPORT_SCHEMA_VERSION,
                      SUITE_NAMES, CheckReport, SuiteConfig, report_payload,
                      run_suite)
from .parse import (functional_to_str, parse_functional, parse_vector,
                    vector_to_str)
from .rational import (RationalForm, iota0, iotaInf, parse_rational_form,
                       rational_form_to_str, recognize)
from .scalars import ScalarContext
from .series import LOWER, UPPER, TruncatedSeries

__all__ = [
    'ANCHORS', 'CheckReport', 'ConfigError', 'FAULT_POINTS',
    'FockFunctional', 'FockVector', 'FockcalcError', 'HeisenbergAlgebra',
    'InsufficientWindow', 'KindError', 'LOWER', 'NoMatch',
    'NonIntegerMonodromy', 'ParseError', 'REPORT_SCHEMA_VERSION',
    'RationalForm', 'SUITE_NAMES', 'ScalarContext', 'SuiteConfig',
    'TruncatedSeries', 'UPPER', 'UnsupportedWeight', 'functional_to_str',
    'iota0', 'iotaInf', 'parse_functional', 'parse_rational_form',
    'parse_vector', 'partitions_of', 'rational_form_to_str',
    'recognize', 'report_payload', 'run_suite', 'vector_to_str',
]
