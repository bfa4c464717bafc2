# castlepy/__init__.py
import sys
import warnings

# Importing from castlepy module files
from .errors import (
    BudgetError,
    ConsistencyError,
    DiscoveryError,
    DomainError,
    NotTelescopicError,
    ValidationError,
)
from .finite_field import Field, field_new
from .qpoly import BivariatePoly, QPolynomial, qu_decompose, trace_split
from .numsemi import NumericalSemigroup, sg_telescopic, telescopic_sorted
from .config import RunConfig

# Importing from castlepy/curves submodule
from .curves import (
    Curve,
    CurveFunction,
    CurveParams,
    curve_new,
    weierstrass_semigroup,
)
from .agcode import LinearCode, OnePointCode, code_new, distance_witness
from .bounds import (
    HStarSet,
    RecordLedger,
    bound_report,
    dstar,
    hstar,
    records_enumerate,
)
from ._version import __version__

# Define what should be available when importing castlepy (this is the core)
__all__ = [
    "BudgetError",
    "ConsistencyError",
    "DiscoveryError",
    "DomainError",
    "NotTelescopicError",
    "ValidationError",
    "Field",
    "field_new",
    "BivariatePoly",
    "QPolynomial",
    "qu_decompose",
    "trace_split",
    "NumericalSemigroup",
    "sg_telescopic",
    "telescopic_sorted",
    "RunConfig",
    "Curve",
    "CurveFunction",
    "CurveParams",
    "curve_new",
    "weierstrass_semigroup",
    "LinearCode",
    "OnePointCode",
    "code_new",
    "distance_witness",
    "HStarSet",
    "RecordLedger",
    "bound_report",
    "dstar",
    "hstar",
    "records_enumerate",
]

# Metadata
__author__ = "Caghan Uenlueer"
__license__ = "MIT"
__email__ = "caghan.uenlueer@kip.uni-heidelberg.de"

# Python version check
if sys.version_info < (3, 8, 0):
    warnings.warn(
        "The installed Python version is outdated. Please upgrade to"
        " Python 3.8 or newer for continued castlepy updates.",
        Warning,
    )
