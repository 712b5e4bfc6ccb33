"""Core layer - ordinals, clopen sets, class pairs and represented homeomorphisms."""

from sipkit.core.clopen import ClopenSet, HomeoClass, Space, homeo_class, parse_clopen
from sipkit.core.config import RunConfig
from sipkit.core.homeo import BlockSystem, Homeo, compose, inverse, lift, pi_of, signature
from sipkit.core.ordinal import Ordinal, format_ordinal, parse_ordinal
from sipkit.core.persistence import load_user_defaults, save_report
from sipkit.core.report import CheckResult, Report
from sipkit.core.sigcalc import ClassPair, sim
from sipkit.core.specfile import parse_homeo

__all__ = [
    "ClopenSet",
    "HomeoClass",
    "Space",
    "homeo_class",
    "parse_clopen",
    "RunConfig",
    "BlockSystem",
    "Homeo",
    "compose",
    "inverse",
    "lift",
    "pi_of",
    "signature",
    "Ordinal",
    "format_ordinal",
    "parse_ordinal",
    "load_user_defaults",
    "save_report",
    "CheckResult",
    "Report",
    "ClassPair",
    "sim",
    "parse_homeo",
]
