"""Controllers running constructions and verification campaigns over the core."""

from sipkit.controllers.campaigns import VERIFY_CAMPAIGNS, demo_factor, homeo_check
from sipkit.controllers.conjugator import realize_conjugator, verify_conjugator
from sipkit.controllers.errors import ConstructionError, PreconditionError
from sipkit.controllers.factorization import Certificate, factor_certificate
from sipkit.controllers.signatures import check_cocycle, signature_via_cofinal
from sipkit.controllers.zones import DyadicZones, ResidueZones, verify_zone_conjugacy

__all__ = [
    "VERIFY_CAMPAIGNS",
    "demo_factor",
    "homeo_check",
    "realize_conjugator",
    "verify_conjugator",
    "ConstructionError",
    "PreconditionError",
    "Certificate",
    "factor_certificate",
    "check_cocycle",
    "signature_via_cofinal",
    "DyadicZones",
    "ResidueZones",
    "verify_zone_conjugacy",
]
