from ._bowlab import (
    BowlabDomainError,
    BowlabIntegrityError,
    BowlabUsageError,
    ConjectureFalsified,
    Diagram,
    check_3d_identity,
    check_quiver_duality,
    chi_quiver,
    count_partition_codes,
    dual_flag_quiver,
    gale_ryser,
    parse,
    quiver_margins,
    quiver_to_diagram,
)

__all__ = [
    "BowlabDomainError",
    "BowlabIntegrityError",
    "BowlabUsageError",
    "ConjectureFalsified",
    "Diagram",
    "check_3d_identity",
    "check_quiver_duality",
    "chi_quiver",
    "count_partition_codes",
    "dual_flag_quiver",
    "gale_ryser",
    "parse",
    "quiver_margins",
    "quiver_to_diagram",
]
