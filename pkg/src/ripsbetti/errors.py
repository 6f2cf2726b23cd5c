"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can print a
single-line reason and pick an exit status without string matching.
"""


class RipsError(Exception):
    code = "error"
    exit_status = 2


class InputError(RipsError):
    code = "input_error"


class DimensionMismatch(InputError):
    code = "dimension_mismatch"


class UnknownVertex(InputError):
    code = "unknown_vertex"


class FaceNotPresent(InputError):
    code = "face_not_present"


class DimensionOutOfRange(InputError):
    code = "dimension_out_of_range"


class PolicyViolation(InputError):
    code = "policy_violation"


class NotTwoClique(InputError):
    code = "not_two_clique"


class NotASubcomplex(InputError):
    code = "not_a_subcomplex"


class InvalidBasis(InputError):
    code = "invalid_basis"


class PreconditionUnmet(InputError):
    code = "precondition_unmet"


class ClusterTooLoose(InputError):
    code = "cluster_too_loose"


class NotAP3Free(InputError):
    code = "not_ap3_free"


# numerical safety and size limits
class BudgetExceeded(RipsError):
    code = "budget_exceeded"
    exit_status = 3


class AmbiguousDistance(RipsError):
    code = "ambiguous_distance"
    exit_status = 3


class MarginViolation(RipsError):
    code = "margin_violation"
    exit_status = 3


class EdgeSetMismatch(RipsError):
    code = "edge_set_mismatch"
    exit_status = 3


class CapExceeded(RipsError):
    code = "cap_exceeded"
    exit_status = 3
