"""Exception types shared across the package."""


class ZetaError(Exception):
    """Base class; ``reason`` is a short machine-readable tag."""

    reason = "error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"reason": self.reason, "message": str(self)}
        out.update({k: _jsonable(v) for k, v in self.details.items()})
        return out


def _jsonable(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        return [_jsonable(x) for x in v]
    return str(v)


class NotPointed(ZetaError):
    reason = "not_pointed"


class KernelMeetsCone(ZetaError):
    reason = "kernel_meets_cone"


class SpecializationCollapse(ZetaError):
    reason = "specialization_collapse"


class PoleHit(ZetaError):
    reason = "pole_hit"


class NotInRingM(ZetaError):
    reason = "not_in_ring_M"


class ZeroPolynomial(ZetaError):
    reason = "zero_polynomial"


class NotInSubspace(ZetaError):
    reason = "not_in_subspace"


class DimensionMismatch(ZetaError):
    reason = "dimension_mismatch"


class DegenerateFamily(ZetaError):
    reason = "degenerate_family"


class BadPrime(ZetaError):
    reason = "bad_prime"


class NotUnimodular(ZetaError):
    reason = "not_unimodular"


class TooLarge(ZetaError):
    reason = "too_large"


class InvalidInput(ZetaError):
    reason = "invalid_input"
