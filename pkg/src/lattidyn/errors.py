"""Exception hierarchy.

Every domain error derives from :class:`LattidynError`.  Errors that mean a
configured budget ran out derive from :class:`BudgetError` instead of
:class:`ValidationError`; the CLI maps the two families to different exit
codes.
"""


class LattidynError(Exception):
    """Base class for all library errors."""

    code = "error"

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class ValidationError(LattidynError):
    code = "validation_error"


class BudgetError(LattidynError):
    code = "budget_exceeded"


class ParseError(LattidynError):
    code = "parse_error"


# core lattice
class CycleDetected(ValidationError):
    code = "cycle_detected"

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("order relation has a cycle: " + " <= ".join(self.cycle))

    def to_json(self):
        return {**super().to_json(), "cycle": self.cycle}


class EmptyPoset(ValidationError):
    code = "empty_poset"


class PosetTooLarge(BudgetError):
    code = "poset_too_large"


class MixedPosets(ValidationError):
    code = "mixed_posets"


class NotADownset(ValidationError):
    code = "not_a_downset"


class NotALattice(ValidationError):
    code = "not_a_lattice"


class NotDistributive(NotALattice):
    code = "not_distributive"


class NotBounded(NotALattice):
    code = "not_bounded"


class ZeroEqualsOne(NotALattice):
    code = "zero_equals_one"


# covers
class NotACover(ValidationError):
    code = "not_a_cover"


class NotProperMaximal(ValidationError):
    code = "not_proper_maximal"


class DuplicateInputs(ValidationError):
    code = "duplicate_inputs"


# dynamics
class NotMonotone(ValidationError):
    code = "not_monotone"


class NotOrderAutomorphism(ValidationError):
    code = "not_order_automorphism"


class NegativeDepth(ValidationError):
    code = "negative_depth"


class NotStabilized(BudgetError):
    code = "not_stabilized"


class NotExpansivityCover(ValidationError):
    code = "not_expansivity_cover"


class SquareNotExpansivityCover(NotExpansivityCover):
    code = "square_not_expansivity_cover"


class NotPositiveExpansivityCover(ValidationError):
    code = "not_positive_expansivity_cover"


class NotPositivelyExpansive(ValidationError):
    code = "not_positively_expansive"


class NotExpansive(ValidationError):
    code = "not_expansive"


class SearchCapExceeded(BudgetError):
    code = "search_cap_exceeded"


# shift
class NotLowerComplete(ValidationError):
    code = "not_lower_complete"

    def __init__(self, subset, lower_bounds):
        self.subset = sorted(subset)
        self.lower_bounds = sorted(lower_bounds)
        super().__init__(
            f"subset {self.subset} has maximal lower bounds {self.lower_bounds} "
            "but no greatest lower bound"
        )

    def to_json(self):
        return {**super().to_json(), "subset": self.subset, "lower_bounds": self.lower_bounds}


class LengthMismatch(ValidationError):
    code = "length_mismatch"


class WindowNotSymmetric(ValidationError):
    code = "window_not_symmetric"


class BudgetExceeded(BudgetError):
    code = "budget_exceeded"


# topology
class NotATopology(ValidationError):
    code = "not_a_topology"


class NotContinuous(ValidationError):
    code = "not_continuous"


class NotHomeomorphism(ValidationError):
    code = "not_homeomorphism"
