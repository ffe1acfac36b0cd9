"""Exception types shared across the package."""


class GreedyScError(Exception):
    """Base class for every error raised by this package."""


class ZeroVectorRow(GreedyScError):
    """A point row has (near-)zero norm and cannot be normalized."""

    def __init__(self, row):
        self.row = int(row)
        super().__init__(f"row {row} has norm below 1e-14 and cannot be normalized")


class RankDeficient(GreedyScError):
    """A vector set does not have the rank an operation requires."""

    def __init__(self, effective_rank, detail=""):
        self.effective_rank = int(effective_rank)
        msg = f"rank deficient (effective rank {effective_rank})"
        if detail:
            msg = f"{detail}: {msg}"
        super().__init__(msg)


class DimensionMismatch(GreedyScError):
    """Array shapes do not agree with the operation's contract."""


class AlreadyInSpan(GreedyScError):
    """The vector to append lies in the span of the existing basis."""


class TooFewSubspaces(GreedyScError):
    """At least two subspaces are required."""


class InvalidDims(GreedyScError):
    """Invalid (p, d, L, n) combination for a synthetic model."""


class AmbientTooSmall(GreedyScError):
    """Ambient dimension too small for the requested subspace arrangement."""


class InconsistentBases(GreedyScError):
    """Subspace bases do not share a common (p, d) shape."""


class BadParams(GreedyScError):
    """Invalid algorithm parameters or malformed input arrays."""


class ClassTooSmall(GreedyScError):
    """The query's class has fewer than K+1 members."""


class TooFewNeighbors(GreedyScError):
    """A neighborhood row has fewer entries than the subspace dimension."""

    def __init__(self, row):
        self.row = int(row)
        super().__init__(f"neighborhood row {row} has fewer than d entries")


class Exhausted(GreedyScError):
    """Every point was covered before the requested number of subspaces was picked.

    Carries the partial selection; `result` is attached with the partial
    labeling when raised through the composed recovery pipeline.
    """

    def __init__(self, subspaces, picked_indices):
        self.subspaces = subspaces
        self.picked_indices = picked_indices
        self.result = None
        super().__init__(
            f"only {len(picked_indices)} subspace estimate(s) could be picked "
            "before all points were covered"
        )


class LengthMismatch(GreedyScError):
    """Labelings or matrices do not agree in length."""


class BudgetExceeded(GreedyScError):
    """Predicted grid cost exceeds the configured budget."""

    def __init__(self, predicted, budget):
        self.predicted = float(predicted)
        self.budget = float(budget)
        super().__init__(
            f"predicted grid cost {predicted:.3g} exceeds budget {budget:.3g}; "
            "raise the budget or force"
        )


class TrialFailed(GreedyScError):
    """A Monte-Carlo trial aborted its cell."""

    def __init__(self, trial):
        self.trial = int(trial)
        super().__init__(f"trial {trial} failed")


class ParseError(GreedyScError):
    """A data file could not be parsed; names the offending line."""

    def __init__(self, path, line, reason):
        self.path = str(path)
        self.line = int(line)
        super().__init__(f"{path}:{line}: {reason}")
