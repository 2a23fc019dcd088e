"""Exception hierarchy shared by all photonbox modules."""


class PhotonBoxError(Exception):
    """Base class; ``module`` names the subsystem that raised."""

    module = "photonbox"

    def __str__(self):
        return f"[{self.module}] {super().__str__()}"


class DimensionMismatchError(PhotonBoxError, ValueError):
    module = "hilbert"


class HermiticityError(PhotonBoxError, ValueError):
    module = "hilbert"


class NormalizationError(PhotonBoxError, ValueError):
    module = "states"


class TruncationError(PhotonBoxError, ValueError):
    """Raised when a Fock truncation cannot meet the tail budget.

    ``required_dim`` carries the dimension that would be needed, when known.
    """

    module = "states"

    def __init__(self, message, required_dim=None):
        super().__init__(message)
        self.required_dim = required_dim


class GridError(PhotonBoxError, ValueError):
    """Resolution or boundary guard violated on a sampled grid."""

    module = "grid"


class ScenarioError(PhotonBoxError, ValueError):
    module = "cli"
