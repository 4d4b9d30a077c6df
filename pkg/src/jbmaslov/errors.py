"""Exception hierarchy. The CLI maps each class to an exit code."""


class JBMaslovError(Exception):
    exit_code = 3


class InputError(JBMaslovError, ValueError):
    """Malformed input: wrong shapes, broken invariants, bad documents."""

    exit_code = 1


class DimensionError(InputError):
    pass


class StructureError(InputError):
    """A matrix that should lie in Sigma (or a frame that should be Lagrangian) does not."""


class AdmissibilityError(InputError):
    """An arc endpoint sits on the spectrum, or a spectral subset is not a union of clusters."""


class UncertifiedError(JBMaslovError):
    exit_code = 2


class NumericalError(JBMaslovError):
    """Eigen kernel failure or a sampling refinement that did not converge."""

    exit_code = 3
