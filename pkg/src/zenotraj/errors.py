"""Exception hierarchy shared by the solvers and the command-line front end."""


class ConfigError(ValueError):
    """Invalid parameters or configuration (CLI exit code 1)."""


class StepSizeError(ConfigError):
    """A step-size guard was violated; the step must be reduced."""


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class NumericalError(RuntimeError):
    """A computation failed numerically (CLI exit code 2)."""


class InstabilityError(NumericalError):
    """Time stepping produced an unphysical amplitude."""


class ResolutionError(NumericalError):
    """A tabulated input is too coarse for the requested evaluation."""


class EnsembleError(NumericalError):
    """A trajectory inside an ensemble failed.

    Carries the failing trajectory ``index`` and the ``seed`` of the
    ensemble so that the run can be reproduced in isolation.
    """

    def __init__(self, message: str, index: int, seed: int):
        super().__init__(f"{message} (trajectory {index}, master seed {seed})")
        self.index = index
        self.seed = seed
