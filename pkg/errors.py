"""
Exception hierarchy shared by every genent module
"""


class GenentError(Exception):
    """Base class for all library errors"""


class DimensionError(GenentError, ValueError):
    """Shapes, tensor dims or sizes that do not fit together"""


class NotHermitianError(DimensionError):
    """An operator flagged or required Hermitian is not"""


class ConvergenceError(GenentError, RuntimeError):
    """An iterative routine hit its iteration cap"""

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class CertificateError(GenentError, ValueError):
    """A CP certificate, ensemble reconstruction or reference state check failed"""


class UnsupportedAlgebraError(GenentError, ValueError):
    """The requested computation is not available for this algebra"""


class ConfigError(GenentError, ValueError):
    """Invalid run configuration; `field` names the offending key"""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
