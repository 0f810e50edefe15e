from lie_stability.cli.main import CommandRequest, CommandResult, UsageError, main, run
from lie_stability.cli.quadrature import GridTooSmallError, QuadratureResult, verify_quadrature

__all__ = [
    "CommandRequest",
    "CommandResult",
    "UsageError",
    "main",
    "run",
    "GridTooSmallError",
    "QuadratureResult",
    "verify_quadrature",
]
