"""
Error handling utilities and decorators.
Provides the exception hierarchy and consistent CLI exit codes.
"""
from functools import wraps
from typing import Any, Callable, Dict
import json
import logging
import sys

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class QuadLatError(Exception):
    """
    Base exception for quadlat errors.

    Attributes:
        message: Human-readable error message
        code: Error code for programmatic handling
        exit_code: Process exit code when raised out of a CLI command
    """

    default_code = 'QUADLAT_ERROR'
    default_exit_code = EXIT_INPUT_ERROR

    def __init__(self, message: str, code: str = None, exit_code: int = None):
        self.message = message
        self.code = code or self.default_code
        self.exit_code = self.default_exit_code if exit_code is None else exit_code
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """
        Converts exception to dictionary for the JSON diagnostic.

        Returns:
            Dict containing error, code, and exit_code
        """
        return {
            'error': self.message,
            'code': self.code,
            'exit_code': self.exit_code
        }


class FactorBoundExceeded(QuadLatError):
    """A residual cofactor survived trial division up to the configured bound."""
    default_code = 'FACTOR_BOUND_EXCEEDED'


class IsotropicVector(QuadLatError):
    """phi[h] = 0, so h has no orthogonal complement splitting."""
    default_code = 'ISOTROPIC_VECTOR'


class ZeroPairing(QuadLatError):
    """All pairings 2phi(h, b_i) vanish."""
    default_code = 'ZERO_PAIRING'


class NotASquare(QuadLatError):
    """An ideal expected to be a square has an odd valuation."""
    default_code = 'NOT_A_SQUARE'


class NotIntegral(QuadLatError):
    """A lattice is not integral with respect to the form."""
    default_code = 'NOT_INTEGRAL'


class NotMaximal(QuadLatError):
    """A supplied lattice is integral but not maximal."""
    default_code = 'NOT_MAXIMAL'


class UnsupportedDimension(QuadLatError):
    """The operation is defined only for other dimensions."""
    default_code = 'UNSUPPORTED_DIMENSION'


class DegenerateForm(QuadLatError):
    """The Gram matrix is singular or not symmetric."""
    default_code = 'DEGENERATE_FORM'


class InvalidPlace(QuadLatError):
    """A place is neither a rational prime nor the real place."""
    default_code = 'INVALID_PLACE'


class NotInOddPart(QuadLatError):
    """An element is not in the trace-zero part A+(W)°."""
    default_code = 'NOT_IN_ODD_PART'


class NotInvertible(QuadLatError):
    """An even element has norm zero."""
    default_code = 'NOT_INVERTIBLE'


class ClosureDiverged(QuadLatError):
    """The multiplicative closure did not stabilize within the round cap."""
    default_code = 'CLOSURE_DIVERGED'
    default_exit_code = 1


class PresentationNotFound(QuadLatError):
    """No Hilbert pair was found for a ramification set within the search bound."""
    default_code = 'PRESENTATION_NOT_FOUND'
    default_exit_code = 1


class InputError(QuadLatError):
    """Malformed instance file, Gram matrix or command-line input."""
    default_code = 'INVALID_INPUT'


class ConfigError(QuadLatError):
    """A QUADLAT_* environment variable is malformed or out of range."""
    default_code = 'CONFIG_ERROR'


def handle_errors(f: Callable[..., int]) -> Callable[..., int]:
    """
    Decorator to handle exceptions in CLI command handlers.
    Catches exceptions, prints a JSON diagnostic to stderr and returns an exit code.

    Args:
        f: The command handler to wrap (returns an exit code)

    Returns:
        Wrapped function with error handling
    """
    @wraps(f)
    def decorated_function(*args, **kwargs) -> int:
        try:
            return f(*args, **kwargs)
        except QuadLatError as e:
            logger.error(f"{e.code}: {e.message}")
            print(json.dumps(e.to_dict()), file=sys.stderr)
            return e.exit_code
        except Exception as e:
            logger.error(f"Unexpected error: {str(e)}", exc_info=True)
            print(json.dumps({
                'error': 'An unexpected error occurred',
                'code': 'INTERNAL_ERROR',
                'exit_code': EXIT_CHECK_FAILED
            }), file=sys.stderr)
            return EXIT_CHECK_FAILED

    return decorated_function
