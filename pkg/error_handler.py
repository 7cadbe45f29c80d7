"""
Error Handler - Exception hierarchy, categorization and exit codes
Every failure the toolkit can report is a CharkitError subclass
"""
from enum import Enum
from typing import Any, Dict, List, Optional

from constants import EXIT_CODES


class CharkitError(Exception):
    """Base class for all toolkit errors"""


class InvalidCharacteristic(CharkitError, ValueError):
    """Modulus is not a prime below 2^31"""


class DivisionByZero(CharkitError, ZeroDivisionError):
    """Inverse of zero, or a colon by the zero element/ideal"""


class RingMismatch(CharkitError, ValueError):
    """Operands live in different polynomial rings"""


class EmptyVariety(CharkitError, ValueError):
    """Dimension requested for the unit ideal"""


class InvalidFrobeniusPower(CharkitError, ValueError):
    """Bracket exponent is not a power of the characteristic"""


class ZeroModule(CharkitError, ValueError):
    """Operation undefined on the zero module"""


class InvalidRange(CharkitError, ValueError):
    """Exponent window is empty or reversed"""


class NotACocycle(CharkitError, ValueError):
    """Koszul representative is not closed"""


class InvalidTestElement(CharkitError, ValueError):
    """Claimed test element is zero in the working ring"""


class InvalidSuitableData(CharkitError, ValueError):
    """Parameter data fails the suitability contract"""


class NotPrimary(CharkitError, ValueError):
    """Ideal is not primary to the maximal ideal (infinite colength)"""


class HypothesisFailed(CharkitError):
    """A checker's stated hypothesis does not hold on the instance"""


class NotASubideal(CharkitError, ValueError):
    """Candidate reduction is not contained in the ideal"""


class ResourceLimitExceeded(CharkitError):
    """Configured computation cap was hit"""

    def __init__(self, message: str, partial_rows: Optional[List[Dict[str, Any]]] = None):
        super().__init__(message)
        self.partial_rows = list(partial_rows or [])


class ScriptError(CharkitError):
    """Error located in a .ck script"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        location = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{location}{message}")


class ScriptSyntaxError(ScriptError):
    """Malformed script text"""


class UndeclaredIdentifier(ScriptError):
    """Reference to a name that was not declared earlier"""


class CharacteristicMismatch(ScriptError):
    """Objects over different prime fields combined"""


class ErrorCategory(Enum):
    """Error categories"""
    PARSE_ERROR = "parse_error"  # Script could not be parsed or resolved
    HYPOTHESIS_FAILED = "hypothesis_failed"  # Checker preconditions violated
    RESOURCE_LIMIT = "resource_limit"  # Step or length cap reached
    USER_ERROR = "user_error"  # Invalid mathematical input
    SYSTEM_ERROR = "system_error"  # Anything else


class ErrorHandler:
    """Maps exceptions to categories, exit codes and report payloads"""

    def categorize_error(self, error: Exception) -> ErrorCategory:
        """
        Categorize error type

        Args:
            error: Exception to categorize

        Returns:
            Error category
        """
        if isinstance(error, ScriptError):
            return ErrorCategory.PARSE_ERROR
        if isinstance(error, HypothesisFailed):
            return ErrorCategory.HYPOTHESIS_FAILED
        if isinstance(error, ResourceLimitExceeded):
            return ErrorCategory.RESOURCE_LIMIT
        if isinstance(error, (CharkitError, ValueError, KeyError)):
            return ErrorCategory.USER_ERROR
        return ErrorCategory.SYSTEM_ERROR

    def exit_code(self, error: Exception) -> int:
        """Process exit status for an error"""
        return EXIT_CODES[self.categorize_error(error).value]

    def format_error_response(self, error: Exception, context: Optional[Dict] = None) -> Dict:
        """
        Format error for a report or stderr

        Args:
            error: Exception
            context: Optional context information

        Returns:
            Formatted error response
        """
        category = self.categorize_error(error)

        response = {
            'error': True,
            'error_type': category.value,
            'error_class': type(error).__name__,
            'message': str(error),
            'exit_code': EXIT_CODES[category.value],
        }
        if isinstance(error, ScriptError) and error.line:
            response['line'] = error.line
            response['column'] = error.column
        if context:
            response['context'] = context
        return response
