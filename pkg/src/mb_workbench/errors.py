class WorkbenchError(Exception):
    """Base class of every error raised by mb_workbench."""

    exit_code = 1


class ParameterError(WorkbenchError, ValueError):
    """Inputs outside the admissible range of an operation."""

    exit_code = 1


class NumericalError(WorkbenchError, ArithmeticError):
    """A numerical procedure failed: divergence, pole, non-convergence or a missed tolerance."""

    exit_code = 2


class BudgetExceededError(WorkbenchError):
    """An enumeration, oracle or series would exceed its size budget."""

    exit_code = 3


def error_payload(exc: WorkbenchError) -> dict[str, object]:
    return {"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
