"""Exception types shared across the library."""

from __future__ import annotations


class FrameError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(FrameError):
    pass


class FieldMismatch(FrameError):
    """Real and complex objects were mixed in one computation."""


class ZeroSubspace(FrameError):
    """A spanning set had numerical rank zero."""


class NotHermitian(FrameError):
    def __init__(self, residual: float, message: str | None = None):
        self.residual = float(residual)
        super().__init__(
            message or f"matrix is not Hermitian (relative residual {self.residual:.3e})"
        )


class NotPSD(FrameError):
    def __init__(self, eigenvalue: float, message: str | None = None):
        self.eigenvalue = float(eigenvalue)
        super().__init__(
            message or f"matrix has a negative eigenvalue {self.eigenvalue:.3e}"
        )


class SqrtGateFailed(FrameError):
    """The per-index Hermitian-PSD gate for square-root operators failed.

    ``index`` is 0-based; ``reason`` is ``"not_hermitian"`` or ``"not_psd"``
    and ``detail`` carries the offending residual or eigenvalue.
    """

    def __init__(self, index: int, detail: float, reason: str):
        self.index = int(index)
        self.detail = float(detail)
        self.reason = reason
        super().__init__(
            f"square-root gate failed at subspace index {index}: {reason} ({detail:.3e})"
        )


class NotAFrame(FrameError):
    pass


class SingularOperator(FrameError):
    pass


class HypothesisViolated(FrameError):
    """A verifier precondition failed; ``name`` says which residual."""

    def __init__(self, name: str, residual: float):
        self.name = name
        self.residual = float(residual)
        super().__init__(f"hypothesis '{name}' violated (residual {self.residual:.3e})")


class NotCSquared(FrameError):
    """The two control operators differ where a single-control frame is required."""


class NotSurjective(FrameError):
    """The synthesis operator does not have full row rank."""


class InvalidQDual(FrameError):
    pass


class InvalidParams(FrameError):
    pass


class ParseError(FrameError):
    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")


class MissingInput(FrameError):
    def __init__(self, block: str):
        self.block = block
        super().__init__(f"instance is missing the required '{block}' block")


class InvalidRange(FrameError):
    pass
