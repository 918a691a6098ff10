"""Error definitions for the SJA toolkit.

Every error carries an ``exit_code`` used by the CLI:
1 for usage problems, 2 for failed verifications and 3 for internal failures.
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple


class SJAError(Exception):
    """Base exception for all toolkit errors."""

    exit_code: int = 3


class InvalidInputError(SJAError):
    """Raised when a parameter fails validation before any computation starts."""

    exit_code = 1

    def __init__(self, parameter: str, value: Any, reason: str, message: Optional[str] = None):
        self.parameter = parameter
        self.value = value
        self.reason = reason
        super().__init__(message or f"Invalid {parameter}={value!r}: {reason}")


class DomainViolation(InvalidInputError):
    """Raised when a point lies outside the valuation domain."""

    def __init__(self, point: Sequence[float], lower: float = 0.0, upper: float = 1.0):
        self.point = tuple(float(v) for v in point)
        self.lower = lower
        self.upper = upper
        super().__init__("point", self.point, f"coordinates must lie in [{lower}, {upper}]")


class RecursionDepthError(InvalidInputError):
    """Raised when the volume recursion is asked for an order above the hard cap."""

    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(
            "order",
            order,
            "recursion depth unsupported",
            message=f"recursion depth unsupported: order {order} exceeds cap {cap}",
        )


class NoSolutionInBracket(SJAError):
    """Raised when the bisection bracket does not straddle the slice condition."""

    def __init__(self, order: int, lower: float, upper: float, target: float):
        self.order = order
        self.lower = lower
        self.upper = upper
        self.target = target
        super().__init__(
            f"no solution in bracket [{lower}, {upper}] for order {order} (target volume {target})"
        )


class UnsupportedOrderError(SJAError):
    """Raised when no defining polynomial exists for the requested order."""

    exit_code = 1

    def __init__(self, order: int, items: Optional[int] = None):
        self.order = order
        self.items = items
        detail = f" with m={items}" if items is not None else ""
        super().__init__(f"unsupported order r={order}{detail}")


class GridMisalignedError(InvalidInputError):
    """Raised when the certificate grid is not a multiple of m+1."""

    def __init__(self, grid: int, items: int):
        self.grid = grid
        self.items = items
        super().__init__(
            "grid",
            grid,
            "grid misaligned",
            message=f"grid misaligned: N={grid} is not a multiple of m+1={items + 1}",
        )


class HallViolation(SJAError):
    """Raised when a maximum matching cannot saturate a required side.

    ``witness`` is a node set on the side that must be saturated whose
    neighbourhood ``neighbours`` is strictly smaller.
    """

    exit_code = 2

    def __init__(self, side: str, witness: List[int], neighbours: List[int]):
        self.side = side
        self.witness = witness
        self.neighbours = neighbours
        super().__init__(
            f"Hall violation on {side} side: {len(witness)} nodes "
            f"with only {len(neighbours)} neighbours"
        )


class InfeasibleColoringError(SJAError):
    """Raised when a line of cubes carries too few cubes of its own color."""

    exit_code = 2

    def __init__(self, axis: int, line: Tuple[int, ...], count: int, required: int):
        self.axis = axis
        self.line = line
        self.count = count
        self.required = required
        super().__init__(
            f"Infeasible coloring: line {line} along axis {axis} has {count} "
            f"cubes of color {axis + 1}, needs {required}"
        )


class CertificationError(SJAError):
    """Raised when a certificate check fails; names the condition and the cell."""

    exit_code = 2

    def __init__(
        self,
        condition: str,
        residual: float,
        bound: float,
        cell: Optional[Tuple[int, ...]] = None,
        certificate: Optional[Dict[str, Any]] = None,
    ):
        self.condition = condition
        self.residual = residual
        self.bound = bound
        self.cell = cell
        self.certificate = certificate
        where = f" at cell {cell}" if cell is not None else ""
        super().__init__(
            f"Certification failed: {condition}{where} residual {residual:.6g} exceeds {bound:.6g}"
        )


class SearchSpaceTooLarge(InvalidInputError):
    """Raised when an exhaustive deficiency search exceeds its enumeration bounds."""

    def __init__(self, dim: int, grid: int, candidates: Optional[int], limit: int):
        self.dim = dim
        self.grid = grid
        self.candidates = candidates
        self.limit = limit
        needed = candidates if candidates is not None else "unbounded"
        super().__init__(
            "mode",
            "exhaustive",
            "search space too large",
            message=(
                f"search space too large: dim={dim} grid={grid} "
                f"needs {needed} candidates (limit {limit})"
            ),
        )


class NonRegularDistributionError(SJAError):
    """Raised when the regular-case dual is requested for a non-regular density."""

    exit_code = 2

    def __init__(self, name: str, intervals: List[Tuple[float, float]]):
        self.name = name
        self.intervals = intervals
        super().__init__(
            f"non-regular: use nonregular_demo ({name} decreases on {len(intervals)} intervals)"
        )


class RootBracketError(SJAError):
    """Raised when a root finder is handed an interval without a sign change."""

    def __init__(self, function: str, lower: float, upper: float):
        self.function = function
        self.lower = lower
        self.upper = upper
        super().__init__(f"Root of {function} not bracketed by [{lower}, {upper}]")
