"""Exception types raised by eigenwedge."""


class EigenwedgeError(Exception):
    """Base class for all library errors."""


class DomainError(EigenwedgeError, ValueError):
    """An argument lies outside the domain of the operation."""


class SizeError(DomainError):
    """Input too large for a brute-force routine."""


class ShapeError(DomainError):
    """Matrix dimensions do not match what the operation needs."""


class ZeroMatrixError(DomainError):
    """A nonzero matrix or vector was required."""


class RankError(DomainError):
    """A rank-one input turned out to have rank two or more."""


class NotDecomposableError(DomainError):
    """A wedge vector is not the wedge product of any list of vectors."""


class BiorthogonalityError(DomainError):
    """No dual basis exists: the pairing matrix is singular."""


class DefectiveEigenvalueError(DomainError):
    """Algebraic multiplicity exceeds geometric multiplicity."""


class MultiplicityTooLowError(DomainError):
    """adj_k(A - lam I) vanishes, so k is below the geometric multiplicity."""


class DegenerateSpectrumError(DomainError):
    """Two eigenvalues coincide where simple eigenvalues were required."""


class ConvergenceError(EigenwedgeError):
    """Iteration did not converge; carries the best iterate and its residual."""

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


class ParseError(EigenwedgeError, ValueError):
    """Malformed matrix document."""

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
        self.line = line
        self.column = column


class ConsistencyError(EigenwedgeError):
    """Two independent computations of the same quantity disagree."""
