"""Exception hierarchy for filmseries."""


class FilmSeriesError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FilmSeriesError, ValueError):
    """An argument lies outside the domain of the function."""


class DegeneracyError(FilmSeriesError, ArithmeticError):
    """A denominator or prefactor is too close to zero to divide by."""


class DegenerateGError(DegeneracyError):
    """|G(q_n)| fell below the configured floor for some series term."""

    def __init__(self, n, value, floor):
        self.n = n
        self.value = value
        self.floor = floor
        super().__init__(f"|G(q_{n})| = {abs(value):.3e} is below the floor {floor:.1e}")


class UndefinedMetricError(FilmSeriesError, ValueError):
    """The tabulated residual percentage is undefined at this q."""


class SearchExhaustedError(FilmSeriesError, RuntimeError):
    """The root scan ended before the requested number of roots was found."""

    def __init__(self, requested, found, q_max):
        self.requested = requested
        self.found = found
        self.q_max = q_max
        super().__init__(
            f"found only {found} of {requested} roots in (0, {q_max:.6g}]"
        )


class InsufficientRootsError(FilmSeriesError, ValueError):
    """More series terms were requested than roots are available."""


class ConfigError(FilmSeriesError, ValueError):
    """A configuration file or command line could not be interpreted."""
