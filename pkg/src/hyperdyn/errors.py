"""Exception hierarchy shared by all modules."""


class HyperdynError(Exception):
    """Base class for every error raised by this package."""


class MalformedTableError(HyperdynError, ValueError):
    """A distance table that is not square or does not match the point count."""


class MetricAxiomError(HyperdynError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0] if self.violations else None
        super().__init__(f"metric axiom violated: {first}")


class EmptySetError(HyperdynError, ValueError):
    """An operation that needs a non-empty set received an empty one."""


class NotBijectionError(HyperdynError, ValueError):
    def __init__(self, index, image):
        self.index = index
        self.image = tuple(image)
        super().__init__(f"generator {index} is not a bijection: {list(image)}")


class NonCommutingError(HyperdynError, ValueError):
    def __init__(self, pair, point):
        self.pair = pair
        self.point = point
        super().__init__(
            f"generators {pair[0]} and {pair[1]} do not commute at point {point}"
        )


class GeneratorIndexError(HyperdynError, IndexError):
    pass


class NonAbelianError(HyperdynError, ValueError):
    pass


class HyperspaceSizeError(HyperdynError, ValueError):
    def __init__(self, points, cap):
        self.points = points
        self.cap = cap
        super().__init__(
            f"base space has {points} points; hyperspace cap is {cap} "
            f"({2**cap - 1} elements)"
        )


class EmptyShiftError(HyperdynError, ValueError):
    pass


class NoPeriodicPointsError(HyperdynError, ValueError):
    def __init__(self, period, trace):
        self.period = period
        self.trace = trace
        super().__init__(f"no points of period dividing {period} (trace = {trace})")


class WitnessError(HyperdynError, ValueError):
    def __init__(self, index, message):
        self.index = index
        super().__init__(f"index {index}: {message}")


class UnknownSystemError(HyperdynError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown system"


class ConfigError(HyperdynError, ValueError):
    """Collects every located problem found in a config text."""

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(str(issue) for issue in self.issues))
