class ParameterError(ValueError):
    """Bad arguments or violated preconditions."""


class ImproperColoringError(ValueError):
    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"adjacent vertices {pair[0]!r} and {pair[1]!r} share a color")


class InvalidPartitionError(ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"invalid ST-partition: {report.describe()}")


class Undetermined(RuntimeError):
    """A search budget fired before the answer was settled."""
