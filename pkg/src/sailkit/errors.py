"""Shared exception types.

Plain bad arguments raise ValueError throughout the package; the classes here
cover the two failure modes that callers are expected to branch on.
"""


class CapExceededError(RuntimeError):
    """A configured resource cap (length, size, or search budget) was hit.

    Caps fail loudly rather than truncating: a result computed under a cap
    would silently look like a smaller exact answer.
    """


class ObstructionError(RuntimeError):
    """A decomposition builder found a structural obstruction.

    Carries the path component and the offending star nodes; hitting this
    means the input graph contains a sail-like structure the builder's
    width bound does not cover.
    """

    def __init__(self, message, component=(), stars=()):
        super().__init__(message)
        self.component = tuple(component)
        self.stars = tuple(stars)
