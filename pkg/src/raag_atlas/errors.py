"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input (unknown label, bad word, parse error)."""


class PreconditionError(ValueError):
    """A mathematical precondition does not hold for the given input."""


class InvariantViolation(RuntimeError):
    """An outcome that a proven statement rules out. Should never fire."""


class BallOverflow(RuntimeError):
    def __init__(self, cap: int, count: int):
        super().__init__(f"ball exceeded resource cap of {cap} vertices ({count} enumerated so far)")
        self.cap = cap
        self.count = count
