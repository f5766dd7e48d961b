"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """Input outside an operation's documented domain."""


class InvalidShapeError(DomainError):
    """Generator data does not describe a special metacyclic subgroup."""


class ApplicabilityError(DomainError):
    """A named construction's hypothesis is violated.

    Carries the violated hypothesis so callers (and the CLI) can name it.
    """

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        msg = f"hypothesis violated: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class UndecidableError(RuntimeError):
    """The encoded rule set cannot decide this membership query."""


class ResourceError(RuntimeError):
    """A resource cap would be exceeded; pass force=True to override."""
