"""Exception hierarchy.

Law violations in user-supplied structures are reported as data
(:class:`catkit.report.ValidationReport`); the exceptions here are for
calls whose preconditions do not hold.
"""


class CatkitError(Exception):
    """Base class for every error raised by catkit."""


class DomainMismatch(CatkitError):
    """Two maps, functors or transformations do not compose."""


class NotBijective(CatkitError):
    pass


class EnumerationTooLarge(CatkitError):
    def __init__(self, count, limit, what="items"):
        self.count = count
        self.limit = limit
        self.what = what
        super().__init__(f"enumeration of {what} needs {count} steps, guard limit is {limit}")


class InvalidInput(CatkitError):
    """An input structure failed validation; ``report`` carries the violations."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class NotUnivalent(CatkitError):
    pass


class NotAnIso(CatkitError):
    pass


class NotANatIso(CatkitError):
    def __init__(self, which, component):
        self.which = which
        self.component = component
        super().__init__(f"{which} is not a natural isomorphism: component at object {component} has no inverse")


class NotFullyFaithful(CatkitError):
    pass


class NotEssentiallySurjective(CatkitError):
    def __init__(self, unreachable):
        self.unreachable = list(unreachable)
        super().__init__(f"objects not in the essential image: {self.unreachable}")


class NoPathLift(CatkitError):
    """A chosen essential-surjectivity witness does not act on object paths."""


class InvalidAdjunction(CatkitError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class NotReflexive(CatkitError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"relation is not reflexive at {element}")


class NotTransitive(CatkitError):
    def __init__(self, a, b, c):
        self.witness = (a, b, c)
        super().__init__(f"relation is not transitive: {a} <= {b} <= {c} but not {a} <= {c}")


class DslError(CatkitError):
    """Syntax or resolution errors in a source file; ``diagnostics`` holds every positioned message."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


class MissingComposite(DslError):
    """Composable pairs without a ``compose`` entry; ``pairs`` lists them as ``(g, f)`` names."""

    def __init__(self, diagnostics, pairs):
        self.pairs = list(pairs)
        super().__init__(diagnostics)
