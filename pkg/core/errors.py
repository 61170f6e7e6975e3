"""Exception hierarchy shared by the algebra, the rules and the model loader."""


class BVError(Exception):
    """Base class for every error raised by this package."""


class SignatureError(BVError):
    """Unknown generator, invalid generator spec, or mixed signatures."""


class DegreeError(BVError):
    """A homogeneous element was required but a mixed one was given."""


class DomainError(BVError):
    """An operation was applied outside the factor it is defined on."""


class ModelIncompleteError(BVError):
    """A rule needs a table entry (σ*, hur, B_ΩG, action, Samelson) that is missing."""


class SchemaError(BVError):
    """A model file does not match the schema."""


class ExpressionError(BVError):
    """An element expression could not be parsed."""
