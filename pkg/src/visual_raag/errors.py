"""Exception types raised across the package."""


class VisualRaagError(Exception):
    """Base class for all errors raised by this package."""


class InputError(VisualRaagError):
    """Malformed graph, word, or file input."""


class LoopEdge(InputError):
    pass


class UnknownVertex(InputError):
    pass


class DuplicateEdge(InputError):
    pass


class LambdaNotInComplement(InputError):
    pass


class MixedComponents(VisualRaagError):
    pass


class VertexNotInLambda(VisualRaagError):
    pass


class VertexNotInStatedComponent(VisualRaagError):
    pass


class NotUniquePath(VisualRaagError):
    pass


class AmbientMismatch(VisualRaagError):
    pass


class WordTooLong(VisualRaagError):
    pass


class PreconditionR1(VisualRaagError):
    """A hull-based check was asked for while Lambda contains a cycle."""


class NotTriangleFree(VisualRaagError):
    pass


class NotSaturated(VisualRaagError):
    pass


class AssignmentTrivialImage(VisualRaagError):
    pass


class BadParams(VisualRaagError):
    pass


class TrimNonTermination(VisualRaagError):
    """trim() exceeded its iteration cap; indicates a bug, not bad input."""
