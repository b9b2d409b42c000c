"""Exception types raised by group construction and analysis."""


class GroupError(Exception):
    """Base class for all errors raised by this package."""


class OrderCapExceeded(GroupError):
    """A construction would produce a group larger than the configured cap."""


class InvalidAction(GroupError):
    """A semidirect-product action is not a homomorphism into Aut(kernel)."""


class RelationViolated(GroupError):
    """A declared relation word does not evaluate to the identity."""


class UnknownLabel(GroupError):
    """A word references a generator label the group does not define."""


class UnknownRelation(GroupError):
    """An unknown predicate id was requested for a transitivity check."""


class UnknownKind(GroupError):
    """A group spec node has an unrecognized kind."""


class BadAction(GroupError):
    """A spec's semidirect action block is malformed."""


class ParseError(GroupError):
    """A group spec or manifest document is malformed."""


class NotNormal(GroupError):
    """An operation requiring a normal subgroup received a non-normal one."""


class NotPrime(GroupError):
    """An operation requiring a prime received a composite number."""


class NotPGroup(GroupError):
    """An operation requiring a p-group received something else."""


class NotSolvable(GroupError):
    """An operation defined only for solvable groups received a non-solvable one."""


class SystemNotFound(GroupError):
    """No pairwise-permuting Sylow system was found (internal error for solvable input)."""
