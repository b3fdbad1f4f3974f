"""Named error types shared across the package."""


class PolarcoverError(Exception):
    """Base class for all library errors."""


class ResourceCapExceeded(PolarcoverError):
    """A predicted enumeration or matrix size exceeds the configured cap."""

    def __init__(self, predicted, cap):
        self.predicted = predicted
        self.cap = cap
        super().__init__(f"predicted size {predicted} exceeds cap {cap}")


class QNotOneModFour(PolarcoverError):
    """The sign construction requires q = 1 mod 4; skew case unsupported."""

    def __init__(self, q):
        self.q = q
        super().__init__(f"q = {q} is not congruent to 1 mod 4")


class EigenvalueOutsideField(PolarcoverError):
    """An eigenvalue is not expressible as a + b*sqrt(q)."""


class RepeatedEigenvalue(PolarcoverError):
    """The intersection matrix L_1 has a repeated eigenvalue."""


class SchemeAxiomError(PolarcoverError):
    """Base class for association-scheme axiom violations (carries a witness)."""


class NotAPartition(SchemeAxiomError):
    pass


class IdentityNotR0(SchemeAxiomError):
    pass


class NotSymmetric(SchemeAxiomError):
    def __init__(self, relation, witness=None):
        self.relation = relation
        self.witness = witness
        super().__init__(f"relation {relation} is not symmetric (witness {witness})")


class NonConstant(SchemeAxiomError):
    def __init__(self, i, j, k, witness):
        self.i, self.j, self.k = i, j, k
        self.witness = witness
        super().__init__(
            f"p[{i}][{j}]^{k} is not constant over pairs (witness pair {witness})"
        )
