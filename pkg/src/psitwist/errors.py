"""Exception hierarchy.  Each error carries a short stable label that the CLI
echoes verbatim and uses for its nonzero exit status."""


class PsitwistError(Exception):
    label = "error"

    def __init__(self, message=None):
        super().__init__(message or self.label)


class NotInvertibleError(PsitwistError):
    label = "not invertible"


class MissingCoefficientError(PsitwistError):
    label = "missing coefficient"


class PrimeBoundError(PsitwistError):
    label = "prime bound exceeded"


class BadReductionError(PsitwistError):
    label = "bad reduction"


class DivergentRegionError(PsitwistError):
    label = "divergent region"


class PoleHitError(PsitwistError):
    label = "pole hit"


class BoundUndefinedError(PsitwistError):
    label = "bound undefined"


class QuadratureError(PsitwistError):
    label = "quadrature failure"


class ContractionError(PsitwistError):
    label = "twist not p-adically contractive"


class InsufficientPrimeBoundError(PsitwistError):
    label = "insufficient prime bound"


class EmbeddingError(PsitwistError):
    label = "value not embeddable"


class LogDomainError(PsitwistError):
    label = "outside logarithm domain"
