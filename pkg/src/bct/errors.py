from __future__ import annotations


class ConstructionError(ValueError):
    """Input data does not define the requested object (bad table, non-normal subgroup, ...)."""


class TheoremViolation(AssertionError):
    """A structural claim failed on a concrete instance.

    ``check`` names the claim, ``witness`` carries whatever pinpoints the failure
    (a grading element, a generator, a pair of basis indices).
    """

    def __init__(self, check: str, message: str, witness: dict | None = None):
        super().__init__(f"{check}: {message}")
        self.check = check
        self.message = message
        self.witness = dict(witness or {})


class UnsupportedError(NotImplementedError):
    pass
