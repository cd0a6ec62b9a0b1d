"""Exception hierarchy shared by every module."""


class QtwoError(Exception):
    pass


class ConfigurationError(QtwoError):
    """An object refers to a setup (curve relation, map name) that is not registered."""


class PreconditionError(QtwoError, ValueError):
    pass


class IntegrityError(QtwoError):
    """Internal consistency check failed; signals an algebra bug or a bad rule table."""


class PrecisionError(QtwoError):
    pass


class SingularBasisError(QtwoError, ValueError):
    pass


class NotASquareError(QtwoError, ArithmeticError):
    pass
