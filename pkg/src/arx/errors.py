"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
1 for mathematical-domain refusals, 2 for invalid input, 3 for
characteristic/scale limitations of the engine.
"""


class ArxError(Exception):
    exit_code = 1


# -- invalid input (exit 2) -------------------------------------------------

class InputError(ArxError):
    exit_code = 2


class FieldMismatch(InputError):
    pass


class ShapeError(InputError):
    pass


class InvalidCategory(InputError):
    pass


class InvalidQuiver(InputError):
    pass


class InvalidGroup(InputError):
    pass


class CategoryMismatch(InputError):
    pass


class InvalidObject(InputError):
    pass


class InvalidModule(InputError):
    pass


# -- mathematical domain (exit 1) -------------------------------------------

class NoSolution(ArxError):
    """Raised by :func:`arx.exactla.solve_right` when ``a X = b`` is inconsistent."""


class IsProjective(ArxError):
    pass


class NotIndecomposable(ArxError):
    pass


class NotFiniteDimensional(ArxError):
    pass


class WrongBackend(ArxError):
    pass


class UnknownBackendRule(ArxError):
    pass


class InternalError(ArxError):
    """A constructed object failed re-validation; indicates a bug upstream."""


# -- unsupported characteristic / scale (exit 3) ----------------------------

class UnsupportedError(ArxError):
    exit_code = 3


class RadicalNotComputable(UnsupportedError):
    pass


class NonSemisimpleEnd(UnsupportedError):
    pass


class CharacteristicUnsupported(UnsupportedError):
    pass


class ScaleExceeded(UnsupportedError):
    pass
