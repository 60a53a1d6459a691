"""
The extended complex plane: finite values plus the single point at infinity.
"""


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def is_infinite(value) -> bool:
    return value is INFINITY


def reciprocal(ctx, value):
    """1/0 = INFINITY and 1/INFINITY = 0."""
    if value is INFINITY:
        return ctx.mpc(0)
    value = ctx.mpc(value)
    if value == 0:
        return INFINITY
    return 1 / value
