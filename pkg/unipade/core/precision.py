"""
Working-precision contexts.

mpmath raises a context's precision temporarily inside solvers and root finders, so
contexts are cached per thread and never shared across workers.
"""
import math
import threading

from mpmath import MPContext

MIN_PRECISION = 53
DEFAULT_PRECISION = 53
CONSTRUCTOR_PRECISION = 256

_local = threading.local()


def get_context(bits: int) -> MPContext:
    if not isinstance(bits, int) or bits < MIN_PRECISION:
        raise ValueError(f"Precision must be an integer >= {MIN_PRECISION} bits.")
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    ctx = cache.get(bits)
    if ctx is None:
        ctx = MPContext()
        ctx.prec = bits
        cache[bits] = ctx
    return ctx


def zero_threshold(bits: int):
    """Relative threshold 2^-(bits/2) used for degree detection and coprimality."""
    ctx = get_context(bits)
    return ctx.ldexp(ctx.mpf(1), -(bits // 2))


def working_tolerance(bits: int):
    """2^-(bits-10): the round-trip tolerance for exact-in-theory operations."""
    ctx = get_context(bits)
    return ctx.ldexp(ctx.mpf(1), -(bits - 10))


def decimal_digits(bits: int) -> int:
    return int(bits * math.log10(2)) + 1


def to_mpc(ctx: MPContext, value):
    """
    Converts numbers, decimal strings and [re, im] pairs into a context complex.
    """
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"Complex pair must have two entries, got {value!r}.")
        return ctx.mpc(ctx.mpf(value[0]), ctx.mpf(value[1]))
    if isinstance(value, str):
        real, imag = split_complex(value)
        return ctx.mpc(ctx.mpf(real), ctx.mpf(imag))
    return ctx.mpc(value)


def split_complex(text: str) -> tuple:
    """
    "a+bi", "a-bj", "bi" or "a" as decimal strings (real, imag), so each part is
    read at the full context precision.
    """
    text = text.replace(" ", "")
    if not text:
        raise ValueError("Empty complex literal.")
    if text[-1] not in "ij":
        return text, "0"
    body = text[:-1]
    split = 0
    for i in range(len(body) - 1, 0, -1):
        if body[i] in "+-" and body[i - 1] not in "eE":
            split = i
            break
    real, imag = (body[:split], body[split:]) if split else ("0", body)
    if imag in ("", "+", "-"):
        imag += "1"
    return real, imag


def is_finite(ctx: MPContext, value) -> bool:
    return not (ctx.isinf(value) or ctx.isnan(value))
