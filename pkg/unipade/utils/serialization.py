"""
orjson encoders for results.

Complex numbers are written as [re, im]: floats in plain mode, decimal strings at the
full working precision in exact mode. Keys are sorted so artifacts are byte-stable.
"""
import orjson

from ..core.extended import is_infinite
from ..core.precision import decimal_digits, get_context
from ..core.series import PowerSeries

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS


def dumps(document) -> bytes:
    return orjson.dumps(document, option=JSON_OPTIONS)


def number(value, precision: int = None, exact: bool = False):
    """A real mpf/float as float, or as a decimal string when exact."""
    if value is None:
        return None
    if exact and precision:
        ctx = get_context(precision)
        return ctx.nstr(ctx.mpf(value), decimal_digits(precision))
    return float(value)


def complex_value(value, precision: int = None, exact: bool = False):
    if value is None:
        return None
    if is_infinite(value):
        return "inf"
    if exact and precision:
        ctx = get_context(precision)
        value = ctx.mpc(value)
        digits = decimal_digits(precision)
        return [ctx.nstr(value.real, digits), ctx.nstr(value.imag, digits)]
    value = complex(value)
    return [value.real, value.imag]


def series_to_dict(series, exact: bool = False) -> dict:
    """{"center", "coeffs", "precision_bits"}; also used for polynomials."""
    p = series.precision
    return {
        "center": complex_value(series.center, p, exact),
        "coeffs": [complex_value(c, p, exact) for c in series.coeffs],
        "precision_bits": p,
    }


def polynomial_to_dict(polynomial, exact: bool = False) -> dict:
    return {**series_to_dict(polynomial, exact), "degree": polynomial.degree}


def rational_to_dict(r, exact: bool = False) -> dict:
    if not hasattr(r, "denominator"):
        return {"numerator": polynomial_to_dict(r, exact), "denominator": None}
    return {
        "numerator": polynomial_to_dict(r.numerator, exact),
        "denominator": polynomial_to_dict(r.denominator, exact),
    }


def pade_result_to_dict(result, exact: bool = False) -> dict:
    p = result.precision
    return {
        "p": result.index.p,
        "q": result.index.q,
        "center": complex_value(result.center, p, exact),
        "hankel_determinant": complex_value(result.hankel, p, exact),
        "residual": number(result.residual, p, exact),
        "precision_bits": p,
        "value": rational_to_dict(result.value, exact),
    }


def transcript_to_dict(transcript, exact: bool = True) -> dict:
    p = transcript.precision
    return {
        "center": complex_value(transcript.center, p, exact),
        "precision_bits": p,
        "mode": transcript.mode,
        "order": transcript.order,
        "recorded_indices": list(transcript.recorded_indices),
        "steps": [
            {
                "n": step.n,
                "system": step.system,
                "k": step.k,
                "p": step.p,
                "t": step.t,
                "shift": step.shift,
                "pair": list(step.pair),
                "c": complex_value(step.c, p, exact),
                "fit_degree": step.fit_degree,
                "fit_error": number(step.fit_error, p, exact),
                "error": number(step.error, p, exact),
                "budget": number(step.budget, p, exact),
                "block": polynomial_to_dict(step.block, exact),
            }
            for step in transcript.steps
        ],
        "coeffs": [complex_value(c, p, exact) for c in transcript.series().coeffs],
    }


def invariant_checks_to_list(checks) -> list:
    return [
        {
            "n": c.n,
            "k": c.k,
            "p": c.p,
            "q": c.q,
            "pivot": c.pivot,
            "zero_block": c.zero_block,
            "pade_equals_partial_sum": c.pade_equals_partial_sum,
            "gap": number(c.gap),
        }
        for c in checks
    ]


def verdict_to_dict(verdict) -> dict:
    return {
        "found": verdict.found,
        "n": verdict.n,
        "p": verdict.p,
        "metric": verdict.metric,
        "threshold": number(verdict.threshold),
        "searched": verdict.searched,
        "max_margin_K": number(verdict.max_margin_K),
        "max_margin_L": number(verdict.max_margin_L),
        "margins": [
            {"q": m.q, "member": m.member, "margin_K": number(m.margin_K), "margin_L": number(m.margin_L)}
            for m in verdict.margins
        ],
    }


def witness_to_dict(report, exact: bool = True) -> dict:
    precision = getattr(report.witness, "precision", None)
    return {
        "kind": report.kind,
        "passed": report.passed,
        "k": report.k,
        "ps": list(report.ps),
        "qs": list(report.qs),
        "t": report.t,
        "d": complex_value(report.d, precision, exact),
        "epsilon": number(report.epsilon),
        "threshold": number(report.threshold),
        "fit_degree": report.fit_degree,
        "pole_margin": number(report.pole_margin),
        "margins": {name: number(value) for name, value in report.margins.items()},
        "memberships": [
            {
                "center": complex_value(m.center),
                "p": m.p,
                "q": m.q,
                "regime": m.regime,
                "member": m.member,
                "identity_holds": m.identity_holds,
            }
            for m in report.memberships
        ],
        "witness": rational_to_dict(report.witness, exact),
    }


def span_to_dict(series, report, exact: bool = True) -> dict:
    p = series.precision
    return {
        "depth": report.depth,
        "passed": report.passed,
        "nested": report.nested,
        "non_normal_steps": list(report.non_normal),
        "span_coefficients": [complex_value(a, p, exact) for a in report.coefficients],
        "checks": [
            {
                "n": c.n,
                "k": c.k,
                "p": c.p,
                "margin": number(c.margin),
                "budget": number(c.budget),
                "normal": c.normal,
                "zero_block": c.zero_block,
                "pade_matches": list(c.pade_matches),
            }
            for c in report.checks
        ],
        "reserved_indices": [list(indices) for indices in report.reserved_indices],
        "levels": [transcript_to_dict(level, exact) for level in report.levels],
        "coeffs": [complex_value(c, p, exact) for c in series.coeffs],
    }


def _parse_value(ctx, value):
    if isinstance(value, (list, tuple)):
        return ctx.mpc(ctx.mpf(value[0]), ctx.mpf(value[1]))
    return ctx.mpc(value)


def series_from_dict(document: dict):
    """Reads the series back from a transcript or span document written in exact mode."""
    precision = document.get("precision_bits")
    if precision is None:
        precision = document["levels"][0]["precision_bits"]
    ctx = get_context(precision)
    center = document.get("center")
    if center is None:
        center = document["levels"][0]["center"]
    coefficients = tuple(_parse_value(ctx, c) for c in document["coeffs"])
    return PowerSeries(coefficients, _parse_value(ctx, center), precision)
