"""Small shared helpers: exact rationals in text, deterministic JSON, maps."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Callable, Sequence

_JSON_INT_LIMIT = 1 << 53


def parse_fraction(text: str) -> Fraction:
    """Parse an exact rational given as 'p', 'p/q', or a decimal literal."""
    return Fraction(text.strip())


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def jsonable(obj: Any) -> Any:
    """Recursively convert report values to JSON-safe, exact encodings.

    Fractions become 'p/q' strings; integers beyond 2**53 become decimal
    strings so consumers with float-backed JSON parsers stay exact.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= _JSON_INT_LIMIT else obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items)
        return [jsonable(v) for v in items]
    if hasattr(obj, "to_json_dict"):
        return jsonable(obj.to_json_dict())
    raise TypeError(f"cannot encode {type(obj).__name__} into a report")


def dump_json(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, exact values."""
    return json.dumps(jsonable(obj), indent=indent, sort_keys=True)


def pmap(fn: Callable, items: Sequence, workers: int = 1) -> list:
    """Map preserving order; with workers > 1 uses a process pool.

    Results are merged in input order, so the output is identical to the
    serial run regardless of worker count.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    import multiprocessing

    with multiprocessing.Pool(workers) as pool:
        return pool.map(fn, items)


def isqrt_enclosure(x: Fraction) -> tuple[Fraction, Fraction]:
    """Return rationals (lo, hi) with lo <= sqrt(x) <= hi and hi - lo <= 1e-12.

    Exact when x is a perfect square of a rational (then lo == hi).
    """
    if x < 0:
        raise ValueError("negative radicand")
    num, den = x.numerator, x.denominator
    import math

    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        root = Fraction(rn, rd)
        return root, root
    scale = 10**12
    lo = math.isqrt(num * den * scale * scale) // den
    return Fraction(lo, scale), Fraction(lo + 1, scale)
