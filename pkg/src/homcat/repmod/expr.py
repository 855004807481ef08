"""Module expressions: a small constructor language that can be evaluated on
any window, so the same module can be rebuilt at window N and N+1."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..combcat import CategorySpec, Morphism, WindowError
from ..exactla import Field


class ExprError(ValueError):
    """Malformed module expression."""


@dataclass(frozen=True)
class Free:
    i: int


@dataclass(frozen=True)
class Truncate:
    of: object
    n: int


@dataclass(frozen=True)
class Shift:
    of: object
    a: int


@dataclass(frozen=True)
class SubSpan:
    of: object
    gens: tuple  # ((object, coords), ...)


@dataclass(frozen=True)
class Quot:
    of: object
    sub: object  # a SubSpan over the same expression


@dataclass(frozen=True)
class Sum:
    parts: tuple


@dataclass(frozen=True)
class TorsionQuot:
    of: object
    m: int


@dataclass(frozen=True)
class Perturb:
    """Corrupt one entry of one generator matrix; used for negative fixtures."""

    of: object
    generator: Morphism
    row: int
    col: int
    delta: int = 1


def evaluate(expr, cat: CategorySpec, field: Field, window: int, _memo=None):
    """Build the module described by ``expr`` on objects ``0..window``."""
    from . import ops

    memo = {} if _memo is None else _memo
    key = (expr, window)
    if key in memo:
        return memo[key]
    if isinstance(expr, Free):
        V = ops.free_module(cat, expr.i, window, field)
    elif isinstance(expr, Truncate):
        V = ops.truncate(evaluate(expr.of, cat, field, window, memo), expr.n)
    elif isinstance(expr, Shift):
        V = ops.shift(evaluate(expr.of, cat, field, window + expr.a, memo), expr.a)
    elif isinstance(expr, SubSpan):
        base = evaluate(expr.of, cat, field, window, memo)
        V = ops.submodule_span(base, _gens_in_window(expr.gens, window)).module
    elif isinstance(expr, Quot):
        if not isinstance(expr.sub, SubSpan) or expr.sub.of != expr.of:
            raise ExprError("Quot needs a SubSpan of the same expression as its second argument")
        base = evaluate(expr.of, cat, field, window, memo)
        sub = ops.submodule_span(base, _gens_in_window(expr.sub.gens, window))
        V = ops.quotient(base, sub).module
    elif isinstance(expr, Sum):
        V = ops.direct_sum(*[evaluate(p, cat, field, window, memo) for p in expr.parts])
    elif isinstance(expr, TorsionQuot):
        V = ops.torsion_quotient(evaluate(expr.of, cat, field, window, memo), min(expr.m, window))
    elif isinstance(expr, Perturb):
        V = evaluate(expr.of, cat, field, window, memo).perturbed(expr.generator, expr.row, expr.col, expr.delta)
    else:
        raise ExprError(f"unknown expression node {expr!r}")
    V.expr = expr
    memo[key] = V
    return V


def _gens_in_window(gens, window):
    # generators above the window are invisible there; the submodule they
    # generate has no component at or below the window from them
    return [(j, v) for j, v in gens if j <= window]


def max_object(expr) -> int:
    """Largest object index mentioned explicitly (free generators, span generators)."""
    if isinstance(expr, Free):
        return expr.i
    if isinstance(expr, (Truncate, TorsionQuot, Perturb)):
        return max_object(expr.of)
    if isinstance(expr, Shift):
        return max_object(expr.of) - expr.a
    if isinstance(expr, SubSpan):
        return max([max_object(expr.of)] + [j for j, _ in expr.gens])
    if isinstance(expr, Quot):
        return max(max_object(expr.of), max_object(expr.sub))
    if isinstance(expr, Sum):
        return max(max_object(p) for p in expr.parts)
    raise ExprError(f"unknown expression node {expr!r}")


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _coord(x):
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return Fraction(x)
    raise ExprError(f"coordinate {x!r} must be an integer or a fraction string")


def _coord_json(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def expr_from_json(obj, cat: CategorySpec | None = None, path: str = "module"):
    if not isinstance(obj, dict) or "op" not in obj:
        raise ExprError(f"{path}: expected an object with an 'op' field")
    op = obj["op"]

    def need(key):
        if key not in obj:
            raise ExprError(f"{path}: {op} requires '{key}'")
        return obj[key]

    def sub(key):
        return expr_from_json(need(key), cat, f"{path}.{key}")

    if op == "Free":
        return Free(int(need("i")))
    if op == "Truncate":
        return Truncate(sub("of"), int(need("n")))
    if op == "Shift":
        return Shift(sub("of"), int(need("a")))
    if op == "SubSpan":
        gens = []
        for k, g in enumerate(need("generators")):
            if not isinstance(g, dict) or "object" not in g or "coords" not in g:
                raise ExprError(f"{path}.generators[{k}]: expected {{'object': j, 'coords': [...]}}")
            gens.append((int(g["object"]), tuple(_coord(x) for x in g["coords"])))
        return SubSpan(sub("of"), tuple(gens))
    if op == "Quot":
        return Quot(sub("of"), sub("sub"))
    if op == "Sum":
        parts = need("of")
        if not isinstance(parts, list) or not parts:
            raise ExprError(f"{path}: Sum needs a non-empty list 'of'")
        return Sum(tuple(expr_from_json(p, cat, f"{path}.of[{k}]") for k, p in enumerate(parts)))
    if op == "TorsionQuot":
        return TorsionQuot(sub("of"), int(need("m")))
    if op == "Perturb":
        g = need("generator")
        if cat is None:
            raise ExprError(f"{path}: Perturb needs the category to parse its generator")
        gen = cat.mor(int(g["source"]), int(g["target"]), g["payload"])
        return Perturb(sub("of"), gen, int(need("row")), int(need("col")), int(obj.get("delta", 1)))
    raise ExprError(f"{path}: unknown op {op!r}")


def expr_to_json(expr):
    if isinstance(expr, Free):
        return {"op": "Free", "i": expr.i}
    if isinstance(expr, Truncate):
        return {"op": "Truncate", "of": expr_to_json(expr.of), "n": expr.n}
    if isinstance(expr, Shift):
        return {"op": "Shift", "of": expr_to_json(expr.of), "a": expr.a}
    if isinstance(expr, SubSpan):
        return {"op": "SubSpan", "of": expr_to_json(expr.of),
                "generators": [{"object": j, "coords": [_coord_json(x) for x in v]} for j, v in expr.gens]}
    if isinstance(expr, Quot):
        return {"op": "Quot", "of": expr_to_json(expr.of), "sub": expr_to_json(expr.sub)}
    if isinstance(expr, Sum):
        return {"op": "Sum", "of": [expr_to_json(p) for p in expr.parts]}
    if isinstance(expr, TorsionQuot):
        return {"op": "TorsionQuot", "of": expr_to_json(expr.of), "m": expr.m}
    if isinstance(expr, Perturb):
        g = expr.generator
        return {"op": "Perturb", "of": expr_to_json(expr.of),
                "generator": {"source": g.source, "target": g.target, "payload": _listify(g.payload)},
                "row": expr.row, "col": expr.col, "delta": expr.delta}
    raise ExprError(f"unknown expression node {expr!r}")


def _listify(x):
    if isinstance(x, tuple):
        return [_listify(y) for y in x]
    return x


__all__ = ["ExprError", "Free", "Perturb", "Quot", "Shift", "SubSpan", "Sum", "Truncate", "TorsionQuot",
           "WindowError", "evaluate", "expr_from_json", "expr_to_json", "max_object"]
