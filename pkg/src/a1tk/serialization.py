"""Weight files and canonical JSON reports.

Reports are written with sorted keys and every float as a 17-significant-digit
decimal, so identical runs produce identical bytes and a parsed report
re-serializes to the same text. Infinite values appear as the strings
``"DIVERGES"`` (integrals) or ``"INFINITE"`` (exponents).
"""

from __future__ import annotations

import json
import math
from typing import Any

from a1tk.errors import InvalidWeightError
from a1tk.weights import PowerWeight, StepWeight, Weight


def format_float(x: float) -> str:
    if math.isnan(x):
        return '"NaN"'
    if math.isinf(x):
        return '"DIVERGES"' if x > 0 else '"-DIVERGES"'
    return format(x, ".17g")


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """Canonical JSON text for nested dicts, lists, numbers, strings and objects
    with a ``to_dict`` method."""
    if hasattr(obj, "to_dict"):
        obj = obj.to_dict()
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {dumps(obj[k], indent, _level + 1)}" for k in sorted(obj)
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(x, indent, _level + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float) or hasattr(obj, "__float__") and not isinstance(obj, str):
        return format_float(float(obj))
    return json.dumps(obj, ensure_ascii=False)


def weight_from_dict(d: Any) -> Weight:
    if not isinstance(d, dict):
        raise InvalidWeightError("a weight file must hold a single JSON object")
    kind = d.get("type")
    if kind == "step":
        for key in ("breakpoints", "values"):
            if not isinstance(d.get(key), list):
                raise InvalidWeightError(f"step weight needs an array field {key!r}")
        for key in ("breakpoints", "values"):
            for k, x in enumerate(d[key]):
                if isinstance(x, bool) or not isinstance(x, (int, float)):
                    raise InvalidWeightError(f"{key}[{k}] is not a number: {x!r}")
        return StepWeight(d["breakpoints"], d["values"])
    if kind == "power":
        for key in ("a", "alpha"):
            x = d.get(key)
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise InvalidWeightError(f"power weight needs a numeric field {key!r}")
        return PowerWeight(d["a"], d["alpha"])
    raise InvalidWeightError(f"weight type must be 'step' or 'power', got {kind!r}")


def loads_weight(text: str) -> Weight:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidWeightError(f"not valid JSON: {exc}") from exc
    return weight_from_dict(d)


def load_weight(path: str) -> Weight:
    with open(path, encoding="utf-8") as fh:
        return loads_weight(fh.read())


def dumps_weight(w: Weight) -> str:
    return dumps(w.to_dict()) + "\n"


def save_weight(w: Weight, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_weight(w))
