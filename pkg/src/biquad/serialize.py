"""Plain-text wire format for elements: ``a b c d  # label``.

Coordinates are exact fractions in the basis (1, √p, √q, √r) of the
canonical field, e.g. ``4 5/2 2 3/2  # mu``.
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources
from pathlib import Path

from .core import BiquadElement, BiquadField


class ParseError(ValueError):
    pass


def parse_element(K: BiquadField, line: str) -> tuple[BiquadElement, str | None]:
    body, _, label = line.partition("#")
    parts = body.split()
    if len(parts) != 4:
        raise ParseError(f"expected 4 coordinates, got {len(parts)}: {line.strip()!r}")
    try:
        coords = [Fraction(s) for s in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coordinate in {line.strip()!r}: {exc}") from None
    return K(*coords), (label.strip() or None)


def format_element(x: BiquadElement) -> str:
    return " ".join(str(c) for c in x.coords)


def element_to_json(x: BiquadElement) -> list[str]:
    return [str(c) for c in x.coords]


def element_from_json(K: BiquadField, data: list[str]) -> BiquadElement:
    if len(data) != 4:
        raise ParseError("element must have 4 coordinates")
    return K(*(Fraction(s) for s in data))


def parse_elements(K: BiquadField, text: str) -> list[tuple[BiquadElement, str]]:
    """Elements with labels; blank and comment-only lines are skipped."""
    out = []
    for line in text.splitlines():
        if not line.split("#", 1)[0].strip():
            continue
        x, label = parse_element(K, line)
        out.append((x, label or str(x)))
    return out


def read_elements(K: BiquadField, path: str | Path) -> list[tuple[BiquadElement, str]]:
    return parse_elements(K, Path(path).read_text(encoding="utf-8"))


def format_elements(items) -> str:
    lines = []
    for x, label in items:
        lines.append(f"{format_element(x)}  # {label}" if label else format_element(x))
    return "\n".join(lines) + "\n"


PRESETS = {(2, 3): "q2_3", (6, 19): "q6_19"}


def data_text(name: str) -> str:
    return resources.files("biquad").joinpath("data", name).read_text(encoding="utf-8")


def preset_elements(K: BiquadField) -> list[tuple[BiquadElement, str]]:
    name = PRESETS.get((K.p, K.q))
    if name is None:
        raise KeyError(f"no preset element list for {K!r}")
    return parse_elements(K, data_text(f"{name}.txt"))
