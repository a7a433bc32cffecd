"""Subsets of {1..n} as bitmasks, and their text labels.

Variable ``i`` (1-based) is bit ``i - 1``.  The nonempty subsets of
{1..n} are the integers ``1 .. 2**n - 1`` and coordinates of every vector
in this package are stored in that order.

Labels concatenate the sorted coordinates (``"12"`` for {1, 2}).  When
any coordinate exceeds 9 the label is comma separated (``"1,10"``), and a
lone coordinate above 9 keeps a trailing comma (``"10,"``) so it cannot be
read as a pair of digits.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def mask(elements: Iterable[int]) -> int:
    m = 0
    for i in elements:
        if i < 1:
            raise ValueError(f"variable indices start at 1, got {i}")
        m |= 1 << (i - 1)
    return m


def elements(m: int) -> list[int]:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def full(n: int) -> int:
    return (1 << n) - 1


def nonempty_subsets(n: int) -> range:
    return range(1, 1 << n)


def submasks(m: int) -> Iterator[int]:
    """Nonempty submasks of ``m``, in decreasing order."""
    s = m
    while s:
        yield s
        s = (s - 1) & m


def label(m: int) -> str:
    els = elements(m)
    if not els:
        return ""
    if els[-1] > 9:
        return ",".join(map(str, els)) + ("," if len(els) == 1 else "")
    return "".join(map(str, els))


def parse_label(text: str) -> int:
    text = text.strip()
    if not text:
        raise ValueError("empty subset label")
    if "," in text:
        parts = [int(t) for t in text.split(",") if t.strip()]
    else:
        parts = [int(c) for c in text]
    return mask(parts)


def as_mask(subset: int | str | Iterable[int]) -> int:
    """Accept a bitmask, a label such as ``"12"`` or an iterable of indices."""
    if isinstance(subset, int):
        return subset
    if isinstance(subset, str):
        return parse_label(subset)
    return mask(subset)


def labels(n: int) -> list[str]:
    return [label(m) for m in nonempty_subsets(n)]
