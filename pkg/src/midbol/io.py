"""Text formats: loop files, permutation files and holomorph dumps."""
from __future__ import annotations

import io
import os
from pathlib import Path
from typing import Iterable

from .errors import Malformed
from .perm import Permutation, is_permutation
from .table import FiniteLoop, validate_loop


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def parse_loop(text: str) -> FiniteLoop:
    lines = _content_lines(text)
    if not lines:
        raise Malformed("empty loop file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise Malformed(f"non-integer token: {exc}") from exc
    if n < 1 or len(rows) != n or any(len(r) != n for r in rows):
        raise Malformed(f"expected {n} rows of {n} integers")
    return validate_loop(rows)


def read_loop(path: str | os.PathLike) -> FiniteLoop:
    return parse_loop(Path(path).read_text())


def format_loop(loop: FiniteLoop, comments: Iterable[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    buf.write(f"{loop.n}\n")
    width = len(str(loop.n - 1))
    for row in loop.rows():
        buf.write(" ".join(str(v).rjust(width) for v in row) + "\n")
    return buf.getvalue()


def write_loop(path: str | os.PathLike, loop: FiniteLoop, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_loop(loop, comments))


def parse_perms(text: str) -> list[Permutation]:
    perms = []
    for ln in _content_lines(text):
        try:
            p = tuple(int(tok) for tok in ln.split())
        except ValueError as exc:
            raise Malformed(f"non-integer token: {exc}") from exc
        if not is_permutation(p):
            raise Malformed(f"not a permutation: {ln}")
        if perms and len(p) != len(perms[0]):
            raise Malformed("permutations of different degrees")
        perms.append(p)
    return perms


def read_perms(path: str | os.PathLike) -> list[Permutation]:
    return parse_perms(Path(path).read_text())


def format_perms(perms: Iterable[Permutation]) -> str:
    return "".join(" ".join(str(v) for v in p) + "\n" for p in perms)


def format_holomorph(H) -> str:
    """Flat table of a holomorph with its pair labeling as comments."""
    comments = [f"holomorph of loop {H.base.digest()} by a group of order {len(H.elements)}"]
    comments += [f"g_{i} = {' '.join(map(str, p))}" for i, p in enumerate(H.elements)]
    n = H.base.n
    comments += [f"pair {k} -> (g_{k // n}, x_{k % n})" for k in range(H.order)]
    return format_loop(H.flat, comments)
