"""Readers for word files and factorization files.

Word file, one generator per line, with an optional header::

    fiber N genus=2
    u 1
    t 0110 + -1

Factorization file::

    fiber N genus=3
    base S2 sections=1
    u 1
    conj: t 110 + , u 2 ; u 1

A ``conj:`` entry ``w ; x`` stands for w^-1 x w, where the generators of
``w`` are separated by commas.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from . import mcg
from .fibration import D2, S2, Base, S2_with_sections
from .surface import SurfaceError, Z2Class


class FormatError(ValueError):
    pass


_HEADER = re.compile(r"fiber\s+N\s+genus=(\d+)")


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_generator(tokens, genus=None) -> mcg.MCGWord:
    """``u i [e]`` or ``t bits +|- [e]`` as a one-letter word."""
    if not tokens:
        raise FormatError("empty generator")
    try:
        if tokens[0] == "u" and len(tokens) in (2, 3):
            i = int(tokens[1])
            e = int(tokens[2]) if len(tokens) == 3 else 1
            g = genus if genus is not None else i + 1
            return mcg.u(g, i, e)
        if tokens[0] == "t" and len(tokens) in (3, 4):
            bits, hand = tokens[1], tokens[2]
            if hand not in ("+", "-"):
                raise FormatError(f"handedness must be + or -, got {hand!r}")
            c = Z2Class.from_bits(bits)
            if genus is not None and c.genus != genus:
                raise FormatError(f"class {bits} has {c.genus} coordinates, fiber genus is {genus}")
            e = int(tokens[3]) if len(tokens) == 4 else 1
            return mcg.t(c, 1 if hand == "+" else -1, e)
    except (ValueError, SurfaceError, mcg.WordError) as exc:
        raise FormatError(str(exc)) from exc
    raise FormatError(f"cannot parse generator {' '.join(tokens)!r}")


def _header_genus(line):
    m = _HEADER.fullmatch(line)
    if m is None:
        raise FormatError(f"bad fiber header {line!r}")
    return int(m.group(1))


def _lift(word: mcg.MCGWord, genus: int) -> mcg.MCGWord:
    """Re-home a word parsed without a header on the common genus."""
    if word.genus == genus:
        return word
    out = mcg.MCGWord(genus)
    for gen, e in word.entries:
        if isinstance(gen, mcg.CrosscapTransposition):
            out = out * mcg.u(genus, gen.i, e)
        else:
            raise FormatError("twist classes must match the fiber genus")
    return out


def parse_word(text: str) -> mcg.MCGWord:
    genus = None
    gens = []
    for lineno, line in _lines(text):
        if line.startswith("fiber"):
            if genus is not None or gens:
                raise FormatError(f"line {lineno}: header must come first")
            genus = _header_genus(line)
            continue
        try:
            gens.append(parse_generator(line.split(), genus))
        except FormatError as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    if not gens:
        raise FormatError("word file has no generators")
    if genus is None:
        genus = max(w.genus for w in gens)
    word = mcg.MCGWord(genus)
    for w in gens:
        word = word * _lift(w, genus)
    return word


def _parse_base(tokens) -> Base:
    if len(tokens) < 2:
        raise FormatError("base needs a kind")
    kind = tokens[1]
    if kind == "D2" and len(tokens) == 2:
        return D2
    if kind == "S2" and len(tokens) == 2:
        return S2
    if kind == "S2" and len(tokens) == 3 and tokens[2].startswith("sections="):
        try:
            mags = [int(v) for v in tokens[2][len("sections="):].split(",")]
            return S2_with_sections(*mags)
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
    raise FormatError(f"cannot parse base {' '.join(tokens)!r}")


@dataclass(frozen=True)
class Factorization:
    genus: int
    base: Base
    entries: tuple


def parse_factorization(text: str) -> Factorization:
    genus, base, entries = None, None, []
    for lineno, line in _lines(text):
        try:
            if line.startswith("fiber"):
                if genus is not None:
                    raise FormatError("duplicate fiber header")
                genus = _header_genus(line)
            elif line.startswith("base"):
                if base is not None:
                    raise FormatError("duplicate base line")
                base = _parse_base(line.split())
            else:
                if genus is None:
                    raise FormatError("fiber header must precede entries")
                if line.startswith("conj:"):
                    body = line[len("conj:"):]
                    if body.count(";") != 1:
                        raise FormatError("conj entry needs exactly one ';'")
                    left, right = body.split(";")
                    w = mcg.MCGWord(genus)
                    for part in left.split(","):
                        w = w * parse_generator(part.split(), genus)
                    entries.append(parse_generator(right.split(), genus).conjugate_by(w))
                else:
                    entries.append(parse_generator(line.split(), genus))
        except FormatError as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
        except (ValueError, SurfaceError, mcg.WordError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    if genus is None:
        raise FormatError("missing fiber header")
    if base is None:
        raise FormatError("missing base line")
    return Factorization(genus, base, tuple(entries))


def load_word(path) -> mcg.MCGWord:
    return parse_word(Path(path).read_text(encoding="utf-8"))


def load_factorization(path) -> Factorization:
    return parse_factorization(Path(path).read_text(encoding="utf-8"))
