"""Chain-level Kirby calculus for orientation double covers.

A Kirby diagram is reduced to its integral shadow: the matrix whose
column j records how often (with sign) the j-th 2-handle runs over each
1-handle.  H_1 of the closed cover is the cokernel of that matrix, and
the rest of the Betti vector follows from duality and the Euler
characteristic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .fibration import MtildeModel


class PresentationError(ValueError):
    pass


def _as_rows(A) -> list:
    A = np.asarray(A, dtype=object) if not isinstance(A, list) else A
    rows = [[int(x) for x in row] for row in (A.tolist() if hasattr(A, "tolist") else A)]
    if rows and len({len(r) for r in rows}) != 1:
        raise PresentationError("ragged matrix")
    return rows


def smith_normal_form(A):
    """Invariant factors and rank of an integer matrix.

    Returns ``(factors, rank)`` where ``factors`` lists the nonzero diagonal
    entries d_1 | d_2 | ... of the Smith form (ones included).  Works on
    Python integers, so entries never overflow.
    """
    M = _as_rows(A)
    if not M or not M[0]:
        return [], 0
    m, n = len(M), len(M[0])
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = M[i][t] // p
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                if M[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = M[t][j] // p
                if q:
                    for row in M:
                        row[j] -= q * row[t]
                if M[t][j]:
                    dirty = True
            if not dirty:
                # divisibility of the remaining block by the pivot
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if M[i][j] % p), None)
                if bad is None:
                    break
                M[t] = [a + b for a, b in zip(M[t], M[bad[0]])]
                continue
            # move the smallest remainder in row/column t onto the pivot
            cands = [(abs(M[i][t]), i, t) for i in range(t + 1, m) if M[i][t]]
            cands += [(abs(M[t][j]), t, j) for j in range(t + 1, n) if M[t][j]]
            _, i, j = min(cands)
            if j == t:
                M[t], M[i] = M[i], M[t]
            else:
                for row in M:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(M[t][t]))
        t += 1
    return diag, len(diag)


def determinantal_divisor_factors(A):
    """Invariant factors from gcds of k x k minors (slow; used as an oracle)."""
    from itertools import combinations

    M = np.array(_as_rows(A), dtype=object)
    if M.size == 0:
        return []
    m, n = M.shape
    factors, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = math.gcd(g, _det([[M[r, c] for c in cols] for r in rows]))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def _det(rows):
    # fraction-free Bareiss elimination
    M = [list(r) for r in rows]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]


@dataclass(frozen=True)
class ChainPresentation:
    one_handle_count: int
    relations: tuple  # rows = 1-handles, columns = 2-handles

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.relations)
        if len(rows) != self.one_handle_count:
            raise PresentationError(
                f"{len(rows)} rows for {self.one_handle_count} one-handles")
        if len({len(r) for r in rows}) > 1:
            raise PresentationError("ragged relation matrix")
        object.__setattr__(self, "relations", rows)

    @property
    def two_handle_count(self) -> int:
        return len(self.relations[0]) if self.relations else 0

    def matrix(self) -> np.ndarray:
        return np.array(self.relations, dtype=np.int64).reshape(
            self.one_handle_count, self.two_handle_count)

    @classmethod
    def from_matrix(cls, A) -> "ChainPresentation":
        rows = _as_rows(A)
        return cls(len(rows), tuple(map(tuple, rows)))


def h1_from_presentation(p: ChainPresentation):
    """(free rank, torsion invariant factors) of the cokernel."""
    if p.two_handle_count == 0:
        return p.one_handle_count, []
    factors, rank = smith_normal_form(p.relations)
    return p.one_handle_count - rank, [d for d in factors if d > 1]


def format_h1(free_rank: int, torsion) -> str:
    parts = (["Z"] if free_rank == 1 else [f"Z^{free_rank}"] if free_rank else [])
    parts += [f"Z/{d}" for d in torsion]
    return " + ".join(parts) or "0"


@dataclass(frozen=True)
class Slide:
    """Add ``sign`` times column ``over`` to column ``moving`` (0-based)."""
    moving: int
    over: int
    sign: int = 1


@dataclass(frozen=True)
class Cancel:
    """Cancel 1-handle ``row`` against 2-handle ``col`` (0-based)."""
    row: int
    col: int


def chain_move(p: ChainPresentation, move) -> ChainPresentation:
    A = [list(r) for r in p.relations]
    if isinstance(move, Slide):
        if move.moving == move.over:
            raise PresentationError("a handle cannot slide over itself")
        if move.sign not in (1, -1):
            raise PresentationError("slide sign must be +1 or -1")
        for r in A:
            r[move.moving] += move.sign * r[move.over]
        return ChainPresentation(p.one_handle_count, tuple(map(tuple, A)))
    if isinstance(move, Cancel):
        i, j = move.row, move.col
        if not (0 <= i < p.one_handle_count and 0 <= j < p.two_handle_count):
            raise PresentationError("cancellation indices out of range")
        piv = A[i][j]
        if piv not in (1, -1):
            raise PresentationError(f"no unit pivot at ({i}, {j}): entry {piv}")
        for k in range(p.two_handle_count):
            if k != j and A[i][k]:
                q = A[i][k] * piv
                for r in A:
                    r[k] -= q * r[j]
        A = [[x for k, x in enumerate(r) if k != j] for ii, r in enumerate(A) if ii != i]
        return ChainPresentation(p.one_handle_count - 1, tuple(map(tuple, A)))
    raise PresentationError(f"unknown move {move!r}")


def reduce_presentation(p: ChainPresentation) -> tuple:
    """Greedily cancel unit pivots; returns the reduced presentation and the moves."""
    moves = []
    while True:
        pivot = next(((i, j) for i, r in enumerate(p.relations)
                      for j, x in enumerate(r) if x in (1, -1)), None)
        if pivot is None:
            return p, moves
        mv = Cancel(*pivot)
        moves.append(mv)
        p = chain_move(p, mv)


# --- diagram transcriptions -------------------------------------------------

@dataclass
class Component:
    id: str
    framing: object = None  # int, "fiber", or None
    passes: dict = field(default_factory=dict)
    note: str = ""


@dataclass
class DiagramTranscription:
    dotted: list = field(default_factory=list)
    components: list = field(default_factory=list)
    links: dict = field(default_factory=dict)
    comments: list = field(default_factory=list)

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise PresentationError(f"unknown component {cid!r}")


_LINE = re.compile(r"\s+")


def parse_transcription(text: str) -> DiagramTranscription:
    """Parse the line-based transcription format.

    ``dot <id>``, ``comp <id> framing=<int|fiber>``, ``pass <comp> <dot> <+1|-1>``,
    ``link <comp> <comp> <int>``.  ``#`` starts a comment.
    """
    d = DiagramTranscription()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if raw.strip().startswith("#"):
            d.comments.append(raw.strip()[1:].strip())
        if not line:
            continue
        tok = _LINE.split(line)
        try:
            if tok[0] == "dot" and len(tok) == 2:
                if tok[1] in d.dotted:
                    raise PresentationError(f"duplicate dotted circle {tok[1]}")
                d.dotted.append(tok[1])
            elif tok[0] == "comp" and len(tok) >= 2:
                framing = None
                for kv in tok[2:]:
                    key, _, val = kv.partition("=")
                    if key != "framing":
                        raise PresentationError(f"unknown attribute {key!r}")
                    framing = val if val == "fiber" else int(val)
                if any(c.id == tok[1] for c in d.components):
                    raise PresentationError(f"duplicate component {tok[1]}")
                d.components.append(Component(tok[1], framing))
            elif tok[0] == "pass" and len(tok) == 4:
                sign = int(tok[3])
                if sign not in (1, -1):
                    raise PresentationError("pass sign must be +1 or -1")
                comp = d.component(tok[1])
                comp.passes[tok[2]] = comp.passes.get(tok[2], 0) + sign
            elif tok[0] == "link" and len(tok) == 4:
                a, b, val = tok[1], tok[2], int(tok[3])
                d.component(a), d.component(b)
                key = tuple(sorted((a, b)))
                if key in d.links and d.links[key] != val:
                    raise PresentationError(f"asymmetric link data for {key}")
                d.links[key] = val
            else:
                raise PresentationError(f"unrecognised line {line!r}")
        except (ValueError, IndexError) as exc:
            raise PresentationError(f"line {lineno}: {exc}") from exc
    return d


def load_transcription(path) -> DiagramTranscription:
    return parse_transcription(Path(path).read_text(encoding="utf-8"))


def transcribe(d: DiagramTranscription) -> ChainPresentation:
    for c in d.components:
        for dot in c.passes:
            if dot not in d.dotted:
                raise PresentationError(
                    f"component {c.id} passes through undeclared dotted circle {dot}")
    rows = tuple(tuple(c.passes.get(dot, 0) for c in d.components) for dot in d.dotted)
    return ChainPresentation(len(d.dotted), rows)


# --- Betti report -------------------------------------------------------------

@dataclass(frozen=True)
class HomologyReport:
    betti: tuple
    h1_torsion: tuple
    chi: int

    @property
    def h1(self) -> str:
        return format_h1(self.betti[1], self.h1_torsion)

    def as_dict(self) -> dict:
        return {
            "betti": ",".join(map(str, self.betti)),
            "h1": self.h1,
            "h1_invariant_factors": ",".join(map(str, self.h1_torsion)) or "none",
            "cover_chi": self.chi,
        }


def betti_report(model: MtildeModel, p: ChainPresentation) -> HomologyReport:
    """Betti numbers of the closed oriented cover.

    b_1 and the torsion come from the presentation; b_3 = b_1 and b_4 = 1 by
    duality, and b_2 is fixed by the Euler characteristic of the model.
    """
    if not model.base.closed:
        raise PresentationError("Betti report needs a closed (S2-base) cover")
    expected = 2 * model.fiber.genus
    if p.one_handle_count != expected:
        raise PresentationError(
            f"presentation has {p.one_handle_count} one-handles, cover fiber needs {expected}")
    h2 = model.handle_counts()[2]
    if p.two_handle_count != h2:
        raise PresentationError(
            f"presentation has {p.two_handle_count} two-handles, the model has {h2}")
    b1, torsion = h1_from_presentation(p)
    chi = model.euler_char()
    b2 = chi - 2 + 2 * b1
    if b2 < 0:
        raise PresentationError(f"inconsistent presentation: b2 = {b2} < 0")
    return HomologyReport((1, b1, b2, b1, 1), tuple(torsion), chi)
