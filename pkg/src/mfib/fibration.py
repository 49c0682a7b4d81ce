"""M-fibration models built from monodromy factorizations.

A model only remembers what the handle decomposition needs: the fiber
genus, the base, and the ordered list of singular monodromies.  For a
sphere base the product of the monodromies must be trivial; we can only
test this through the mod-2 representation, so a successful build means
"mod-2 necessary condition passed", never a certificate in the group.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import mcg
from .surface import SurfaceSpec, double_cover_spec, nonorientable


class FactorizationError(ValueError):
    def __init__(self, message, matrix=None):
        super().__init__(message)
        self.matrix = matrix


@dataclass(frozen=True)
class Base:
    kind: str  # "D2" or "S2"
    section_magnitudes: tuple = ()

    def __post_init__(self):
        if self.kind not in ("D2", "S2"):
            raise ValueError(f"unsupported base {self.kind!r}")
        mags = tuple(int(a) for a in self.section_magnitudes)
        if self.kind == "D2" and mags:
            raise ValueError("sections are only modelled over S2")
        if any(a < 0 for a in mags):
            raise ValueError("section data are Euler number magnitudes |a_i|")
        object.__setattr__(self, "section_magnitudes", mags)

    @property
    def closed(self) -> bool:
        return self.kind == "S2"

    def __str__(self):
        if self.section_magnitudes:
            return "S2 sections=" + ",".join(map(str, self.section_magnitudes))
        return self.kind


D2 = Base("D2")
S2 = Base("S2")


def S2_with_sections(*magnitudes) -> Base:
    if not magnitudes:
        raise ValueError("section list must be nonempty")
    return Base("S2", magnitudes)


def monodromy_product(genus: int, entries) -> mcg.MCGWord:
    w = mcg.MCGWord(genus)
    for e in entries:
        w = w * e
    return w


@dataclass(frozen=True)
class MFibrationModel:
    fiber: SurfaceSpec
    base: Base
    singularities: tuple
    flags: tuple = field(default=(), compare=False)

    @property
    def genus(self) -> int:
        return self.fiber.genus

    @property
    def n(self) -> int:
        return len(self.singularities)

    def handle_counts(self) -> tuple:
        return handle_counts(self)

    def euler_char(self) -> int:
        return euler_char(self)


@dataclass(frozen=True)
class MtildeModel:
    fiber: SurfaceSpec
    pair_count: int
    parent: MFibrationModel

    @property
    def base(self) -> Base:
        return self.parent.base

    def handle_counts(self) -> tuple:
        h = self.fiber.genus * 2
        k = self.pair_count
        if self.base.closed:
            return (1, h, 2 + k, h, 1)
        return (1, h, 1 + k, 0, 0)

    def euler_char(self) -> int:
        return alternating_sum(self.handle_counts())


def build(base: Base, genus: int, entries) -> MFibrationModel:
    """Validate a factorization and wrap it as a model.

    Each entry should be a crosscap transposition, possibly conjugated.  We
    check that its mod-2 action is an orthogonal involution different from
    the identity and record a flag when it is not (a twist along a
    separating curve would pass silently, which is the price of working
    mod 2).
    """
    if genus < 1:
        raise FactorizationError("fiber genus must be at least 1")
    entries = tuple(entries)
    flags = []
    for k, e in enumerate(entries, start=1):
        if e.genus != genus:
            raise FactorizationError(f"entry {k} lives on genus {e.genus}, fiber has genus {genus}")
        R = mcg.rep_word(e)
        if mcg.is_identity(R) or not mcg.is_identity(R @ R % 2):
            flags.append(f"entry {k} is not conjugate to a crosscap swap mod 2")
    if base.closed:
        P = mcg.rep_word(monodromy_product(genus, entries))
        if not mcg.is_identity(P):
            raise FactorizationError(
                "monodromy product is not the identity mod 2 "
                "(mod-2 necessary condition failed)", matrix=P)
    return MFibrationModel(nonorientable(genus), base, entries, tuple(flags))


def alternating_sum(counts) -> int:
    return sum((-1) ** i * h for i, h in enumerate(counts))


def handle_counts(m: MFibrationModel) -> tuple:
    """(h0, ..., h4): one 0-handle, g 1-handles, 1+n 2-handles over a disk;
    closing up over the sphere adds one 2-handle, g 3-handles and a 4-handle."""
    g, n = m.genus, m.n
    if m.base.closed:
        return (1, g, 2 + n, g, 1)
    return (1, g, 1 + n, 0, 0)


def euler_char(m: MFibrationModel) -> int:
    return alternating_sum(handle_counts(m))


def double_cover(m: MFibrationModel) -> MtildeModel:
    return MtildeModel(double_cover_spec(m.fiber), 2 * m.n, m)


def summary(m: MFibrationModel) -> dict:
    cover = double_cover(m)
    return {
        "fiber": str(m.fiber),
        "base": str(m.base),
        "singularities": m.n,
        "handles": ",".join(map(str, handle_counts(m))),
        "chi": euler_char(m),
        "cover_fiber": str(cover.fiber),
        "cover_handles": ",".join(map(str, cover.handle_counts())),
        "cover_chi": cover.euler_char(),
        "monodromy_check": ("mod-2 necessary condition passed" if m.base.closed
                            else "not required over D2"),
    }


def random_conjugated_swap(genus: int, rng: np.random.Generator, max_len: int = 4) -> mcg.MCGWord:
    """w^-1 u_i w for a random short word w of crosscap transpositions."""
    i = int(rng.integers(1, genus))
    w = mcg.MCGWord(genus)
    for _ in range(int(rng.integers(0, max_len + 1))):
        w = w * mcg.u(genus, int(rng.integers(1, genus)), int(rng.choice([-1, 1])))
    return mcg.u(genus, i).conjugate_by(w)
