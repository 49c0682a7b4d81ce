"""Fiber surfaces and their first homology.

Non-orientable classes live in H_1(N_g; Z/2) written in the crosscap-core
basis mu_1, ..., mu_g, with crosscaps ordered along a chain.  Integral
classes live on orientable surfaces in a symplectic basis
(a_1, b_1, ..., a_h, b_h).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

import numpy as np


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceSpec:
    orientable: bool
    genus: int
    boundary_count: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.boundary_count < 0:
            raise SurfaceError("genus and boundary count must be non-negative")
        if not self.orientable and self.genus < 1:
            raise SurfaceError("a non-orientable surface has genus >= 1")

    @property
    def euler_characteristic(self) -> int:
        if self.orientable:
            return 2 - 2 * self.genus - self.boundary_count
        return 2 - self.genus - self.boundary_count

    def __str__(self) -> str:
        return f"{'S' if self.orientable else 'N'} {self.genus} {self.boundary_count}"

    @classmethod
    def parse(cls, text: str) -> "SurfaceSpec":
        """Parse ``N g b`` or ``S g b`` (``b`` optional)."""
        parts = text.split()
        if len(parts) not in (2, 3) or parts[0] not in ("N", "S"):
            raise SurfaceError(f"cannot parse surface spec {text!r}")
        b = int(parts[2]) if len(parts) == 3 else 0
        return cls(parts[0] == "S", int(parts[1]), b)


def nonorientable(genus: int, boundary_count: int = 0) -> SurfaceSpec:
    return SurfaceSpec(False, genus, boundary_count)


def orientable(genus: int, boundary_count: int = 0) -> SurfaceSpec:
    return SurfaceSpec(True, genus, boundary_count)


def double_cover_spec(s: SurfaceSpec) -> SurfaceSpec:
    """Orientation double cover: N_g^b is covered by Sigma_{g-1}^{2b}."""
    if s.orientable:
        raise SurfaceError("orientable surfaces have no orientation double cover")
    return SurfaceSpec(True, s.genus - 1, 2 * s.boundary_count)


class Sidedness(Enum):
    ONE_SIDED = "one-sided"
    TWO_SIDED = "two-sided"


@dataclass(frozen=True)
class Z2Class:
    """A class in H_1(N_g; Z/2), stored as a tuple of 0/1 coordinates."""

    surface: SurfaceSpec
    coords: tuple

    def __post_init__(self):
        if self.surface.orientable:
            raise SurfaceError("Z2Class lives on a non-orientable surface")
        if self.surface.boundary_count != 0:
            raise SurfaceError("Z2Class lives on a closed surface")
        coords = tuple(int(c) % 2 for c in self.coords)
        if len(coords) != self.surface.genus:
            raise SurfaceError(
                f"expected {self.surface.genus} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @property
    def genus(self) -> int:
        return self.surface.genus

    def is_zero(self) -> bool:
        return not any(self.coords)

    def vector(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def __add__(self, other: "Z2Class") -> "Z2Class":
        _same_surface(self, other)
        return Z2Class(self.surface, tuple(a ^ b for a, b in zip(self.coords, other.coords)))

    def bits(self) -> str:
        return "".join(str(c) for c in self.coords)

    def __str__(self) -> str:
        return f"class g={self.genus} coords={self.bits()}"

    @classmethod
    def from_bits(cls, bits: str) -> "Z2Class":
        if not bits or set(bits) - {"0", "1"}:
            raise SurfaceError(f"bad coordinate string {bits!r}")
        return cls(nonorientable(len(bits)), tuple(int(b) for b in bits))

    @classmethod
    def parse(cls, text: str) -> "Z2Class":
        m = re.fullmatch(r"\s*class\s+g=(\d+)\s+coords=([01]+)\s*", text)
        if m is None:
            raise SurfaceError(f"cannot parse class {text!r}")
        g, bits = int(m.group(1)), m.group(2)
        if len(bits) != g:
            raise SurfaceError("coordinate length does not match genus")
        return cls.from_bits(bits)


def crosscap_core(genus: int, i: int) -> Z2Class:
    """The core mu_i (1-based) of the i-th crosscap of N_g."""
    if not 1 <= i <= genus:
        raise SurfaceError(f"crosscap index {i} out of range for genus {genus}")
    return Z2Class(nonorientable(genus), tuple(int(j == i - 1) for j in range(genus)))


def boundary_class(genus: int, crosscaps) -> Z2Class:
    """Mod-2 class of a curve cutting off a disk with the given crosscaps.

    Such a curve bounds a subsurface, so its class is zero whatever the
    crosscaps are.  Do not confuse it with the two-sided curve through
    crosscaps i and i+1, whose class is mu_i + mu_{i+1}.
    """
    for i in crosscaps:
        if not 1 <= i <= genus:
            raise SurfaceError(f"crosscap index {i} out of range")
    return Z2Class(nonorientable(genus), (0,) * genus)


def _same_surface(x, y):
    if x.surface != y.surface:
        raise SurfaceError(f"surface mismatch: {x.surface} vs {y.surface}")


def mod2_pairing(x: Z2Class, y: Z2Class) -> int:
    _same_surface(x, y)
    return sum(a * b for a, b in zip(x.coords, y.coords)) % 2


def sidedness(x: Z2Class) -> Sidedness:
    """One-sided iff the mod-2 self-intersection is 1."""
    if x.is_zero():
        raise SurfaceError("the zero class carries no sidedness")
    return Sidedness.TWO_SIDED if mod2_pairing(x, x) == 0 else Sidedness.ONE_SIDED


@dataclass(frozen=True)
class IntClass:
    """An integral class on an orientable surface, coordinates (a_1, b_1, ...)."""

    surface: SurfaceSpec
    coords: tuple

    def __post_init__(self):
        if not self.surface.orientable:
            raise SurfaceError("IntClass lives on an orientable surface")
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != 2 * self.surface.genus:
            raise SurfaceError(
                f"expected {2 * self.surface.genus} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    def vector(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def __add__(self, other):
        _same_surface(self, other)
        return IntClass(self.surface, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return IntClass(self.surface, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)


def symplectic_form(genus: int) -> np.ndarray:
    J = np.zeros((2 * genus, 2 * genus), dtype=np.int64)
    for k in range(genus):
        J[2 * k, 2 * k + 1] = 1
        J[2 * k + 1, 2 * k] = -1
    return J


def symplectic_pairing(a: IntClass, b: IntClass) -> int:
    _same_surface(a, b)
    return int(a.vector() @ symplectic_form(a.surface.genus) @ b.vector())


def symplectic_basis(genus: int) -> list:
    """[a_1, b_1, ..., a_h, b_h] on the closed surface of the given genus."""
    s = orientable(genus)
    return [IntClass(s, tuple(int(j == k) for j in range(2 * genus)))
            for k in range(2 * genus)]
