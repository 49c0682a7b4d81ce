"""Words in the mapping class group of N_g and their mod-2 homology action.

Words are read left to right in application order: the word ``w1 w2``
first applies ``w1`` and then ``w2``, so that as matrices acting on
column vectors ``rep(w1 w2) = rep(w2) @ rep(w1)``.

The mod-2 representation is far from faithful.  Equality of matrices is a
necessary condition for equality in the group and nothing more; the
standard witness is a twist along a separating curve, which acts as the
identity on homology.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .surface import (IntClass, Sidedness, SurfaceError, Z2Class, mod2_pairing,
                      nonorientable, sidedness, symplectic_form)


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class DehnTwist:
    """Twist t_{c,theta}; ``handedness`` is bookkeeping only mod 2.

    The zero class is accepted and stands for a separating curve (for
    instance the boundary of a one-holed Klein bottle), which is two-sided.
    """

    c: Z2Class
    handedness: int = 1

    def __post_init__(self):
        if self.handedness not in (1, -1):
            raise WordError("handedness must be +1 or -1")
        if not self.c.is_zero() and sidedness(self.c) is not Sidedness.TWO_SIDED:
            raise WordError(f"Dehn twist along one-sided class {self.c.bits()}")

    @property
    def genus(self) -> int:
        return self.c.genus

    def __str__(self):
        return f"t {self.c.bits()} {'+' if self.handedness > 0 else '-'}"


@dataclass(frozen=True)
class CrosscapTransposition:
    """Standard u_i exchanging crosscaps i and i+1 (1-based)."""

    genus: int
    i: int

    def __post_init__(self):
        if self.genus < 2:
            raise WordError("crosscap transpositions need genus >= 2")
        if not 1 <= self.i <= self.genus - 1:
            raise WordError(f"index {self.i} out of range 1..{self.genus - 1}")

    def __str__(self):
        return f"u {self.i}"


Generator = Union[DehnTwist, CrosscapTransposition]


@dataclass(frozen=True)
class MCGWord:
    genus: int
    entries: tuple = field(default=())

    def __post_init__(self):
        entries = tuple((gen, int(e)) for gen, e in self.entries)
        for gen, e in entries:
            if e not in (1, -1):
                raise WordError(f"exponent must be +1 or -1, got {e}")
            if gen.genus != self.genus:
                raise WordError(
                    f"generator {gen} lives on genus {gen.genus}, word on genus {self.genus}")
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return len(self.entries)

    def __mul__(self, other: "MCGWord") -> "MCGWord":
        if other.genus != self.genus:
            raise WordError("cannot multiply words on different surfaces")
        return MCGWord(self.genus, self.entries + other.entries)

    def inverse(self) -> "MCGWord":
        return MCGWord(self.genus, tuple((g, -e) for g, e in reversed(self.entries)))

    def conjugate_by(self, w: "MCGWord") -> "MCGWord":
        """The word w^-1 . self . w."""
        return w.inverse() * self * w

    def __str__(self):
        return " ".join(f"{g}" + ("" if e == 1 else " -1") for g, e in self.entries) or "1"

    @classmethod
    def of(cls, genus: int, *gens) -> "MCGWord":
        """Build a word from generators or (generator, exponent) pairs."""
        entries = [g if isinstance(g, tuple) else (g, 1) for g in gens]
        return cls(genus, tuple(entries))


def u(genus: int, i: int, exponent: int = 1) -> MCGWord:
    return MCGWord(genus, ((CrosscapTransposition(genus, i), exponent),))


def t(c: Z2Class, handedness: int = 1, exponent: int = 1) -> MCGWord:
    return MCGWord(c.genus, ((DehnTwist(c, handedness), exponent),))


def rep_generator(gen: Generator) -> np.ndarray:
    """Action on H_1(N_g; Z/2) as a 0/1 matrix acting on column vectors."""
    if isinstance(gen, DehnTwist):
        c = gen.c.vector()
        return (np.eye(gen.genus, dtype=np.int64) + np.outer(c, c)) % 2
    if isinstance(gen, CrosscapTransposition):
        M = np.eye(gen.genus, dtype=np.int64)
        k = gen.i - 1
        M[[k, k + 1]] = M[[k + 1, k]]
        return M
    raise WordError(f"unknown generator {gen!r}")


def rep_word(w: MCGWord) -> np.ndarray:
    M = np.eye(w.genus, dtype=np.int64)
    for gen, e in w.entries:
        R = rep_generator(gen)
        if e == -1:
            # orthogonal over Z/2
            R = R.T
        M = (R @ M) % 2
    return M


def is_identity(M: np.ndarray) -> bool:
    return bool(np.array_equal(M % 2, np.eye(M.shape[0], dtype=np.int64)))


def is_orthogonal_mod2(M: np.ndarray) -> bool:
    return is_identity((M.T @ M) % 2)


def klein_bottle_boundary(genus: int, i: int) -> Z2Class:
    """Class of the boundary delta of the i-th one-holed Klein bottle.

    delta encloses crosscaps i and i+1; each crosscap boundary is twice its
    core, so the class vanishes mod 2.
    """
    if not 1 <= i <= genus - 1:
        raise WordError(f"index {i} out of range 1..{genus - 1}")
    return Z2Class(nonorientable(genus), (0,) * genus)


def check_square_relation(genus: int, i: int) -> bool:
    """Does rep(u_i)^2 agree with rep(t_delta)?  A mod-2 necessary condition."""
    lhs = rep_word(u(genus, i) * u(genus, i))
    rhs = rep_word(t(klein_bottle_boundary(genus, i)))
    return bool(np.array_equal(lhs, rhs))


def integral_transvection(c: IntClass, sign: int = 1) -> np.ndarray:
    """Matrix of x -> x + sign * <x, c> c on H_1(Sigma; Z)."""
    J = symplectic_form(c.surface.genus)
    v = c.vector()
    n = len(v)
    # <x, c> = x^T J c
    return np.eye(n, dtype=np.int64) + sign * np.outer(v, J @ v)


def orientation_lift_twist(c: Z2Class, lift1: IntClass, lift2: IntClass) -> np.ndarray:
    """Homology action of the lift of t_c, i.e. t_{lift1} then t_{lift2}^{-1}.

    The lifts are supplied by the caller; only their classes are used.
    """
    if c.is_zero() or sidedness(c) is not Sidedness.TWO_SIDED:
        raise WordError("the twisted curve must be two-sided")
    if lift1.surface != lift2.surface:
        raise SurfaceError("lifts live on different surfaces")
    if lift1.surface.genus != c.genus - 1:
        raise SurfaceError(
            f"lifts must live on genus {c.genus - 1}, got {lift1.surface.genus}")
    first = integral_transvection(lift1, +1)
    second = integral_transvection(lift2, -1)
    return second @ first


def check_pairing_consistency(x: Z2Class, y: Z2Class, M: np.ndarray) -> bool:
    """rep matrices preserve the mod-2 intersection form."""
    Mx = Z2Class(x.surface, tuple(M @ x.vector() % 2))
    My = Z2Class(y.surface, tuple(M @ y.vector() % 2))
    return mod2_pairing(Mx, My) == mod2_pairing(x, y)
