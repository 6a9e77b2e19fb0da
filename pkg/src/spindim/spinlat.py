"""Character lattices for the split spin groups in every characteristic.

With r the rank, the weight lattice of the torus T is presented on
generators x_1, ..., x_r, A with the single relation 2A = x_1 + ... + x_r
(A is the highest weight of the spin representation).  Pulling back to
the finite 2-group L = ker(spin rep restricted to a maximal torus
normaliser kernel) adds the relations 2x_i = 0, giving

    X(L) = Z/4 x (Z/2)^(r-1),     |X(L)| = 2^(r+1).

X(K) is the subgroup generated by the x_i, of order 2^r; its complement
S (the characters restricting nontrivially to the central mu_2) is a
coset of X(K) and is permuted by the Weyl group.  Sign flips act on S
by translation:  flipping the signs in a subset I sends a character s
to s + sum_{i in I} x_i, since every s in S is A - (partial sum) and
2x_i = 0.  The whole orbit analysis therefore reduces to bookkeeping
with subset-sum translations, which is what this module does.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .abelian import (FgAbGroup, GroupElement, Presentation, Subgroup,
                      iso_type, subgroup_span)

MAX_RANK = 16


class Parity(Enum):
    ODD = "odd"       # Spin(2r+1): all sign flips
    EVEN = "even"     # Spin(2r): only evenly many sign flips


@dataclass(frozen=True)
class WeylElt:
    """Signed permutation: x_i -> (+/-) x_{perm[i]}, indices 0-based.

    Bit i of `signs` set means x_i picks up a minus sign *after*
    permuting, i.e. x_i -> -x_{perm[i]}.  On the affine generator the
    action is A -> A - sum over flipped targets x_{perm[i]}, which is
    the unique extension compatible with 2A = sum x_i.
    """

    perm: tuple[int, ...]
    signs: int

    def __post_init__(self):
        r = len(self.perm)
        if sorted(self.perm) != list(range(r)):
            raise ValueError("perm is not a permutation of 0..r-1")
        if not 0 <= self.signs < (1 << r):
            raise ValueError("sign bitmask out of range")

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        # (self * other) acts as other first, then self
        if len(self.perm) != len(other.perm):
            raise ValueError("rank mismatch")
        r = len(self.perm)
        perm = tuple(self.perm[other.perm[i]] for i in range(r))
        signs = 0
        for i in range(r):
            if bool(other.signs >> i & 1) ^ bool(self.signs >> other.perm[i] & 1):
                signs |= 1 << i
        return WeylElt(perm, signs)


def weyl_identity(r: int) -> WeylElt:
    return WeylElt(tuple(range(r)), 0)


@dataclass(frozen=True, eq=False)
class SpinCharData:
    """Everything the orbit computations downstream need, precomputed.

    Instances compare by identity so they can key caches."""

    r: int
    parity: Parity
    xT: FgAbGroup
    xL: FgAbGroup
    xK: Subgroup
    x: tuple[GroupElement, ...]   # images of x_1..x_r in X(L)
    A: GroupElement               # image of A in X(L)
    faithful: frozenset           # S = X(L) minus X(K)
    acting_masks: tuple[int, ...]  # sign-flip subsets as bitmasks
    shifts: dict                  # mask -> sum_{i in mask} x_i

    def shift(self, mask: int) -> GroupElement:
        return self.shifts[mask]


@lru_cache(maxsize=None)
def build_char_data(r: int, parity: Parity) -> SpinCharData:
    """Construct X(T), X(L), X(K) and the sign-flip translation data.

    Rank is capped at MAX_RANK: X(L) is enumerated in full, so memory
    grows as 2^r.  Results are cached; the returned data is shared and
    must be treated as read-only.
    """
    if not 1 <= r <= MAX_RANK:
        raise ValueError(f"rank must be between 1 and {MAX_RANK}")
    if not isinstance(parity, Parity):
        raise ValueError("parity must be a Parity")
    # generators x_1..x_r, A;  relation rows: 2x_i = 0 (only in X(L)),
    # and x_1 + ... + x_r - 2A = 0 written as (-1,...,-1,2)
    half_spin_rel = tuple([-1] * r + [2])
    xT = iso_type(Presentation(r + 1, (half_spin_rel,)))
    two_torsion = tuple(
        tuple(2 if j == i else 0 for j in range(r + 1)) for i in range(r))
    xL = iso_type(Presentation(r + 1, two_torsion + (half_spin_rel,)))

    x = tuple(xL.generator(i) for i in range(r))
    A = xL.generator(r)
    assert xL.order() == 1 << (r + 1), "X(L) must have order 2^(r+1)"
    assert (2 * A) == sum(x[1:], x[0]), "2A = sum x_i must survive the quotient"
    assert all((2 * xi).is_identity() for xi in x)

    xK = subgroup_span(xL, x)
    assert xK.order == 1 << r, "X(K) must have order 2^r"
    faithful = frozenset(e for e in xL.elements() if e not in xK)
    assert len(faithful) == 1 << r

    if parity is Parity.ODD:
        masks = tuple(range(1 << r))
    else:
        masks = tuple(m for m in range(1 << r) if bin(m).count("1") % 2 == 0)
    shifts = {0: xL.identity()}
    for m in range(1, 1 << r):
        low = m & -m
        shifts[m] = shifts[m ^ low] + x[low.bit_length() - 1]
    shifts = {m: shifts[m] for m in range(1 << r)}
    return SpinCharData(r, parity, xT, xL, xK, x, A, faithful, masks, shifts)


def center_restriction(data: SpinCharData, c: GroupElement) -> str:
    """Restriction of a character of L to the central mu_2:
    'trivial' exactly when c lies in X(K)."""
    if c.group is not data.xL:
        raise ValueError("character does not live on X(L)")
    return "trivial" if c in data.xK else "faithful"


def weyl_act(data: SpinCharData, w: WeylElt, c: GroupElement) -> GroupElement:
    """Apply a signed permutation to a character of T or of L.

    The element is lifted to a word in x_1..x_r, A, the word is mapped
    through x_i -> (+/-)x_{perm[i]},  A -> A - sum_{i flipped} x_{perm[i]},
    and the image is reduced again.  The action descends to both
    quotients because it preserves the relation lattice (the tests
    check this on the relation words themselves).
    """
    if len(w.perm) != data.r:
        raise ValueError("Weyl element has the wrong rank")
    group = c.group
    if group is not data.xT and group is not data.xL:
        raise ValueError("character must live on X(T) or X(L)")
    r = data.r
    word = group.lift(c)
    out = [0] * (r + 1)
    for i in range(r):
        s = -1 if w.signs >> i & 1 else 1
        out[w.perm[i]] += s * word[i]
    out[r] += word[r]
    for i in range(r):
        if w.signs >> i & 1:
            out[w.perm[i]] -= word[r]
    return group.element(out)


@dataclass(frozen=True)
class FreeTransitiveReport:
    r: int
    parity: Parity
    is_free: bool
    orbit_sizes: tuple[int, ...]
    orbits: tuple[tuple[GroupElement, ...], ...]
    witness: dict     # mask -> A + shift(mask), the orbit chart at A

    @property
    def is_transitive(self) -> bool:
        return len(self.orbit_sizes) == 1


_ORBIT_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def orbits_on_faithful(data: SpinCharData):
    """Orbits of the sign-flip subsets on S, each sorted, deterministically
    ordered by smallest member.

    The translations T = {shift(m)} form a subgroup of X(L) (the shift
    is additive in the mask), so the orbit of s is the single coset
    s + T; the disjointness assertion below would catch any failure of
    that closure.
    """
    got = _ORBIT_CACHE.get(data)
    if got is not None:
        return got
    remaining = set(data.faithful)
    orbits = []
    while remaining:
        start = min(remaining)
        orbit = {start + data.shifts[m] for m in data.acting_masks}
        assert orbit <= remaining, "translation set failed to be a subgroup"
        orbits.append(tuple(sorted(orbit)))
        remaining -= orbit
    orbits.sort(key=lambda o: o[0])
    got = tuple(orbits)
    _ORBIT_CACHE[data] = got
    return got


def free_transitive_check(data: SpinCharData) -> FreeTransitiveReport:
    """Decide freeness of the sign-flip action on S and list its orbits.

    The action is by translations s -> s + t_I, so it is free exactly
    when no nonempty acting subset has zero translation; that is checked
    directly, mask by mask.
    """
    is_free = all(not data.shifts[m].is_identity()
                  for m in data.acting_masks if m != 0)
    orbits = orbits_on_faithful(data)
    witness = {m: data.A + data.shifts[m] for m in data.acting_masks}
    return FreeTransitiveReport(
        r=data.r, parity=data.parity, is_free=is_free,
        orbit_sizes=tuple(len(o) for o in orbits), orbits=orbits,
        witness=witness)
