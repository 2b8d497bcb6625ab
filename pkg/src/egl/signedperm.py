"""Signed permutations, twist groups, and monodromy representations.

The hyperoctahedral-type group (Z/2)^k x| Sigma_k acts on (C*)^k by
permuting coordinates and then conjugating the flagged ones.  The group
law used everywhere is the one induced by composing these
transformations, so ``(g * h).act(z) == g.act(h.act(z))`` holds exactly;
cross-oracle tests against the chart-level twisted composition pin this
convention.  Enumeration-based operations are bounded at k <= 8.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import DimensionMismatch, KTooLarge, MalformedPresentation, UnknownGenerator

__all__ = [
    "SignedPermutation",
    "semidirect_mul",
    "semidirect_inverse",
    "TwistGroup",
    "twist_group",
    "full_hyperoctahedral",
    "MonodromyRep",
    "hausdorff_nc_decision",
    "nc_decision_witness",
    "GroupDescriptor",
    "covering_isotropy",
]

K_MAX = 8


@dataclass(frozen=True)
class SignedPermutation:
    """Element (sigma, eps) of (Z/2)^k x| Sigma_k.

    ``perm[i]`` is the image of index i under sigma; ``flips[i]`` flags
    complex conjugation of output coordinate i.  Acting on z in (C*)^k:
    first permute (output slot i receives z[sigma^{-1}(i)]), then
    conjugate the flagged slots.
    """

    perm: Tuple[int, ...]
    flips: Tuple[int, ...]

    def __post_init__(self):
        k = len(self.perm)
        if sorted(self.perm) != list(range(k)) or len(self.flips) != k:
            raise MalformedPresentation("invalid signed permutation data")
        if any(f not in (0, 1) for f in self.flips):
            raise MalformedPresentation("flips must be 0/1")

    @staticmethod
    def identity(k: int) -> "SignedPermutation":
        return SignedPermutation(tuple(range(k)), (0,) * k)

    @property
    def degree(self) -> int:
        return len(self.perm)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.degree)) and not any(self.flips)

    def _inv_perm(self) -> Tuple[int, ...]:
        inv = [0] * self.degree
        for i, v in enumerate(self.perm):
            inv[v] = i
        return tuple(inv)

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        if self.degree != other.degree:
            raise DimensionMismatch("signed permutation degrees differ")
        inv = self._inv_perm()
        perm = tuple(self.perm[other.perm[i]] for i in range(self.degree))
        flips = tuple((self.flips[i] + other.flips[inv[i]]) % 2 for i in range(self.degree))
        return SignedPermutation(perm, flips)

    def inverse(self) -> "SignedPermutation":
        inv = self._inv_perm()
        flips = tuple(self.flips[self.perm[j]] for j in range(self.degree))
        return SignedPermutation(inv, flips)

    def act(self, z: Sequence[complex]) -> Tuple[complex, ...]:
        """Permute, then conjugate flagged coordinates."""
        if len(z) != self.degree:
            raise DimensionMismatch("vector length != degree")
        inv = self._inv_perm()
        out = []
        for i in range(self.degree):
            w = complex(z[inv[i]])
            out.append(w.conjugate() if self.flips[i] else w)
        return tuple(out)

    def matrix(self):
        """Faithful 2k x 2k real matrix (permutation blocks, conjugation = diag(1,-1))."""
        k = self.degree
        M = [[0] * (2 * k) for _ in range(2 * k)]
        inv = self._inv_perm()
        for i in range(k):
            j = inv[i]
            M[2 * i][2 * j] = 1
            M[2 * i + 1][2 * j + 1] = -1 if self.flips[i] else 1
        return tuple(map(tuple, M))


def semidirect_mul(g, h):
    """Product in (C*)^k x| ((Z/2)^k x| Sigma_k).

    Elements are ``(z, sp)`` with z a tuple of nonzero complex numbers
    (or None for a purely discrete element): (z, g)(z', g') =
    (z * g.act(z'), g g').
    """
    zg, sg = g
    zh, sh = h
    sp = sg * sh
    if zg is None and zh is None:
        return (None, sp)
    if zg is None or zh is None:
        raise DimensionMismatch("cannot mix purely discrete and full elements")
    if len(zg) != sg.degree or len(zh) != sh.degree:
        raise DimensionMismatch("continuous part length != degree")
    acted = sg.act(zh)
    return (tuple(a * b for a, b in zip(zg, acted)), sp)


def semidirect_inverse(g):
    zg, sg = g
    si = sg.inverse()
    if zg is None:
        return (None, si)
    acted = si.act(zg)
    return (tuple(1.0 / a for a in acted), si)


@dataclass(frozen=True)
class TwistGroup:
    """Explicit subgroup of (Z/2)^k x| Sigma_k, closed under the group law."""

    k: int
    elements: Tuple[SignedPermutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def untwisted_coorientable(self) -> bool:
        return self.order == 1

    def __contains__(self, g: SignedPermutation) -> bool:
        return g in self.elements


def twist_group(images: Iterable[SignedPermutation], k: Optional[int] = None) -> TwistGroup:
    """Closure of a generating set under multiplication.

    Empty generators give the trivial group (the untwisted coorientable
    case).  Raises KTooLarge beyond the enumeration bound.
    """
    gens = list(images)
    if k is None:
        if not gens:
            raise ValueError("k required when the generating set is empty")
        k = gens[0].degree
    if k > K_MAX:
        raise KTooLarge(f"k={k} exceeds enumeration bound {K_MAX}")
    if any(g.degree != k for g in gens):
        raise DimensionMismatch("generators of mixed degree")
    seen = {SignedPermutation.identity(k)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                for b in (a * g, g * a):
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
        frontier = nxt
    ordered = sorted(seen, key=lambda s: (s.perm, s.flips))
    return TwistGroup(k=k, elements=tuple(ordered))


def full_hyperoctahedral(k: int) -> TwistGroup:
    """All of (Z/2)^k x| Sigma_k by exhaustive enumeration."""
    if k > K_MAX:
        raise KTooLarge(f"k={k} exceeds enumeration bound {K_MAX}")
    elements = [SignedPermutation(p, f)
                for p in itertools.permutations(range(k))
                for f in itertools.product((0, 1), repeat=k)]
    ordered = sorted(elements, key=lambda s: (s.perm, s.flips))
    return TwistGroup(k=k, elements=tuple(ordered))


@dataclass(frozen=True)
class MonodromyRep:
    """Named fundamental-group generators with signed-permutation images.

    Words are sequences of tokens; ``~name`` (or ``name^-1``) denotes the
    inverse of a generator.  ``kernel_words`` optionally lists words
    declared to die under the inclusion pushforward; the normal-crossing
    decision quantifies over exactly these.
    """

    images: Dict[str, SignedPermutation]
    kernel_words: Tuple[Tuple[str, ...], ...] = ()

    def __post_init__(self):
        degs = {g.degree for g in self.images.values()}
        if len(degs) > 1:
            raise DimensionMismatch("generator images of mixed degree")

    @property
    def k(self) -> int:
        if not self.images:
            raise MalformedPresentation("empty representation has no degree")
        return next(iter(self.images.values())).degree

    def generators(self) -> Tuple[str, ...]:
        return tuple(self.images)

    def evaluate(self, word: Sequence[str]) -> SignedPermutation:
        out = SignedPermutation.identity(self.k)
        for token in word:
            inverse = False
            name = token
            if name.startswith("~"):
                inverse, name = True, name[1:]
            elif name.endswith("^-1"):
                inverse, name = True, name[:-3]
            if name not in self.images:
                raise UnknownGenerator(f"unknown generator {name!r}")
            g = self.images[name]
            out = out * (g.inverse() if inverse else g)
        return out

    def image_group(self) -> TwistGroup:
        return twist_group(self.images.values(), k=self.k)


def hausdorff_nc_decision(strata: Sequence) -> bool:
    """Hausdorff integrability of a normal-crossing divisor.

    ``strata`` is a sequence of ``(rep, kernel_words)`` pairs (or of
    MonodromyRep objects carrying their own kernel words); true iff on
    every stratum every declared kernel word has trivial monodromy.
    """
    return nc_decision_witness(strata) is None


def nc_decision_witness(strata: Sequence):
    """The first (stratum index, word, image) violating the criterion."""
    for idx, entry in enumerate(strata):
        if isinstance(entry, MonodromyRep):
            rep, words = entry, entry.kernel_words
        else:
            rep, words = entry
        for word in words:
            img = rep.evaluate(word)
            if not img.is_identity():
                return (idx, tuple(word), img)
    return None


@dataclass(frozen=True)
class GroupDescriptor:
    """Isotropy group shape: a (C*)^j factor extended by a finite group."""

    cstar_rank: int
    discrete: TwistGroup

    @property
    def name(self) -> str:
        return _descriptor_name(self.cstar_rank, self.discrete)


def _fiber_name(j: int) -> str:
    if j == 0:
        return "1"
    if j == 1:
        return "ℂ*"
    if j == 2:
        return "(ℂ*)²"
    return f"(ℂ*)^{j}"


def _discrete_name(group: TwistGroup) -> str:
    import math

    if group.order == 1:
        return "1"
    pure_flips = all(g.perm == tuple(range(group.k)) for g in group.elements)
    pure_perms = all(not any(g.flips) for g in group.elements)
    if pure_flips:
        if group.order == 2:
            return "ℤ/2"
        power = int(math.log2(group.order))
        return f"(ℤ/2)^{power}"
    if pure_perms:
        if group.order == math.factorial(group.k):
            return f"Σ{_subscript(group.k)}"
        return f"Σ-subgroup of order {group.order}"
    if group.order == 2 ** group.k * math.factorial(group.k):
        return f"(ℤ/2)^{group.k}⋊Σ{_subscript(group.k)}"
    return f"twist group of order {group.order}"


def _subscript(n: int) -> str:
    digits = "₀₁₂₃₄₅₆₇₈₉"
    return "".join(digits[int(c)] for c in str(n))


def _descriptor_name(j: int, group: TwistGroup) -> str:
    if group.order == 1:
        return _fiber_name(j)
    return f"{_fiber_name(j)}⋊{_discrete_name(group)}"


def covering_isotropy(orbit_rep: MonodromyRep, fiber_isotropy) -> GroupDescriptor:
    """Isotropy of a quotient orbit: fiber isotropy extended by monodromy.

    ``fiber_isotropy`` is a GroupDescriptor or a (C*)-rank; the result
    is the semidirect product of the fiber with the finite image of the
    representation, acting as in ``semidirect_mul``.
    """
    if isinstance(fiber_isotropy, GroupDescriptor):
        j = fiber_isotropy.cstar_rank
        if fiber_isotropy.discrete.order != 1:
            raise MalformedPresentation("fiber isotropy must be connected")
    else:
        j = int(fiber_isotropy)
    image = orbit_rep.image_group()
    return GroupDescriptor(cstar_rank=j, discrete=image)
