"""Finite permutation quotients: a sound inequality oracle.

A homomorphism G -> S_n is a pair of permutations satisfying every
relator.  Two words with different images are distinct in G; nothing is
ever concluded from equal images.  Enumeration is exhaustive up to the
requested degree, with the image of `a` restricted to conjugacy-class
representatives (simultaneous conjugation preserves both the relator
condition and whether two given words are separated).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .words import Presentation, Word

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """(p ∘ q)(x) = p(q(x))."""
    return tuple(p[q[x]] for x in range(len(p)))


def invert_perm(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_power(p: Perm, n: int) -> Perm:
    if n < 0:
        return perm_power(invert_perm(p), -n)
    out = identity_perm(len(p))
    for _ in range(n):
        out = compose(p, out)
    return out


def word_image(w: Word, img_a: Perm, img_b: Perm) -> Perm:
    base = {"a": img_a, "b": img_b}
    out = identity_perm(len(img_a))
    for gen, exp in w.syllables:
        out = compose(out, perm_power(base[gen], exp))
    return out


def _cycle_type_representatives(n: int) -> list[Perm]:
    """One permutation per cycle type of S_n (canonical block form)."""

    def partitions(total: int, maximum: int):
        if total == 0:
            yield ()
            return
        for part in range(min(total, maximum), 0, -1):
            for rest in partitions(total - part, part):
                yield (part,) + rest

    reps = []
    for partition in partitions(n, n):
        perm = []
        start = 0
        for size in partition:
            perm.extend(list(range(start + 1, start + size)) + [start])
            start += size
        reps.append(tuple(perm))
    return reps


@dataclass(frozen=True)
class FiniteQuotientWitness:
    """Images of a and b in S_degree; every relator maps to the identity."""

    degree: int
    image_a: Perm
    image_b: Perm

    def image(self, w: Word) -> Perm:
        return word_image(w, self.image_a, self.image_b)

    def satisfies(self, pres: Presentation) -> bool:
        ident = identity_perm(self.degree)
        return all(self.image(r) == ident for r in pres.relators)

    def separates(self, u: Word, v: Word) -> bool:
        return self.image(u) != self.image(v)

    def as_json(self) -> dict:
        return {
            "degree": self.degree,
            "a": list(self.image_a),
            "b": list(self.image_b),
        }


@lru_cache(maxsize=64)
def quotient_homs(pres: Presentation, degree: int) -> tuple[FiniteQuotientWitness, ...]:
    """All homs into S_degree with image(a) a class representative."""
    found = []
    ident = identity_perm(degree)
    for img_a in _cycle_type_representatives(degree):
        for img_b in itertools.permutations(range(degree)):
            ok = True
            for r in pres.relators:
                if word_image(r, img_a, img_b) != ident:
                    ok = False
                    break
            if ok:
                found.append(FiniteQuotientWitness(degree, img_a, tuple(img_b)))
    return tuple(found)


def find_separating_quotient(
    u: Word, v: Word, pres: Presentation, max_degree: int
) -> FiniteQuotientWitness | None:
    """Smallest-degree witness separating u from v, if one exists up to
    max_degree.  Absence of a witness is a normal return, not a proof."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    for degree in range(1, max_degree + 1):
        for hom in quotient_homs(pres, degree):
            if hom.separates(u, v):
                return hom
    return None


def fingerprint(w: Word, homs: tuple[FiniteQuotientWitness, ...]) -> tuple:
    """Image vector of w under a fixed hom list; equal elements always agree."""
    return tuple(h.image(w) for h in homs)
