"""Exact normal forms for the torus knot groups G_{p,q} = <a, b | a^p = b^q>.

The element z = a^p = b^q is central and G/<z> is the free product
Z_p * Z_q.  Every element is uniquely z^t * s where s is an alternating
product of a^e (0 < e < p) and b^f (0 < f < q).  Two words are equal in
the group iff these forms coincide, which gives a linear-time word
problem; the search-based machinery is reserved for the twisted groups
where no such form is available.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .words import Syllable, Word, free_reduce


@dataclass(frozen=True)
class TorusNormalForm:
    """Canonical form z^t * (alternating a/b syllables), z = a^p = b^q."""

    p: int
    q: int
    t: int
    syllables: tuple[Syllable, ...]

    def __post_init__(self):
        bound = {"a": self.p, "b": self.q}
        prev = None
        for gen, exp in self.syllables:
            if gen == prev or not 0 < exp < bound[gen]:
                raise ValueError(f"malformed normal form: {self.syllables}")
            prev = gen

    def key(self) -> tuple:
        return (self.t, self.syllables)

    def is_identity(self) -> bool:
        return self.t == 0 and not self.syllables

    def word(self) -> Word:
        """A representative word, central power written as a^(p*t)."""
        sylls = list(self.syllables)
        if self.t:
            sylls = [("a", self.p * self.t)] + sylls
        return free_reduce(sylls)


def torus_normal_form(w: Word, p: int, q: int) -> TorusNormalForm:
    """Normal form of w in G_{p,q}.  Requires p, q >= 2 coprime."""
    if p < 2 or q < 2 or gcd(p, q) != 1:
        raise ValueError(f"invalid torus parameters ({p}, {q})")
    mod = {"a": p, "b": q}
    t = 0
    stack: list[Syllable] = []
    # The stack stays alternating: a same-generator top is merged before any
    # push, and a vanishing syllable exposes a different-generator neighbour.
    for gen, exp in w.syllables:
        if stack and stack[-1][0] == gen:
            exp += stack.pop()[1]
        c, r = divmod(exp, mod[gen])
        t += c  # z is central, so its powers move freely to the front
        if r:
            stack.append((gen, r))
    return TorusNormalForm(p, q, t, tuple(stack))


def torus_equal(u: Word, v: Word, p: int, q: int) -> bool:
    return torus_normal_form(u, p, q).key() == torus_normal_form(v, p, q).key()
