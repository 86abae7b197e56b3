"""Free-group words over the two-generator alphabet {a, b}.

Words are stored syllable-merged: a sequence of (generator, exponent) pairs
with nonzero exponents and no two adjacent syllables on the same generator.
This keeps high powers like b^{2k+1} compact and makes free reduction linear.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

GENERATORS = ("a", "b")

Syllable = Tuple[str, int]


class WordError(ValueError):
    pass


def _merge(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    """Freely reduce a raw syllable sequence (stack-based, cascading)."""
    out: list[Syllable] = []
    for gen, exp in syllables:
        if gen not in GENERATORS:
            raise WordError(f"unknown generator {gen!r}")
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged != 0:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word. Use the module constructors, `*`, `~` and `**`."""

    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        prev = None
        for gen, exp in self.syllables:
            if gen not in GENERATORS or exp == 0 or gen == prev:
                raise WordError(f"not freely reduced: {self.syllables}")
            prev = gen

    # -- queries ------------------------------------------------------------

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def letters(self) -> Iterator[Syllable]:
        """Yield (generator, ±1) letter by letter."""
        for gen, exp in self.syllables:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield (gen, step)

    def exponent_sums(self) -> tuple[int, int]:
        ea = sum(e for g, e in self.syllables if g == "a")
        eb = sum(e for g, e in self.syllables if g == "b")
        return ea, eb

    # -- algebra ------------------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        return Word(_merge(self.syllables + other.syllables))

    def __invert__(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self if n > 0 else ~self
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def conjugated_by(self, g: "Word") -> "Word":
        """g * self * g^-1."""
        return g * self * ~g

    def cyclic_rotations(self) -> list["Word"]:
        """All distinct letter-level cyclic rotations (freely reduced)."""
        letters = list(self.letters())
        seen = []
        for i in range(max(1, len(letters))):
            rot = Word(_merge(letters[i:] + letters[:i]))
            if rot not in seen:
                seen.append(rot)
        return seen

    def cyclically_reduced(self) -> "Word":
        letters = list(self.letters())
        while len(letters) > 1 and letters[0] == (letters[-1][0], -letters[-1][1]):
            letters = letters[1:-1]
        return Word(_merge(letters))

    # -- formatting ---------------------------------------------------------

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


EMPTY = Word()


def free_reduce(syllables: Iterable[Syllable]) -> Word:
    """Freely reduce a raw (generator, exponent) sequence. Idempotent."""
    return Word(_merge(syllables))


def word(*syllables: Syllable) -> Word:
    return free_reduce(syllables)


def concat(w1: Word, w2: Word) -> Word:
    return w1 * w2


def invert(w: Word) -> Word:
    return ~w


def power(w: Word, n: int) -> Word:
    return w**n


def conjugate(w: Word, g: Word) -> Word:
    return w.conjugated_by(g)


# Single generators, handy everywhere.
A = word(("a", 1))
B = word(("b", 1))


# ---------------------------------------------------------------------------
# String forms.  Compact form: "abA" with uppercase = inverse letters.
# Token form: "a^2 b^-3".  Both parse back; format_word emits compact,
# format_tokens emits the token form.
# ---------------------------------------------------------------------------


def format_word(w: Word) -> str:
    parts = []
    for gen, exp in w.syllables:
        letter = gen if exp > 0 else gen.upper()
        parts.append(letter * abs(exp))
    return "".join(parts) if parts else "1"


def word_to_letters(w: Word) -> str:
    """Letter string with uppercase = inverse; empty word is ''."""
    return "" if w.is_identity() else format_word(w)


def letters_to_word(s: str) -> Word:
    return _parse_compact(s) if s else EMPTY


def format_tokens(w: Word) -> str:
    if w.is_identity():
        return "1"
    parts = []
    for gen, exp in w.syllables:
        parts.append(gen if exp == 1 else f"{gen}^{exp}")
    return " ".join(parts)


def parse_word(text: str) -> Word:
    """Parse either the compact or the token form (auto-detected)."""
    text = text.strip()
    if text in ("", "1"):
        return EMPTY
    if "^" in text or " " in text or "-" in text:
        return _parse_tokens(text)
    return _parse_compact(text)


def _parse_compact(text: str) -> Word:
    sylls = []
    for ch in text:
        low = ch.lower()
        if low not in GENERATORS:
            raise WordError(f"bad letter {ch!r} in {text!r}")
        sylls.append((low, 1 if ch.islower() else -1))
    return free_reduce(sylls)


def _parse_tokens(text: str) -> Word:
    sylls = []
    for tok in text.split():
        if tok == "1":
            continue
        if "^" in tok:
            gen, _, exp_s = tok.partition("^")
            try:
                exp = int(exp_s)
            except ValueError as err:
                raise WordError(f"bad exponent in token {tok!r}") from err
        else:
            gen, exp = tok, 1
        gen = gen.strip()
        if gen.lower() not in GENERATORS:
            raise WordError(f"bad generator in token {tok!r}")
        if gen.isupper():
            gen, exp = gen.lower(), -exp
        sylls.append((gen, exp))
    return free_reduce(sylls)


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Two-generator presentation; relators freely and cyclically reduced."""

    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        for r in self.relators:
            if r.is_identity():
                raise WordError("trivial relator")
            if len(r.syllables) > 1 and r.syllables[0][0] == r.syllables[-1][0]:
                raise WordError(f"relator not cyclically reduced: {r}")

    @property
    def is_free(self) -> bool:
        return not self.relators

    def torus_parameters(self) -> tuple[int, int] | None:
        """Return (p, q) when the single relator is a^p b^-q up to rotation
        and inversion, with p, q >= 2 coprime; else None."""
        if len(self.relators) != 1:
            return None
        from math import gcd

        r = self.relators[0]
        if len(r.syllables) != 2:
            return None
        exps = {g: e for g, e in r.syllables}
        if set(exps) != {"a", "b"}:
            return None
        p, mq = exps["a"], exps["b"]
        if p * mq >= 0:  # need opposite signs: a^p b^-q or its inverse
            return None
        p, q = abs(p), abs(mq)
        if p < 2 or q < 2 or gcd(p, q) != 1:
            return None
        return (p, q)


FREE_GROUP = Presentation()
