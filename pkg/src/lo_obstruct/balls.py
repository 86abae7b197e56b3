"""Finite group truncations ("balls") for positive-cone consistency search.

A ball lists canonical representatives for the distinct group elements
among all freely reduced words up to a radius (plus optional seed words),
together with the partial multiplication table of products that land
back inside the listed set, and closure under inversion.

Soundness contract: the `exact` flag is set only when every pair of
listed representatives is certified distinct (and distinct from the
identity).  Torus presentations get this for free from the normal form;
for other presentations pairs are separated by finite-quotient
fingerprints and merged by proven equalities, and any unresolved pair
clears the flag.  Refutations found on an inexact ball are never
reported as Unsat by the cone search: a listed element that is secretly
the identity could be forced to carry a sign, which would make such a
refutation vacuous.  Missing merges alone only drop constraints, which
can only make the system easier to satisfy, so Sat/Inconclusive results
need no gate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .equality import EqualityEngine, SearchBudget
from .normal_form import torus_normal_form
from .quotients import fingerprint, quotient_homs
from .words import GENERATORS, Presentation, Word, free_reduce, word_to_letters


@dataclass(frozen=True)
class BallElement:
    index: int
    rep: Word  # shortest known representative word
    key: object  # canonical key (normal form for torus; class id otherwise)


@dataclass
class Ball:
    presentation: Presentation
    radius: int
    elements: list[BallElement]
    inverse: list[int]  # element index -> index of its inverse
    products: dict[tuple[int, int], int]  # (i, j) -> index of element_i * element_j
    exact: bool
    seeds: tuple[Word, ...] = ()
    _classify_cache: dict = field(default_factory=dict)
    _engine: EqualityEngine | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def rep(self, i: int) -> Word:
        return self.elements[i].rep

    def classify(self, w: Word) -> int | None | str:
        """Index of the listed element provably equal to w, the marker
        "identity" for provable identity, or None (not placeable)."""
        s = word_to_letters(w)
        if s in self._classify_cache:
            return self._classify_cache[s]
        result = self._classify(w)
        self._classify_cache[s] = result
        return result

    def _classify(self, w: Word):
        torus = self.presentation.torus_parameters()
        if torus is not None:
            key = torus_normal_form(w, *torus).key()
            if key == (0, ()):
                return "identity"
            return self._key_index.get(key)
        if self.presentation.is_free:
            if w.is_identity():
                return "identity"
            return self._key_index.get(word_to_letters(w))
        assert self._engine is not None
        if self._engine.equal(w, Word()).is_equal:
            return "identity"
        fp = fingerprint(w, self._homs)
        for idx in self._fp_index.get(fp, ()):
            if self._engine.equal(w, self.elements[idx].rep).is_equal:
                return idx
        return None

    def check_assignment(self, signs: dict[int, int]) -> bool:
        """Post-hoc audit of the positive-cone axioms over the full table."""
        for i, j in zip(range(len(self.elements)), self.inverse):
            if signs.get(i, 0) and signs.get(j, 0) != -signs[i]:
                return False
        for (i, j), k in self.products.items():
            if signs.get(i) == 1 and signs.get(j) == 1 and signs.get(k) != 1:
                return False
        return True

    # populated by the builder
    _key_index: dict = field(default_factory=dict)
    _fp_index: dict = field(default_factory=dict)
    _homs: tuple = ()


def _reduced_words_up_to(radius: int) -> list[Word]:
    """All freely reduced words of length <= radius, shortest first."""
    out = [Word()]
    layer = [Word()]
    letters = [free_reduce([(g, e)]) for g in GENERATORS for e in (1, -1)]
    for _ in range(radius):
        nxt = []
        for w in layer:
            for letter in letters:
                extended = w * letter
                if len(extended) == len(w) + 1:
                    nxt.append(extended)
        out.extend(nxt)
        layer = nxt
    return out


def build_ball(
    pres: Presentation,
    radius: int,
    budget: SearchBudget | None = None,
    seeds: tuple[Word, ...] = (),
    max_elements: int = 4000,
    engine: EqualityEngine | None = None,
) -> Ball:
    """Construct the ball of the given radius, optionally seeded with
    extra words (any word set is sound; seeds simply enlarge the listed
    element set so that longer hypothesis chains stay visible)."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    budget = budget or SearchBudget()
    torus = pres.torus_parameters()
    candidates = _reduced_words_up_to(radius)
    for seed in seeds:
        candidates.append(seed)
        candidates.append(~seed)

    if torus is not None:
        return _build_exact(pres, radius, candidates, seeds, max_elements,
                            keyer=lambda w: torus_normal_form(w, *torus).key(),
                            identity_key=(0, ()))
    if pres.is_free:
        return _build_exact(pres, radius, candidates, seeds, max_elements,
                            keyer=word_to_letters, identity_key="")
    return _build_generic(pres, radius, candidates, seeds, max_elements,
                          budget, engine)


def _build_exact(pres, radius, candidates, seeds, max_elements, keyer, identity_key):
    by_key: dict = {}
    for w in candidates:
        key = keyer(w)
        if key == identity_key:
            continue
        best = by_key.get(key)
        if best is None or (len(w), word_to_letters(w)) < (len(best), word_to_letters(best)):
            by_key[key] = w
    # deterministic order: by representative length then letters
    items = sorted(by_key.items(), key=lambda kv: (len(kv[1]), word_to_letters(kv[1])))
    items = items[:max_elements]
    # closure under inversion (inverse of a listed word has equal length,
    # so only max_elements truncation can break it; re-add as needed)
    keys = {k for k, _ in items}
    extra = []
    for key, rep in items:
        inv_key = keyer(~rep)
        if inv_key not in keys:
            keys.add(inv_key)
            extra.append((inv_key, ~rep))
    items.extend(extra)

    elements = [BallElement(i, rep, key) for i, (key, rep) in enumerate(items)]
    key_index = {e.key: e.index for e in elements}
    inverse = [key_index[keyer(~e.rep)] for e in elements]
    products = {}
    for e1, e2 in itertools.product(elements, repeat=2):
        key = keyer(e1.rep * e2.rep)
        k = key_index.get(key)
        if k is not None:
            products[(e1.index, e2.index)] = k
    ball = Ball(pres, radius, elements, inverse, products, exact=True, seeds=tuple(seeds))
    ball._key_index = key_index
    return ball


def _build_generic(pres, radius, candidates, seeds, max_elements, budget, engine):
    """Quotient-fingerprint classes refined by proven equalities."""
    engine = engine or EqualityEngine(pres, budget)
    homs = tuple(
        h for d in range(1, budget.quotient_degree + 1) for h in quotient_homs(pres, d)
    )
    exact = True
    identity_fp = fingerprint(Word(), homs)

    reps: list[Word] = []
    fp_of_rep: list[tuple] = []
    fp_index: dict[tuple, list[int]] = {}
    for w in candidates:
        if len(reps) >= max_elements:
            break
        if w.is_identity() or engine.equal(w, Word()).is_equal:
            continue
        fp = fingerprint(w, homs)
        if fp == identity_fp:
            # not provably trivial, not separably nontrivial
            exact = False
        placed = False
        for idx in fp_index.get(fp, ()):
            verdict = engine.equal(w, reps[idx])
            if verdict.is_equal:
                if len(w) < len(reps[idx]):
                    reps[idx] = w
                placed = True
                break
            if not verdict.is_distinct:
                exact = False  # same fingerprint, equality unresolved
        if not placed:
            fp_index.setdefault(fp, []).append(len(reps))
            reps.append(w)
            fp_of_rep.append(fp)

    elements = [BallElement(i, rep, i) for i, rep in enumerate(reps)]

    def locate(w: Word) -> int | None | str:
        if engine.equal(w, Word()).is_equal:
            return "identity"
        fp = fingerprint(w, homs)
        for idx in fp_index.get(fp, ()):
            if engine.equal(w, reps[idx]).is_equal:
                return idx
        return None

    inverse = []
    for e in elements:
        loc = locate(~e.rep)
        if not isinstance(loc, int):
            # inverse not placeable: add it as a fresh element
            loc = len(elements)
            fp = fingerprint(~e.rep, homs)
            fp_index.setdefault(fp, []).append(loc)
            reps.append(~e.rep)
            elements.append(BallElement(loc, ~e.rep, loc))
        inverse.append(loc)
    while len(inverse) < len(elements):
        inverse.append(inverse.index(len(inverse)))

    products = {}
    for e1, e2 in itertools.product(elements, repeat=2):
        loc = locate(e1.rep * e2.rep)
        if isinstance(loc, int):
            products[(e1.index, e2.index)] = loc

    ball = Ball(pres, radius, elements, inverse, products, exact=exact,
                seeds=tuple(seeds))
    ball._fp_index = {k: list(v) for k, v in fp_index.items()}
    ball._homs = homs
    ball._engine = engine
    return ball
