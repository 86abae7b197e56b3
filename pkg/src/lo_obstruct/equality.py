"""Equality decision service for two-generator one-relator groups.

Torus presentations are decided exactly through the central-extension
normal form.  For the twisted presentations no normal form is known, so
equality is a semi-decision: a bounded bidirectional rewrite search over
relator applications.  Each search move replaces a subword X by Y where
X*Y^-1 is a cyclic rotation of a relator (one relator insertion plus
free reduction), or swaps the two sides of a previously proven lemma.
`Equal` verdicts carry a replayable chain of such moves; `Distinct`
verdicts carry a finite-quotient witness; everything else is `Unknown`.

Soundness: every move preserves the group element, witnesses are checked
homomorphisms, and no verdict is ever produced from failure of a search.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from math import gcd

from .normal_form import torus_normal_form
from .quotients import (
    FiniteQuotientWitness,
    find_separating_quotient,
    identity_perm,
)
from .words import Presentation, Word, letters_to_word, word_to_letters

EQUAL = "equal"
DISTINCT = "distinct"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchBudget:
    """Caps for the rewrite search; all overridable per call site."""

    max_insertions: int = 4
    length_factor: float = 4.0
    max_nodes: int = 20000
    quotient_degree: int = 6

    def scaled(self, insertions: int) -> "SearchBudget":
        return SearchBudget(
            max(self.max_insertions, insertions),
            self.length_factor,
            self.max_nodes,
            self.quotient_degree,
        )


@dataclass(frozen=True)
class RewriteStep:
    """Replace cur[pos : pos+len(old)] == old by new, then freely reduce."""

    pos: int
    old: str
    new: str
    rule: str  # "rel" or "lemma:<index>"


@dataclass(frozen=True)
class Derivation:
    """Two rewrite chains meeting at a common word.

    Applying `left_steps` to `start` and `right_steps` to `end` must both
    produce `meet`; since every step preserves the group element this
    certifies start = end (equivalently, start*end^-1 reduces to the
    empty word under relator insertions and free reductions).
    """

    start: str
    end: str
    meet: str
    left_steps: tuple[RewriteStep, ...] = ()
    right_steps: tuple[RewriteStep, ...] = ()

    @property
    def insertions(self) -> int:
        return len(self.left_steps) + len(self.right_steps)

    def as_json(self) -> dict:
        def chain(steps):
            return [
                {"pos": s.pos, "old": s.old, "new": s.new, "rule": s.rule}
                for s in steps
            ]

        return {
            "start": self.start or "1",
            "end": self.end or "1",
            "meet": self.meet or "1",
            "left": chain(self.left_steps),
            "right": chain(self.right_steps),
        }


@dataclass(frozen=True)
class EqualityVerdict:
    kind: str
    method: str = ""
    derivation: Derivation | None = None
    witness: FiniteQuotientWitness | None = None
    reason: str = ""

    @property
    def is_equal(self) -> bool:
        return self.kind == EQUAL

    @property
    def is_distinct(self) -> bool:
        return self.kind == DISTINCT

    @property
    def is_unknown(self) -> bool:
        return self.kind == UNKNOWN


def reduce_letters(s: str) -> str:
    out: list[str] = []
    for ch in s:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def invert_letters(s: str) -> str:
    return s[::-1].swapcase()


def _rotations(s: str) -> list[str]:
    return sorted({s[i:] + s[:i] for i in range(len(s))})


class _RuleTrie:
    """Prefix trie over relator rotations; node payloads list the full
    rotations having that prefix, recorded from `minmatch` down."""

    __slots__ = ("children", "terms")

    def __init__(self):
        self.children: dict[str, _RuleTrie] = {}
        self.terms: list[str] = []


def _build_trie(rotations: list[str], minmatch: int) -> _RuleTrie:
    root = _RuleTrie()
    for rot in rotations:
        node = root
        for depth, ch in enumerate(rot, start=1):
            node = node.children.setdefault(ch, _RuleTrie())
            if depth >= minmatch:
                node.terms.append(rot)
    return root


@dataclass
class Lemma:
    name: str
    lhs: str
    rhs: str
    derivation: Derivation


class EqualityEngine:
    """Word-problem service for one presentation, with result caching and
    support for derived rewrite lemmas."""

    def __init__(self, pres: Presentation, budget: SearchBudget | None = None):
        self.pres = pres
        self.budget = budget or SearchBudget()
        self.torus = pres.torus_parameters()
        self.lemmas: list[Lemma] = []
        self._cache: dict[tuple[str, str], EqualityVerdict] = {}
        self._rotations: list[str] = []
        for rel in pres.relators:
            rs = word_to_letters(rel)
            self._rotations.extend(_rotations(rs))
            self._rotations.extend(_rotations(invert_letters(rs)))
        self._rotations = sorted(set(self._rotations))
        self._rot_set = set(self._rotations)
        self._max_rot = max((len(r) for r in self._rotations), default=0)
        self._minmatch = max(2, self._max_rot // 4)
        self._trie = _build_trie(self._rotations, self._minmatch)

    # -- public api ---------------------------------------------------------

    def equal(self, u: Word, v: Word, budget: SearchBudget | None = None) -> EqualityVerdict:
        budget = budget or self.budget
        su, sv = word_to_letters(u), word_to_letters(v)
        key = (su, sv) if su <= sv else (sv, su)
        hit = self._cache.get(key)
        if hit is not None and not (hit.is_unknown and budget != self.budget):
            return hit
        verdict = self._decide(u, v, su, sv, budget)
        self._cache[key] = verdict
        return verdict

    def add_lemma(self, lhs: Word, rhs: Word, name: str = "",
                  budget: SearchBudget | None = None) -> EqualityVerdict:
        """Prove lhs = rhs and register it as a rewrite rule for later
        searches.  Only Equal results are registered."""
        verdict = self.equal(lhs, rhs, budget)
        if verdict.is_equal:
            deriv = verdict.derivation or Derivation(
                word_to_letters(lhs), word_to_letters(rhs), word_to_letters(lhs)
            )
            self.lemmas.append(
                Lemma(name or f"lemma{len(self.lemmas)}",
                      word_to_letters(lhs), word_to_letters(rhs), deriv)
            )
            # new rewrite power invalidates cached Unknowns
            self._cache = {k: r for k, r in self._cache.items() if not r.is_unknown}
        return verdict

    def replay(self, derivation: Derivation) -> bool:
        return replay_derivation(derivation, self.pres, self.lemmas)

    # -- decision procedure ---------------------------------------------------

    def _decide(self, u, v, su, sv, budget) -> EqualityVerdict:
        if su == sv:
            return EqualityVerdict(EQUAL, method="free",
                                   derivation=Derivation(su, sv, su))
        if self.torus:
            p, q = self.torus
            if torus_normal_form(u, p, q).key() == torus_normal_form(v, p, q).key():
                return EqualityVerdict(EQUAL, method="normal-form")
            return EqualityVerdict(DISTINCT, method="normal-form")
        witness = self._abelian_witness(u, v)
        if witness is not None:
            return EqualityVerdict(DISTINCT, method="abelian-quotient", witness=witness)
        if self.pres.is_free:
            witness = find_separating_quotient(u, v, self.pres, budget.quotient_degree)
            if witness is not None:
                return EqualityVerdict(DISTINCT, method="finite-quotient", witness=witness)
            return EqualityVerdict(UNKNOWN, reason="no separating quotient found")
        deriv = self._search(su, sv, budget)
        if deriv is not None:
            return EqualityVerdict(EQUAL, method="rewrite-search", derivation=deriv)
        witness = find_separating_quotient(u, v, self.pres, budget.quotient_degree)
        if witness is not None:
            return EqualityVerdict(DISTINCT, method="finite-quotient", witness=witness)
        return EqualityVerdict(UNKNOWN, reason="search and quotient budgets exhausted")

    def _abelian_witness(self, u: Word, v: Word) -> FiniteQuotientWitness | None:
        """Cyclic witness from the free part of the abelianization."""
        ua, ub = u.exponent_sums()
        va, vb = v.exponent_sums()
        da, db = ua - va, ub - vb
        if (da, db) == (0, 0):
            return None
        if self.pres.is_free:
            coeffs = (1, 0) if da else (0, 1)
        elif len(self.pres.relators) == 1:
            ra, rb = self.pres.relators[0].exponent_sums()
            if (ra, rb) == (0, 0):
                coeffs = (1, 0) if da else (0, 1)
            else:
                d = gcd(abs(ra), abs(rb))
                coeffs = (rb // d, -(ra // d))  # kernel contains (ra, rb)
        else:
            return None
        diff = coeffs[0] * da + coeffs[1] * db
        if diff == 0:
            return None
        n = abs(diff) + 1
        shift = tuple((i + 1) % n for i in range(n))
        def power(k):
            k %= n
            return tuple((i + k) % n for i in range(n))
        witness = FiniteQuotientWitness(n, power(coeffs[0]), power(coeffs[1]))
        assert witness.satisfies(self.pres) and witness.separates(u, v)
        return witness

    # -- rewrite search -------------------------------------------------------

    def _successors(self, s: str, cap: int):
        seen = set()
        for i in range(len(s)):
            node = self._trie
            depth = 0
            for ch in s[i:]:
                node = node.children.get(ch)
                if node is None:
                    break
                depth += 1
                for rot in node.terms:
                    repl = invert_letters(rot[depth:])
                    t = reduce_letters(s[:i] + repl + s[i + depth:])
                    if len(t) <= cap and t not in seen:
                        seen.add(t)
                        yield t, RewriteStep(i, s[i:i + depth], repl, "rel")
        for idx, lem in enumerate(self.lemmas):
            for old, new in ((lem.lhs, lem.rhs), (lem.rhs, lem.lhs)):
                if not old:
                    continue
                start = 0
                while (i := s.find(old, start)) >= 0:
                    t = reduce_letters(s[:i] + new + s[i + len(old):])
                    if len(t) <= cap and t not in seen:
                        seen.add(t)
                        yield t, RewriteStep(i, old, new, f"lemma:{idx}")
                    start = i + 1

    def _search(self, su: str, sv: str, budget: SearchBudget) -> Derivation | None:
        """Bidirectional best-first search over rewrite moves."""
        if not self._rotations:
            return None
        cap = int(budget.length_factor * max(len(su), len(sv), 1)) + self._max_rot + 4
        # visited[side][word] = (cost, parent, step)
        visited = [{su: (0, None, None)}, {sv: (0, None, None)}]
        heaps = [[(0, len(su), su)], [(0, len(sv), sv)]]
        if su in visited[1]:
            return Derivation(su, sv, su)
        nodes = 0
        while (heaps[0] or heaps[1]) and nodes < budget.max_nodes:
            for side in (0, 1):
                if not heaps[side]:
                    continue
                g, _, s = heapq.heappop(heaps[side])
                if visited[side][s][0] < g:
                    continue
                if g >= budget.max_insertions:
                    continue
                nodes += 1
                for t, step in self._successors(s, cap):
                    cost = g + 1
                    known = visited[side].get(t)
                    if known is not None and known[0] <= cost:
                        continue
                    visited[side][t] = (cost, s, step)
                    other = visited[1 - side].get(t)
                    if other is not None and other[0] + cost <= budget.max_insertions:
                        return self._join(t, visited, su, sv)
                    heapq.heappush(heaps[side], (cost, len(t), t))
        return None

    def _join(self, meet: str, visited, su: str, sv: str) -> Derivation:
        chains = []
        for side in (0, 1):
            steps = []
            cur = meet
            while True:
                _, parent, step = visited[side][cur]
                if parent is None:
                    break
                steps.append(step)
                cur = parent
            chains.append(tuple(reversed(steps)))
        return Derivation(su, sv, meet, chains[0], chains[1])


def apply_step(s: str, step: RewriteStep) -> str | None:
    """Apply one rewrite step, or None if it does not match."""
    if s[step.pos: step.pos + len(step.old)] != step.old:
        return None
    return reduce_letters(s[: step.pos] + step.new + s[step.pos + len(step.old):])


def replay_derivation(deriv: Derivation, pres: Presentation,
                      lemmas: list[Lemma] | None = None) -> bool:
    """Re-check a derivation from scratch: every step must match its
    source word and be justified by a relator rotation or a lemma whose
    own derivation replays."""
    lemmas = lemmas or []
    rot_set = set()
    for rel in pres.relators:
        rs = word_to_letters(rel)
        rot_set.update(_rotations(rs))
        rot_set.update(_rotations(invert_letters(rs)))

    def step_ok(step: RewriteStep) -> bool:
        if step.rule == "rel":
            return step.old + invert_letters(step.new) in rot_set
        if step.rule.startswith("lemma:"):
            idx = int(step.rule.split(":", 1)[1])
            if idx >= len(lemmas):
                return False
            lem = lemmas[idx]
            if (step.old, step.new) not in ((lem.lhs, lem.rhs), (lem.rhs, lem.lhs)):
                return False
            return replay_derivation(lem.derivation, pres, lemmas)
        return False

    for origin, steps in ((deriv.start, deriv.left_steps), (deriv.end, deriv.right_steps)):
        cur = reduce_letters(origin)
        for step in steps:
            if not step_ok(step):
                return False
            nxt = apply_step(cur, step)
            if nxt is None:
                return False
            cur = nxt
        if cur != deriv.meet:
            return False
    return True


def equal_in_group(u: Word, v: Word, pres: Presentation,
                   budget: SearchBudget | None = None) -> EqualityVerdict:
    """One-shot convenience wrapper around EqualityEngine."""
    return EqualityEngine(pres, budget).equal(u, v)
