"""Case-split prover: discharge a sign implication over all sign patterns.

To certify "hypothesis sign forces target sign in every left-ordering",
the prover enumerates the full product of {+,-} over the supplied branch
words.  Each leaf context (hypothesis + branch pattern + negated target)
is discharged by a positivity certificate whose target the context also
forces negative: a product of context-positive factors equal to a
context-negative word is a contradiction, and a certificate for the
target itself contradicts the assumed negation.

Leaves are discharged from caller-supplied hint certificates where
possible (the built-in family suites provide them), falling back to a
bounded enumeration of factor products.  Failure is honest: the
undischarged leaf patterns are reported and no tree is produced.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

from .certificates import (
    CertificateBuilder,
    Factor,
    PositivityCertificate,
    verify_certificate,
)
from .equality import EqualityEngine, SearchBudget
from .knots import KnotGroup
from .words import Word, format_word

Context = tuple[tuple[Word, int], ...]


@dataclass(frozen=True)
class CaseLeaf:
    pattern: tuple[int, ...]  # signs of the branch words, in order
    certificate: PositivityCertificate | None
    kind: str  # "contradiction" | "target-positivity" | "open"

    @property
    def discharged(self) -> bool:
        return self.certificate is not None


@dataclass(frozen=True)
class CaseTree:
    implication: tuple[Word, int, Word, int]
    branch_words: tuple[Word, ...]
    leaves: tuple[CaseLeaf, ...]

    @property
    def complete(self) -> bool:
        return all(leaf.discharged for leaf in self.leaves)

    @property
    def open_patterns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(leaf.pattern for leaf in self.leaves if not leaf.discharged)

    def as_json(self) -> dict:
        hyp, hs, tgt, ts = self.implication
        def sgn(s):
            return "+" if s > 0 else "-"
        return {
            "implication": {
                "hypothesis": {"word": format_word(hyp), "sign": sgn(hs)},
                "target": {"word": format_word(tgt), "sign": sgn(ts)},
            },
            "branch_words": [format_word(w) for w in self.branch_words],
            "complete": self.complete,
            "leaves": [
                {
                    "pattern": [sgn(s) for s in leaf.pattern],
                    "kind": leaf.kind,
                    "certificate": leaf.certificate.as_json() if leaf.certificate else None,
                }
                for leaf in self.leaves
            ],
        }


class CaseSplitFailure(RuntimeError):
    def __init__(self, tree: CaseTree):
        self.tree = tree
        patterns = ", ".join(
            "".join("+" if s > 0 else "-" for s in p) for p in tree.open_patterns)
        super().__init__(f"undischarged sign patterns: {patterns}")


def _forced_negative(context: Context, w: Word) -> bool:
    """Does the context force w < 1?  Either w itself is hypothesised
    negative or its inverse is hypothesised positive."""
    return (w, -1) in context or (~w, 1) in context


def _abelian_compatible(u: Word, v: Word, relator_sums) -> bool:
    da = u.exponent_sums()[0] - v.exponent_sums()[0]
    db = u.exponent_sums()[1] - v.exponent_sums()[1]
    ra, rb = relator_sums
    if (ra, rb) == (0, 0):
        return (da, db) == (0, 0)
    # (da, db) must be an integer multiple of (ra, rb)
    if ra and da % ra == 0:
        return db == (da // ra) * rb
    if rb and db % rb == 0:
        return da == (db // rb) * ra
    return False


def _enumerate_discharge(
    context: Context,
    engine: EqualityEngine,
    depth: int,
    length_cap: int,
) -> PositivityCertificate | None:
    """Search products of context-positive factors that equal a word the
    context forces negative."""
    pool: list[tuple[Word, str]] = []
    for idx, (w, sign) in enumerate(context):
        pool.append((w, f"hyp:{idx}") if sign == 1 else (~w, f"invneg:{idx}"))
    goals: dict[Word, None] = {}
    for w, sign in context:
        goals.setdefault(w if sign == -1 else ~w)
    relator_sums = (
        engine.pres.relators[0].exponent_sums() if engine.pres.relators else (0, 0)
    )
    frontier: list[tuple[Word, tuple[int, ...]]] = [(Word(), ())]
    seen = {Word()}
    for _ in range(depth):
        nxt = []
        for prod, path in frontier:
            for fidx, (fw, _) in enumerate(pool):
                cand = prod * fw
                if len(cand) > length_cap or cand in seen or cand.is_identity():
                    continue
                seen.add(cand)
                cand_path = path + (fidx,)
                for goal in goals:
                    if cand == goal or (
                        _abelian_compatible(cand, goal, relator_sums)
                        and engine.equal(cand, goal).is_equal
                    ):
                        builder = CertificateBuilder(
                            engine.pres, context, name="leaf-enumeration")
                        builder.factors = [
                            Factor(pool[i][0], pool[i][1]) for i in cand_path]
                        return builder.build(goal)
                nxt.append((cand, cand_path))
        frontier = nxt
    return None


def case_split_prove(
    kg: KnotGroup,
    implication: tuple[Word, int, Word, int],
    branch_words,
    hints=(),
    engine: EqualityEngine | None = None,
    enum_depth: int = 5,
    budget: SearchBudget | None = None,
    strict: bool = True,
) -> CaseTree:
    """Prove hypothesis-sign => target-sign by exhausting branch-word sign
    patterns.  Raises CaseSplitFailure (carrying the partial tree) when a
    leaf cannot be discharged and strict is set.
    """
    branch_words = tuple(branch_words)
    if not branch_words:
        raise ValueError("at least one branch word is required")
    hyp_word, hyp_sign, target_word, target_sign = implication
    engine = engine or EqualityEngine(kg.presentation, budget or SearchBudget())

    verified: dict[int, bool] = {}

    def hint_ok(idx: int, cert: PositivityCertificate) -> bool:
        if idx not in verified:
            verified[idx] = verify_certificate(cert, engine).ok
        return verified[idx]

    length_cap = 2 * max(
        [len(hyp_word), len(target_word)] + [len(w) for w in branch_words]) + 4

    leaves = []
    for pattern in iter_product((1, -1), repeat=len(branch_words)):
        context: Context = tuple(
            dict.fromkeys(
                [(hyp_word, hyp_sign), (target_word, -target_sign)]
                + list(zip(branch_words, pattern))
            )
        )
        leaf_cert, kind = None, "open"
        for idx, cert in enumerate(hints):
            if not all(h in context for h in cert.hypotheses):
                continue
            if not _forced_negative(context, cert.target):
                continue
            if hint_ok(idx, cert):
                leaf_cert = cert
                kind = ("target-positivity" if cert.target == target_word
                        else "contradiction")
                break
        if leaf_cert is None:
            leaf_cert = _enumerate_discharge(context, engine, enum_depth, length_cap)
            if leaf_cert is not None:
                kind = ("target-positivity" if leaf_cert.target == target_word
                        else "contradiction")
                if not verify_certificate(leaf_cert, engine).ok:
                    leaf_cert, kind = None, "open"
        leaves.append(CaseLeaf(pattern, leaf_cert, kind))

    tree = CaseTree(implication, branch_words, tuple(leaves))
    if strict and not tree.complete:
        raise CaseSplitFailure(tree)
    return tree
