"""Truncated positive-cone consistency search.

A sign assignment on a ball must satisfy the positive-cone axioms:
sigma(g^-1) = -sigma(g), and sigma(u) = sigma(v) = + forces sigma(uv) = +
for every product landing in the ball.  `cone_consistency` refutes or
satisfies a hypothesis set over these constraints by unit propagation
with chronological backtracking.  An exhaustive refutation on an *exact*
ball is a proof that no left-ordering of the group realises the
hypothesis signs: any genuine left-ordering restricts to a consistent
assignment on the listed elements.

Unsat results carry a replayable trace: hypothesis/assume/inverse/product
steps, case splits whose two branches each end in a contradiction, and a
final contradiction step.  `replay_trace` checks a trace against the
ball with no reference to the search that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .balls import Ball
from .knots import KnotGroup, TorusKnotSpec, peripheral_word, torus_meridian_exponents
from .words import Word, format_word, word

UNSAT = "unsat"
SAT = "sat"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TraceStep:
    kind: str  # hypothesis | assume | inverse | product | contradiction | split | degenerate
    element: int = -1
    sign: int = 0
    operands: tuple = ()
    branches: tuple = ()  # for split: (positive trace, negative trace)

    def as_json(self, ball: Ball | None = None) -> dict:
        name = None
        if ball is not None and 0 <= self.element < len(ball):
            name = format_word(ball.rep(self.element))
        out = {"kind": self.kind, "element": self.element, "sign": self.sign}
        if name is not None:
            out["word"] = name
        if self.operands:
            out["operands"] = list(self.operands)
        if self.branches:
            out["branches"] = [[s.as_json(ball) for s in br] for br in self.branches]
        return out


Trace = tuple[TraceStep, ...]


@dataclass(frozen=True)
class SearchResult:
    kind: str
    trace: Trace = ()
    assignment: dict[int, int] | None = None
    reason: str = ""
    nodes: int = 0

    @property
    def is_unsat(self) -> bool:
        return self.kind == UNSAT

    def as_json(self, ball: Ball | None = None) -> dict:
        out = {"result": self.kind, "nodes": self.nodes}
        if self.reason:
            out["reason"] = self.reason
        if self.trace:
            out["trace"] = [s.as_json(ball) for s in self.trace]
        if self.assignment is not None:
            if ball is not None:
                out["assignment"] = {
                    format_word(ball.rep(i)): ("+" if s > 0 else "-")
                    for i, s in sorted(self.assignment.items())
                }
            else:
                out["assignment"] = {str(i): s for i, s in self.assignment.items()}
        return out


class HypothesisError(ValueError):
    pass


def place_hypotheses(ball: Ball, hypotheses) -> list[tuple[int, int]] | TraceStep:
    """Map (word, sign) hypotheses onto ball elements.

    Returns the placed list, or a degenerate-marker TraceStep when some
    word is provably the identity (demanding a sign for the identity is
    unsatisfiable in any group, so this marker justifies an immediate
    Unsat even without ball exactness)."""
    placed = []
    for w, sign in hypotheses:
        if sign not in (1, -1):
            raise HypothesisError(f"sign must be +-1, got {sign}")
        loc = ball.classify(w)
        if loc == "identity":
            return TraceStep("degenerate", operands=(format_word(w), sign))
        if loc is None:
            raise HypothesisError(
                f"hypothesis word {format_word(w)} does not reduce into the ball")
        placed.append((loc, sign))
    return placed


class _BudgetExhausted(Exception):
    pass


class _ConePropagator:
    """Unit propagation + chronological backtracking over cone constraints."""

    def __init__(self, ball: Ball, node_budget: int):
        self.ball = ball
        self.n = len(ball.elements)
        self.inv = ball.inverse
        self.triples = [(i, j, k) for (i, j), k in sorted(ball.products.items())]
        self.occurs: list[list[int]] = [[] for _ in range(self.n)]
        for t, (i, j, k) in enumerate(self.triples):
            for e in {i, j, k}:
                self.occurs[e].append(t)
        self.signs = [0] * self.n
        self.budget = node_budget
        self.nodes = 0

    # -- propagation ----------------------------------------------------------

    def _assert(self, idx: int, sign: int, step: TraceStep, steps, trail, queue):
        cur = self.signs[idx]
        if cur == sign:
            return None
        steps.append(step)
        if cur == -sign:
            steps.append(TraceStep("contradiction", idx, 0))
            return "conflict"
        self.signs[idx] = sign
        trail.append(idx)
        queue.append(idx)
        return None

    def _propagate(self, queue, steps, trail):
        while queue:
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetExhausted
            idx = queue.pop(0)
            sign = self.signs[idx]
            inv_step = TraceStep("inverse", self.inv[idx], -sign, operands=(idx,))
            if self._assert(self.inv[idx], -sign, inv_step, steps, trail, queue):
                return "conflict"
            for t in self.occurs[idx]:
                i, j, k = self.triples[t]
                si, sj, sk = self.signs[i], self.signs[j], self.signs[k]
                if si == 1 and sj == 1 and sk != 1:
                    step = TraceStep("product", k, 1, operands=(i, j, k, "pos-pos"))
                    if self._assert(k, 1, step, steps, trail, queue):
                        return "conflict"
                elif sk == -1 and si == 1 and sj != -1:
                    step = TraceStep("product", j, -1, operands=(i, j, k, "neg-result-left"))
                    if self._assert(j, -1, step, steps, trail, queue):
                        return "conflict"
                elif sk == -1 and sj == 1 and si != -1:
                    step = TraceStep("product", i, -1, operands=(i, j, k, "neg-result-right"))
                    if self._assert(i, -1, step, steps, trail, queue):
                        return "conflict"
        return None

    def _undo(self, trail, mark):
        while len(trail) > mark:
            self.signs[trail.pop()] = 0

    # -- search ---------------------------------------------------------------

    def solve(self, assertions: list[tuple[int, int, TraceStep]]):
        """Returns ("sat", assignment) or ("unsat", trace)."""
        steps: list[TraceStep] = []
        trail: list[int] = []
        queue: list[int] = []
        for idx, sign, step in assertions:
            if self._assert(idx, sign, step, steps, trail, queue) or \
                    self._propagate(queue, steps, trail):
                return UNSAT, tuple(steps)
        result = self._branch(steps, trail)
        if result[0] == SAT:
            return result
        return UNSAT, result[1]

    def _branch(self, steps, trail):
        undecided = next((i for i in range(self.n) if self.signs[i] == 0), None)
        if undecided is None:
            return SAT, {i: self.signs[i] for i in range(self.n)}
        branches = []
        for sign in (1, -1):
            mark = len(trail)
            sub_steps: list[TraceStep] = []
            queue: list[int] = []
            assume = TraceStep("assume", undecided, sign)
            conflict = self._assert(undecided, sign, assume, sub_steps, trail, queue) \
                or self._propagate(queue, sub_steps, trail)
            if not conflict:
                result = self._branch(sub_steps, trail)
                if result[0] == SAT:
                    return result
                sub_steps = list(result[1])
            self._undo(trail, mark)
            branches.append(tuple(sub_steps))
        return UNSAT, tuple(steps) + (
            TraceStep("split", undecided, 0, branches=tuple(branches)),)


def cone_consistency(ball: Ball, hypotheses, node_budget: int = 200_000) -> SearchResult:
    """Decide whether the hypothesis signs extend to a consistent truncated
    cone on the ball.

    Unsat is only reported on exact balls (see the soundness note in
    `balls`); the sole exception is a hypothesis word *proven* equal to
    the identity, which is unsatisfiable regardless of the ball.  Sat
    means a consistent truncated assignment exists; it is not a proof
    that a compatible left-ordering exists.
    """
    placed = place_hypotheses(ball, hypotheses)
    if isinstance(placed, TraceStep):
        return SearchResult(UNSAT, trace=(placed,), reason="degenerate hypothesis")
    prop = _ConePropagator(ball, node_budget)
    assertions = [
        (idx, sign, TraceStep("hypothesis", idx, sign, operands=(h,)))
        for h, (idx, sign) in enumerate(placed)
    ]
    try:
        kind, payload = prop.solve(assertions)
    except _BudgetExhausted:
        return SearchResult(INCONCLUSIVE, reason="node budget exhausted",
                            nodes=prop.nodes)
    if kind == SAT:
        assert ball.check_assignment(payload), "search produced an inconsistent assignment"
        return SearchResult(SAT, assignment=payload, nodes=prop.nodes)
    if not ball.exact:
        return SearchResult(
            INCONCLUSIVE, nodes=prop.nodes,
            reason="refutation found but ball is not certified exact; "
                   "a listed element could secretly be the identity")
    return SearchResult(UNSAT, trace=payload, nodes=prop.nodes)


# -- independent replay -----------------------------------------------------


def replay_trace(ball: Ball, hypotheses, trace: Trace) -> bool:
    """Re-check an Unsat trace step by step against the ball data."""
    placed = place_hypotheses(ball, hypotheses)
    if isinstance(placed, TraceStep):
        return len(trace) == 1 and trace[0].kind == "degenerate"
    product_set = ball.products

    def run(steps, pos: set[int], neg: set[int]) -> bool:
        """True iff steps legally end in a contradiction."""
        for idx, step in enumerate(steps):
            last = idx == len(steps) - 1
            e, s = step.element, step.sign
            if step.kind == "hypothesis":
                h = step.operands[0]
                if not (0 <= h < len(placed)) or placed[h] != (e, s):
                    return False
            elif step.kind == "assume":
                pass
            elif step.kind == "inverse":
                src = step.operands[0]
                if ball.inverse[src] != e:
                    return False
                src_pos = src in pos
                if not (src_pos if s == -1 else src in neg):
                    return False
            elif step.kind == "product":
                i, j, k, rule = step.operands
                if product_set.get((i, j)) != k:
                    return False
                if rule == "pos-pos":
                    ok = i in pos and j in pos and (e, s) == (k, 1)
                elif rule == "neg-result-left":
                    ok = i in pos and k in neg and (e, s) == (j, -1)
                elif rule == "neg-result-right":
                    ok = j in pos and k in neg and (e, s) == (i, -1)
                else:
                    ok = False
                if not ok:
                    return False
            elif step.kind == "contradiction":
                return last and e in pos and e in neg
            elif step.kind == "split":
                if not last or len(step.branches) != 2:
                    return False
                for branch, sign in zip(step.branches, (1, -1)):
                    if not branch or branch[0].kind != "assume" or \
                            branch[0].element != e or branch[0].sign != sign:
                        return False
                    if not run(branch, set(pos), set(neg)):
                        return False
                return True
            else:
                return False
            if step.kind != "contradiction" and s:
                (pos if s == 1 else neg).add(e)
        return False

    return run(trace, set(), set())


# -- brute-force cross-validation ---------------------------------------------


def brute_force_consistency(ball: Ball, hypotheses) -> SearchResult:
    """Exhaustive DFS over all sign assignments (one choice per inverse
    pair), with plain incremental constraint checking and no propagation.
    Independent of the production search; used to cross-validate Unsat."""
    placed = place_hypotheses(ball, hypotheses)
    if isinstance(placed, TraceStep):
        return SearchResult(UNSAT, trace=(placed,), reason="degenerate hypothesis")
    n = len(ball.elements)
    inv = ball.inverse
    signs = [0] * n
    triples = [(i, j, k) for (i, j), k in ball.products.items()]
    occurs: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for i, j, k in triples:
        for e in {i, j, k}:
            occurs[e].append((i, j, k))

    def violates(e: int) -> bool:
        for i, j, k in occurs[e]:
            if signs[i] == 1 and signs[j] == 1 and signs[k] == -1:
                return True
        return False

    for idx, sign in placed:
        for e, s in ((idx, sign), (inv[idx], -sign)):
            if signs[e] == -s:
                return SearchResult(UNSAT, reason="hypotheses conflict")
            signs[e] = s
    for idx, _ in placed:
        if violates(idx) or violates(inv[idx]):
            return SearchResult(UNSAT, reason="hypotheses violate a product constraint")

    pairs = [i for i in range(n) if i < inv[i] and signs[i] == 0]

    def dfs(depth: int) -> dict[int, int] | None:
        if depth == len(pairs):
            return {i: signs[i] for i in range(n)}
        e = pairs[depth]
        for s in (1, -1):
            signs[e], signs[inv[e]] = s, -s
            if not violates(e) and not violates(inv[e]):
                found = dfs(depth + 1)
                if found is not None:
                    return found
        signs[e] = signs[inv[e]] = 0
        return None

    found = dfs(0)
    if found is None:
        return SearchResult(UNSAT, reason="exhaustive enumeration")
    return SearchResult(SAT, assignment=found)


# -- slope implication tables ---------------------------------------------------


def suggest_seed_words(kg: KnotGroup, max_offset: int) -> tuple[Word, ...]:
    """Seed words that keep the peripheral power chains visible in small
    balls: mu^j * s * b^-e ladders plus the opposite-sign pair words used
    by the interval arguments."""
    mu, s = kg.mu, kg.framing_curve
    seeds = []
    for j in range(0, max_offset + 1):
        seeds.append(mu ** j * s)
    for j in range(1, max_offset + 1):
        seeds.append(mu ** j)
    seeds.append(~mu * s)
    if isinstance(kg.spec, TorusKnotSpec):
        p, q = kg.spec.p, kg.spec.q
        i, j = torus_meridian_exponents(p, q)
        for e in range(1, q + 1):
            for jj in range(0, max_offset + 1):
                seeds.append(mu ** jj * s * word(("b", -e)))
        for n in range(1, 4):
            seeds.append(word(("b", n * j), ("a", n * i)))
            seeds.append(word(("a", n * (i - p)), ("b", n * (q + j))))
    return tuple(dict.fromkeys(w for w in seeds if not w.is_identity()))


def implication_check(
    kg: KnotGroup,
    base: tuple[int, int],
    offsets,
    radius: int = 4,
    budget=None,
    node_budget: int = 200_000,
    ball: Ball | None = None,
) -> dict[int, SearchResult]:
    """For each offset N, search for a refutation of
    {mu^p lambda^q > 1, mu^(p+N) lambda^q < 1} over a shared seeded ball.

    Unsat entries certify the implication for that N in every
    left-ordering; Inconclusive entries produce no evidence.
    """
    from .balls import build_ball

    p, q = base
    offsets = sorted(set(offsets))
    if any(n == 0 for n in offsets):
        raise ValueError("offsets must be nonzero")
    if ball is None:
        seeds = suggest_seed_words(kg, max(max(offsets), 1))
        extra = tuple(peripheral_word(kg, p + n, q) for n in offsets)
        ball = build_ball(kg.presentation, radius, budget,
                          seeds=seeds + (peripheral_word(kg, p, q),) + extra)
    base_word = peripheral_word(kg, p, q)
    table: dict[int, SearchResult] = {}
    for n in offsets:
        target = peripheral_word(kg, p + n, q)
        table[n] = cone_consistency(
            ball, [(base_word, 1), (target, -1)], node_budget)
    return table
