"""Built-in certificate suites for the supported knot families.

Each suite instantiates, at concrete parameters, every factorization
identity used by the sufficiently-positive-surgery arguments:

* torus family: the two interval-case factorizations of
  mu^(N+pq) lambda (indexed by the auxiliary integer n), the pq-1
  endpoint factorization, and the opposite-sign dichotomy products;
* pretzel family (one added handle on (3,5), parameter m): the two
  sign-case factorizations of mu^N s and the auxiliary positivity facts
  feeding the a < 1 < b case analysis;
* once-twisted family (m = 1, parameter k): the generator sign
  eliminations, the two w-subcases, and their dichotomy product.

Certificate shapes are N-uniform: the offset N only changes repetition
counts of fixed factor blocks.  A suite verified across an N range is
therefore recorded as symbolic family evidence; no induction over N is
performed or claimed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import (
    CertificateBuilder,
    CertificateReport,
    PositivityCertificate,
    verify_certificate,
)
from .equality import EqualityEngine, SearchBudget
from .knots import (
    KnotGroup,
    TorusKnotSpec,
    TwistedSpec,
    pretzel_group,
    torus_group,
    torus_meridian_exponents,
    twisted_group,
    twisted_framing_alt,
    twisted_meridian_alt,
)
from .words import A, B, Presentation, Word, format_word, word

FAMILIES = ("torus", "pretzel", "twisted1")


@dataclass(frozen=True)
class SuiteEntry:
    ident: str
    kind: str  # "certificate" | "equality"
    certificate: PositivityCertificate | None = None
    lhs: Word | None = None
    rhs: Word | None = None


@dataclass(frozen=True)
class SuiteOutcome:
    ident: str
    ok: bool
    method: str = ""
    insertions: int = 0
    failure: str = ""

    def as_json(self) -> dict:
        out = {"identity": self.ident, "ok": self.ok}
        if self.ok:
            out.update(method=self.method, insertions=self.insertions)
        else:
            out["failure"] = self.failure
        return out


@dataclass(frozen=True)
class SuiteResult:
    family: str
    label: str
    outcomes: tuple[SuiteOutcome, ...]
    offsets: tuple[int, ...]

    @property
    def all_ok(self) -> bool:
        return all(o.ok for o in self.outcomes)

    @property
    def max_insertions(self) -> int:
        return max((o.insertions for o in self.outcomes), default=0)

    def as_json(self) -> dict:
        return {
            "family": self.family,
            "label": self.label,
            "all_ok": self.all_ok,
            "offsets": list(self.offsets),
            "identities": [o.as_json() for o in self.outcomes],
        }


def family_engine(kg: KnotGroup, budget: SearchBudget | None = None) -> EqualityEngine:
    """Equality engine preloaded with the standard derived lemmas for the
    group: peripheral commutation (mu and s generate the boundary torus)
    and, for twisted groups, both alternative peripheral forms."""
    engine = EqualityEngine(kg.presentation, budget or SearchBudget(max_insertions=6))
    if isinstance(kg.spec, TwistedSpec):
        engine.add_lemma(kg.mu, twisted_meridian_alt(kg.spec), "meridian-forms")
        engine.add_lemma(kg.framing_curve, twisted_framing_alt(kg.spec), "framing-forms")
    engine.add_lemma(kg.mu * kg.framing_curve, kg.framing_curve * kg.mu, "mu-s-commute")
    return engine


# -- torus family -----------------------------------------------------------------


def _torus_case_words(p: int, q: int, n: int):
    i, j = torus_meridian_exponents(p, q)
    w1 = word(("b", n * j), ("a", n * i))
    w2 = word(("a", n * (i - p)), ("b", n * (q + j)))
    u1 = word(("b", (n - 1) * j), ("a", (n - 1) * i))
    u2 = word(("a", (n - 1) * (i - p)), ("b", (n - 1) * (q + j)))
    return w1, w2, u1, u2


def torus_interval_case1(kg: KnotGroup, n: int, N: int) -> PositivityCertificate:
    """mu^(N+pq) lambda = b^l (W1(n) * W1(n-1)^-1)^N b^(q-l)."""
    p, q = kg.spec.p, kg.spec.q
    i, j = torus_meridian_exponents(p, q)
    w1, _, u1, _ = _torus_case_words(p, q, n)
    _, l = divmod((1 - n) * j, q)
    hyps = [(A, 1), (B, 1), (w1, 1)] + ([(u1, -1)] if n >= 2 else [])
    builder = CertificateBuilder(kg.presentation, hyps,
                                 name=f"interval-case1(n={n},N={N})")
    builder.pos(B, l)
    for _ in range(N):
        builder.pos(w1)
        if n >= 2:
            builder.invneg(u1)
    builder.pos(B, q - l)
    target = (kg.mu ** (N + p * q)) * kg.longitude
    return builder.build(target)


def torus_interval_case2(kg: KnotGroup, n: int, N: int) -> PositivityCertificate:
    """mu^(N+pq) lambda = b^l (W2(n-1)^-1 * W2(n))^N b^(q-l), in the
    rewritten-meridian coordinates."""
    p, q = kg.spec.p, kg.spec.q
    i, j = torus_meridian_exponents(p, q)
    _, w2, _, u2 = _torus_case_words(p, q, n)
    _, l = divmod(n * (q + j), q)
    hyps = [(A, 1), (B, 1), (w2, 1)] + ([(u2, -1)] if n >= 2 else [])
    builder = CertificateBuilder(kg.presentation, hyps,
                                 name=f"interval-case2(n={n},N={N})")
    builder.pos(B, l)
    for _ in range(N):
        if n >= 2:
            builder.invneg(u2)
        builder.pos(w2)
    builder.pos(B, q - l)
    target = (kg.mu ** (N + p * q)) * kg.longitude
    return builder.build(target)


def torus_endpoint_certificate(kg: KnotGroup) -> PositivityCertificate:
    """mu^(pq-1) lambda = a^(p-i) b^(-j), positive whenever a, b > 1."""
    p, q = kg.spec.p, kg.spec.q
    i, j = torus_meridian_exponents(p, q)
    builder = CertificateBuilder(kg.presentation, [(A, 1), (B, 1)],
                                 name="endpoint-below-framing")
    builder.pos(A, p - i).pos(B, -j)
    target = (kg.mu ** (p * q - 1)) * kg.longitude
    return builder.build(target)


def torus_dichotomy_contradiction(kg: KnotGroup) -> PositivityCertificate:
    """If both dichotomy words were negative their product would be, yet
    it equals a: exhibited by proving a^-1 positive from the negations."""
    p, q = kg.spec.p, kg.spec.q
    i, j = torus_meridian_exponents(p, q)
    w1 = word(("b", (q + j) * j), ("a", (q + j) * i))
    w2 = word(("a", (-j) * (i - p)), ("b", (-j) * (q + j)))
    builder = CertificateBuilder(
        kg.presentation, [(A, 1), (w1, -1), (w2, -1)], name="dichotomy-contradiction")
    builder.invneg(w1).invneg(w2)
    return builder.build(~A)


def torus_entries(kg: KnotGroup, n_range, offsets) -> list[SuiteEntry]:
    p, q = kg.spec.p, kg.spec.q
    i, j = torus_meridian_exponents(p, q)
    w1 = word(("b", (q + j) * j), ("a", (q + j) * i))
    w2 = word(("a", (-j) * (i - p)), ("b", (-j) * (q + j)))
    entries = [
        SuiteEntry("framing-word = a^p", "equality",
                   lhs=(kg.mu ** (p * q)) * kg.longitude, rhs=A ** p),
        SuiteEntry("a^p = b^q", "equality", lhs=A ** p, rhs=B ** q),
        SuiteEntry("dichotomy-product = a", "equality", lhs=w2 * w1, rhs=A),
        SuiteEntry("dichotomy-contradiction", "certificate",
                   certificate=torus_dichotomy_contradiction(kg)),
        SuiteEntry("endpoint-below-framing", "certificate",
                   certificate=torus_endpoint_certificate(kg)),
    ]
    for n in n_range:
        for N in offsets:
            entries.append(SuiteEntry(
                f"interval-case1(n={n},N={N})", "certificate",
                certificate=torus_interval_case1(kg, n, N)))
            entries.append(SuiteEntry(
                f"interval-case2(n={n},N={N})", "certificate",
                certificate=torus_interval_case2(kg, n, N)))
    return entries


# -- pretzel family (k = 1, varying m) ----------------------------------------------


def _pretzel_words(m: int):
    w = word(("b", -1), ("a", 1))
    a2wm = (A ** 2) * (w ** m)
    awm = A * (w ** m)
    return w, a2wm, awm


def pretzel_trivial(kg: KnotGroup, N: int) -> PositivityCertificate:
    builder = CertificateBuilder(
        kg.presentation, [(kg.mu, 1), (kg.framing_curve, 1)],
        name=f"meridian-positive(N={N})")
    builder.pos(kg.mu, N).pos(kg.framing_curve)
    return builder.build((kg.mu ** N) * kg.framing_curve)


def pretzel_case1(kg: KnotGroup, m: int, N: int) -> PositivityCertificate:
    """mu^N s = b^2 (a^-1 b^2)^N (mu^-1 b)^(m-1) a b (mu^-1 b)^(m-1) a,
    for the case b > a with mu negative (requires m >= 1)."""
    if m < 1:
        raise ValueError("case 1 factorization needs m >= 1")
    w = word(("b", -1), ("a", 1))
    hyps = [(A, 1), (B, 1), (kg.mu, -1), (w, -1)]
    climb = CertificateBuilder(kg.presentation, [(B, 1), (w, -1)], name="a^-1 b^2")
    climb.invneg(w).pos(B)
    step = CertificateBuilder(kg.presentation, [(B, 1), (kg.mu, -1)], name="a b^-1")
    step.invneg(kg.mu).pos(B)
    builder = CertificateBuilder(kg.presentation, hyps, name=f"case1(m={m},N={N})")
    builder.pos(B, 2)
    builder.sub(climb.build(word(("a", -1), ("b", 2))), N)
    builder.sub(step.build(word(("a", 1), ("b", -1))), m - 1)
    builder.pos(A).pos(B)
    builder.sub(step.build(word(("a", 1), ("b", -1))), m - 1)
    builder.pos(A)
    return builder.build((kg.mu ** N) * kg.framing_curve)


def pretzel_case2(kg: KnotGroup, m: int, N: int) -> PositivityCertificate:
    """mu^N s = a^2 w^m (mu^-1 w)^N a w^m for the case w = b^-1 a > 1."""
    w, _, _ = _pretzel_words(m)
    hyps = [(A, 1), (w, 1), (kg.mu, -1)]
    hop = CertificateBuilder(kg.presentation, [(w, 1), (kg.mu, -1)], name="mu^-1 w")
    hop.invneg(kg.mu).pos(w)
    hop_cert = hop.build(~kg.mu * w)
    builder = CertificateBuilder(kg.presentation, hyps, name=f"case2(m={m},N={N})")
    builder.pos(A, 2).pos(w, m)
    builder.sub(hop_cert, N)
    builder.pos(A).pos(w, m)
    return builder.build((kg.mu ** N) * kg.framing_curve)


def pretzel_case2_final(kg: KnotGroup, m: int, N: int) -> PositivityCertificate:
    """Same product, justified through the derived blocks a^2 w^m and a w^m
    (the 1 > a > b endgame)."""
    if m < 1:
        raise ValueError("final case 2 factorization needs m >= 1")
    w, a2wm, awm = _pretzel_words(m)
    hyps = [(kg.mu, -1), (w, 1), (a2wm, 1), (awm, 1)]
    hop = CertificateBuilder(kg.presentation, [(w, 1), (kg.mu, -1)], name="mu^-1 w")
    hop.invneg(kg.mu).pos(w)
    builder = CertificateBuilder(kg.presentation, hyps, name=f"case2-final(m={m},N={N})")
    builder.pos(a2wm)
    builder.sub(hop.build(~kg.mu * w), N)
    builder.pos(awm)
    return builder.build((kg.mu ** N) * kg.framing_curve)


def pretzel_contradictions(kg: KnotGroup, m: int) -> list[PositivityCertificate]:
    """Sign-elimination certificates: each proves s^-1 (or a context word)
    positive under hypotheses that also force it negative."""
    w, a2wm, awm = _pretzel_words(m)
    s = kg.framing_curve
    certs = []

    neg_wa = CertificateBuilder(kg.presentation, [(w, -1), (A, -1)],
                                name="s-negative-when-w,a-negative")
    neg_wa.invneg(w, m).invneg(A).invneg(w, m).invneg(A, 2)
    certs.append(neg_wa.build(~s))

    aux_awm = CertificateBuilder(kg.presentation, [(A, -1), (awm, -1)],
                                 name="s-negative-when-aw^m-negative")
    aux_awm.invneg(awm, 2).invneg(A)
    certs.append(aux_awm.build(~s))

    if m >= 1:
        ab1 = word(("a", 1), ("b", -1))
        drop = CertificateBuilder(kg.presentation, [(A, -1), (B, -1), (ab1, -1)],
                                  name="s-negative-when-ab^-1-negative")
        for _ in range(2):
            drop.invneg(A).invneg(ab1, m - 1).invneg(B)
        drop.invneg(B)
        certs.append(drop.build(~s))

        a2b2 = word(("a", 2), ("b", -2))
        slide = CertificateBuilder(
            kg.presentation, [(A, -1), (B, -1), (ab1, 1), (a2b2, -1)],
            name="s-negative-when-a^2b^-2-negative")
        for _ in range(2):
            slide.invneg(A).invneg(B)
            for _ in range(m - 1):
                slide.invneg(a2b2).pos(ab1)
        slide.invneg(B)
        certs.append(slide.build(~s))

        b2wm_inv = CertificateBuilder(
            kg.presentation, [(a2wm, -1), (a2b2, 1)], name="(b^2 w^m)^-1")
        b2wm_inv.invneg(a2wm).pos(a2b2)
        b2wm_cert = b2wm_inv.build((w ** -m) * word(("b", -2)))
        aux_a2 = CertificateBuilder(
            kg.presentation, [(B, -1), (a2b2, 1), (a2wm, -1)],
            name="s-negative-when-a^2w^m-negative")
        aux_a2.sub(b2wm_cert, 2).invneg(B)
        certs.append(aux_a2.build(~s))
    return certs


def pretzel_entries(kg: KnotGroup, m: int, offsets) -> list[SuiteEntry]:
    w, a2wm, awm = _pretzel_words(m)
    s, mu = kg.framing_curve, kg.mu
    ba1, a2b2 = word(("b", 1), ("a", -1)), word(("a", 2), ("b", -2))
    entries = [
        SuiteEntry("meridian = alternative meridian", "equality",
                   lhs=mu, rhs=twisted_meridian_alt(kg.spec)),
        SuiteEntry("framing curve = alternative form", "equality",
                   lhs=s, rhs=twisted_framing_alt(kg.spec)),
        SuiteEntry("s = mu^f lambda", "equality",
                   lhs=s, rhs=(mu ** kg.peripheral.framing) * kg.longitude),
        SuiteEntry("s = b (b^2 w^m)^2", "equality",
                   lhs=s, rhs=B * ((B ** 2 * (w ** m)) ** 2)),
        SuiteEntry("s = a (a w^m)^2", "equality", lhs=s, rhs=A * (awm ** 2)),
        SuiteEntry("(b^2 a^-2)(a^2 w^m) = b^2 w^m", "equality",
                   lhs=(~a2b2) * a2wm, rhs=(B ** 2) * (w ** m)),
    ]
    if m >= 1:
        ab1 = word(("a", 1), ("b", -1))
        entries.append(SuiteEntry(
            "s = b (b (a b^-1)^(m-1) a)^2", "equality",
            lhs=s, rhs=B * ((B * (ab1 ** (m - 1)) * A) ** 2)))
        entries.append(SuiteEntry(
            "w^m = b^-2 ((b a^-1)(a^2 b^-2))^(m-1) b a", "equality",
            lhs=w ** m, rhs=(B ** -2) * ((ba1 * a2b2) ** (m - 1)) * B * A))
        entries.append(SuiteEntry(
            "s = b (((b a^-1)(a^2 b^-2))^(m-1) b a)^2", "equality",
            lhs=s, rhs=B * (((ba1 * a2b2) ** (m - 1)) * B * A) ** 2))
    for cert in pretzel_contradictions(kg, m):
        entries.append(SuiteEntry(cert.name, "certificate", certificate=cert))
    for N in offsets:
        entries.append(SuiteEntry(f"meridian-positive(N={N})", "certificate",
                                  certificate=pretzel_trivial(kg, N)))
        entries.append(SuiteEntry(f"case2(m={m},N={N})", "certificate",
                                  certificate=pretzel_case2(kg, m, N)))
        if m >= 1:
            entries.append(SuiteEntry(f"case1(m={m},N={N})", "certificate",
                                      certificate=pretzel_case1(kg, m, N)))
            entries.append(SuiteEntry(f"case2-final(m={m},N={N})", "certificate",
                                      certificate=pretzel_case2_final(kg, m, N)))
    return entries


# -- once-twisted family (m = 1, varying k) -------------------------------------------


def _twisted1_words(k: int):
    t = word(("a", -1), ("b", 1))
    w1 = word(("b", 2 * k + 2), ("a", -2))
    w2 = word(("a", 2), ("b", -(2 * k + 1)))
    return t, w1, w2


def twisted1_both_negative(kg: KnotGroup, k: int) -> PositivityCertificate:
    builder = CertificateBuilder(kg.presentation, [(A, -1), (B, -1)],
                                 name="s-negative-when-a,b-negative")
    builder.invneg(A).invneg(B).invneg(A).invneg(B, k + 1)
    return builder.build(~kg.framing_curve)


def twisted1_b_over_a(kg: KnotGroup, k: int) -> PositivityCertificate:
    """1 > s when b > 1 > a: s = a^2 (b^-k a) a (b^-k a) is a negative product."""
    c_inv = CertificateBuilder(kg.presentation, [(A, -1), (B, 1)], name="(b^-k a)^-1")
    c_inv.invneg(A).pos(B, k)
    c_cert = c_inv.build(word(("a", -1), ("b", k)))
    builder = CertificateBuilder(kg.presentation, [(A, -1), (B, 1)],
                                 name="s-negative-when-b>1>a")
    builder.sub(c_cert).invneg(A).sub(c_cert).invneg(A, 2)
    return builder.build(~kg.framing_curve)


def twisted1_a_over_b(kg: KnotGroup, k: int, N: int) -> PositivityCertificate:
    """mu^N s = a^2 (b^-k a) a (b^(-2k-1) a^2)^N (b^-k a), positive letterwise
    when a > 1 > b."""
    builder = CertificateBuilder(kg.presentation, [(A, 1), (B, -1)],
                                 name=f"a-over-b(k={k},N={N})")
    builder.pos(A, 2).invneg(B, k).pos(A, 2)
    for _ in range(N):
        builder.invneg(B, 2 * k + 1).pos(A, 2)
    builder.invneg(B, k).pos(A)
    return builder.build((kg.mu ** N) * kg.framing_curve)


def twisted1_trivial(kg: KnotGroup, N: int) -> PositivityCertificate:
    builder = CertificateBuilder(
        kg.presentation, [(kg.mu, 1), (kg.framing_curve, 1)],
        name=f"meridian-positive(N={N})")
    builder.pos(kg.mu, N).pos(kg.framing_curve)
    return builder.build((kg.mu ** N) * kg.framing_curve)


def twisted1_case1(kg: KnotGroup, k: int, N: int) -> PositivityCertificate:
    """mu^N s = b^(k+1) (a^-1 b^(k+1))^(N-1) (mu^-1 b a)^2 for b > a > 1."""
    t, _, _ = _twisted1_words(k)
    hyps = [(A, 1), (B, 1), (kg.mu, -1), (t, 1)]
    lift = CertificateBuilder(kg.presentation, [(B, 1), (t, 1)], name="a^-1 b^(k+1)")
    lift.pos(t).pos(B, k)
    lift_cert = lift.build(word(("a", -1), ("b", k + 1)))
    gate = CertificateBuilder(kg.presentation, [(A, 1), (B, 1), (kg.mu, -1)],
                              name="mu^-1 b a")
    gate.invneg(kg.mu).pos(B).pos(A)
    gate_cert = gate.build(~kg.mu * B * A)
    builder = CertificateBuilder(kg.presentation, hyps, name=f"case1(k={k},N={N})")
    builder.pos(B, k + 1)
    builder.sub(lift_cert, N - 1)
    builder.sub(gate_cert, 2)
    return builder.build((kg.mu ** N) * kg.framing_curve)


def twisted1_subcase(kg: KnotGroup, k: int, N: int, which: int) -> PositivityCertificate:
    """The two a > b > 1 subcases, by the sign dichotomy between
    w1 = b^(2k+2) a^-2 and w2 = a^2 b^-(2k-1)."""
    t, w1, w2 = _twisted1_words(k)
    mu = kg.mu
    if which == 1:
        hyps = [(A, 1), (B, 1), (mu, -1), (w1, 1)]
        builder = CertificateBuilder(kg.presentation, hyps, name=f"subcase1(k={k},N={N})")
        builder.pos(A).invneg(mu).pos(B).pos(A).invneg(mu).pos(B).invneg(mu)
        for _ in range(N):
            builder.pos(w1).invneg(mu)
        builder.pos(B, k + 1)
    else:
        hyps = [(A, 1), (B, 1), (mu, -1), (w2, 1)]
        builder = CertificateBuilder(kg.presentation, hyps, name=f"subcase2(k={k},N={N})")
        builder.pos(A).invneg(mu).pos(B)
        builder.pos(w2, N)
        builder.pos(A).invneg(mu).pos(B).pos(A)
    return builder.build((mu ** N) * kg.framing_curve)


def twisted1_dichotomy(kg: KnotGroup, k: int) -> PositivityCertificate:
    t, w1, w2 = _twisted1_words(k)
    builder = CertificateBuilder(kg.presentation, [(B, 1), (w1, -1), (w2, -1)],
                                 name="dichotomy-contradiction")
    builder.invneg(w2).invneg(w1)
    return builder.build(~B)


def twisted1_entries(kg: KnotGroup, k: int, offsets) -> list[SuiteEntry]:
    t, w1, w2 = _twisted1_words(k)
    mu, s = kg.mu, kg.framing_curve
    entries = [
        SuiteEntry("meridian = alternative meridian", "equality",
                   lhs=mu, rhs=twisted_meridian_alt(kg.spec)),
        SuiteEntry("framing curve = alternative form", "equality",
                   lhs=s, rhs=twisted_framing_alt(kg.spec)),
        SuiteEntry("s = mu^f lambda", "equality",
                   lhs=s, rhs=(mu ** kg.peripheral.framing) * kg.longitude),
        SuiteEntry("s = b^(k+1) a b a", "equality",
                   lhs=s, rhs=word(("b", k + 1), ("a", 1), ("b", 1), ("a", 1))),
        SuiteEntry("a b^-k = mu^-1 b", "equality",
                   lhs=word(("a", 1), ("b", -k)), rhs=~mu * B),
        SuiteEntry("w1 w2 = b", "equality", lhs=w1 * w2, rhs=B),
        SuiteEntry("dichotomy-contradiction", "certificate",
                   certificate=twisted1_dichotomy(kg, k)),
        SuiteEntry("s-negative-when-a,b-negative", "certificate",
                   certificate=twisted1_both_negative(kg, k)),
        SuiteEntry("s-negative-when-b>1>a", "certificate",
                   certificate=twisted1_b_over_a(kg, k)),
    ]
    for N in offsets:
        entries.append(SuiteEntry(f"meridian-positive(N={N})", "certificate",
                                  certificate=twisted1_trivial(kg, N)))
        entries.append(SuiteEntry(f"a-over-b(k={k},N={N})", "certificate",
                                  certificate=twisted1_a_over_b(kg, k, N)))
        entries.append(SuiteEntry(f"case1(k={k},N={N})", "certificate",
                                  certificate=twisted1_case1(kg, k, N)))
        entries.append(SuiteEntry(f"subcase1(k={k},N={N})", "certificate",
                                  certificate=twisted1_subcase(kg, k, N, 1)))
        entries.append(SuiteEntry(f"subcase2(k={k},N={N})", "certificate",
                                  certificate=twisted1_subcase(kg, k, N, 2)))
    return entries


# -- case-split support ---------------------------------------------------------


def pretzel_branch_words(m: int) -> tuple[Word, ...]:
    if m == 0:
        # the untwisted member is the (3,5)-torus knot: branch over the
        # interval-argument dichotomy words instead of w and mu
        w1s, w2s = _torus_dichotomy_ladder(3, 5)
        return (A, B) + w1s + w2s
    w, a2wm, awm = _pretzel_words(m)
    mu = word(("b", 2), ("a", -1))
    return (mu, w, A, B, word(("a", 1), ("b", -1)), word(("a", 2), ("b", -2)),
            a2wm, awm)


def _torus_dichotomy_ladder(p: int, q: int):
    """The words W1(1..q+j) and W2(1..-j) whose signs drive the torus
    interval argument (one of W1(q+j), W2(-j) is positive by the
    dichotomy product)."""
    i, j = torus_meridian_exponents(p, q)
    w1s = tuple(word(("b", n * j), ("a", n * i)) for n in range(1, q + j + 1))
    w2s = tuple(word(("a", n * (i - p)), ("b", n * (q + j)))
                for n in range(1, -j + 1))
    return w1s, w2s


def _torus_style_hints(kg: KnotGroup, p: int, q: int, N: int
                       ) -> list[PositivityCertificate]:
    """Discharge certificates against the torus interval-case ladder, with
    targets phrased through the group's own peripheral words."""
    i, j = torus_meridian_exponents(p, q)
    w1s, w2s = _torus_dichotomy_ladder(p, q)
    s = kg.framing_curve
    target = (kg.mu ** N) * s
    hints = []

    neg_a = CertificateBuilder(kg.presentation, [(A, -1)],
                               name="s-negative-when-a-negative")
    neg_a.invneg(A, p)
    hints.append(neg_a.build(~s))
    neg_b = CertificateBuilder(kg.presentation, [(B, -1)],
                               name="s-negative-when-b-negative")
    neg_b.invneg(B, q)
    hints.append(neg_b.build(~s))

    for n in range(1, q + j + 1):
        hyps = [(B, 1), (w1s[n - 1], 1)] + ([(w1s[n - 2], -1)] if n >= 2 else [])
        builder = CertificateBuilder(kg.presentation, hyps,
                                     name=f"interval-case1(n={n},N={N})")
        _, l = divmod((1 - n) * j, q)
        builder.pos(B, l)
        for _ in range(N):
            builder.pos(w1s[n - 1])
            if n >= 2:
                builder.invneg(w1s[n - 2])
        builder.pos(B, q - l)
        hints.append(builder.build(target))
    for n in range(1, -j + 1):
        hyps = [(B, 1), (w2s[n - 1], 1)] + ([(w2s[n - 2], -1)] if n >= 2 else [])
        builder = CertificateBuilder(kg.presentation, hyps,
                                     name=f"interval-case2(n={n},N={N})")
        _, l = divmod(n * (q + j), q)
        builder.pos(B, l)
        for _ in range(N):
            if n >= 2:
                builder.invneg(w2s[n - 2])
            builder.pos(w2s[n - 1])
        builder.pos(B, q - l)
        hints.append(builder.build(target))

    top1, top2 = w1s[-1], w2s[-1]
    dich = CertificateBuilder(kg.presentation, [(A, 1), (top1, -1), (top2, -1)],
                              name="dichotomy-contradiction")
    dich.invneg(top1).invneg(top2)
    hints.append(dich.build(~A))
    return hints


def pretzel_case_hints(kg: KnotGroup, m: int, N: int) -> tuple[PositivityCertificate, ...]:
    """Discharge certificates for the pretzel sign analysis at offset N."""
    hints = [pretzel_trivial(kg, N), pretzel_case2(kg, m, N)]
    if m >= 1:
        hints.append(pretzel_case1(kg, m, N))
        hints.append(pretzel_case2_final(kg, m, N))
    else:
        hints.extend(_torus_style_hints(kg, 3, 5, N))
    hints.extend(pretzel_contradictions(kg, m))
    return tuple(hints)


def twisted1_branch_words(k: int) -> tuple[Word, ...]:
    t, w1, w2 = _twisted1_words(k)
    mu = word(("b", k + 1), ("a", -1))
    return (A, B, mu, t, w1, w2)


def twisted1_case_hints(kg: KnotGroup, k: int, N: int) -> tuple[PositivityCertificate, ...]:
    return (
        twisted1_trivial(kg, N),
        twisted1_both_negative(kg, k),
        twisted1_b_over_a(kg, k),
        twisted1_a_over_b(kg, k, N),
        twisted1_case1(kg, k, N),
        twisted1_subcase(kg, k, N, 1),
        twisted1_subcase(kg, k, N, 2),
        twisted1_dichotomy(kg, k),
    )


# -- suite driver ------------------------------------------------------------------


def certify_family_identities(
    family: str,
    params: dict,
    offsets=(1, 2, 3),
    n_range=(1, 2, 3),
    budget: SearchBudget | None = None,
) -> SuiteResult:
    """Build and verify the whole identity suite for one family member.

    Budgets auto-scale with the largest offset so the N-fold blocks stay
    within the rewrite-search horizon; actual usage per identity is
    recorded in the outcomes.
    """
    offsets = tuple(offsets)
    max_offset = max(offsets) if offsets else 1
    budget = (budget or SearchBudget()).scaled(2 * max_offset + 8)
    if family == "torus":
        kg = torus_group(TorusKnotSpec(params["p"], params["q"]))
        entries = torus_entries(kg, tuple(n_range), offsets)
    elif family == "pretzel":
        kg = pretzel_group(params["m"])
        entries = pretzel_entries(kg, params["m"], offsets)
    elif family == "twisted1":
        kg = twisted_group(TwistedSpec(k=params["k"], m=1))
        entries = twisted1_entries(kg, params["k"], offsets)
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")

    engine = family_engine(kg, budget)
    outcomes = []
    for entry in entries:
        if entry.kind == "equality":
            verdict = engine.equal(entry.lhs, entry.rhs)
            ins = verdict.derivation.insertions if verdict.derivation else 0
            outcomes.append(SuiteOutcome(
                entry.ident, verdict.is_equal, verdict.method, ins,
                "" if verdict.is_equal else f"verdict {verdict.kind}"))
        else:
            report = verify_certificate(entry.certificate, engine)
            outcomes.append(SuiteOutcome(
                entry.ident, report.ok, report.equality_method,
                report.insertions, report.failure))
    return SuiteResult(family, kg.label, tuple(outcomes), offsets)
