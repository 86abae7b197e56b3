"""Knot group presentations with peripheral systems.

Two families are constructed:

* torus knots T_{p,q}:  <a, b | a^p = b^q>, meridian mu = b^j a^i with
  pj + qi = 1, p > i > 0 > j > -q, surface framing s = a^p and
  longitude lambda = mu^(-pq) a^p;

* positively m-twisted (3, 3k+2)-torus knots:
  <a, b | a^2 (b^-k a)^m a = b^(2k+1) (b^-k a)^m b^(k+1)>, with
  mu = b^(k+1) a^-1, s = a^2 (b^-k a)^m a (b^-k a)^m and
  lambda = mu^(-f) s for the framing constant f = 3(3k+2) + 2m.

All peripheral identities that come in two forms (both meridian words,
both framing words) are verified through the equality engine rather than
assumed; `verify_presentation_identities` reports each one.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .equality import EqualityEngine, SearchBudget
from .words import A, B, Presentation, Word, format_word, word


class KnotSpecError(ValueError):
    pass


@dataclass(frozen=True)
class TorusKnotSpec:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2 or self.q < 2:
            raise KnotSpecError(f"torus parameters must be >= 2, got ({self.p}, {self.q})")
        if gcd(self.p, self.q) != 1:
            raise KnotSpecError(f"torus parameters must be coprime, got ({self.p}, {self.q})")


@dataclass(frozen=True)
class TwistedSpec:
    """q = 3k+2 strand parameter, m positive full twists."""

    k: int
    m: int

    def __post_init__(self):
        if self.k < 0 or self.m < 0:
            raise KnotSpecError(f"twist parameters must be >= 0, got (k={self.k}, m={self.m})")

    @property
    def q(self) -> int:
        return 3 * self.k + 2

    @property
    def twist_word(self) -> Word:
        """c = b^-k a, the block the twists act on."""
        return word(("b", -self.k), ("a", 1)) if self.k else A


@dataclass(frozen=True)
class PeripheralSystem:
    mu: Word
    longitude: Word
    framing_curve: Word  # the surface framing s
    framing: int  # f with framing_curve = mu^f * longitude

    def __post_init__(self):
        expected = (self.mu ** -self.framing) * self.framing_curve
        if expected != self.longitude:
            raise KnotSpecError("longitude must freely equal mu^-f * s")


@dataclass(frozen=True)
class KnotGroup:
    label: str
    presentation: Presentation
    peripheral: PeripheralSystem
    spec: TorusKnotSpec | TwistedSpec | None = None

    @property
    def mu(self) -> Word:
        return self.peripheral.mu

    @property
    def longitude(self) -> Word:
        return self.peripheral.longitude

    @property
    def framing_curve(self) -> Word:
        return self.peripheral.framing_curve

    def homology_degree(self, w: Word) -> int:
        """Image of w in H_1 = Z, normalised so the meridian maps to 1."""
        ra, rb = self.presentation.relators[0].exponent_sums()
        d = gcd(abs(ra), abs(rb))
        ca, cb = rb // d, -(ra // d)
        ma, mb = self.mu.exponent_sums()
        mu_deg = ca * ma + cb * mb
        if mu_deg == 0:
            raise KnotSpecError("meridian dies in homology; degree undefined")
        ea, eb = w.exponent_sums()
        deg = ca * ea + cb * eb
        if deg % mu_deg:
            raise KnotSpecError("word degree is not a meridian multiple")
        return deg // mu_deg

    def as_json(self) -> dict:
        return {
            "schema": 1,
            "label": self.label,
            "generators": ["a", "b"],
            "relator": format_word(self.presentation.relators[0]),
            "mu": format_word(self.mu),
            "lambda": format_word(self.longitude),
            "s": format_word(self.framing_curve),
            "framing": self.peripheral.framing,
        }


def torus_meridian_exponents(p: int, q: int) -> tuple[int, int]:
    """The unique (i, j) with pj + qi = 1, p > i > 0 > j > -q."""
    for i in range(1, p):
        if (q * i) % p == 1:
            j = (1 - q * i) // p
            return i, j
    raise KnotSpecError(f"no meridian exponents for ({p}, {q})")


def torus_group(spec: TorusKnotSpec) -> KnotGroup:
    p, q = spec.p, spec.q
    i, j = torus_meridian_exponents(p, q)
    relator = word(("a", p), ("b", -q))
    mu = word(("b", j), ("a", i))
    s = word(("a", p))
    f = p * q
    return KnotGroup(
        label=f"torus({p},{q})",
        presentation=Presentation((relator,)),
        peripheral=PeripheralSystem(mu, (mu ** -f) * s, s, f),
        spec=spec,
    )


def twisted_relator(spec: TwistedSpec) -> Word:
    k, m = spec.k, spec.m
    c = spec.twist_word
    lhs = (A ** 2) * (c ** m) * A
    rhs = word(("b", 2 * k + 1)) * (c ** m) * word(("b", k + 1))
    return (lhs * ~rhs).cyclically_reduced()


def twisted_group(spec: TwistedSpec) -> KnotGroup:
    k, m = spec.k, spec.m
    c = spec.twist_word
    mu = word(("b", k + 1), ("a", -1))
    s = (A ** 2) * (c ** m) * A * (c ** m)
    f = 3 * spec.q + 2 * m
    return KnotGroup(
        label=f"twisted(k={k},m={m})",
        presentation=Presentation((twisted_relator(spec),)),
        peripheral=PeripheralSystem(mu, (mu ** -f) * s, s, f),
        spec=spec,
    )


def pretzel_group(m: int) -> KnotGroup:
    """The positively m-twisted (3,5)-torus knot, i.e. the (-2,3,5+2m) pretzel."""
    kg = twisted_group(TwistedSpec(k=1, m=m))
    return KnotGroup(f"pretzel({m})", kg.presentation, kg.peripheral, kg.spec)


# -- alternative peripheral expressions (verified, not assumed) --------------


def torus_meridian_alt(p: int, q: int) -> Word:
    i, j = torus_meridian_exponents(p, q)
    return word(("b", q + j), ("a", i - p))


def twisted_meridian_alt(spec: TwistedSpec) -> Word:
    c = spec.twist_word
    return (c ** -spec.m) * word(("b", -(2 * spec.k + 1))) * (A ** 2) * (c ** spec.m)


def twisted_framing_alt(spec: TwistedSpec) -> Word:
    c = spec.twist_word
    return (
        word(("b", 2 * spec.k + 1)) * (c ** spec.m)
        * word(("b", spec.k + 1)) * (c ** spec.m)
    )


# -- peripheral words for slopes ----------------------------------------------


def peripheral_word(kg: KnotGroup, p: int, q: int) -> Word:
    """The filling word mu^p * lambda^q for a primitive slope p/q, q >= 0."""
    if q < 0 or (p, q) == (0, 0) or gcd(abs(p), q) != 1:
        raise KnotSpecError(f"slope {p}/{q} is not primitive with q >= 0")
    return (kg.mu ** p) * (kg.longitude ** q)


# -- identity verification -----------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: Word
    rhs: Word
    verdict_kind: str
    method: str
    insertions: int


@dataclass(frozen=True)
class PresentationReport:
    label: str
    checks: tuple[IdentityCheck, ...]
    longitude_degree: int

    @property
    def all_equal(self) -> bool:
        return all(c.verdict_kind == "equal" for c in self.checks)

    @property
    def inconclusive(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.checks if c.verdict_kind == "unknown")

    @property
    def failures(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.checks if c.verdict_kind == "distinct")

    def as_json(self) -> dict:
        return {
            "label": self.label,
            "longitude_degree": self.longitude_degree,
            "checks": [
                {
                    "name": c.name,
                    "lhs": format_word(c.lhs),
                    "rhs": format_word(c.rhs),
                    "verdict": c.verdict_kind,
                    "method": c.method,
                    "insertions": c.insertions,
                }
                for c in self.checks
            ],
        }


def _identity_pairs(kg: KnotGroup) -> list[tuple[str, Word, Word]]:
    pairs = [(
        "framing-curve = mu^f * lambda",
        kg.framing_curve,
        (kg.mu ** kg.peripheral.framing) * kg.longitude,
    )]
    if isinstance(kg.spec, TorusKnotSpec):
        p, q = kg.spec.p, kg.spec.q
        pairs.append(("meridian = alternative meridian", kg.mu, torus_meridian_alt(p, q)))
        pairs.append(("a^p = b^q", A ** p, B ** q))
    elif isinstance(kg.spec, TwistedSpec):
        pairs.append(("meridian = alternative meridian",
                      kg.mu, twisted_meridian_alt(kg.spec)))
        pairs.append(("framing curve = alternative form",
                      kg.framing_curve, twisted_framing_alt(kg.spec)))
    return pairs


def verify_presentation_identities(
    kg: KnotGroup,
    engine: EqualityEngine | None = None,
    budget: SearchBudget | None = None,
) -> PresentationReport:
    """Check every paired peripheral expression through the word problem.

    A Distinct verdict would indicate a construction bug and is surfaced
    as a failure; Unknown verdicts are reported as inconclusive.
    """
    engine = engine or EqualityEngine(kg.presentation, budget or SearchBudget())
    checks = []
    for name, lhs, rhs in _identity_pairs(kg):
        verdict = engine.equal(lhs, rhs)
        ins = verdict.derivation.insertions if verdict.derivation else 0
        checks.append(IdentityCheck(name, lhs, rhs, verdict.kind, verdict.method, ins))
    return PresentationReport(kg.label, tuple(checks), kg.homology_degree(kg.longitude))
