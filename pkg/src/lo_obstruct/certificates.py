"""Positivity certificates: machine-checkable factorizations.

A certificate asserts that its target word is positive in every
left-ordering compatible with the sign hypotheses, by exhibiting the
target as a product of factors that are each justified positive:

* ``hyp:i``      the factor is hypothesis word i, hypothesised positive;
* ``invneg:i``   the factor is the inverse of hypothesis word i,
                 hypothesised negative;
* ``sub:j``      the factor is the target of sub-certificate j, whose own
                 hypotheses must be among this certificate's hypotheses.

Verification re-checks the factor concatenation against the target with
the word-problem engine and resolves every justification; it is entirely
independent of whatever search or construction produced the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .equality import EqualityEngine, SearchBudget
from .words import Presentation, Word, format_word


@dataclass(frozen=True)
class Factor:
    word: Word
    justification: str  # "hyp:<i>" | "invneg:<i>" | "sub:<j>"

    def as_json(self) -> dict:
        return {"word": format_word(self.word), "justification": self.justification}


@dataclass(frozen=True)
class PositivityCertificate:
    group: Presentation
    target: Word
    hypotheses: tuple[tuple[Word, int], ...]  # (word, +1 or -1)
    factors: tuple[Factor, ...]
    subcertificates: tuple["PositivityCertificate", ...] = ()
    name: str = ""

    def factor_product(self) -> Word:
        out = Word()
        for f in self.factors:
            out = out * f.word
        return out

    def as_json(self) -> dict:
        return {
            "name": self.name,
            "target": format_word(self.target),
            "hypotheses": [
                {"word": format_word(w), "sign": "+" if s > 0 else "-"}
                for w, s in self.hypotheses
            ],
            "factors": [f.as_json() for f in self.factors],
            "subcertificates": [c.as_json() for c in self.subcertificates],
        }


@dataclass(frozen=True)
class CertificateReport:
    name: str
    ok: bool
    equality_method: str = ""
    insertions: int = 0
    failure: str = ""
    sub_reports: tuple["CertificateReport", ...] = ()

    def as_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok}
        if self.ok:
            out["equality_method"] = self.equality_method
            out["insertions"] = self.insertions
        else:
            out["failure"] = self.failure
        if self.sub_reports:
            out["subcertificates"] = [r.as_json() for r in self.sub_reports]
        return out


def _resolve_factor(cert: PositivityCertificate, factor: Factor) -> str | None:
    """None when the justification resolves; else a failure message."""
    tag, _, idx_s = factor.justification.partition(":")
    try:
        idx = int(idx_s)
    except ValueError:
        return f"malformed justification {factor.justification!r}"
    if tag == "hyp":
        if idx >= len(cert.hypotheses):
            return f"hypothesis index {idx} out of range"
        w, sign = cert.hypotheses[idx]
        if sign != 1:
            return f"hypothesis {idx} is not positive"
        if factor.word != w:
            return f"factor {format_word(factor.word)} is not hypothesis {idx}"
        return None
    if tag == "invneg":
        if idx >= len(cert.hypotheses):
            return f"hypothesis index {idx} out of range"
        w, sign = cert.hypotheses[idx]
        if sign != -1:
            return f"hypothesis {idx} is not negative"
        if factor.word != ~w:
            return f"factor {format_word(factor.word)} is not the inverse of hypothesis {idx}"
        return None
    if tag == "sub":
        if idx >= len(cert.subcertificates):
            return f"sub-certificate index {idx} out of range"
        sub = cert.subcertificates[idx]
        if factor.word != sub.target:
            return f"factor {format_word(factor.word)} is not sub-certificate {idx}'s target"
        if any(h not in cert.hypotheses for h in sub.hypotheses):
            return f"sub-certificate {idx} uses hypotheses not available here"
        return None
    return f"unknown justification kind {tag!r}"


def verify_certificate(
    cert: PositivityCertificate,
    engine: EqualityEngine | None = None,
    budget: SearchBudget | None = None,
) -> CertificateReport:
    """Check the factorization: concatenation equals the target in the
    group, every justification resolves, and sub-certificates verify.

    An Unknown equality verdict is reported as "equality not established",
    distinct from a factor-justification failure.
    """
    engine = engine or EqualityEngine(cert.group, budget or SearchBudget())
    sub_reports = tuple(
        verify_certificate(sub, engine) for sub in cert.subcertificates
    )
    name = cert.name or format_word(cert.target)
    if not all(r.ok for r in sub_reports):
        return CertificateReport(name, False, failure="sub-certificate failed",
                                 sub_reports=sub_reports)
    for n, factor in enumerate(cert.factors):
        failure = _resolve_factor(cert, factor)
        if failure:
            return CertificateReport(name, False,
                                     failure=f"factor {n}: {failure}",
                                     sub_reports=sub_reports)
    verdict = engine.equal(cert.factor_product(), cert.target)
    if verdict.is_unknown:
        return CertificateReport(name, False, failure="equality not established",
                                 sub_reports=sub_reports)
    if verdict.is_distinct:
        return CertificateReport(name, False,
                                 failure="factor product differs from target",
                                 sub_reports=sub_reports)
    ins = verdict.derivation.insertions if verdict.derivation else 0
    return CertificateReport(name, True, equality_method=verdict.method,
                             insertions=ins, sub_reports=sub_reports)


# -- construction helpers -------------------------------------------------------


class CertificateBuilder:
    """Incremental construction against a fixed hypothesis list."""

    def __init__(self, group: Presentation, hypotheses, name: str = ""):
        self.group = group
        self.hypotheses = tuple(hypotheses)
        self.name = name
        self.factors: list[Factor] = []
        self.subs: list[PositivityCertificate] = []

    def _hyp_index(self, w: Word, sign: int) -> int:
        for i, (hw, hs) in enumerate(self.hypotheses):
            if hw == w and hs == sign:
                return i
        raise ValueError(f"no hypothesis ({format_word(w)}, {sign:+d})")

    def pos(self, w: Word, times: int = 1) -> "CertificateBuilder":
        i = self._hyp_index(w, 1)
        self.factors.extend([Factor(w, f"hyp:{i}")] * times)
        return self

    def invneg(self, w: Word, times: int = 1) -> "CertificateBuilder":
        """Append the inverse of the negative hypothesis w."""
        i = self._hyp_index(w, -1)
        self.factors.extend([Factor(~w, f"invneg:{i}")] * times)
        return self

    def sub(self, cert: PositivityCertificate, times: int = 1) -> "CertificateBuilder":
        try:
            j = self.subs.index(cert)
        except ValueError:
            j = len(self.subs)
            self.subs.append(cert)
        self.factors.extend([Factor(cert.target, f"sub:{j}")] * times)
        return self

    def build(self, target: Word) -> PositivityCertificate:
        return PositivityCertificate(
            self.group, target, self.hypotheses, tuple(self.factors),
            tuple(self.subs), self.name)
