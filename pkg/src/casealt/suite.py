"""The built-in passive/causative inference suite and its report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping

from casealt.entailment import UnsupportedShape, analyze_sentence, entails
from casealt.lexicon import BUILTINS, Lexicon, UnknownToken
from casealt.parser import NoParse
from casealt.terms import FuelExhausted, print_term


@dataclass(frozen=True)
class SuiteCase:
    id: str
    premise: tuple[str, ...]
    conclusion: tuple[str, ...]
    expected: Mapping[str, bool]

    def __post_init__(self):
        if not self.premise or not self.conclusion:
            raise ValueError(f"case {self.id}: empty sentence")
        missing = set(BUILTINS) - set(self.expected)
        if missing:
            raise ValueError(f"case {self.id}: no expectation for {sorted(missing)}")


def _case(id: str, premise: str, conclusion: str, bekki: bool, ccgbank: bool) -> SuiteCase:
    return SuiteCase(id, tuple(premise.split()), tuple(conclusion.split()),
                     {"bekki": bekki, "ccgbank": ccgbank})


SUITE: tuple[SuiteCase, ...] = (
    _case("P1", "Taro-ga Jiro-ni homera re ta", "Jiro-ga Taro-o home ta", True, True),
    _case("C1-ni", "Taro-ga Jiro-ni hasira se ta", "Jiro-ga hasit ta", True, True),
    _case("C1-o", "Taro-ga Jiro-o hasira se ta", "Jiro-ga hasit ta", True, True),
    _case("N1", "Jiro-ga Taro-ni hasira sera re ta", "Taro-ga Jiro-o hasira se ta", True, False),
    _case("N1-chain", "Jiro-ga Taro-ni hasira sera re ta", "Jiro-ga hasit ta", True, False),
)


@dataclass
class CaseResult:
    id: str
    lexicon: str
    holds: bool | None
    expected: bool
    passed: bool
    premise_lf: str | None = None
    conclusion_lf: str | None = None
    rules: dict[str, str] = field(default_factory=dict)
    error: str | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        if d["error"] is None:
            del d["error"]
        return d


@dataclass
class Report:
    cases: list[CaseResult]

    @property
    def total(self) -> int:
        return len(self.cases)

    @property
    def passed(self) -> int:
        return sum(c.passed for c in self.cases)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def to_json(self) -> dict:
        return {"cases": [c.to_json() for c in self.cases],
                "summary": {"total": self.total, "passed": self.passed}}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    def render_text(self) -> str:
        lines = []
        for c in self.cases:
            observed = "ERROR" if c.holds is None else ("YES" if c.holds else "NO")
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"{mark} {c.id:<9} {c.lexicon:<8} observed={observed:<5} "
                         f"expected={'YES' if c.expected else 'NO'}")
            if c.error:
                lines.append(f"       error: {c.error}")
            else:
                lines.append(f"       premise:    {c.premise_lf}")
                lines.append(f"       conclusion: {c.conclusion_lf}")
        lines.append(f"{self.passed}/{self.total} cases match the expected verdicts")
        return "\n".join(lines)


def summarize(report_json: Mapping) -> dict:
    """Recompute the summary block of a serialized report."""
    cases = report_json["cases"]
    return {"total": len(cases), "passed": sum(bool(c["pass"]) for c in cases)}


def run_case(case: SuiteCase, lexicon: Lexicon) -> CaseResult:
    expected = case.expected[lexicon.name]
    analyses = {}
    for side, tokens in (("premise", case.premise), ("conclusion", case.conclusion)):
        try:
            analyses[side] = analyze_sentence(tokens, lexicon)
        except (NoParse, UnknownToken, UnsupportedShape, FuelExhausted) as exc:
            return CaseResult(case.id, lexicon.name, None, expected, False, error=f"{side}: {exc}")
    premise, conclusion = analyses["premise"], analyses["conclusion"]
    verdict = entails(premise.normal_form, conclusion.normal_form)
    syntax = lexicon.closure.syntax
    return CaseResult(
        case.id, lexicon.name, verdict.holds, expected, verdict.holds == expected,
        premise_lf=print_term(premise.logical_form, syntax),
        conclusion_lf=print_term(conclusion.logical_form, syntax),
        rules={"premise": premise.derivation.rule_tree(),
               "conclusion": conclusion.derivation.rule_tree()},
    )


def run_suite(lexicons: Iterable[Lexicon], cases: Iterable[SuiteCase] = SUITE) -> Report:
    lexicons = list(lexicons)
    return Report([run_case(case, lex) for case in cases for lex in lexicons])
