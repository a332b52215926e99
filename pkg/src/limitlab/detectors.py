"""Detectors: decide whether the candidate set stays inside the target.

Verdict convention: 1 means "the candidate does not hallucinate" (it is
believed to sit inside the target language), 0 means it does. The scan
detector wraps an identifier and sweeps the domain prefix 1..t against
the identified language; the negative-example detector needs no
identifier at all and latches on the first 0-labeled element that the
candidate claims.
"""

from __future__ import annotations

from typing import Optional, Protocol, Union

from .languages import (
    CandidateOracle,
    CollectionOracle,
    LanguageCandidateOracle,
)

CandidateHandle = Union[CandidateOracle, LanguageCandidateOracle]


class _Identifier(Protocol):
    guesses: list[int]

    def step(self, w: int) -> int: ...


class ScanDetector:
    """Detection through identification: identify, then sweep the prefix.

    Each step feeds the enumerated element to the identifier, takes its
    guess as the presumed target, and reports a hallucination iff some
    domain element x <= t lies in the candidate but not in the presumed
    target. The sweep is resumed per guessed index, and a found witness
    stays found, so steps with an unchanged guess cost one new scan slot.
    """

    name = "alg1"

    def __init__(
        self,
        identifier: _Identifier,
        candidate: CandidateHandle,
        oracle: CollectionOracle,
    ) -> None:
        self.identifier = identifier
        self._candidate = candidate
        self._oracle = oracle
        self.t = 0
        self._scanned_upto: dict[int, int] = {}
        self._violated: set[int] = set()
        self.verdicts: list[int] = []

    def step(self, w: int) -> int:
        self.t += 1
        guess = self.identifier.step(w)
        if guess not in self._violated:
            upto = self._scanned_upto.get(guess, 0)
            if upto < self.t:
                candidate_member = self._candidate.member
                oracle_member = self._oracle.member
                for x in range(upto + 1, self.t + 1):
                    if candidate_member(x) and not oracle_member(guess, x):
                        self._violated.add(guess)
                        break
                self._scanned_upto[guess] = self.t
        verdict = 0 if guess in self._violated else 1
        self.verdicts.append(verdict)
        return verdict


class NegativeExampleDetector:
    """Always-successful detector over labeled domain enumerations.

    Flags a hallucination permanently once some element arrives with
    label 0 while the candidate claims it. Exactly one fresh candidate
    query per 0-labeled step before the witness is found, none after.
    """

    name = "negex"

    def __init__(self, candidate: CandidateOracle) -> None:
        self._candidate = candidate
        self.t = 0
        self.hallucination_witness: Optional[tuple[int, int]] = None
        self.verdicts: list[int] = []

    def step(self, pair: tuple[int, int]) -> int:
        self.t += 1
        w, label = pair
        if self.hallucination_witness is None and label == 0 and self._candidate.member(w):
            self.hallucination_witness = (w, self.t)
        verdict = 0 if self.hallucination_witness is not None else 1
        self.verdicts.append(verdict)
        return verdict


DETECTOR_NAMES = ("alg1", "negex")
