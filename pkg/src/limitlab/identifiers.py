"""Online identifiers: guess an index of the hidden target language.

Both identifiers keep the set of distinct elements seen so far and cap
their candidate indices at the current step count, so every step makes
finitely many oracle calls. The tell-tale identifier guesses the least
in-range index whose tell-tale has fully appeared and whose language
contains everything seen; the consistency-min identifier drops the
tell-tale requirement, which is exactly what makes it fail on
collections with an early always-consistent superset.
"""

from __future__ import annotations

from typing import Optional

from .languages import Collection, CollectionOracle


class Inapplicable(RuntimeError):
    """The algorithm's oracle requirements are not met for this run."""


class TelltaleIdentifier:
    """Identification by enumeration over tell-tale certified candidates.

    Guess at step t: the least index i <= t with telltale(i) contained in
    the seen set and every seen element in L_i, else 1. Subset checks go
    through the ledgered oracle and are cached per (index, element);
    once an index fails containment it is dead for good, since the seen
    set only grows.
    """

    name = "telltale"

    def __init__(self, collection: Collection, oracle: CollectionOracle) -> None:
        self._collection = collection
        self._oracle = oracle
        self.t = 0
        self._seen_list: list[int] = []
        self._seen: set[int] = set()
        self._alive: set[int] = set()
        # index -> telltale elements not seen yet, filed under one of them
        self._waiting: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
        self.guesses: list[int] = []

    @property
    def seen(self) -> frozenset:
        return frozenset(self._seen)

    def _admit(self, index: int, telltale: tuple[int, ...]) -> None:
        for element in telltale:
            if element not in self._seen:
                self._waiting.setdefault(element, []).append((index, telltale))
                return
        member = self._oracle.member
        for x in self._seen_list:
            if not member(index, x):
                return  # dead: containment can only get worse
        self._alive.add(index)

    def step(self, w: int) -> int:
        self.t += 1
        is_new = w not in self._seen
        if is_new:
            self._seen.add(w)
            self._seen_list.append(w)
            member = self._oracle.member
            dead = [i for i in self._alive if not member(i, w)]
            self._alive.difference_update(dead)
        telltale = self._collection.telltale(self.t)
        if telltale is None:
            raise Inapplicable(
                f"collection {self._collection.id!r} has no tell-tale for index {self.t}"
            )
        self._admit(self.t, telltale)
        if is_new:
            for index, tt in self._waiting.pop(w, ()):
                self._admit(index, tt)
        guess = min(self._alive) if self._alive else 1
        self.guesses.append(guess)
        return guess


class ConsistencyMinIdentifier:
    """Guess the least in-range index consistent with everything seen.

    Tracks the surviving consistent indices incrementally: a new index is
    vetted against the whole seen set once, survivors only against newly
    seen elements. Consistency is antitone, so dropped indices never
    return.
    """

    name = "consistency_min"

    def __init__(self, collection: Collection, oracle: CollectionOracle) -> None:
        self._collection = collection
        self._oracle = oracle
        self.t = 0
        self._seen_list: list[int] = []
        self._seen: set[int] = set()
        self._alive: set[int] = set()
        self.guesses: list[int] = []

    @property
    def seen(self) -> frozenset:
        return frozenset(self._seen)

    def step(self, w: int) -> int:
        self.t += 1
        member = self._oracle.member
        if w not in self._seen:
            self._seen.add(w)
            self._seen_list.append(w)
            dead = [i for i in self._alive if not member(i, w)]
            self._alive.difference_update(dead)
        if all(member(self.t, x) for x in self._seen_list):
            self._alive.add(self.t)
        guess = min(self._alive) if self._alive else 1
        self.guesses.append(guess)
        return guess


IDENTIFIER_NAMES = ("telltale", "consistency_min")


def make_identifier(name: str, collection: Collection, oracle: CollectionOracle):
    if name == "telltale":
        return TelltaleIdentifier(collection, oracle)
    if name == "consistency_min":
        return ConsistencyMinIdentifier(collection, oracle)
    from .languages import ConfigError

    raise ConfigError(f"unknown identifier {name!r} (known: {', '.join(IDENTIFIER_NAMES)})")
