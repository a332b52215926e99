import pytest
from hypothesis import given, settings, strategies as st

from limitlab import (
    CollectionOracle,
    ConfigError,
    Language,
    QueryLedger,
    candidate_from_config,
    candidate_subset_of,
    candidate_to_config,
    catalog,
    decode_finite_set,
    domain_candidate,
    empty_candidate,
    encode_finite_set,
    finite_candidate,
    language_candidate,
    language_subset,
    minus_candidate,
    union_candidate,
)
from limitlab.languages import (
    PURPOSE_CANDIDATE,
    PURPOSE_CONSISTENCY,
    PURPOSES,
    CandidateOracle,
    Collection,
)

from tests.oracles import (
    brute_decode_finite_set,
    candidate_members_upto,
    extensional_subset,
    language_members_upto,
)

CATALOG = catalog()
MULTIPLES = CATALOG["multiples"]
PREFIXES = CATALOG["finite_prefixes"]
FINITE_SETS = CATALOG["finite_sets"]
FINITE_PLUS_ALL = CATALOG["finite_plus_all"]


# ---------------------------------------------------------------------------
# membership and enumeration


def test_membership_examples():
    assert MULTIPLES.member(2, 6) is True
    assert MULTIPLES.member(4, 6) is False
    assert PREFIXES.member(3, 3) is True


def test_membership_is_deterministic_and_total():
    for _ in range(3):
        assert MULTIPLES.member(7, 49) is True
        assert FINITE_PLUS_ALL.member(1, 12345) is True
    with pytest.raises(ConfigError):
        MULTIPLES.member(2, 0)


def test_unknown_collection_and_bad_index():
    with pytest.raises(ConfigError):
        MULTIPLES.language(0)
    bounded = Collection(
        id="bounded", family=lambda i: PREFIXES.language(i), index_bound=3
    )
    assert bounded.member(3, 2)
    with pytest.raises(ConfigError):
        bounded.member(4, 2)


def test_enumerate_language_examples():
    assert MULTIPLES.language(2).first_elements(3) == ([2, 4, 6], False)
    assert PREFIXES.language(2).first_elements(5) == ([1, 2], True)
    assert FINITE_PLUS_ALL.language(1).first_elements(4) == ([1, 2, 3, 4], False)
    assert FINITE_SETS.language(5).first_elements(2) == ([1, 3], True)


# ---------------------------------------------------------------------------
# the finite-set encoding


def test_finite_set_decode_against_brute_force():
    for index in range(1, 4097):
        assert decode_finite_set(index) == brute_decode_finite_set(index)


def test_encoding_example_from_elements():
    index = encode_finite_set({2, 5})
    assert index == 18
    assert FINITE_SETS.member(index, 5) is True
    assert FINITE_SETS.member(index, 3) is False


@given(st.integers(min_value=1, max_value=10**9))
def test_encode_decode_roundtrip(index):
    assert encode_finite_set(decode_finite_set(index)) == index


def test_empty_set_has_no_index():
    with pytest.raises(ConfigError):
        encode_finite_set([])


# ---------------------------------------------------------------------------
# catalog soundness: closed-form relations vs extensional checks


@pytest.mark.parametrize("collection", list(CATALOG.values()), ids=list(CATALOG))
def test_subset_relation_matches_extensional_check(collection):
    for i in range(1, 33):
        for j in range(1, 33):
            assert collection.subset_of(i, j) == extensional_subset(collection, i, j), (
                collection.id,
                i,
                j,
            )


@pytest.mark.parametrize("collection", list(CATALOG.values()), ids=list(CATALOG))
def test_equals_relation_matches_extensional_check(collection):
    for i in range(1, 33):
        for j in range(1, 33):
            expected = extensional_subset(collection, i, j) and extensional_subset(
                collection, j, i
            )
            assert collection.equals(i, j) == expected


def test_subset_relation_worked_example():
    # L_4 (multiples of 4) sits inside L_2 (even numbers).
    assert MULTIPLES.subset_of(4, 2) is True
    assert MULTIPLES.subset_of(2, 4) is False
    assert MULTIPLES.equals(2, 2) is True


def test_telltale_containment_up_to_64():
    for collection in CATALOG.values():
        for i in range(1, 65):
            telltale = collection.telltale(i)
            if telltale is None:
                assert (collection.id, i) == ("finite_plus_all", 1)
                continue
            assert len(telltale) == len(set(telltale))
            assert all(collection.member(i, x) for x in telltale)


def test_duplicate_languages_are_permitted():
    everything = Language("multiples", "dup", 1, modulus=1)
    dup = Collection(
        id="dup",
        family=lambda i: everything,
        subset_of=lambda i, j: True,
        equals=lambda i, j: True,
        telltale=lambda i: (1,),
    )
    assert dup.member(5, 17) and dup.member(9, 17)
    assert dup.equals(2, 7)


# ---------------------------------------------------------------------------
# candidate sets


def test_candidate_examples():
    g = language_candidate(MULTIPLES, 3)
    assert g.member(3) is True
    assert g.member(4) is False
    assert empty_candidate().member(7) is False
    g2 = union_candidate(language_candidate(PREFIXES, 2), [9])
    assert g2.member(9) is True and g2.member(3) is False


def test_candidate_edit_composition():
    g = minus_candidate(union_candidate(language_candidate(MULTIPLES, 2), [3]), [3, 4])
    assert not g.member(3)      # later removal wins
    assert not g.member(4)
    assert g.member(2) and g.member(6)
    g2 = union_candidate(g, [4])
    assert g2.member(4)          # later addition wins


def _candidate_asts(max_depth=2):
    base = st.one_of(
        st.tuples(
            st.sampled_from(list(CATALOG)), st.integers(min_value=1, max_value=12)
        ).map(lambda ci: language_candidate(CATALOG[ci[0]], ci[1])),
        st.frozensets(st.integers(min_value=1, max_value=30), max_size=4).map(
            finite_candidate
        ),
        st.just(domain_candidate()),
        st.just(empty_candidate()),
    )
    edits = st.frozensets(st.integers(min_value=1, max_value=30), min_size=1, max_size=3)

    def extend(children):
        return st.one_of(
            st.tuples(children, edits).map(lambda be: union_candidate(*be)),
            st.tuples(children, edits).map(lambda be: minus_candidate(*be)),
        )

    return st.recursive(base, extend, max_leaves=max_depth + 1)


@settings(max_examples=120)
@given(_candidate_asts())
def test_candidate_membership_matches_set_arithmetic(candidate):
    # Independent route: rebuild the set below 200 from the construction tree.
    def interp(ast):
        kind = ast[0]
        if kind == "language_of":
            return language_members_upto(CATALOG[ast[1]].language(ast[2]), 200)
        if kind == "finite_union_with":
            return interp(ast[1]) | set(ast[2])
        if kind == "finite_minus":
            return interp(ast[1]) - set(ast[2])
        if kind == "explicit_finite":
            return set(ast[1])
        if kind == "all_of_domain":
            return set(range(1, 201))
        return set()

    assert candidate_members_upto(candidate, 200) == interp(candidate.ast)


@settings(max_examples=120)
@given(
    _candidate_asts(),
    st.sampled_from(list(CATALOG)),
    st.integers(min_value=1, max_value=10),
)
def test_candidate_subset_decision_matches_exhaustive(candidate, cid, k):
    target = CATALOG[cid].language(k)
    decided = candidate_subset_of(candidate, target)
    below = candidate_members_upto(candidate, 200) <= language_members_upto(target, 200)
    if decided:
        assert below
    elif below:
        # Disagreement below 200 must come from a genuine escape above it.
        core = candidate.core
        assert core is not None and not core.is_finite
        assert not language_subset(core, target)


def test_candidate_config_roundtrip():
    g = minus_candidate(
        union_candidate(language_candidate(MULTIPLES, 2), [5, 9]), [4]
    )
    config = candidate_to_config(g)
    back = candidate_from_config(config, CATALOG)
    assert back == g
    assert candidate_to_config(back) == config


def test_candidate_config_validation():
    with pytest.raises(ConfigError):
        candidate_from_config({"kind": "language_of", "params": {"index": 0}}, CATALOG, "multiples")
    with pytest.raises(ConfigError):
        candidate_from_config({"kind": "mystery"}, CATALOG)
    with pytest.raises(ConfigError):
        candidate_from_config(
            {"kind": "explicit_finite", "params": {"elements": [0]}}, CATALOG
        )


# ---------------------------------------------------------------------------
# the query ledger


def test_ledger_counts_fresh_queries_only():
    ledger = QueryLedger()
    oracle = CollectionOracle(MULTIPLES, ledger, PURPOSE_CONSISTENCY)
    ledger.begin_step(1)
    oracle.member(2, 6)
    oracle.member(2, 6)  # cache hit, not fresh
    oracle.member(3, 6)
    assert ledger.at(1, PURPOSE_CONSISTENCY) == 2
    ledger.begin_step(2)
    oracle.member(2, 8)
    assert ledger.at(2, PURPOSE_CONSISTENCY) == 1
    assert ledger.total(PURPOSE_CONSISTENCY) == 3
    assert ledger.total() == ledger.calls == 3


def test_uncached_candidate_oracle_bills_every_call():
    ledger = QueryLedger()
    ledger.begin_step(1)
    oracle = CandidateOracle(language_candidate(MULTIPLES, 3), ledger, cached=False)
    for _ in range(4):
        oracle.member(3)
    assert ledger.at(1, PURPOSE_CANDIDATE) == 4


@given(
    st.lists(
        st.tuples(st.sampled_from(PURPOSES), st.integers(min_value=0, max_value=3)),
        max_size=30,
    )
)
def test_ledger_completeness(plan):
    ledger = QueryLedger()
    made = 0
    for step, (purpose, count) in enumerate(plan, start=1):
        ledger.begin_step(step)
        for _ in range(count):
            ledger.record(purpose)
            made += 1
    assert ledger.total() == made
    assert sum(ledger.totals_by_purpose().values()) == made


def test_ledger_steps_advance_one_at_a_time():
    ledger = QueryLedger()
    ledger.begin_step(1)
    with pytest.raises(ConfigError):
        ledger.begin_step(3)
