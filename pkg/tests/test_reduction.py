import pytest

from limitlab import (
    CollectionOracle,
    EnumerationStream,
    GameScenario,
    LanguageCandidateOracle,
    QueryLedger,
    ReductionIdentifier,
    ScanDetector,
    Strategy,
    TelltaleIdentifier,
    catalog,
    run_game,
)
from limitlab.languages import PURPOSE_CONSISTENCY, PURPOSE_DETECTOR

from tests.oracles import sim_reduction_guesses

CATALOG = catalog()
MULTIPLES = CATALOG["multiples"]
PREFIXES = CATALOG["finite_prefixes"]


def build_reduction(collection, ledger, fresh_copies=False, trace_rounds=False):
    detector_oracle = CollectionOracle(collection, ledger, PURPOSE_DETECTOR)

    def factory(index):
        return ScanDetector(
            TelltaleIdentifier(collection, detector_oracle),
            LanguageCandidateOracle(detector_oracle, index),
            detector_oracle,
        )

    return ReductionIdentifier(
        collection,
        factory,
        CollectionOracle(collection, ledger, PURPOSE_CONSISTENCY),
        fresh_copies=fresh_copies,
        trace_rounds=trace_rounds,
    )


def drive(collection, prefix, **kwargs):
    ledger = QueryLedger()
    reduction = build_reduction(collection, ledger, **kwargs)
    guesses = []
    for t, w in enumerate(prefix, start=1):
        ledger.begin_step(t)
        guesses.append(reduction.step(w))
    return guesses, reduction, ledger


def test_prefixes_roundtrip_example():
    prefix = EnumerationStream(PREFIXES.language(2)).take(12)
    guesses, reduction, _ = drive(PREFIXES, prefix)
    assert guesses[0] == 1 and set(guesses[1:]) == {2}
    final = reduction.last_round
    assert final.guess == 2 and 2 in final.consistent and final.accepted[0] == 2


def test_matches_literal_simulation_oracle():
    cases = [
        (PREFIXES, EnumerationStream(PREFIXES.language(3)).take(10)),
        (MULTIPLES, EnumerationStream(MULTIPLES.language(4)).take(10)),
        (MULTIPLES, EnumerationStream(
            MULTIPLES.language(2), Strategy("block_shuffle", seed=4, block_growth=2)
        ).take(10)),
        (CATALOG["finite_sets"], EnumerationStream(CATALOG["finite_sets"].language(6)).take(10)),
    ]
    for collection, prefix in cases:
        guesses, _, _ = drive(collection, prefix)
        assert guesses == sim_reduction_guesses(collection, prefix), (collection.id, prefix)


def test_empty_acceptance_set_falls_back_to_one():
    # First round on the finite-set collection with target {2}: index 1
    # encodes {1}, which is inconsistent with the first element.
    guesses, reduction, _ = drive(CATALOG["finite_sets"], [2])
    assert guesses == [1]
    assert reduction.last_round.accepted == ()
    assert reduction.last_round.consistent == ()


def test_pool_matches_fresh_detector_spot_check():
    prefix = EnumerationStream(PREFIXES.language(3)).take(5)
    _, reduction, ledger = drive(PREFIXES, prefix)
    pooled = reduction._pool[3]
    fresh = build_reduction(PREFIXES, ledger)._factory(3)
    verdict = None
    for w in prefix:
        verdict = fresh.step(w)
    assert pooled.verdicts[-1] == verdict


@pytest.mark.parametrize(
    "cid,k,strategy",
    [
        ("multiples", 6, Strategy("canonical")),
        ("multiples", 3, Strategy("repeat_heavy", seed=2)),
        ("finite_prefixes", 4, Strategy("block_shuffle", seed=5, block_growth=2)),
        ("finite_sets", 5, Strategy("canonical")),
    ],
)
def test_incremental_pool_agrees_with_fresh_copies(cid, k, strategy):
    collection = CATALOG[cid]
    prefix = EnumerationStream(collection.language(k), strategy).take(30)
    incremental, inc_red, _ = drive(collection, prefix, trace_rounds=True)
    fresh, fresh_red, _ = drive(collection, prefix, fresh_copies=True, trace_rounds=True)
    assert incremental == fresh
    for a, b in zip(inc_red.rounds, fresh_red.rounds):
        assert a == b  # bit-for-bit round dumps, verdict vectors included


def test_consistent_set_is_antitone():
    prefix = EnumerationStream(
        MULTIPLES.language(4), Strategy("repeat_heavy", seed=6)
    ).take(40)
    _, reduction, _ = drive(MULTIPLES, prefix, trace_rounds=True)
    dropped = set()
    for state in reduction.rounds:
        current = set(state.consistent)
        assert not (dropped & current)
        dropped |= set(range(1, state.t + 1)) - current


def test_partition_logic_at_the_final_round():
    prefix = EnumerationStream(MULTIPLES.language(6)).take(40)
    _, reduction, _ = drive(MULTIPLES, prefix)
    final = reduction.last_round
    z = final.guess
    assert MULTIPLES.equals(z, 6)
    consistent = set(final.consistent)
    for i in range(1, z):
        assert i not in consistent or final.verdicts[i - 1] == 0
    assert z in consistent and final.verdicts[z - 1] == 1


def test_consistency_query_bound_2t_minus_1():
    for strategy in (Strategy("canonical"), Strategy("repeat_heavy", seed=1)):
        prefix = EnumerationStream(MULTIPLES.language(2), strategy).take(60)
        ledger = QueryLedger()
        reduction = build_reduction(MULTIPLES, ledger)
        for t, w in enumerate(prefix, start=1):
            ledger.begin_step(t)
            reduction.step(w)
            assert ledger.at(t, PURPOSE_CONSISTENCY) <= 2 * t - 1


def test_inapplicable_inner_detectors_are_pinned_to_zero():
    fpa = CATALOG["finite_plus_all"]
    prefix = EnumerationStream(fpa.language(3)).take(8)
    guesses, reduction, _ = drive(fpa, prefix)
    # every pooled detector hits the missing index-1 tell-tale immediately
    assert guesses == [1] * 8
    final = reduction.last_round
    assert final.inapplicable == tuple(range(1, 9))
    assert all(v == 0 for v in final.verdicts)


def test_run_game_wires_the_reduction():
    scenario = GameScenario(
        "alg2-run", "multiples", 4, "alg2", identifier="telltale", horizon=50,
    )
    outcome = run_game(scenario, CATALOG)
    assert outcome.status == "ok"
    assert outcome.report.stabilized
    assert outcome.report.final_output == 4
    assert outcome.transcript.final_state is not None
