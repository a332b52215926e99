"""A first detection game, played two ways.

The target language is the even numbers (index 2 of the multiples
collection). We test two candidate sets against it: the multiples of 4,
which sit inside the target, and the multiples of 3, which leak the
element 3. The negative-example detector sees a labeled enumeration of
the whole domain; the identify-then-scan detector sees only members of
the target.
"""

from limitlab import (
    GameScenario,
    catalog,
    language_candidate,
    run_game,
)

collections = catalog()
multiples = collections["multiples"]

print("target: K =", multiples.language(2).describe())

for index in (4, 3):
    candidate = language_candidate(multiples, index)
    print()
    print(f"candidate: G = {candidate.describe()} ({multiples.language(index).describe()})")

    for algorithm, extra in (("negex", {}), ("alg1", {"identifier": "telltale"})):
        scenario = GameScenario(
            scenario_id=f"demo-{algorithm}-L{index}",
            collection_id="multiples",
            target_index=2,
            algorithm=algorithm,
            candidate=candidate,
            horizon=40,
            **extra,
        )
        outcome = run_game(scenario, collections)
        verdicts = [row.output for row in outcome.transcript.rows]
        report = outcome.report
        print(f"  {algorithm:6s} first verdicts: {verdicts[:8]} ...")
        print(
            f"         stable and correct from step {report.t_star} through the horizon"
            f" (final verdict {report.final_output},"
            f" ground truth G within K: {outcome.ground_truth_subset})"
        )

print()
print("Verdict 1 means the candidate is believed to stay inside the target;")
print("0 means an element outside the target was caught in the candidate.")
