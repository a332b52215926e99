"""Identification by enumeration, and why plain consistency is not enough.

The tell-tale identifier guesses the least in-range index whose finite
tell-tale set has fully appeared and whose language contains every
element seen so far. The consistency-min baseline keeps only the second
condition. On the multiples collection the first language (all positive
integers) is consistent with anything, so consistency-min never moves
past index 1, no matter the target or the presentation order.
"""

from limitlab import GameScenario, Strategy, catalog, run_game

collections = catalog()


def show(scenario):
    outcome = run_game(scenario, collections)
    guesses = [row.output for row in outcome.transcript.rows]
    report = outcome.report
    print(f"  guesses: {guesses[:12]} ...")
    if report.stabilized:
        print(f"  settled on index {report.final_output} from step {report.t_star}")
    else:
        print(
            f"  never correct through the horizon"
            f" (final guess {report.final_output})"
        )


print("tell-tale identifier, multiples collection, target index 6:")
show(GameScenario("demo-tt-mult", "multiples", 6, "telltale", horizon=50))

print()
print("tell-tale identifier, prefix collection, target index 4, shuffled order:")
show(
    GameScenario(
        "demo-tt-prefix",
        "finite_prefixes",
        4,
        "telltale",
        strategy=Strategy("block_shuffle", seed=11, block_growth=2),
        horizon=50,
    )
)

print()
print("consistency-min baseline, multiples collection, target index 2:")
show(GameScenario("demo-cm", "multiples", 2, "consistency_min", horizon=50))
print("  (index 1 is the whole domain: always consistent, never the target)")
