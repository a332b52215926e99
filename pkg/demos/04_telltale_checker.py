"""Certifying tell-tales, and certifying their absence.

A tell-tale for L_i is a finite subset of L_i that no family member
strictly between the subset and L_i can contain. The checker either
argues in closed form that a proposed set works for every index of the
family, or produces a violating index whose certificate replays through
the membership oracle alone.

The last section answers an open empirical question: the singleton {i}
is a working tell-tale for the multiples collection, which is exactly
why the tell-tale identifier succeeds there (see demo 02).
"""

from limitlab import catalog, check_angluin, replay_certificate

collections = catalog()


def show(collection, index, telltale=None, bounds=(64, 64)):
    result = check_angluin(collection, index, telltale=telltale, bounds=bounds)
    label = f"{collection.id} index {index}, telltale {list(result.telltale)}"
    print(f"{label}: {result.verdict} [{result.method}]")
    if result.verdict == "violation_certified":
        witness = collection.language(result.witness_index)
        print(f"  witness index {result.witness_index} = {witness.describe()},"
              f" strictness element {result.strictness_element},"
              f" replays: {replay_certificate(collection, result)}")


print("-- prefixes: the canonical tell-tale {i} is exact --")
for i in (1, 5, 32):
    show(collections["finite_prefixes"], i)

print()
print("-- multiples: {i} is exact; a loose set like {8} for the evens is not --")
show(collections["multiples"], 2)
show(collections["multiples"], 2, telltale=[8])

print()
print("-- the full domain inside finite_plus_all defeats every finite tell-tale --")
for telltale in ([], [1, 2, 3], [2, 19]):
    show(collections["finite_plus_all"], 1, telltale=telltale)
