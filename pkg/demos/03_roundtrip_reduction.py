"""The reduction ring: identifier -> detector -> identifier.

Leg (a) runs the tell-tale identifier directly. Leg (b) wraps it into a
detector and tests the target against itself. Leg (c) rebuilds an
identifier out of that detector: each round it keeps the indices still
consistent with the enumeration, asks a pooled per-index detector
whether that index's language overshoots the target, and guesses the
least index passing both filters. The final round's state dump shows
the two filters carving out exactly the target.
"""

from limitlab import Inapplicable, catalog, run_roundtrip

collections = catalog()

for cid, k in (("multiples", 6), ("finite_prefixes", 3)):
    result = run_roundtrip(cid, k, horizon=120, collections=collections)
    legs = result.to_dict()["legs"]
    print(f"{cid}, target index {k}:")
    print(f"  (a) direct identifier    settled at step {legs['identifier']['t_star']}"
          f" on index {legs['identifier']['final_output']}")
    print(f"  (b) detector on target   verdict {legs['detector_on_target']['final_output']}"
          f" from step {legs['detector_on_target']['t_star']}")
    print(f"  (c) reduced identifier   settled at step {legs['reduced_identifier']['t_star']}"
          f" on index {legs['reduced_identifier']['final_output']}")
    state = result.reduced_run.transcript.final_state
    print(f"  final round: consistent={state.consistent[:6]}..."
          f" accepted={state.accepted} guess={state.guess}")
    print(f"  agreement: {result.agreement}")
    print()

print("finite_plus_all has no tell-tale for its first language, so the ring")
print("cannot even be assembled there:")
try:
    run_roundtrip("finite_plus_all", 2, horizon=20, collections=collections)
except Inapplicable as exc:
    print(f"  refused: {exc}")
