import json
import time

from pibase.finite_space import enumerate_topologies, load_space_file
from pibase.invariants import invariants, min_order_table
from pibase.lemma24 import lemma24_bruteforce
from pibase.shapirovskii import def21_check, shapirovskii_build
from pibase.space_oracles import FiniteSpaceOracle, RationalLineOracle

space = load_space_file("tests/fixtures/spaces/two-blocks.json")
print(space)
print(json.dumps(invariants(space, with_min_order=True).to_dict(), indent=2))

time0 = time.time()
table = lemma24_bruteforce(4, n_jobs=-1)
print(table[~table["b_implies_a"]][["topology", "L", "F", "witness"]])
print(time.time() - time0)

spaces = [space for n in range(4) for space in enumerate_topologies(n)]
table = min_order_table(spaces, n_jobs=-1)
print(table[table["star_premise"]])

for oracle in (FiniteSpaceOracle(space), RationalLineOracle()):
    prefix = shapirovskii_build(oracle, max_steps=20)
    report = def21_check(prefix, oracle)
    print(oracle.name, prefix.n_stages, "stages, complete:", prefix.complete)
    print(json.dumps(report.to_dict(), indent=2))
