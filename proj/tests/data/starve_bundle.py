"""Strip the edges of half the vertices of the first two clusters of a bundle."""
import json
import random
import sys

src, dst = sys.argv[1], sys.argv[2]
bundle = json.load(open(src))
lks = bundle["lks"]
clusters = lks["L"] + lks["S"]
random.seed(1)
cut = set()
for c in (0, 1):
    cut |= set(random.sample(clusters[c], len(clusters[c]) // 2))
lks["host"]["edges"] = [e for e in lks["host"]["edges"] if e[0] not in cut and e[1] not in cut]
json.dump(bundle, open(dst, "w"))
