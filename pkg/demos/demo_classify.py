"""The tractability dichotomy on the flagship template family.

The promise pair is: satisfiable over the integers with R = {sum = 1 mod 3}
versus satisfiable over Z/n with R = non-constant triples.  The problem is
solvable in polynomial time exactly when 3 divides n.
"""

import os

from monoidpcsp.classify import classify, sandwich_check
from monoidpcsp.model import parse_template

DATA = os.path.join(os.path.dirname(__file__), os.pardir,
                    "src", "monoidpcsp", "data")

with open(os.path.join(DATA, "intro_M.nf")) as fh:
    TZ = parse_template(fh.read())

for n in range(2, 10):
    with open(os.path.join(DATA, f"introN_{n}.mon")) as fh:
        TN = parse_template(fh.read())
    c = classify(TZ, TN)
    line = f"n = {n}: {c.verdict}"
    if c.verdict == "Tractable":
        line += (f"  (witness sends the generator to "
                 f"{c.witness.gen_images[0]}, sandwich relation has "
                 f"{len(c.sandwich.relation)} tuples, "
                 f"validated: {sandwich_check(c, TZ, TN)})")
    print(line)
