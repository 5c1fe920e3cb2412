# Copyright 2026 The exgraph Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes gold.jsonl and generated.jsonl for the preference-pair tests.

Samples 0-29 get a generation equal to the reference up to triple order,
spacing and case. The other 70 differ in content: a missing or extra
triple, a changed relation, a flipped stance, or a truncated string.

    python3 make_fixture.py
"""

import json
import random

CONCEPTS = ["solar power", "clean energy", "lower bills", "public health",
            "free markets", "innovation", "jobs", "education", "poverty",
            "crime", "safety", "privacy", "surveillance", "freedom",
            "animal testing", "medicine", "cruelty", "tourism", "pollution",
            "remote work"]
RELATIONS = ["causes", "capable of", "is a", "part of", "used for",
             "desires", "not desires", "has context", "synonym of",
             "antonym of"]


def surface(stance, triples):
    return stance + " " + "".join(f"({h}; {r}; {t})" for h, r, t in triples)


def main():
    rng = random.Random(7)
    gold, generated = [], []
    for i in range(100):
        nodes = rng.sample(CONCEPTS, 4)
        triples = [(nodes[k], rng.choice(RELATIONS), nodes[k + 1])
                   for k in range(3)]
        stance = rng.choice(["support", "counter"])
        sid = f"p{i:03d}"
        gold.append({"id": sid, "belief": f"{nodes[0]} matters.",
                     "argument": f"{nodes[-1]} follows.", "stance": stance,
                     "graph": "".join(f"({h}; {r}; {t})" for h, r, t in triples)})
        if i < 30:
            shuffled = triples[:]
            while shuffled == triples:
                rng.shuffle(shuffled)
            out = surface(stance, shuffled)
            if i % 3 == 1:
                out = out.upper().replace("SUPPORT", "support").replace(
                    "COUNTER", "counter")
            if i % 3 == 2:
                out = out.replace("; ", " ;   ")
        else:
            kind = i % 5
            if kind == 0:
                out = surface(stance, triples[:2])
            elif kind == 1:
                extra = (nodes[3], "causes", rng.choice(
                    [c for c in CONCEPTS if c not in nodes]))
                out = surface(stance, triples + [extra])
            elif kind == 2:
                h, r, t = triples[1]
                other = next(x for x in RELATIONS if x != r)
                out = surface(stance, [triples[0], (h, other, t), triples[2]])
            elif kind == 3:
                flip = "counter" if stance == "support" else "support"
                out = surface(flip, triples)
            else:
                out = surface(stance, triples)[:-7]
        generated.append({"id": sid, "output": out})
    with open("gold.jsonl", "w") as f:
        for row in gold:
            f.write(json.dumps(row) + "\n")
    with open("generated.jsonl", "w") as f:
        for row in generated:
            f.write(json.dumps(row) + "\n")


if __name__ == "__main__":
    main()
