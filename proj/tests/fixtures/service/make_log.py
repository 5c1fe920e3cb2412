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

"""Writes requests.jsonl, the 1000-line service replay log.

The golden responses are produced once by the service itself and checked
in as responses.jsonl:

    python3 make_log.py
    exgraph serve < requests.jsonl > responses.jsonl
"""

import json
import random

CONCEPTS = ["social media", "connection", "people", "globally", "exercise",
            "good health", "cannabis", "pain relief", "legalized", "zoos",
            "small cages", "suffering", "banned", "free speech", "the law"]
RELATIONS = ["causes", "capable of", "is a", "part of", "used for", "desires",
             "not desires", "has context", "created by", "antonym of"]
COPA_RELATIONS = ["Causes", "CapableOf", "IsA", "UsedFor", "HasProperty",
                  "AtLocation", "MotivatedByGoal"]


def explagraph(rng, stance=None):
    nodes = rng.sample(CONCEPTS, rng.randint(2, 5))
    triples = []
    for _ in range(rng.randint(1, 5)):
        h, t = rng.sample(nodes, 2)
        triples.append(f"({h}; {rng.choice(RELATIONS)}; {t})")
    return (stance or rng.choice(["support", "counter"])) + " " + "".join(triples)


def copasse(rng, answer=None):
    nodes = rng.sample(CONCEPTS, rng.randint(2, 4))
    triples = []
    for _ in range(rng.randint(1, 4)):
        h, t = rng.sample(nodes, 2)
        triples.append(f"[{h}, {rng.choice(COPA_RELATIONS)}, {t}]")
    return (answer or rng.choice(["a", "b"])) + " [" + ", ".join(triples) + "]"


def perturb(rng, surface):
    r = rng.random()
    if r < 0.3:
        return surface
    if r < 0.4:
        return surface[: rng.randint(1, len(surface) - 1)]
    if r < 0.5:
        return surface.upper()
    return None


def text(rng):
    return " ".join(rng.sample(CONCEPTS, 4)) + "."


def request(rng, i):
    kind = rng.random()
    if kind < 0.03:
        return '{"id": %d, "op": "score", "pred": ' % i
    if kind < 0.05:
        return json.dumps({"id": i, "op": rng.choice(["rank", "", "SCORE"])})
    if kind < 0.06:
        return json.dumps([i, "score"])
    copa = rng.random() < 0.25
    task = "copasse" if copa else "explagraph"
    gold = copasse(rng) if copa else explagraph(rng)
    pred = perturb(rng, gold) or (copasse(rng) if copa else explagraph(rng))
    req = {"id": i if rng.random() < 0.9 else f"r{i}", "task": task}
    op = rng.choices(["score", "reward", "validate", "similarity"],
                     [4, 4, 1, 1])[0]
    req["op"] = op
    if op == "similarity":
        req["pred"] = " ".join(rng.sample(CONCEPTS, 3))
        req["gold"] = " ".join(rng.sample(CONCEPTS, 3))
        return json.dumps(req)
    req["pred"] = pred
    if op == "validate":
        req["task"] = "explagraph"
        req["pred"] = explagraph(rng)
        req["belief"] = text(rng)
        req["argument"] = text(rng)
        return json.dumps(req)
    if rng.random() < 0.05:
        req.pop("pred")
    else:
        req["gold"] = gold
    if op == "score":
        if copa:
            req["premise"] = text(rng)
            req["option_a"] = text(rng)
            req["option_b"] = text(rng)
        else:
            req["belief"] = text(rng)
            req["argument"] = text(rng)
        if rng.random() < 0.2:
            req["config"] = {"gate_on_label": rng.random() < 0.5}
        if rng.random() < 0.02:
            req["config"] = {"alpha": 0.5}
        return json.dumps(req)
    # reward
    if rng.random() < 0.5:
        req["r_model"] = round(rng.random(), 3)
    if rng.random() < 0.5:
        n = rng.randint(1, 6)
        req["logp_policy"] = [round(-3 * rng.random(), 4) for _ in range(n)]
        m = n if rng.random() < 0.95 else n + 1
        req["logp_reference"] = [round(-3 * rng.random(), 4) for _ in range(m)]
    if rng.random() < 0.6:
        cfg = {}
        if rng.random() < 0.5:
            cfg["alpha"] = rng.choice([0.0, 0.3, 0.5, 0.9, 1.0, 1.5])
        if rng.random() < 0.5:
            cfg["beta"] = rng.choice([0.0, 0.1, 0.3, 1.0])
        if rng.random() < 0.4:
            cfg["metric"] = rng.choice(["G-BS", "G-BL", "G-RO", "GED"])
        if rng.random() < 0.4:
            cfg["aggregation"] = rng.choice(
                ["weighted", "unweighted", "model_only", "metric_only"])
        if rng.random() < 0.1:
            cfg["normalization"] = rng.choice(["clip01", "zscore-window"])
        req["config"] = cfg
    return json.dumps(req)


def main():
    rng = random.Random(20261018)
    with open("requests.jsonl", "w") as f:
        for i in range(1000):
            f.write(request(rng, i) + "\n")


if __name__ == "__main__":
    main()
