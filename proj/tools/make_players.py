#!/usr/bin/env python3
# Copyright 2026 The IEMA Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the bundled synthetic football-player dataset and its models.

Outputs (in --out, default data/):
  players.csv           400 players, target "value" in millions
  players.json          load config
  players_gbm.json      gradient-boosted regression trees (model-spec 1)
  players_linear.json   linear model with the generating weights
"""

import argparse
import csv
import json
import math
import os
import random

FOOT = ["left", "right"]
POSITION = ["defender", "forward", "goalkeeper", "midfielder"]
FEATURES = ["age", "overall", "potential", "reactions", "stamina", "foot",
            "position"]
POSITION_EFFECT = {"defender": -2.0, "forward": 3.0, "goalkeeper": -4.0,
                   "midfielder": 0.5}


def generate(n, seed):
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        age = rng.randint(17, 37)
        overall = max(45.0, min(92.0, rng.gauss(68, 7)))
        # Young players carry potential above their current rating.
        lift = max(0.0, (27 - age) * rng.uniform(0.4, 1.1))
        potential = min(95.0, overall + lift)
        reactions = max(30.0, min(95.0, overall + rng.gauss(0, 5)))
        stamina = max(25.0, min(95.0, rng.gauss(70, 10) - max(0, age - 30) * 2))
        foot = "left" if rng.random() < 0.25 else "right"
        position = rng.choice(POSITION)
        value = (0.9 * (overall - 65) + 0.35 * (potential - overall)
                 + 0.15 * (reactions - 68) - 0.25 * (age - 26)
                 + POSITION_EFFECT[position] + 0.02 * (stamina - 70)
                 + 0.02 * max(0.0, overall - 75) ** 2)
        value = max(0.1, 10.0 + value + rng.gauss(0, 1.0))
        rows.append({"age": age, "overall": round(overall, 1),
                     "potential": round(potential, 1),
                     "reactions": round(reactions, 1),
                     "stamina": round(stamina, 1), "foot": foot,
                     "position": position, "value": round(value, 2)})
    return rows


def best_split(rows, residuals, indices, min_leaf):
    """Squared-error split over all features; categoricals by sorted means."""
    total = sum(residuals[i] for i in indices)
    count = len(indices)
    best = None
    for feature in FEATURES:
        if feature in ("foot", "position"):
            levels = sorted({rows[i][feature] for i in indices})
            means = {}
            for level in levels:
                members = [residuals[i] for i in indices
                           if rows[i][feature] == level]
                means[level] = sum(members) / len(members)
            ordered = sorted(levels, key=lambda l: (means[l], l))
            for k in range(1, len(ordered)):
                left_levels = set(ordered[:k])
                left = [i for i in indices if rows[i][feature] in left_levels]
                if len(left) < min_leaf or count - len(left) < min_leaf:
                    continue
                s = sum(residuals[i] for i in left)
                gain = s * s / len(left) + (total - s) ** 2 / (count - len(left))
                if best is None or gain > best[0] + 1e-12:
                    best = (gain, feature, sorted(left_levels))
            continue
        ordered = sorted(indices, key=lambda i: rows[i][feature])
        s = 0.0
        for k in range(1, count):
            s += residuals[ordered[k - 1]]
            a = rows[ordered[k - 1]][feature]
            b = rows[ordered[k]][feature]
            if a == b or k < min_leaf or count - k < min_leaf:
                continue
            gain = s * s / k + (total - s) ** 2 / (count - k)
            if best is None or gain > best[0] + 1e-12:
                best = (gain, feature, (a + b) / 2)
    return best


def fit_tree(rows, residuals, depth, min_leaf, learning_rate):
    nodes = []

    def grow(indices, level):
        node = len(nodes)
        nodes.append(None)
        mean = sum(residuals[i] for i in indices) / len(indices)
        split = None
        if level < depth:
            split = best_split(rows, residuals, indices, min_leaf)
        if split is None:
            nodes[node] = {"value": round(learning_rate * mean, 6)}
            return node
        _, feature, rule = split
        if isinstance(rule, list):
            go_left = lambda r: r[feature] in rule
        else:
            go_left = lambda r: r[feature] <= rule
        left = [i for i in indices if go_left(rows[i])]
        right = [i for i in indices if not go_left(rows[i])]
        entry = {"var": feature}
        if isinstance(rule, list):
            entry["levels"] = rule
        else:
            entry["threshold"] = rule
        nodes[node] = entry
        entry["left"] = grow(left, level + 1)
        entry["right"] = grow(right, level + 1)
        return node

    grow(list(range(len(rows))), 0)
    return nodes


def predict(nodes, row):
    node = nodes[0]
    while "value" not in node:
        feature = node["var"]
        if "levels" in node:
            left = row[feature] in node["levels"]
        else:
            left = row[feature] <= node["threshold"]
        node = nodes[node["left"] if left else node["right"]]
    return node["value"]


def boost(rows, n_trees, depth, learning_rate):
    target = [r["value"] for r in rows]
    base = round(sum(target) / len(target), 6)
    trees = [{"nodes": [{"value": base}]}]
    current = [base] * len(rows)
    for _ in range(n_trees):
        residuals = [t - c for t, c in zip(target, current)]
        nodes = fit_tree(rows, residuals, depth, 10, learning_rate)
        trees.append({"nodes": nodes})
        current = [c + predict(nodes, r) for c, r in zip(current, rows)]
    return {"model-spec": 1, "type": "tree_ensemble", "id": "players_gbm",
            "task": "regression", "aggregation": "sum", "trees": trees}


def linear_model():
    # The smooth part of the generating function, linearized.
    return {"model-spec": 1, "type": "linear", "id": "players_linear",
            "link": "identity",
            "intercept": 10.0 - 0.9 * 65 - 0.15 * 68 + 0.25 * 26 - 0.02 * 70,
            "weights": {"age": -0.25, "overall": 0.9 - 0.35,
                        "potential": 0.35, "reactions": 0.15,
                        "stamina": 0.02,
                        "foot": {"left": 0.0, "right": 0.0},
                        "position": POSITION_EFFECT}}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data")
    parser.add_argument("--rows", type=int, default=400)
    parser.add_argument("--seed", type=int, default=20)
    parser.add_argument("--trees", type=int, default=40)
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)
    rows = generate(args.rows, args.seed)
    with open(os.path.join(args.out, "players.csv"), "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=FEATURES + ["value"],
                                lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    config = {"name": "players", "target": "value",
              "types": {"foot": "categorical", "position": "categorical"},
              "seed": args.seed}
    models = {"players.json": config,
              "players_gbm.json": boost(rows, args.trees, 3, 0.2),
              "players_linear.json": linear_model()}
    for name, document in models.items():
        with open(os.path.join(args.out, name), "w") as f:
            json.dump(document, f, indent=1, sort_keys=True)
            f.write("\n")


if __name__ == "__main__":
    main()
