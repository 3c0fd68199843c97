#!/usr/bin/env python3
"""Writes a small synthetic procedure file for the CLI tests.

Each step paints one or two tiles of one column, with an instruction the
naive baseline can parse about half of the time.
"""
import argparse
import json
import random

COLORS = ["red", "orange", "yellow", "green", "blue", "purple", "black"]
ORDINALS = ["first", "second", "third", "4th", "5th", "6th", "7th", "8th", "9th", "10th"]


def step(rng, index):
    col = rng.randint(1, 18)
    rows = sorted(rng.sample(range(1, 11), rng.randint(1, 2)))
    color = rng.choice(COLORS)
    if len(rows) == 1 and rng.random() < 0.5:
        text = f"In column {col} color the {ORDINALS[rows[0] - 1]} tile {color}"
    elif len(rows) == 2 and rng.random() < 0.5:
        text = f"In column {col} color tiles {rows[0]} and {rows[1]} {color}"
    else:
        text = f"Put some {color} near the middle of column {col}."
    return {"index": index, "instruction": text, "actions": [[col, r, color] for r in rows]}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--procedures", type=int, default=20)
    ap.add_argument("--images", type=int, default=10)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for i in range(args.procedures):
        steps = []
        used = set()
        while len(steps) < 3:
            s = step(rng, len(steps) + 1)
            tiles = {(c, r) for c, r, _ in s["actions"]}
            if tiles & used:
                continue
            used |= tiles
            steps.append(s)
        rec = {"author_role": "instructor", "id": f"p{i + 1:02d}",
               "image_id": f"img{i % args.images + 1}", "steps": steps}
        print(json.dumps(rec, sort_keys=True, separators=(",", ":")))


if __name__ == "__main__":
    main()
