#!/usr/bin/env python3
"""Regenerates the JSON fixtures in this directory."""

import json
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def region(mode, m, shape, samples, domain, eps=0.0):
    return {
        "version": 1,
        "mode": mode,
        "m": m,
        "n": len(shape),
        "shape": shape,
        "eps": eps,
        "domain": domain,
        "samples": samples,
    }


def line(points_per_node):
    return [{"index": [k], "points": pts} for k, pts in enumerate(points_per_node)]


def real(x):
    return [x]


def write(name, doc):
    with open(os.path.join(HERE, name), "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


EUCLID1 = {"kind": "euclidean", "dim": 1}
EUCLID2 = {"kind": "euclidean", "dim": 2}


def crossing():
    ts = [(k - 10) / 10 for k in range(21)]
    samples = line([sorted([real(t), real(-t)]) for t in ts])
    write("crossing.json", region("sp", 2, [21], samples, EUCLID1))
    lift = [{"index": [k], "points": [real(t), real(-t)]} for k, t in enumerate(ts)]
    write("crossing_lift.json", {"version": 1, "lift": lift})
    mutated = json.loads(json.dumps(lift))
    mutated[15]["points"].reverse()
    write("crossing_lift_mutated.json", {"version": 1, "lift": mutated})
    write("crossing_lift_short.json", {"version": 1, "lift": lift[:-1]})
    with open(os.path.join(HERE, "crossing.json")) as f:
        text = f.read()
    with open(os.path.join(HERE, "truncated.json"), "w") as f:
        f.write(text[: len(text) // 2])


def constant():
    samples = []
    for i in range(3):
        for j in range(3):
            samples.append({"index": [i, j], "points": [real(0.0), real(1.0), real(2.0)]})
    write("constant.json", region("sp", 3, [3, 3], samples, EUCLID1))


def circle(theta):
    return [math.cos(theta), math.sin(theta)]


def pair(theta):
    a = circle(theta)
    b = [-a[0], -a[1]]
    return sorted([a, b])


def antipodal():
    nodes = 64
    samples = line([pair(math.pi * k / (nodes - 1)) for k in range(nodes)])
    write("antipodal.json", region("sp", 2, [nodes], samples, EUCLID2))


def support_jump():
    pts = []
    for k in range(11):
        t = k / 10
        pts.append([real(0.0)] if k == 0 else [real(-t), real(t)])
    write("support_jump.json", region("f", 2, [11], line(pts), EUCLID1))


def braid():
    deg = {(0, 0): 0, (1, 0): 45, (0, 1): 135, (1, 1): 90}
    samples = [{"index": [i, j], "points": pair(math.radians(deg[(i, j)]))} for i in range(2) for j in range(2)]
    write("braid.json", region("sp", 2, [2, 2], samples, EUCLID2))


def interior():
    # equally fine patterns {{0,1},{2}} and {{0},{1,2}} alternate, so every node passes
    a = [real(0.0), real(0.0), real(1.0)]
    b = [real(0.0), real(1.0), real(1.0)]
    write("alternating.json", region("sp", 3, [7], line([a if k % 2 == 0 else b for k in range(7)]), EUCLID1))
    pts = []
    for k in range(13):
        d = abs(k - 6) / 10
        pts.append([real(0.0), real(0.0)] if 5 <= k <= 7 else [real(-d), real(d)])
    write("diagonal_run.json", region("sp", 2, [13], line(pts), EUCLID1))


def labels():
    pts = [["a", "b"], ["a", "b"], ["a", "a"], ["a", "c"]]
    write("labels.json", region("sp", 2, [4], line(pts), {"kind": "labels"}))


if __name__ == "__main__":
    crossing()
    constant()
    antipodal()
    support_jump()
    braid()
    interior()
    labels()
