#!/usr/bin/env python3
"""Regenerates the small evaluation fixture under tests/data.

dataset/alpha   20 frames of rotated boxes written as 8 corner coordinates
dataset/bravo   20 frames of axis-aligned boxes written as x,y,w,h
results/perfect copies of the ground truth
results/twin    same regions written differently (corner order shifted by two
                for alpha, 4-number boxes expanded to corners for bravo)
results/drift   perturbed regions with a few failure lines

Numbers are written in shortest round-trip form so that parsing and
re-serialising a file reproduces it byte for byte.
"""
import math
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent
FRAMES = 20


def fmt(v):
    v = round(v, 2)
    if v == 0:
        v = 0.0
    s = repr(v)
    return s[:-2] if s.endswith(".0") else s


def line(values):
    return ",".join(fmt(v) for v in values)


def corners(cx, cy, w, h, theta):
    c, s = math.cos(math.radians(theta)), math.sin(math.radians(theta))
    local = [(-w / 2, -h / 2), (w / 2, -h / 2), (w / 2, h / 2), (-w / 2, h / 2)]
    out = []
    for x, y in local:
        out += [cx + x * c - y * s, cy + x * s + y * c]
    return out


def alpha_box(i):
    return 100 + 3 * i, 80 + 1.5 * i, 40 + 0.5 * i, 20, 10 + 2 * i


def bravo_box(i):
    return 50 + 2 * i, 60 - i, 30, 45 + 0.5 * i


def write(path, lines):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(l + "\n" for l in lines))


def main():
    alpha_gt = [[round(v, 2) for v in corners(*alpha_box(i))] for i in range(FRAMES)]
    bravo_gt = [list(bravo_box(i)) for i in range(FRAMES)]

    write(ROOT / "dataset" / "list.txt", ["alpha", "bravo"])
    write(ROOT / "dataset" / "alpha" / "groundtruth.txt", [line(q) for q in alpha_gt])
    write(ROOT / "dataset" / "bravo" / "groundtruth.txt", [line(b) for b in bravo_gt])

    write(ROOT / "results" / "perfect" / "alpha.txt", [line(q) for q in alpha_gt])
    write(ROOT / "results" / "perfect" / "bravo.txt", [line(b) for b in bravo_gt])

    write(ROOT / "results" / "twin" / "alpha.txt", [line(q[4:] + q[:4]) for q in alpha_gt])
    write(ROOT / "results" / "twin" / "bravo.txt",
          [line([x, y, x + w, y, x + w, y + h, x, y + h]) for x, y, w, h in bravo_gt])

    alpha_drift = []
    for i in range(FRAMES):
        if i == 7:
            alpha_drift.append("2")
        elif i == 13:
            alpha_drift.append("0")
        else:
            cx, cy, w, h, th = alpha_box(i)
            alpha_drift.append(line(corners(cx + 0.7 * (i % 5), cy - 0.4 * (i % 3), w * 1.1, h * 0.9, th + 5)))
    write(ROOT / "results" / "drift" / "alpha.txt", alpha_drift)

    bravo_drift = []
    for i, (x, y, w, h) in enumerate(bravo_gt):
        if i == 10:
            bravo_drift.append("1")
        else:
            bravo_drift.append(line([x + 1.5 * (i % 4), y + 0.5 * (i % 6), w + 2, h - 3]))
    write(ROOT / "results" / "drift" / "bravo.txt", bravo_drift)


if __name__ == "__main__":
    main()
