#!/usr/bin/env python3
"""Writes a small MNIST-style IDX fixture: 10 stroke-drawn images each of 1, 4 and 7."""
import random
import struct
import sys
from pathlib import Path

SIZE = 28


def draw_line(img, x0, y0, x1, y1, width):
    steps = 60
    for s in range(steps + 1):
        t = s / steps
        x = x0 + t * (x1 - x0)
        y = y0 + t * (y1 - y0)
        for dy in range(-2, 3):
            for dx in range(-2, 3):
                px, py = int(round(x + dx)), int(round(y + dy))
                if 0 <= px < SIZE and 0 <= py < SIZE:
                    d2 = dx * dx + dy * dy
                    v = max(0.0, 1.0 - d2 / (width * width))
                    img[py][px] = max(img[py][px], v)


def glyph(digit, rng):
    img = [[0.0] * SIZE for _ in range(SIZE)]
    j = lambda: rng.uniform(-1.5, 1.5)
    w = rng.uniform(1.6, 2.4)
    if digit == 1:
        draw_line(img, 14 + j(), 4 + j(), 14 + j(), 23 + j(), w)
        draw_line(img, 14 + j(), 4 + j(), 11 + j(), 8 + j(), w)
    elif digit == 4:
        draw_line(img, 9 + j(), 4 + j(), 7 + j(), 15 + j(), w)
        draw_line(img, 7 + j(), 15 + j(), 20 + j(), 15 + j(), w)
        draw_line(img, 17 + j(), 5 + j(), 17 + j(), 24 + j(), w)
    elif digit == 7:
        draw_line(img, 7 + j(), 5 + j(), 21 + j(), 5 + j(), w)
        draw_line(img, 21 + j(), 5 + j(), 12 + j(), 24 + j(), w)
    return bytes(int(round(255 * v)) for row in img for v in row)


def main(out_dir):
    rng = random.Random(20240611)
    digits = [1, 4, 7] * 10
    images = b"".join(glyph(d, rng) for d in digits)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "fixture-images-idx3-ubyte").write_bytes(
        struct.pack(">IIII", 0x803, len(digits), SIZE, SIZE) + images)
    (out / "fixture-labels-idx1-ubyte").write_bytes(
        struct.pack(">II", 0x801, len(digits)) + bytes(digits))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data")
