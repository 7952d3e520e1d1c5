"""Deterministic synthetic test images."""

import numpy as np


def note_image(size=256, ink=255.0, paper=0.0):
    """Binary score-like image: staves, note heads, stems and beams.

    Bright marks on a dark ground, about 5% of pixels lit, which matches the
    energy of the classic "note" test image (input SNR near 2.8 dB at sigma 45).
    """
    img = np.full((size, size), paper, dtype=np.float64)
    rr, cc = np.mgrid[0:size, 0:size]
    s = size / 256.0
    staff_tops = [int(40 * s), int(150 * s)]
    gap = max(int(round(8 * s)), 3)
    thick = max(int(round(s)), 1)
    left, right = int(12 * s), size - int(12 * s)
    for top in staff_tops:
        for k in range(5):
            r0 = top + k * gap
            img[r0:r0 + thick, left:right] = ink
        # bar lines
        for c0 in (left, size // 2, right - thick):
            img[top:top + 4 * gap + thick, c0:c0 + thick] = ink

    heads = []
    for j, top in enumerate(staff_tops):
        for k in range(7):
            cx = left + int((22 + 30 * k) * s)
            cy = top + ((k * 3 + j * 2) % 9) * gap // 2
            heads.append((cy, cx))
    ry, rx = max(3.5 * s, 2.0), max(5.0 * s, 3.0)
    for cy, cx in heads:
        img[((rr - cy) / ry) ** 2 + ((cc - cx) / rx) ** 2 <= 1.0] = ink
    stem = int(28 * s)
    for n, (cy, cx) in enumerate(heads):
        c0 = int(cx + rx) - thick
        img[max(cy - stem, 0):cy, c0:c0 + thick] = ink
        if n % 2 == 0 and n + 1 < len(heads) and heads[n + 1][0] // size == cy // size:
            # beam to the next stem
            c1 = int(heads[n + 1][1] + rx)
            img[max(cy - stem, 0):max(cy - stem, 0) + 2 * thick, c0:c1] = ink
    return img


def piecewise_constant_1d(length=64, low=0.0, high=5.0):
    """Step signal: ``low`` on the first half, ``high`` on the second."""
    sig = np.full(length, low, dtype=np.float64)
    sig[length // 2:] = high
    return sig


def blocks_image(size=64):
    """Clean piecewise-constant image of a few overlapping rectangles."""
    img = np.full((size, size), 40.0)
    img[size // 8: size // 2, size // 8: 3 * size // 4] = 200.0
    img[size // 2: 7 * size // 8, size // 4: size // 2] = 120.0
    img[5 * size // 8: 7 * size // 8, 9 * size // 16: 15 * size // 16] = 90.0
    return img


def shipped_note():
    """The 256x256 score fixture as shipped in the package data."""
    from importlib.resources import files

    from epipocs.images import decode_pgm

    return decode_pgm(files("epipocs").joinpath("data/note256.pgm").read_bytes())
