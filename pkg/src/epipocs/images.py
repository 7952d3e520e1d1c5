"""8-bit grayscale image I/O: binary PGM (P5) and PNG."""

from pathlib import Path

import numpy as np

from epipocs.errors import ImageFormatError

_WS = b" \t\r\n"


def _pgm_tokens(data, count):
    """Read ``count`` header integers; returns them and the raster offset."""
    pos, out = 2, []
    while len(out) < count:
        while pos < len(data) and (data[pos] in _WS or data[pos] == ord("#")):
            if data[pos] == ord("#"):
                end = data.find(b"\n", pos)
                pos = len(data) if end < 0 else end + 1
            else:
                pos += 1
        start = pos
        while pos < len(data) and data[pos] not in _WS and data[pos] != ord("#"):
            pos += 1
        tok = data[start:pos]
        if not tok:
            raise ImageFormatError("truncated PGM header")
        if not tok.isdigit():
            raise ImageFormatError(f"malformed PGM header field {tok!r}")
        out.append(int(tok))
    if pos >= len(data) or data[pos] not in _WS:
        raise ImageFormatError("PGM header must end with one whitespace byte")
    return out, pos + 1


def decode_pgm(data):
    """Decode the bytes of a P5 file with maxval 255 into a float64 array."""
    if data[:2] != b"P5":
        raise ImageFormatError("not a binary PGM (missing P5 magic)")
    (width, height, maxval), off = _pgm_tokens(data, 3)
    if width < 1 or height < 1:
        raise ImageFormatError(f"bad PGM size {width}x{height}")
    if maxval != 255:
        raise ImageFormatError(f"only maxval 255 is supported, got {maxval}")
    raster = data[off:off + width * height]
    if len(raster) != width * height:
        raise ImageFormatError(
            f"truncated PGM raster: {len(raster)} of {width * height} bytes")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).astype(np.float64)


def encode_pgm(img):
    """Encode an image as P5 bytes after :func:`to_uint8`."""
    px = to_uint8(img)
    h, w = px.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + px.tobytes()


def to_uint8(img):
    """Round half to even and clip to [0, 255]."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {img.shape}")
    if not np.all(np.isfinite(img)):
        raise ValueError("image contains non-finite entries")
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def read_image(path):
    """Read a P5 PGM or 8-bit grayscale PNG as a float64 array in [0, 255]."""
    path = Path(path)
    data = path.read_bytes()
    if data[:2] == b"P5":
        return decode_pgm(data)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        from PIL import Image

        try:
            with Image.open(path) as im:
                im.load()
                if im.mode != "L":
                    raise ImageFormatError(f"PNG must be 8-bit grayscale, got mode {im.mode}")
                return np.asarray(im, dtype=np.float64)
        except OSError as exc:
            raise ImageFormatError(f"unreadable PNG: {exc}") from exc
    raise ImageFormatError(f"{path}: unsupported format (need P5 PGM or PNG)")


def write_image(path, img):
    """Write ``img`` as PGM, or as PNG when the suffix is ``.png``."""
    path = Path(path)
    if path.suffix.lower() == ".png":
        from PIL import Image

        Image.fromarray(to_uint8(img), mode="L").save(path)
    else:
        path.write_bytes(encode_pgm(img))
