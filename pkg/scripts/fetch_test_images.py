"""Rebuild tests/data/standard/*.pgm from public source distributions on PyPI.

Each image is pulled out of a released package archive and stored as an 8-bit
P5 PGM. Run from the repository root: ``python scripts/fetch_test_images.py``.
"""

import io
import pickle
import re
import sys
import tarfile
import urllib.request
from pathlib import Path

import numpy as np
from PIL import Image

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
from epipocs.images import write_image  # noqa: E402

INDEX = "https://pypi.org/simple/{}/"

# name -> (project, sdist filename, member inside the archive, decoder)
SOURCES = {
    "lena": ("scipy", "scipy-0.16.1.tar.gz", "scipy-0.16.1/scipy/misc/lena.dat", "pickle"),
    "cameraman": ("bm3d", "bm3d-4.0.3.tar.gz", "bm3d-4.0.3/examples/cameraman256.png", "image"),
    "mandrill": ("opencv-python", "opencv_python-5.0.0.93.tar.gz",
                 "opencv_python-5.0.0.93/opencv/samples/data/baboon.jpg", "image"),
}


def sdist_url(project, filename):
    html = urllib.request.urlopen(INDEX.format(project)).read().decode()
    for href in re.findall(r'href="([^"]+)"', html):
        if href.split("#")[0].endswith("/" + filename):
            # mirrors may hand back relative links; the file host is stable
            path = href.split("#")[0]
            return "https://files.pythonhosted.org/" + path[path.index("packages/"):]
    raise LookupError(f"{filename} not listed for {project}")


def extract(name, out_dir):
    project, filename, member, kind = SOURCES[name]
    url = sdist_url(project, filename)
    print(f"{name}: {url}")
    data = urllib.request.urlopen(url).read()
    with tarfile.open(fileobj=io.BytesIO(data)) as tar:
        raw = tar.extractfile(member).read()
    if kind == "pickle":
        img = np.asarray(pickle.loads(raw, encoding="latin1"), dtype=np.float64)
    else:
        img = np.asarray(Image.open(io.BytesIO(raw)).convert("L"), dtype=np.float64)
    write_image(out_dir / f"{name}.pgm", img)


def main():
    out_dir = Path("tests/data/standard")
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in SOURCES:
        extract(name, out_dir)


if __name__ == "__main__":
    main()
