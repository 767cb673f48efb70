#!/usr/bin/env python3
# Copyright 2026 The qembed Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#     http://www.apache.org/licenses/LICENSE-2.0
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Build small MNIST IDX files from the digit JSON shipped by the npm `mnist` package.

The npm package stores ~1000 test-set digits per class as pixel/255 values.
Each class is split in file order: the first 70% go to the train files.

    npm pack mnist && tar xzf mnist-*.tgz
    python3 tools/make_mnist_subset.py package/src/digits data/mnist_subset --digits 0 1 8
"""
import argparse
import json
import pathlib
import struct


def write_idx(out_dir, stem, images, labels):
    with open(out_dir / f"{stem}-images-idx3-ubyte", "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, len(images), 28, 28))
        for img in images:
            f.write(bytes(img))
    with open(out_dir / f"{stem}-labels-idx1-ubyte", "wb") as f:
        f.write(struct.pack(">II", 0x00000801, len(labels)))
        f.write(bytes(labels))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("digits_dir", type=pathlib.Path)
    ap.add_argument("out_dir", type=pathlib.Path)
    ap.add_argument("--digits", type=int, nargs="+", default=list(range(10)))
    ap.add_argument("--train-fraction", type=float, default=0.7)
    args = ap.parse_args()

    split = {"train": ([], []), "t10k": ([], [])}
    for d in args.digits:
        raw = json.load(open(args.digits_dir / f"{d}.json"))["data"]
        count = len(raw) // 784
        cut = int(count * args.train_fraction)
        for i in range(count):
            img = [min(255, max(0, round(v * 255))) for v in raw[i * 784:(i + 1) * 784]]
            imgs, labs = split["train" if i < cut else "t10k"]
            imgs.append(img)
            labs.append(d)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for stem, (imgs, labs) in split.items():
        write_idx(args.out_dir, stem, imgs, labs)
        print(f"{stem}: {len(labs)} images")


if __name__ == "__main__":
    main()
