"""Regenerate the bundled CSV datasets under data/.

iris.csv            UCI Iris (150 x 4) with string species labels.
digits_embed10.csv  10-dimensional embedding of the 8x8 handwritten digits
                    (1797 images, 10 classes), one PCA projection fitted on all
                    images. Stand-in for an MNIST encoder embedding.
"""
import os

import numpy as np
from sklearn.datasets import load_digits, load_iris
from sklearn.decomposition import PCA

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "data")


def write_iris():
    iris = load_iris()
    names = ["sepal_length", "sepal_width", "petal_length", "petal_width"]
    with open(os.path.join(OUT, "iris.csv"), "w") as f:
        f.write(",".join(names + ["species"]) + "\n")
        for row, y in zip(iris.data, iris.target):
            f.write(",".join(f"{v:g}" for v in row) + "," + iris.target_names[y] + "\n")


def write_digits():
    digits = load_digits()
    z = PCA(n_components=10, random_state=0).fit_transform(digits.data / 16.0)
    with open(os.path.join(OUT, "digits_embed10.csv"), "w") as f:
        f.write(",".join([f"e{j}" for j in range(10)] + ["label"]) + "\n")
        for row, y in zip(z, digits.target):
            f.write(",".join(f"{v:.6f}" for v in row) + f",{y}\n")


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    write_iris()
    write_digits()
