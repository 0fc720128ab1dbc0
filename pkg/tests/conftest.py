import itertools

import numpy as np
import pytest

from hyperhaar import FamilySpec, build_family


def s3_table():
    """S3 multiplication table, elements in lexicographic order (independent copy)."""
    elems = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(elems)}
    n = len(elems)
    table = np.zeros((n, n), dtype=int)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            table[i, j] = index[tuple(p[x] for x in q)]
    return table, elems, index


BUNDLED = {
    "Z4": FamilySpec.parse("cyclic", "4"),
    "Z8": FamilySpec.parse("cyclic", "8"),
    "theta-0.1": FamilySpec.parse("theta2", "0.1"),
    "theta-0.5": FamilySpec.parse("theta2", "0.5"),
    "theta-1": FamilySpec.parse("theta2", "1"),
    "S3-classes": FamilySpec.parse("conj-class", "s3"),
    "cosine-3": FamilySpec.parse("cosine-grid", "3"),
    "cosine-5": FamilySpec.parse("cosine-grid", "5"),
    "Z2xtheta-0.5": FamilySpec.parse("product", "cyclic:2,theta2:0.5"),
}


@pytest.fixture(params=sorted(BUNDLED), ids=sorted(BUNDLED))
def bundled(request):
    return build_family(BUNDLED[request.param])
