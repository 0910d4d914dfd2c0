import pytest

from faultfuse.corpus import SyntheticSpec, generate_synthetic
from faultfuse.features import assemble_features

# the classic mid() fixture: 14 statements, one seeded bug
TABLE2_LINES = [
    "int x, y, z, m;",
    "input x, y, z;",
    "m = z;",
    "if (y < z)",
    "    if (x < y)",
    "        m = y;",
    "    else if (x < z)",
    "        m = y; //bug",
    "else",
    "    if (x > y)",
    "        m = y;",
    "    else if (x > z)",
    "        m = x;",
    'print("Median:", m);',
]

# (branch paths, variables, symbols) per statement
TABLE2_TRIPLES = [
    (3, 4, 4),
    (3, 3, 3),
    (3, 2, 2),
    (3, 2, 3),
    (2, 2, 3),
    (1, 2, 2),
    (2, 2, 3),
    (1, 2, 2),
    (3, 0, 0),
    (2, 2, 3),
    (1, 2, 2),
    (2, 2, 3),
    (1, 2, 2),
    (3, 1, 7),
]


@pytest.fixture(scope="session")
def median3_dataset():
    return generate_synthetic(SyntheticSpec(template="median3", n_tests=100, seed=7))


@pytest.fixture(scope="session")
def median3_matrix(median3_dataset):
    return assemble_features(median3_dataset)
