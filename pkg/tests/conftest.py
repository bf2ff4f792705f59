"""Shared fixtures: the worked three-string demo dataset and small builders."""
import pytest

from awci.model import Alphabet, Dataset, build_string

# Three indeterminate strings with one conserved region (the "demo" dataset):
# at delta=1, quorum=3, min_size=6 exactly one closed set exists,
# {S1:1-8, S2:2-7, S3:1-8}, with one indel per member pair.
DEMO_S1 = [["g"], ["b", "p"], ["x"], ["n", "p"], ["d", "o", "s"], ["a", "z"],
           ["e", "w"], ["f"], ["v", "l"], ["h", "u", "z"], ["j", "r"], ["k"]]
DEMO_S2 = [["c", "k"], ["f", "n", "p"], ["w"], ["b", "d"], ["x"], ["c", "l", "m"],
           ["a", "g"], ["r"], ["a", "w", "x"], ["p"], ["f", "z"]]
DEMO_S3 = [["d"], ["g", "b"], ["a"], ["p", "s"], ["n"], ["a", "b"], ["f", "m", "w"],
           ["e", "w"], ["k"], ["j", "u"], ["h"], ["c", "r"], ["z"]]


def make_dataset(*specs):
    """specs: (id, positions[, breaks]) tuples; positions are label lists."""
    alphabet = Alphabet()
    strings = []
    for spec in specs:
        sid, positions = spec[0], spec[1]
        breaks = spec[2] if len(spec) > 2 else ()
        strings.append(build_string(alphabet, sid, positions, breaks))
    return Dataset(strings, alphabet)


@pytest.fixture(scope="session")
def demo():
    return make_dataset(("S1", DEMO_S1), ("S2", DEMO_S2), ("S3", DEMO_S3))


@pytest.fixture(scope="session")
def witness():
    """Closedness is not hereditary: {S1:1-2, S2:1-3, S3:1-2} is closed at
    delta=1 but its subset {S1:1-2, S2:1-3} is not (S1 position 3 = {c}
    intersects C(S2[1,3]))."""
    return make_dataset(
        ("S1", [["a"], ["b"], ["c"]]),
        ("S2", [["a"], ["b"], ["c"]]),
        ("S3", [["a"], ["b"]]),
    )


def labels_of(dataset, char_ids):
    return {dataset.alphabet.label(c) for c in char_ids}
