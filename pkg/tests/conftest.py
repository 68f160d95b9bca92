import itertools

import pytest

from quadseq.seqcore import SeqQuadruple, verify_quadruple
from quadseq.search import SearchSpec, search


@pytest.fixture(scope="session")
def solutions():
    """Memoized full search output, shared so repeated orders cost once."""
    cache = {}

    def run(kind, order):
        key = (kind, order)
        if key not in cache:
            cache[key] = search(SearchSpec(kind, order)).solutions
        return cache[key]

    return run


@pytest.fixture(scope="session")
def small_bs_members():
    """All base-sequence members with both lengths <= 4, by exhaustion."""
    members = []
    for m in range(0, 5):
        for n in range(0, 5):
            for a in itertools.product((1, -1), repeat=m):
                for b in itertools.product((1, -1), repeat=m):
                    for c in itertools.product((1, -1), repeat=n):
                        for d in itertools.product((1, -1), repeat=n):
                            quad = SeqQuadruple(a, b, c, d, "bs")
                            if verify_quadruple(quad):
                                members.append(quad)
    return members
