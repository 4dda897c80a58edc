import random

import pytest

from drfcodes.codes import build_c1, build_c2, build_c2_general
from drfcodes.gf import binary_field, prime_field

# (label, builder, strategies) for the configurations exercised across modules
CODE_CASES = [
    ("c1-m1-gf4", lambda: build_c1(1, binary_field(2)), ("bandwidth",)),
    ("c1-m2-gf16", lambda: build_c1(2, binary_field(4)), ("bandwidth",)),
    ("c1-m3-gf256", lambda: build_c1(3, binary_field(8)), ("bandwidth",)),
    ("c2-m2-gf4", lambda: build_c2(2, binary_field(2), [0, 2]), ("bandwidth", "access")),
    ("c2-m3-gf16", lambda: build_c2(3, binary_field(4)), ("bandwidth", "access")),
    ("c2-m2-gf7", lambda: build_c2(2, prime_field(7), [0, 2]), ("bandwidth", "access")),
    ("c2-m3-gf11", lambda: build_c2(3, prime_field(11)), ("bandwidth", "access")),
    ("c2gen-321-gf8", lambda: build_c2_general(3, 2, 1, binary_field(3)), ("bandwidth", "access")),
    ("c2gen-142-gf13", lambda: build_c2_general(1, 4, 2, prime_field(13)), ("bandwidth", "access")),
]


@pytest.fixture(params=CODE_CASES, ids=[c[0] for c in CODE_CASES])
def code_case(request):
    label, build, strategies = request.param
    return build(), strategies


@pytest.fixture
def rng():
    return random.Random(20241015)
