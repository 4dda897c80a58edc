"""Degraded-read-friendly (k+2, k) MDS array codes with two symbols per node.

Encode/decode, low-bandwidth single-node repair with download and access
accounting, degraded reads, lower-bound calculators and a brute-force
repair oracle.
"""

__version__ = "0.1.0"

from .codes import (  # noqa: E402
    C1,
    C2,
    C2GEN,
    Code,
    Codeword,
    build_c1,
    build_c2,
    build_c2_general,
    decode_erasures,
    encode_systematic,
    verify_mds,
)
from .gf import Field, binary_field, make_field, prime_field  # noqa: E402
from .repair import (  # noqa: E402
    ACCESS,
    BANDWIDTH,
    average_metrics,
    degraded_read,
    helper_extract,
    make_plan,
    measure,
    repair_from_codeword,
    repair_matrix,
    repair_node,
)

__all__ = [
    "C1", "C2", "C2GEN", "Code", "Codeword", "build_c1", "build_c2", "build_c2_general",
    "decode_erasures", "encode_systematic", "verify_mds", "Field", "binary_field",
    "make_field", "prime_field", "ACCESS", "BANDWIDTH", "average_metrics", "degraded_read",
    "helper_extract", "make_plan", "measure", "repair_from_codeword", "repair_matrix", "repair_node",
]
