"""attractorlab: partition polynomials, their zeros, and the zero attractor.

Library layout:

* polygen    - exact coefficients of F_n and Q_n, digit statistics
* solver     - certified simultaneous root finding (Aberth-Ehrlich)
* dilog      - complex dilogarithm, Clausen function, comparison functions
* attractor  - region classification, curve tracing, triple point
* census     - zero families, counting laws, density masses
* asymptote  - circle-method main terms and exact-evaluation checks
* cli        - command-line front end (gen / solve / attractor / census /
               asympt / plot)
"""

from .polygen import (
    DigitStats,
    ExactPolynomial,
    PolyKind,
    digit_stats,
    hardy_ramanujan_estimate,
    partition_coeffs,
    partition_count,
    partition_count_table,
    pentagonal_count_table,
    plane_partition_coeffs,
)
from .solver import (
    ChecksumReport,
    SolverConfig,
    ZeroSet,
    aberth_solve,
    checksum_report,
    horner_eval,
    newton_polish,
)

__version__ = "0.1.0"

__all__ = [
    "DigitStats",
    "ExactPolynomial",
    "PolyKind",
    "digit_stats",
    "hardy_ramanujan_estimate",
    "partition_coeffs",
    "partition_count",
    "partition_count_table",
    "pentagonal_count_table",
    "plane_partition_coeffs",
    "ChecksumReport",
    "SolverConfig",
    "ZeroSet",
    "aberth_solve",
    "checksum_report",
    "horner_eval",
    "newton_polish",
    "__version__",
]
