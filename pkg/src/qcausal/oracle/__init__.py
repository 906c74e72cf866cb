"""Independent verification layer: brute-force statistics and claim checks.

``brute`` recomputes everything from eigendecomposed projectors and explicit
Born probabilities and never touches the closed forms; ``claims`` pits the
module formulas against it.
"""

from .brute import brute_joint, brute_stat
from .claims import ClaimReport, claim_ids, verify_all, verify_claim

__all__ = [
    "ClaimReport",
    "brute_joint",
    "brute_stat",
    "claim_ids",
    "verify_all",
    "verify_claim",
]
