"""Role exchange between the generator family and the normal family.

Passing to the dual submanifold swaps the two matrix families (with a
transpose) and therefore swaps the focal hypersurface with the focal
hypercone.  The transposition convention below is the one that preserves
the symmetry law: (C_j^T * B^a^T) = (B^a * C_j)^T.
"""

from __future__ import annotations

from .system import MatrixSystem


def dualize(sys: MatrixSystem) -> MatrixSystem:
    """The dual system: l* = codim - 1, codim* = l + 1, families swapped.

    C*_a = (B^(a+1))^T for a = 0..codim-1 and B*^b = (C_(b-1))^T for
    b = 1..l+1.  Applying it twice returns the original system exactly.
    """
    return MatrixSystem(
        l=sys.codim - 1,
        r=sys.r,
        codim=sys.l + 1,
        C=tuple(b.transpose() for b in sys.B),
        B=tuple(c.transpose() for c in sys.C),
    )
