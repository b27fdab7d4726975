"""Builders for the two bundled applications: Sierpinski spin order and
integer factorization.

Both construct canonical integer polynomials ready for the graph compiler.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .poly import Polynomial, PolyBuilder, poly_mul


def build_sierpinski_hubo(triangles: Sequence[tuple[str, str, str]]) -> Polynomial:
    """Cost function whose ground states carry odd parity on every triangle.

    Each triangle (j, k, l) contributes

        -4 n_j n_k n_l + 2 (n_j n_k + n_k n_l + n_j n_l) - n_j - n_k - n_l,

    the occupation-number form of a ferromagnetic three-spin coupling: the
    per-triangle minimum is -1, attained exactly on the four odd-parity
    configurations. Shared vertices accumulate coefficients across triangles.
    """
    b = PolyBuilder()
    for tri in triangles:
        j, k, l = tri
        if len({j, k, l}) != 3:
            raise ValueError(f"degenerate triangle {tri!r}: vertices must be distinct")
        b.add_term([j, k, l], -4)
        b.add_term([j, k], 2)
        b.add_term([k, l], 2)
        b.add_term([j, l], 2)
        b.add_term([j], -1)
        b.add_term([k], -1)
        b.add_term([l], -1)
    return b.build()


def _bit_names(prefix: str, width: int) -> list[str]:
    # High bit first, so unclamped variables appear most-significant first.
    return [f"{prefix}{i}" for i in range(width - 1, -1, -1)]


def build_factorization_hubo(
    n: int,
    p_bits: int,
    q_bits: int,
    clamped: Mapping[str, int] | None = None,
) -> Polynomial:
    """Perfect-square cost [n - P*Q]^2 over the binary digits of P and Q.

    P and Q are little-endian bit vectors named P0..P{p_bits-1} and
    Q0..Q{q_bits-1}; `clamped` fixes named bits to 0/1 before expansion
    (e.g. {"P0": 1} pins P odd). Any assignment with P*Q == n evaluates to
    zero including the constant; every other assignment is positive.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if p_bits < 1 or q_bits < 1:
        raise ValueError("bit widths must be >= 1")
    clamped = dict(clamped or {})
    declared = {f"P{i}" for i in range(p_bits)} | {f"Q{i}" for i in range(q_bits)}
    unknown = set(clamped) - declared
    if unknown:
        raise ValueError(f"clamp on undeclared bit(s): {sorted(unknown)}")
    for name, bit in clamped.items():
        if bit not in (0, 1):
            raise ValueError(f"clamp {name}={bit!r} is not a binary value")

    def digits(prefix: str, width: int) -> Polynomial:
        b = PolyBuilder()
        for name in _bit_names(prefix, width):
            i = int(name[len(prefix):])
            if name in clamped:
                b.add_constant((1 << i) * clamped[name])
            else:
                b.add_term([name], 1 << i)
        return b.build()

    p_val = digits("P", p_bits)
    q_val = digits("Q", q_bits)
    product = poly_mul(p_val, q_val)

    residue = PolyBuilder()
    for nm in p_val.names:
        residue.declare(nm)
    for nm in q_val.names:
        residue.declare(nm)
    residue.add_constant(n)
    residue.add_polynomial(product, scale=-1)
    r = residue.build()
    return poly_mul(r, r)
