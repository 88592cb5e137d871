"""Constructors for the standard groups the library works with.

Everything returns a fully validated FiniteGroup with identity 0.
The projective groups are built from the natural action on the
projective line over GF(q), via permutation closure.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import UnsupportedParameter
from .groups import FiniteGroup, from_permutation_generators

MAX_SYMMETRIC_DEGREE = 8  # S8/A8 are accepted but already far above desk scale
SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13)

# irreducible polynomials for the non-prime fields, coefficients low-to-high
_IRREDUCIBLE = {
    4: (1, 1, 1),        # x^2 + x + 1 over F2
    8: (1, 1, 0, 1),     # x^3 + x + 1 over F2
    9: (1, 0, 1),        # x^2 + 1 over F3
}


def cyclic(n: int) -> FiniteGroup:
    """Cyclic group of order n, written additively."""
    if n < 1:
        raise UnsupportedParameter("cyclic order must be positive")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=f"Z{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n (symmetries of the n-gon), n >= 3.

    Element e*n + i encodes r^i s^e with s r s = r^-1.
    """
    if n < 3:
        raise UnsupportedParameter("dihedral parameter must be >= 3")
    order = 2 * n

    def mul(x, y):
        i, e = x % n, x // n
        j, f = y % n, y // n
        if e == 0:
            return ((i + j) % n) + n * f
        return ((i - j) % n) + n * ((e + f) % 2)

    table = [[mul(x, y) for y in range(order)] for x in range(order)]
    return FiniteGroup(table, name=f"D{n}")


def quaternion8() -> FiniteGroup:
    """Quaternion group of order 8: <x,y | x^4 = 1, y^2 = x^2, y^-1xy = x^-1>.

    Element b*4 + a encodes x^a y^b.
    """

    def mul(u, v):
        a, b = u % 4, u // 4
        c, d = v % 4, v // 4
        if b == 0:
            return ((a + c) % 4) + 4 * d
        if d == 0:
            return ((a - c) % 4) + 4
        return (a - c + 2) % 4

    table = [[mul(u, v) for v in range(8)] for u in range(8)]
    return FiniteGroup(table, name="Q8")


def symmetric(n: int) -> FiniteGroup:
    """Symmetric group on n points, n <= 8."""
    if not (1 <= n <= MAX_SYMMETRIC_DEGREE):
        raise UnsupportedParameter(f"symmetric degree must be 1..{MAX_SYMMETRIC_DEGREE}")
    gens = []
    if n >= 2:
        gens.append(list(range(1, n)) + [0])      # n-cycle
        gens.append([1, 0] + list(range(2, n)))   # transposition
    return from_permutation_generators(gens, n, cap=math.factorial(n), name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    """Alternating group on n points, n <= 8."""
    if not (1 <= n <= MAX_SYMMETRIC_DEGREE):
        raise UnsupportedParameter(f"alternating degree must be 1..{MAX_SYMMETRIC_DEGREE}")
    gens = []
    for k in range(2, n):
        # 3-cycle (0 1 k)
        perm = list(range(n))
        perm[0], perm[1], perm[k] = 1, k, 0
        gens.append(perm)
    cap = max(1, math.factorial(n) // 2)
    return from_permutation_generators(gens, n, cap=cap, name=f"A{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Direct product; element a*|H| + b encodes the pair (a, b)."""
    hn = h.order
    order = g.order * hn
    table = [[0] * order for _ in range(order)]
    for a1 in range(g.order):
        grow = g.table[a1]
        for b1 in range(hn):
            hrow = h.table[b1]
            left = a1 * hn + b1
            row = table[left]
            for a2 in range(g.order):
                base = grow[a2] * hn
                off = a2 * hn
                for b2 in range(hn):
                    row[off + b2] = base + hrow[b2]
    name = f"{g.name or 'G'}x{h.name or 'H'}"
    return FiniteGroup(table, name=name)


def semidirect_product(n: FiniteGroup, h: FiniteGroup,
                       action: Sequence[Sequence[int]]) -> FiniteGroup:
    """Semidirect product N x| H for an action of H on N.

    ``action[k]`` is the image array of the automorphism of N attached
    to element k of H. The action must be a homomorphism into Aut(N)
    with action[k1*k2] = action[k1] after action[k2], matching the
    product (n1, h1)(n2, h2) = (n1 * action[h1](n2), h1 h2).
    """
    if len(action) != h.order:
        raise UnsupportedParameter("need one automorphism of N per element of H")
    maps = [tuple(int(v) for v in m) for m in action]
    for k, m in enumerate(maps):
        if sorted(m) != list(range(n.order)):
            raise UnsupportedParameter(f"action[{k}] is not a permutation of N")
        for a in range(n.order):
            for b in range(n.order):
                if m[n.table[a][b]] != n.table[m[a]][m[b]]:
                    raise UnsupportedParameter(f"action[{k}] is not an automorphism of N")
    if maps[0] != tuple(range(n.order)):
        raise UnsupportedParameter("action[0] must be the identity map")
    for k1 in range(h.order):
        for k2 in range(h.order):
            composed = tuple(maps[k1][maps[k2][x]] for x in range(n.order))
            if maps[h.table[k1][k2]] != composed:
                raise UnsupportedParameter("action is not a homomorphism into Aut(N)")
    hn = h.order
    order = n.order * hn
    table = [[0] * order for _ in range(order)]
    for n1 in range(n.order):
        for h1 in range(hn):
            row = table[n1 * hn + h1]
            act = maps[h1]
            nrow = n.table[n1]
            hrow = h.table[h1]
            for n2 in range(n.order):
                base = nrow[act[n2]] * hn
                off = n2 * hn
                for h2 in range(hn):
                    row[off + h2] = base + hrow[h2]
    name = f"{n.name or 'N'}:{h.name or 'H'}"
    return FiniteGroup(table, name=name)


# ---------------------------------------------------------------------------
# GF(q) and the projective groups


def _field_tables(q: int):
    """Addition and multiplication tables for GF(q), q a prime power <= 13.

    Elements are 0..q-1; non-prime fields encode polynomials base p
    with the constant term as the low digit.
    """
    for p in (2, 3, 5, 7, 11, 13):
        if q % p == 0:
            break
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise UnsupportedParameter(f"{q} is not a prime power")
    if k == 1:
        add = [[(a + b) % p for b in range(q)] for a in range(q)]
        mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        return add, mul

    def digits(x):
        out = []
        for _ in range(k):
            out.append(x % p)
            x //= p
        return out

    def undigits(ds):
        x = 0
        for d in reversed(ds):
            x = x * p + d
        return x

    irred = _IRREDUCIBLE[q]
    add = [[undigits([(da + db) % p for da, db in zip(digits(a), digits(b))])
            for b in range(q)] for a in range(q)]

    def polymul(a, b):
        da, db = digits(a), digits(b)
        prod = [0] * (2 * k - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        # reduce modulo the irreducible polynomial (monic of degree k)
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                prod[top] = 0
                for j in range(k):
                    prod[top - k + j] = (prod[top - k + j] - c * irred[j]) % p
        return undigits(prod[:k])

    mul = [[polymul(a, b) for b in range(q)] for a in range(q)]
    return add, mul


def _projective_permutation(matrix, q, add, mul, inverse):
    """Permutation of the q+1 projective points induced by a 2x2 matrix.

    Point i < q is [i : 1]; point q is [1 : 0].
    """
    a, b, c, d = matrix
    images = []
    for i in range(q + 1):
        x, y = (i, 1) if i < q else (1, 0)
        nx = add[mul[a][x]][mul[b][y]]
        ny = add[mul[c][x]][mul[d][y]]
        if ny != 0:
            images.append(mul[nx][inverse[ny]])
        else:
            images.append(q)
    return images


def _projective_group(q: int, extend_to_gl: bool, name: str, expected: int) -> FiniteGroup:
    if q not in SUPPORTED_Q:
        raise UnsupportedParameter(f"q must be one of {SUPPORTED_Q}")
    add, mul = _field_tables(q)
    inverse = [0] * q
    for x in range(1, q):
        inverse[x] = next(y for y in range(1, q) if mul[x][y] == 1)
    # p-basis of the field: 1, u, u^2, ... where u encodes the polynomial x
    p = next(p for p in (2, 3, 5, 7, 11, 13) if q % p == 0)
    basis = [1]
    while p ** len(basis) < q:
        basis.append(mul[basis[-1]][p])
    matrices = []
    for t in basis:
        matrices.append((1, t, 0, 1))
        matrices.append((1, 0, t, 1))
    if extend_to_gl:
        primitive = next((u for u in range(2, q)
                          if _multiplicative_order(u, mul) == q - 1), 1)
        matrices.append((primitive, 0, 0, 1))
    gens = [_projective_permutation(m, q, add, mul, inverse) for m in matrices]
    group = from_permutation_generators(gens, q + 1, cap=expected, name=name)
    if group.order != expected:
        raise UnsupportedParameter(
            f"{name}: closure has order {group.order}, expected {expected}")
    return group


def _multiplicative_order(u, mul):
    x, k = u, 1
    while x != 1:
        x = mul[x][u]
        k += 1
    return k


def psl2(q: int) -> FiniteGroup:
    """PSL(2, q) acting on the projective line, order q(q^2-1)/gcd(2,q-1)."""
    expected = q * (q * q - 1) // math.gcd(2, q - 1)
    return _projective_group(q, False, f"L2({q})", expected)


def pgl2(q: int) -> FiniteGroup:
    """PGL(2, q) acting on the projective line, order q(q^2-1)."""
    expected = q * (q * q - 1)
    return _projective_group(q, True, f"PGL2({q})", expected)


# ---------------------------------------------------------------------------
# The two central-extension families with many square-central elements


def type3_group_i(k: int) -> FiniteGroup:
    """Order 2^(2k+1): triples (v, w, z) in F2^k x F2^k x F2 with
    (v,w,z)(v',w',z') = (v+v', w+w', z+z'+w.v').

    Derived subgroup C2, center of order 2, central quotient elementary
    abelian of rank 2k carrying the standard symplectic commutator form.
    """
    if k < 1:
        raise UnsupportedParameter("k must be >= 1")
    order = 1 << (2 * k + 1)

    def mul(x, y):
        v1, w1, z1 = x >> (k + 1), (x >> 1) & ((1 << k) - 1), x & 1
        v2, w2, z2 = y >> (k + 1), (y >> 1) & ((1 << k) - 1), y & 1
        zinc = bin(w1 & v2).count("1") & 1
        return ((v1 ^ v2) << (k + 1)) | ((w1 ^ w2) << 1) | (z1 ^ z2 ^ zinc)

    table = [[mul(x, y) for y in range(order)] for x in range(order)]
    return FiniteGroup(table, name=f"T3i({k})")


def type3_group_ii() -> FiniteGroup:
    """Order 64: triples (v, w, z) in F2^2 x F2^2 x F2^2 with the split
    pairing (v,w,z)(v',w',z') = (v+v', w+w', z+z'+(w1 v'1, w2 v'2)).

    Derived subgroup C2 x C2, central quotient elementary abelian of
    order 16.
    """

    def mul(x, y):
        v1, w1, z1 = x >> 4, (x >> 2) & 3, x & 3
        v2, w2, z2 = y >> 4, (y >> 2) & 3, y & 3
        return ((v1 ^ v2) << 4) | ((w1 ^ w2) << 2) | (z1 ^ z2 ^ (w1 & v2))

    table = [[mul(x, y) for y in range(64)] for x in range(64)]
    return FiniteGroup(table, name="T3ii")
