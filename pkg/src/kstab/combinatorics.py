"""Compositions, index partitions, permutations, orders and fillings.

Conventions used throughout the package:

* A composition lam is a tuple of N nonnegative ints with sum n.
* An index partition I is a tuple of N sorted tuples, pairwise disjoint,
  covering 1..n, with len(I[k-1]) == lam[k-1].  CLI syntax: "{1,3},{2},{}".
* A permutation sigma of 1..n is a tuple (sigma(1), ..., sigma(n)).
  CLI syntax: "2,3,1".
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

Perm = tuple  # tuple[int, ...], one-line notation on 1..n
IdxPartition = tuple  # tuple[tuple[int, ...], ...]


# -- compositions ------------------------------------------------------


def check_composition(lam: tuple) -> None:
    if any(x < 0 for x in lam):
        raise ValueError(f"composition entries must be >= 0: {lam}")


def comp_n(lam: tuple) -> int:
    return sum(lam)


def partial_sums(lam: tuple) -> list[int]:
    """lam^(k) = lam_1 + ... + lam_k for k = 0..N."""
    out = [0]
    for x in lam:
        out.append(out[-1] + x)
    return out


def lam_onebrace(lam: tuple) -> int:
    """lam^(1) + ... + lam^(N-1)."""
    ps = partial_sums(lam)
    return sum(ps[1:-1])


def compositions(n: int, parts: int):
    """All compositions of n into exactly `parts` nonnegative parts."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


# -- index partitions --------------------------------------------------


def check_partition(I: IdxPartition, lam: tuple | None = None) -> None:
    flat = [a for blk in I for a in blk]
    n = len(flat)
    if sorted(flat) != list(range(1, n + 1)):
        raise ValueError(f"blocks must partition 1..n: {I}")
    if any(tuple(sorted(blk)) != tuple(blk) for blk in I):
        raise ValueError(f"blocks must be sorted: {I}")
    if lam is not None and tuple(len(b) for b in I) != tuple(lam):
        raise ValueError(f"block sizes {[len(b) for b in I]} do not match {lam}")


def content(I: IdxPartition) -> tuple:
    return tuple(len(b) for b in I)


def membership(I: IdxPartition) -> tuple:
    """Block index of each of 1..n (colour sequence of the fixed point)."""
    n = sum(len(b) for b in I)
    out = [0] * n
    for k, blk in enumerate(I, start=1):
        for a in blk:
            out[a - 1] = k
    return tuple(out)


def from_membership(colors: tuple, N: int | None = None) -> IdxPartition:
    N = N if N is not None else (max(colors) if colors else 0)
    blocks = [[] for _ in range(N)]
    for a, k in enumerate(colors, start=1):
        blocks[k - 1].append(a)
    return tuple(tuple(b) for b in blocks)


@lru_cache(maxsize=None)
def enumerate_partitions(lam: tuple) -> tuple:
    """All of I_lam, ordered lexicographically by membership vector."""
    check_composition(lam)
    n = comp_n(lam)
    out = []

    def rec(remaining: tuple, blocks: list):
        if not remaining and len(blocks) < len(lam):
            blocks = blocks + [()] * (len(lam) - len(blocks))
        if len(blocks) == len(lam):
            if not remaining:
                out.append(tuple(blocks))
            return
        k = len(blocks)
        for blk in combinations(remaining, lam[k]):
            rest = tuple(a for a in remaining if a not in blk)
            rec(rest, blocks + [blk])

    rec(tuple(range(1, n + 1)), [])
    out.sort(key=membership)
    assert len(out) == multinomial(lam)
    return tuple(out)


def multinomial(lam: tuple) -> int:
    n = comp_n(lam)
    out = factorial(n)
    for x in lam:
        out //= factorial(x)
    return out


def union_prefix(I: IdxPartition, k: int) -> tuple:
    """Sorted union I_1 cup ... cup I_k."""
    return tuple(sorted(a for blk in I[:k] for a in blk))


def i_min(lam: tuple) -> IdxPartition:
    ps = partial_sums(lam)
    return tuple(tuple(range(ps[k] + 1, ps[k + 1] + 1)) for k in range(len(lam)))


def i_max(lam: tuple) -> IdxPartition:
    n = comp_n(lam)
    ps = partial_sums(lam)
    return tuple(tuple(range(n - ps[k + 1] + 1, n - ps[k] + 1))
                 for k in range(len(lam)))


def swap_numbers(I: IdxPartition, a: int, b: int) -> IdxPartition:
    """s_{a,b}(I): exchange the numbers a and b between their blocks."""
    def sub(x):
        return b if x == a else a if x == b else x
    return tuple(tuple(sorted(sub(x) for x in blk)) for blk in I)


def apply_perm(sigma: Perm, I: IdxPartition) -> IdxPartition:
    """sigma(I) = (sigma(I_1), ..., sigma(I_N))."""
    return tuple(tuple(sorted(sigma[a - 1] for a in blk)) for blk in I)


def inversions_p(I: IdxPartition) -> int:
    """Inversion count of the concatenated sequence I_N, ..., I_1."""
    seq = [a for blk in reversed(I) for a in blk]
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq))
               if seq[i] > seq[j])


def codim_ell(sigma: Perm, I: IdxPartition) -> int:
    """Dimension of the Schubert cell attached to (sigma, I)."""
    colors = membership(I)
    n = len(colors)
    count = 0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i > j and colors[sigma[i - 1] - 1] < colors[sigma[j - 1] - 1]:
                count += 1
    return count


def move_between_blocks(I: IdxPartition, p: int, i: int, up: bool) -> IdxPartition:
    """I^{i'} (up=True: move i from block p+1 to block p) or I^{'i}
    (up=False: move i from block p to block p+1).  Blocks are 1-based."""
    blocks = [list(b) for b in I]
    src, dst = (p, p - 1) if up else (p - 1, p)
    if i not in blocks[src]:
        raise ValueError(f"{i} is not in block {src + 1} of {I}")
    blocks[src].remove(i)
    blocks[dst].append(i)
    return tuple(tuple(sorted(b)) for b in blocks)


# -- Bruhat-type order --------------------------------------------------


def perm_inverse(sigma: Perm) -> Perm:
    out = [0] * len(sigma)
    for i, v in enumerate(sigma, start=1):
        out[v - 1] = i
    return tuple(out)


def perm_compose(sigma: Perm, tau: Perm) -> Perm:
    """(sigma tau)(i) = sigma(tau(i))."""
    return tuple(sigma[t - 1] for t in tau)

def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def longest_perm(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def transposition(n: int, a: int, b: int) -> Perm:
    out = list(range(1, n + 1))
    out[a - 1], out[b - 1] = b, a
    return tuple(out)


def perm_length(sigma: Perm) -> int:
    n = len(sigma)
    return sum(1 for i in range(n) for j in range(i + 1, n)
               if sigma[i] > sigma[j])


def reduced_word(sigma: Perm) -> list[int]:
    """Bubble-sort reduced word: sigma = s_{w_1} ... s_{w_l}."""
    word: list[int] = []
    cur = list(sigma)
    n = len(cur)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                word.append(i + 1)
                changed = True
    word.reverse()
    return word


def b_sequences(sigma: Perm, I: IdxPartition) -> tuple:
    """Sorted sigma^{-1}-images of the block unions, k = 1..N-1."""
    inv = perm_inverse(sigma)
    return tuple(tuple(sorted(inv[a - 1] for a in union_prefix(I, k)))
                 for k in range(1, len(I)))


def bruhat_leq(sigma: Perm, A: IdxPartition, B: IdxPartition) -> bool:
    """A <=_sigma B via the tableau criterion."""
    for bk, ak in zip(b_sequences(sigma, A), b_sequences(sigma, B)):
        if any(x > y for x, y in zip(bk, ak)):
            return False
    return True


def refine_key(sigma: Perm, I: IdxPartition) -> tuple:
    """Key whose lexicographic order refines <=_sigma (concatenated
    b-sequences); used wherever a total order is needed."""
    return tuple(x for seq in b_sequences(sigma, I) for x in seq)


def sorted_by_order(sigma: Perm, lam: tuple) -> tuple:
    return tuple(sorted(enumerate_partitions(lam),
                        key=lambda I: (refine_key(sigma, I), membership(I))))


def min_coset_perm(A: IdxPartition, B: IdxPartition) -> Perm:
    """Shortest permutation with sigma(A) = B (order-preserving on blocks)."""
    n = sum(len(b) for b in A)
    out = [0] * n
    for blkA, blkB in zip(A, B):
        for a, b in zip(blkA, blkB):
            out[a - 1] = b
    return tuple(out)


def sigma_for_groth(I: IdxPartition) -> Perm:
    """The permutation indexing the Grothendieck polynomial attached to I.

    Built from the block-by-block descending concatenation L of I: the
    inverse permutation has one-line notation (n+1-L_1, ..., n+1-L_n).
    On partitions whose blocks are order-isomorphic to their positions the
    two possible readings of "maps n, n-1, ..., 1 to L" coincide; the
    specialization identity fixes this one in general."""
    n = sum(len(b) for b in I)
    target = [a for blk in I for a in reversed(blk)]
    inv_one_line = tuple(n + 1 - val for val in target)
    return perm_inverse(inv_one_line)


def flatten_desc(I: IdxPartition) -> IdxPartition:
    """Refine I into singletons, each block listed in descending order."""
    return tuple((a,) for blk in I for a in reversed(blk))


# -- fillings of tables (combinatorial presentation of weight functions) --


def fillings(lam: tuple):
    """All (N-1)-tuples of permutations sigma_k of S_{lam^(k)}."""
    ps = partial_sums(lam)
    pools = [list(permutations(range(1, ps[k] + 1))) for k in range(1, len(lam))]
    if not pools:
        yield ()
        return
    def rec(i):
        if i == len(pools):
            yield ()
            return
        for head in pools[i]:
            for tail in rec(i + 1):
                yield (head,) + tail
    yield from rec(0)


def filling_count(lam: tuple) -> int:
    ps = partial_sums(lam)
    out = 1
    for k in range(1, len(lam)):
        out *= factorial(ps[k])
    return out


def perm_sign(p: Perm) -> int:
    return 1 if perm_length(p) % 2 == 0 else -1


# -- CLI parsing ------------------------------------------------------


def parse_partition(text: str) -> IdxPartition:
    """Parse "{1,3},{2},{}" into an index partition."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"bad partition syntax: {text!r}")
    blocks = []
    for part in text[1:-1].split("},{"):
        part = part.strip()
        blocks.append(tuple(sorted(int(x) for x in part.split(",") if x.strip()))
                      if part else ())
    I = tuple(blocks)
    check_partition(I)
    return I


def format_partition(I: IdxPartition) -> str:
    return ",".join("{" + ",".join(str(a) for a in blk) + "}" for blk in I)


def parse_perm(text: str) -> Perm:
    sigma = tuple(int(x) for x in text.split(","))
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise ValueError(f"not a permutation of 1..n: {text!r}")
    return sigma
