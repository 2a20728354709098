"""
Symmetric-group combinatorics with permutations acting on the right.

A :class:`Permutation` of {1, ..., n} stores its one-line images, so that
``sigma(i)`` is the image (i)sigma. Products are read left to right:
``sigma * pi`` first applies sigma and then pi.

Compositions, partitions and multipartitions are plain tuples of ints (tuples of
tuples for multipartitions); the functions here validate and enumerate them.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
import re
from typing import Iterator, Sequence

Composition = tuple[int, ...]
Partition = tuple[int, ...]
Multipartition = tuple[Partition, ...]


@dataclasses.dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> Permutation:
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for i, a in enumerate(cyc):
                if not 1 <= a <= n or a in seen:
                    raise ValueError(f"bad cycle {cyc} for S_{n}")
                seen.add(a)
                images[a - 1] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int) -> Permutation:
        """Parse disjoint cycle notation such as "(2,8,5,4)(3,7,6)" or "e"."""
        text = text.replace(" ", "")
        if text in ("e", "()", ""):
            return cls.identity(n)
        if not re.fullmatch(r"(\(\d+(,\d+)*\))+", text):
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = [tuple(int(x) for x in c.split(",")) for c in re.findall(r"\(([^)]*)\)", text)]
        return cls.from_cycles(n, cycles)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, a in enumerate(self.images, 1):
            inv[a - 1] = i
        return Permutation(tuple(inv))

    def length(self) -> int:
        return coxeter_length(self)

    def is_identity(self) -> bool:
        return all(a == i for i, a in enumerate(self.images, 1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen: set[int] = set()
        out = []
        for i in range(1, self.n + 1):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "e"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({self})" if self.n else "Permutation(e; n=0)"


def compose(sigma: Permutation, pi: Permutation) -> Permutation:
    """The product sigma*pi: (i)(sigma pi) = ((i)sigma)pi."""
    if sigma.n != pi.n:
        raise ValueError(f"cannot compose elements of S_{sigma.n} and S_{pi.n}")
    return Permutation(tuple(pi.images[a - 1] for a in sigma.images))


def coxeter_length(sigma: Permutation) -> int:
    """Number of inversions: pairs i < j with (i)sigma > (j)sigma."""
    im = sigma.images
    return sum(1 for i, j in itertools.combinations(range(len(im)), 2) if im[i] > im[j])


def all_permutations(n: int) -> list[Permutation]:
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


# ---------------------------------------------------------------------------
# Young subgroups and minimal coset representatives


def check_composition(mu: Sequence[int]) -> Composition:
    mu = tuple(mu)
    if any((not isinstance(x, int)) or x < 0 for x in mu):
        raise ValueError(f"{mu} is not a composition")
    return mu


def blocks(mu: Composition) -> list[range]:
    """The consecutive blocks {1..mu_1}, {mu_1+1..mu_1+mu_2}, ... of a composition."""
    out = []
    start = 1
    for m in mu:
        out.append(range(start, start + m))
        start += m
    return out


def block_of(mu: Composition) -> tuple[int, ...]:
    """block_of(mu)[k-1] is the index i of the block containing k."""
    return tuple(i for i, m in enumerate(mu) for _ in range(m))


def in_young_subgroup(sigma: Permutation, mu: Composition) -> bool:
    b = block_of(mu)
    return len(b) == sigma.n and all(b[sigma(k) - 1] == b[k - 1] for k in range(1, sigma.n + 1))


def young_split(sigma: Permutation, mu: Composition) -> tuple[Permutation, ...]:
    """Identify sigma in S_mu with (sigma_1, ..., sigma_r) in S_mu1 x ... x S_mur."""
    if not in_young_subgroup(sigma, mu):
        raise ValueError(f"{sigma} is not in the Young subgroup S_{mu}")
    out = []
    for blk in blocks(mu):
        off = blk.start - 1
        out.append(Permutation(tuple(sigma(k) - off for k in blk)))
    return tuple(out)


def young_embed(parts: Sequence[Permutation], mu: Composition) -> Permutation:
    """Inverse of :func:`young_split`."""
    if tuple(p.n for p in parts) != tuple(mu):
        raise ValueError(f"factor sizes {[p.n for p in parts]} do not match {mu}")
    images = []
    off = 0
    for p in parts:
        images.extend(a + off for a in p.images)
        off += p.n
    return Permutation(tuple(images))


def young_subgroup(mu: Composition) -> list[Permutation]:
    return [young_embed(parts, mu) for parts in itertools.product(*(all_permutations(m) for m in mu))]


def is_minimal_coset_rep(gamma: Permutation, mu: Composition) -> bool:
    """True iff in (1)gamma^-1, ..., (n)gamma^-1 each block of mu occurs in increasing order."""
    inv = gamma.inverse().images
    b = block_of(mu)
    last = [0] * len(mu)
    for x in inv:
        i = b[x - 1]
        if x < last[i]:
            return False
        last[i] = x
    return True


def _rep_sort_key(gamma: Permutation):
    return coxeter_length(gamma), gamma.images


def minimal_coset_reps(mu: Composition) -> list[Permutation]:
    """R_mu: the minimal-length right S_mu-coset representatives.

    Each rep maps every block of mu increasingly onto its image set, so R_mu is
    enumerated as the interleavings of the blocks. The list is sorted by Coxeter
    length and then by one-line images.
    """
    mu = check_composition(mu)
    n = sum(mu)
    reps = []
    word = [i for i, m in enumerate(mu) for _ in range(m)]
    for arrangement in sorted(set(itertools.permutations(word))):
        # arrangement[q-1] = block owning bottom node q
        images = [0] * n
        counters = [blk.start for blk in blocks(mu)]
        for q, i in enumerate(arrangement, 1):
            images[counters[i] - 1] = q
            counters[i] += 1
        reps.append(Permutation(tuple(images)))
    reps.sort(key=_rep_sort_key)
    return reps


def coset_factorize(mu: Composition, sigma: Permutation) -> tuple[Permutation, Permutation, tuple[Permutation, ...]]:
    """Write sigma = theta * zeta with theta in S_mu and zeta in R_mu.

    Returns (theta, zeta, theta split into its Young factors).

    >>> mu = (3, 2, 3)
    >>> theta, zeta, _ = coset_factorize(mu, Permutation.parse("(2,8,5,4)(3,7,6)", 8))
    >>> str(theta), str(zeta)
    ('(2,3)(7,8)', '(2,7,5,4)(3,8,6)')
    """
    mu = check_composition(mu)
    if sum(mu) != sigma.n:
        raise ValueError(f"{mu} is not a composition of {sigma.n}")
    images = [0] * sigma.n
    for blk in blocks(mu):
        targets = sorted(sigma(k) for k in blk)
        for k, t in zip(blk, targets):
            images[k - 1] = t
    zeta = Permutation(tuple(images))
    theta = sigma * zeta.inverse()
    return theta, zeta, young_split(theta, mu)


def multinomial(mu: Sequence[int]) -> int:
    out = math.factorial(sum(mu))
    for m in mu:
        out //= math.factorial(m)
    return out


# ---------------------------------------------------------------------------
# partitions, compositions, multipartitions


def is_partition(lam: Sequence[int]) -> bool:
    return all(isinstance(x, int) and x > 0 for x in lam) and all(a >= b for a, b in zip(lam, lam[1:]))


def partitions(n: int) -> list[Partition]:
    """Partitions of n in decreasing lexicographic order, so (n) comes first.

    >>> partitions(3)
    [(3,), (2, 1), (1, 1, 1)]
    """
    def gen(n: int, largest: int) -> Iterator[Partition]:
        if n == 0:
            yield ()
            return
        for k in range(min(n, largest), 0, -1):
            for rest in gen(n - k, k):
                yield (k,) + rest

    return list(gen(n, n))


def compositions(n: int, r: int) -> list[Composition]:
    """All r-part compositions of n (zero parts allowed), lexicographically decreasing.

    Decreasing lexicographic order is a linear extension of dominance with the most
    dominant composition first.
    """
    if r == 0:
        return [()] if n == 0 else []
    out = []
    for first in range(n, -1, -1):
        out.extend((first,) + rest for rest in compositions(n - first, r - 1))
    return out


def dominance_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """a is dominated by b: every prefix sum of a is at most that of b (zero padded)."""
    if sum(a) != sum(b):
        raise ValueError(f"{tuple(a)} and {tuple(b)} have different sizes")
    sa = sb = 0
    for x, y in itertools.zip_longest(a, b, fillvalue=0):
        sa += x
        sb += y
        if sa > sb:
            return False
    return True


def is_p_restricted(lam: Partition, p: int) -> bool:
    """Consecutive differences lam_i - lam_{i+1} (with a trailing 0) are all < p."""
    if p == 0:
        return True
    ext = tuple(lam) + (0,)
    return all(a - b < p for a, b in zip(ext, ext[1:]))


def conjugate(lam: Partition) -> Partition:
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0])) if lam else ()


def multipartition_size(nu: Multipartition) -> Composition:
    return tuple(sum(x) for x in nu)


def enumerate_multipartitions(n: int, r: int, p_restricted: int | None = None,
                              zero_mask: Sequence[int] | set[int] = ()) -> list[Multipartition]:
    """All length-r multipartitions of n.

    The order lists the compositions (|nu_1|, ..., |nu_r|) in decreasing lexicographic
    order and, within one composition, each entry in decreasing lexicographic order.
    With ``p_restricted`` set, keep only those whose entries are all p-restricted; every
    position in ``zero_mask`` is forced to be the empty partition.
    """
    mask = set(zero_mask)
    out = []
    for mu in compositions(n, r):
        if any(mu[i] for i in mask):
            continue
        for nu in itertools.product(*(partitions(m) for m in mu)):
            if p_restricted is not None and not all(is_p_restricted(x, p_restricted) for x in nu):
                continue
            out.append(tuple(nu))
    return out


def multipartition_dominance_leq(nu: Multipartition, eta: Multipartition) -> bool:
    """Dominance on multipartitions: nu is dominated by eta.

    nu <= eta iff for all k and j,
    |nu_1|+...+|nu_{k-1}| + nu_k,1+...+nu_k,j <= the same expression for eta.
    """
    if len(nu) != len(eta):
        raise ValueError("multipartitions of different lengths")
    if sum(map(sum, nu)) != sum(map(sum, eta)):
        raise ValueError("multipartitions of different sizes")
    base_a = base_b = 0
    for a, b in zip(nu, eta):
        sa, sb = base_a, base_b
        for x, y in itertools.zip_longest(a, b, fillvalue=0):
            sa += x
            sb += y
            if sa > sb:
                return False
        base_a += sum(a)
        base_b += sum(b)
    return True


# ---------------------------------------------------------------------------
# tableaux (used to index the Murphy basis)

Tableau = tuple[tuple[int, ...], ...]


def standard_tableaux(lam: Partition) -> list[Tableau]:
    """Standard lam-tableaux, in the order obtained by placing n, n-1, ... recursively."""
    n = sum(lam)
    if n == 0:
        return [tuple(() for _ in lam)]

    def gen(shape: tuple[int, ...], k: int) -> Iterator[list[list[int]]]:
        if k == 0:
            yield [[] for _ in shape]
            return
        for i in range(len(shape)):
            below = shape[i + 1] if i + 1 < len(shape) else 0
            if shape[i] > below:
                smaller = shape[:i] + (shape[i] - 1,) + shape[i + 1:]
                for t in gen(smaller, k - 1):
                    t = [row[:] for row in t]
                    t[i].append(k)
                    yield t

    tabs = [tuple(tuple(row) for row in t) for t in gen(tuple(lam), n)]
    return sorted(tabs, key=lambda t: tuple(x for row in t for x in row))


def initial_tableau(lam: Partition) -> Tableau:
    rows = []
    k = 1
    for m in lam:
        rows.append(tuple(range(k, k + m)))
        k += m
    return tuple(rows)


def tableau_permutation(t: Tableau) -> Permutation:
    """d(t): the permutation with t^lam d(t) = t, i.e. (i)d(t) is the entry of t at the
    position where the row-reading tableau t^lam holds i."""
    flat = tuple(x for row in t for x in row)
    return Permutation(flat)


def row_stabilizer(lam: Partition) -> list[Permutation]:
    """The Young subgroup S_lam, the row stabiliser of the initial tableau."""
    return young_subgroup(tuple(lam))


def format_tableau(t: Tableau) -> str:
    return "/".join("".join(map(str, row)) if all(x < 10 for x in row) else ".".join(map(str, row)) for row in t)


def format_partition(lam: Partition) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


def format_multipartition(nu: Multipartition) -> str:
    return "(" + ",".join(format_partition(x) for x in nu) + ")"
