"""Coset regularity: weight partitions, intersection numbers, designs.

Every coset of a chain code is identified with its packed syndrome, so the
coset space is the dense range [0, 2^(n-k)).  Coset weights come from a BFS
over syndromes (neighbors differ by a unit-vector syndrome), leaders from a
lexicographic scan by increasing weight, and full coset weight distributions
from the dual-side transform with exact integer Krawtchouk coefficients.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .codes import LinearCode, dual_spectrum
from .gf2 import bit_support

__all__ = [
    "CosetRecord",
    "CosetTable",
    "IntersectionArray",
    "RegularityReport",
    "PackingReport",
    "MuReport",
    "DesignReport",
    "ExtendedArrayReport",
    "enumerate_cosets",
    "coset_weight_distribution",
    "verify_completely_regular",
    "cria_array",
    "extended_cria_array",
    "extended_array_variant",
    "verify_mu_identity",
    "verify_uniformly_packed",
    "design_lambda",
    "weight3_codewords",
    "weight4_codewords",
    "extended_weight4_codewords",
    "verify_design",
    "verify_extension_condition",
    "verify_extended_array",
]

# combination scans above this size fall back to BFS-tree leaders
_SCAN_LIMIT = 5_000_000


@dataclass(frozen=True)
class CosetRecord:
    syndrome: int
    weight: int
    leader: int
    distribution: Optional[Tuple[int, ...]] = None


class CosetTable:
    """All cosets of one code, indexed by packed syndrome."""

    def __init__(self, code: LinearCode, records: List[CosetRecord]):
        self.code = code
        self.records = records
        self.rho = max(r.weight for r in records)
        mu = [0] * (self.rho + 1)
        for r in records:
            mu[r.weight] += 1
        self.mu: Tuple[int, ...] = tuple(mu)

    def __len__(self) -> int:
        return len(self.records)

    def weight_of(self, syndrome: int) -> int:
        return self.records[syndrome].weight

    def leader_of(self, syndrome: int) -> int:
        return self.records[syndrome].leader


def _dual_weight_table(code: LinearCode) -> List[int]:
    # weight of every dual word, indexed by the parity-row combination mask
    rows = code.parity_rows
    table = [0] * (1 << len(rows))
    word = 0
    for t in range(1, len(table)):
        word ^= rows[(t & -t).bit_length() - 1]
        # the incremental walk visits combination masks in Gray order
        table[t ^ (t >> 1)] = word.bit_count()
    return table


def _krawtchouk_matrix(n: int) -> List[List[int]]:
    k = [[0] * (n + 1) for _ in range(n + 1)]
    for j in range(n + 1):
        for w in range(n + 1):
            k[j][w] = sum(
                (-1) ** l * comb(j, l) * comb(n - j, w - l)
                for l in range(max(0, w - (n - j)), min(j, w) + 1)
            )
    return k


def _distribution_from_syndrome(
    syndrome: int,
    dual_wt: Sequence[int],
    kraw: Sequence[Sequence[int]],
    n: int,
) -> Tuple[int, ...]:
    counts: Dict[int, int] = {}
    for t, j in enumerate(dual_wt):
        if (syndrome & t).bit_count() & 1:
            counts[j] = counts.get(j, 0) - 1
        else:
            counts[j] = counts.get(j, 0) + 1
    size = len(dual_wt)
    dist = []
    for w in range(n + 1):
        acc = sum(nj * kraw[j][w] for j, nj in counts.items() if nj)
        q, rem = divmod(acc, size)
        if rem:
            raise RuntimeError("dual transform gave a non-integer count")
        dist.append(q)
    return tuple(dist)


def coset_weight_distribution(code: LinearCode, v: int) -> Tuple[int, ...]:
    """Weight distribution of the coset of v, from the dual-side transform."""
    dual_wt = _dual_weight_table(code)
    kraw = _krawtchouk_matrix(code.length)
    return _distribution_from_syndrome(code.syndrome(v), dual_wt, kraw, code.length)


def enumerate_cosets(code: LinearCode, with_distributions: bool = True) -> CosetTable:
    """Weights, canonical leaders and (optionally) distributions of all cosets."""
    if code.syndrome_width > 20:
        raise ValueError("coset enumeration capped at 2^20 syndromes")
    units = code.unit_syndromes
    size = 1 << code.syndrome_width
    weight = [-1] * size
    pred: List[Tuple[int, int]] = [(-1, -1)] * size
    weight[0] = 0
    queue = deque([0])
    while queue:
        s = queue.popleft()
        w = weight[s]
        for p, us in enumerate(units):
            t = s ^ us
            if weight[t] < 0:
                weight[t] = w + 1
                pred[t] = (s, p)
                queue.append(t)
    if min(weight) < 0:
        raise RuntimeError("syndrome space is not connected by unit syndromes")
    rho = max(weight)

    leader: List[int] = [-1] * size
    leader[0] = 0
    assigned = 1
    for w in range(1, rho + 1):
        remaining = sum(1 for s in range(size) if weight[s] == w)
        if comb(code.length, w) <= _SCAN_LIMIT:
            for support in combinations(range(code.length), w):
                s = 0
                for p in support:
                    s ^= units[p]
                if leader[s] < 0:
                    v = 0
                    for p in support:
                        v |= 1 << p
                    leader[s] = v
                    assigned += 1
                    remaining -= 1
                    if remaining == 0:
                        break
        else:
            # deterministic BFS-tree representatives; weights stay exact
            for s in range(size):
                if weight[s] == w and leader[s] < 0:
                    v = 0
                    t = s
                    while t:
                        t, p = pred[t]
                        v |= 1 << p
                    leader[s] = v
                    assigned += 1
    if assigned != size:
        raise RuntimeError("leader assignment incomplete")

    dists: List[Optional[Tuple[int, ...]]] = [None] * size
    if with_distributions:
        dual_wt = _dual_weight_table(code)
        kraw = _krawtchouk_matrix(code.length)
        for s in range(size):
            dists[s] = _distribution_from_syndrome(s, dual_wt, kraw, code.length)

    records = [
        CosetRecord(syndrome=s, weight=weight[s], leader=leader[s], distribution=dists[s])
        for s in range(size)
    ]
    return CosetTable(code, records)


@dataclass(frozen=True)
class IntersectionArray:
    """b_0..b_(rho-1) and c_1..c_rho of a distance-regular partition."""

    b: Tuple[int, ...]
    c: Tuple[int, ...]

    @property
    def rho(self) -> int:
        return len(self.c)

    @property
    def valency(self) -> int:
        return self.b[0]

    def a(self, l: int) -> int:
        bl = self.b[l] if l < len(self.b) else 0
        cl = self.c[l - 1] if l >= 1 else 0
        return self.valency - bl - cl

    def __str__(self) -> str:
        left = ",".join(str(x) for x in self.b)
        right = ",".join(str(x) for x in self.c)
        return f"({left};{right})"


@dataclass(frozen=True)
class RegularityReport:
    completely_regular: bool
    array: Optional[IntersectionArray]
    witness: Optional[Dict[str, object]] = None
    distributions_uniform: Optional[bool] = None


def verify_completely_regular(code: LinearCode, table: CosetTable) -> RegularityReport:
    """Check constant c_l / b_l over every weight class by syndrome counting."""
    units = code.unit_syndromes
    rho = table.rho
    weight = [r.weight for r in table.records]
    b_vals: List[Optional[int]] = [None] * (rho + 1)
    c_vals: List[Optional[int]] = [None] * (rho + 1)
    first_syn: List[Optional[int]] = [None] * (rho + 1)
    for s, w in enumerate(weight):
        down = up = 0
        for us in units:
            nw = weight[s ^ us]
            if nw == w - 1:
                down += 1
            elif nw == w + 1:
                up += 1
        if first_syn[w] is None:
            first_syn[w] = s
            b_vals[w] = up
            c_vals[w] = down
        elif b_vals[w] != up or c_vals[w] != down:
            witness = {
                "weight": w,
                "coset_a": first_syn[w],
                "coset_b": s,
                "counts_a": (c_vals[w], b_vals[w]),
                "counts_b": (down, up),
            }
            return RegularityReport(False, None, witness)
    if b_vals[rho] != 0:
        return RegularityReport(
            False, None, {"weight": rho, "note": "nonzero b at covering radius"}
        )
    array = IntersectionArray(
        b=tuple(b_vals[l] for l in range(rho)),  # type: ignore[misc]
        c=tuple(c_vals[l] for l in range(1, rho + 1)),  # type: ignore[misc]
    )
    uniform: Optional[bool] = None
    if all(r.distribution is not None for r in table.records):
        per_weight: Dict[int, Tuple[int, ...]] = {}
        uniform = True
        for r in table.records:
            seen = per_weight.setdefault(r.weight, r.distribution)  # type: ignore[arg-type]
            if seen != r.distribution:
                uniform = False
                break
    return RegularityReport(True, array, None, uniform)


def cria_array(m: int, i: int) -> IntersectionArray:
    """Expected array of the level-i code, covering radius 3 (1 for level 0)."""
    n = (1 << m) - 1
    if i == 0:
        return IntersectionArray(b=(n,), c=(1,))
    return IntersectionArray(
        b=(n, (1 << m) - (1 << (m - i)), 1),
        c=(1, 1 << (m - i), n),
    )


def extended_cria_array(m: int, i: int) -> IntersectionArray:
    """Expected array of the extended level-i code, i >= 1, covering radius 4."""
    if i == 0:
        return IntersectionArray(b=(1 << m, (1 << m) - 1), c=(1, 1 << m))
    return IntersectionArray(
        b=(1 << m, (1 << m) - 1, (1 << m) - (1 << (m - i)), 1),
        c=(1, 1 << (m - i), (1 << m) - 1, 1 << m),
    )


def extended_array_variant(m: int, i: int) -> IntersectionArray:
    """Off-by-one variant of the extended array, with b_0 = 2^m + 1.

    A length-2^m code cannot have valency 2^m + 1, so reports are expected
    to show the computed array does not take this form.
    """
    return IntersectionArray(
        b=((1 << m) + 1, 1 << m, (1 << m) - (1 << (m - i)), 1),
        c=(1, 1 << (m - i), 1 << m, (1 << m) + 1),
    )


@dataclass(frozen=True)
class MuReport:
    ok: bool
    mu: Tuple[int, ...]
    products: Tuple[Tuple[int, int], ...]


def verify_mu_identity(table: CosetTable, array: IntersectionArray) -> MuReport:
    """b_l * mu_l = c_(l+1) * mu_(l+1) for l = 0..rho-1."""
    mu = table.mu
    products = []
    ok = True
    for l in range(array.rho):
        lhs = array.b[l] * mu[l]
        rhs = array.c[l] * mu[l + 1]
        products.append((lhs, rhs))
        if lhs != rhs:
            ok = False
    return MuReport(ok, mu, tuple(products))


@dataclass(frozen=True)
class PackingReport:
    rho: int
    s: int
    uniformly_packed: bool


def verify_uniformly_packed(code: LinearCode, table: CosetTable) -> PackingReport:
    s = dual_spectrum(code).s
    return PackingReport(rho=table.rho, s=s, uniformly_packed=s == table.rho)


def design_lambda(m: int, i: int) -> int:
    """Replication number of the weight-3 words of the level-i code."""
    return (1 << (m - i - 1)) - 1


def weight3_codewords(code: LinearCode) -> List[int]:
    """All weight-3 codewords, by scanning label pairs."""
    if code.extended:
        raise ValueError("extended codes have no odd-weight words")
    ctx = code.ctx
    exp, log, qterm = ctx.gm.exp, ctx.gm.log, ctx.qterm
    out = []
    for a in range(ctx.n):
        for b in range(a + 1, ctx.n):
            t = log[exp[a] ^ exp[b]]
            if t <= b:
                continue
            if code.quad_sum_in_subspace(qterm[a] ^ qterm[b] ^ qterm[t]):
                out.append((1 << a) | (1 << b) | (1 << t))
    return out


def weight4_codewords(code: LinearCode) -> List[int]:
    """All weight-4 codewords of an unextended chain code."""
    if code.extended:
        raise ValueError("use extended_weight4_codewords for extended codes")
    ctx = code.ctx
    exp, log, qterm = ctx.gm.exp, ctx.gm.log, ctx.qterm
    out = []
    for combo in combinations(range(ctx.n), 3):
        a, b, c = combo
        rest = exp[a] ^ exp[b] ^ exp[c]
        if rest == 0:
            continue
        d = log[rest]
        if d <= c:
            continue
        if code.quad_sum_in_subspace(qterm[a] ^ qterm[b] ^ qterm[c] ^ qterm[d]):
            out.append((1 << a) | (1 << b) | (1 << c) | (1 << d))
    return out


def extended_weight4_codewords(code: LinearCode) -> List[int]:
    """Weight-4 words of an extended code: padded weight-3 words plus shifted
    weight-4 words of the punctured code."""
    if not code.extended:
        raise ValueError("code is not extended")
    base = code.base
    assert base is not None
    out = [(w << 1) | 1 for w in weight3_codewords(base)]
    out += [w << 1 for w in weight4_codewords(base)]
    return out


@dataclass(frozen=True)
class DesignReport:
    points: int
    block_weight: int
    strength: int
    lam: Optional[int]
    ok: bool
    counterexample: Optional[Tuple[int, ...]] = None


def verify_design(
    words: Sequence[int], length: int, block_weight: int, strength: int
) -> DesignReport:
    """Do the supports cover every strength-subset equally often?"""
    if not words:
        return DesignReport(length, block_weight, strength, None, False)
    counts: Dict[Tuple[int, ...], int] = {}
    for word in words:
        support = list(bit_support(word))
        if len(support) != block_weight:
            raise ValueError("word weight differs from the block weight")
        for key in combinations(support, strength):
            counts[key] = counts.get(key, 0) + 1
    lam = len(words) * comb(block_weight, strength) // comb(length, strength)
    for key in combinations(range(length), strength):
        if counts.get(key, 0) != lam:
            return DesignReport(length, block_weight, strength, lam, False, key)
    return DesignReport(length, block_weight, strength, lam, True)


def verify_extension_condition(code: LinearCode) -> Optional[bool]:
    """Three dual weights with w1 + w3 = 2*w2 = n + 1; None if not three."""
    sp = dual_spectrum(code)
    if sp.s != 3:
        return None
    w1, w2, w3 = sp.weights
    n = code.length
    return w1 + w3 == n + 1 and 2 * w2 == n + 1


@dataclass(frozen=True)
class ExtendedArrayReport:
    regularity: RegularityReport
    matches_extended_form: bool
    matches_variant_form: bool


def verify_extended_array(code: LinearCode, table: CosetTable) -> ExtendedArrayReport:
    """Compare the computed array of an extended code with both printed forms."""
    if not code.extended:
        raise ValueError("code is not extended")
    rep = verify_completely_regular(code, table)
    expected = extended_cria_array(code.ctx.m, code.level)
    variant = extended_array_variant(code.ctx.m, code.level)
    return ExtendedArrayReport(
        regularity=rep,
        matches_extended_form=rep.array == expected,
        matches_variant_form=rep.array == variant,
    )
