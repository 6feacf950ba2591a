"""Construction of the nested code chain and its basic code-level operations.

The chain lives inside F_2^n, n = 2^m - 1, with coordinate p labeled by
alpha^p.  The base code (level u) is cut out of the Hamming code by the
condition quad_sum(v) = 0; level i keeps the Hamming condition and relaxes
quad_sum to a subspace of F_2^u of dimension u - i.  Level 0 is the Hamming
code itself.  Extension appends a parity coordinate at index 0, labeled by
the zero field element.

Syndromes are packed ints: bits [0, m) hold the field sum over the support,
bits [m, m+i) hold the projection of quad_sum onto a complement of the
subspace, and extended codes add one parity bit on top.  A vector belongs to
the code iff its syndrome is 0.  All objects are immutable after construction.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .field import FieldContext, PRIM_POLYS, build_field_context
from .gf2 import bit_support, gf2_nullspace, gf2_rank, gf2_rref, gf2_span

__all__ = [
    "ParityCheckMatrix",
    "LinearCode",
    "DualSpectrum",
    "CyclicReport",
    "build_hamming_parity",
    "build_power_parity",
    "build_base_code",
    "build_chain",
    "membership",
    "count_codes_at_level",
    "count_full_chains",
    "extend_code",
    "dual_enumerate",
    "dual_spectrum",
    "verify_cyclic",
    "save_code",
    "load_code",
]


@dataclass(frozen=True)
class ParityCheckMatrix:
    """Rows are ints over GF(2); bit p of a row is the entry in column p."""

    rows: Tuple[int, ...]
    n_cols: int

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def rank(self) -> int:
        return gf2_rank(self.rows, self.n_cols)

    def syndrome(self, v: int) -> int:
        s = 0
        for t, row in enumerate(self.rows):
            s |= (((row & v).bit_count() & 1)) << t
        return s


def build_hamming_parity(ctx: FieldContext) -> ParityCheckMatrix:
    """m x n matrix whose column p is the binary expansion of alpha^p."""
    rows = [0] * ctx.m
    for p in range(ctx.n):
        col = ctx.gm.exp[p]
        for t in range(ctx.m):
            if (col >> t) & 1:
                rows[t] |= 1 << p
    return ParityCheckMatrix(tuple(rows), ctx.n)


def build_power_parity(ctx: FieldContext) -> ParityCheckMatrix:
    """m x n matrix whose column p is alpha^(p*r); its rank is only u."""
    rows = [0] * ctx.m
    for p in range(ctx.n):
        col = ctx.gm.exp[(p * ctx.r) % ctx.n]
        for t in range(ctx.m):
            if (col >> t) & 1:
                rows[t] |= 1 << p
    return ParityCheckMatrix(tuple(rows), ctx.n)


class LinearCode:
    """One level of the chain, optionally extended by a parity coordinate.

    level i means: Hamming condition plus quad_sum(v) constrained to the span
    of ``syndrome_targets`` (u - i independent vectors of F_2^u).
    """

    def __init__(
        self,
        ctx: FieldContext,
        level: int,
        syndrome_targets: Sequence[int],
        adjoined_reps: Sequence[int],
        extended: bool = False,
    ):
        if not 0 <= level <= ctx.u:
            raise ValueError(f"level must lie in 0..{ctx.u}, got {level}")
        if len(syndrome_targets) != ctx.u - level:
            raise ValueError("need u - level syndrome targets")
        if len(adjoined_reps) != len(syndrome_targets):
            raise ValueError("adjoined representatives must match targets")
        self.ctx = ctx
        self.level = level
        self.extended = extended
        self.syndrome_targets = tuple(syndrome_targets)
        self.adjoined_reps = tuple(adjoined_reps)
        if gf2_rank(self.syndrome_targets, ctx.u) != len(self.syndrome_targets):
            raise ValueError("syndrome targets are dependent")
        # functionals on F_2^u vanishing exactly on the span of the targets
        self.proj_masks: Tuple[int, ...] = tuple(
            gf2_nullspace(self.syndrome_targets, ctx.u)
        )
        assert len(self.proj_masks) == level
        self.base: Optional[LinearCode] = None
        if extended:
            self.base = LinearCode(ctx, level, syndrome_targets, adjoined_reps)
        self.length = ctx.n + 1 if extended else ctx.n
        self.syndrome_width = ctx.m + level + (1 if extended else 0)
        self.dimension = self.length - self.syndrome_width
        self.unit_syndromes: Tuple[int, ...] = self._build_unit_syndromes()
        self.parity_rows: Tuple[int, ...] = self._build_parity_rows()
        if gf2_rank(self.parity_rows, self.length) != self.syndrome_width:
            raise RuntimeError("parity rows are not independent")
        self.generator_rows: Tuple[int, ...] = tuple(
            gf2_nullspace(self.parity_rows, self.length)
        )
        assert len(self.generator_rows) == self.dimension

    def _build_unit_syndromes(self) -> Tuple[int, ...]:
        ctx = self.ctx
        units = []
        for p in range(ctx.n):
            e = 0
            for t, mask in enumerate(self.proj_masks):
                e |= ((mask & ctx.qterm[p]).bit_count() & 1) << t
            units.append(ctx.gm.exp[p] | (e << ctx.m))
        if not self.extended:
            return tuple(units)
        par = 1 << (ctx.m + self.level)
        return (par,) + tuple(s | par for s in units)

    def _build_parity_rows(self) -> Tuple[int, ...]:
        rows = [0] * self.syndrome_width
        for p, s in enumerate(self.unit_syndromes):
            while s:
                low = s & -s
                rows[low.bit_length() - 1] |= 1 << p
                s ^= low
        return tuple(rows)

    @property
    def parity(self) -> ParityCheckMatrix:
        return ParityCheckMatrix(self.parity_rows, self.length)

    def syndrome(self, v: int) -> int:
        if not 0 <= v < (1 << self.length):
            raise ValueError(f"vector does not have length {self.length}")
        s = 0
        units = self.unit_syndromes
        while v:
            low = v & -v
            s ^= units[low.bit_length() - 1]
            v ^= low
        return s

    def contains(self, v: int) -> bool:
        return self.syndrome(v) == 0

    def codewords(self) -> Iterator[int]:
        """All 2^dimension codewords; only sensible for small dimensions."""
        return gf2_span(list(self.generator_rows))

    def quad_sum_in_subspace(self, value: int) -> bool:
        """Whether a quad_sum value lies in the span of the targets."""
        # the projection functionals vanish exactly on the span
        return all((mask & value).bit_count() & 1 == 0 for mask in self.proj_masks)

    def describe(self) -> Dict[str, object]:
        ctx = self.ctx
        return {
            "m": ctx.m,
            "u": ctx.u,
            "poly_m": hex(ctx.gm.poly),
            "poly_u": hex(ctx.gu.poly),
            "level": self.level,
            "extended": self.extended,
            "length": self.length,
            "dimension": self.dimension,
            "syndrome_targets": list(self.syndrome_targets),
            "adjoined_reps": [hex(v) for v in self.adjoined_reps],
        }

    def __repr__(self) -> str:
        tag = "*" if self.extended else ""
        return (
            f"LinearCode(m={self.ctx.m}, level={self.level}{tag}, "
            f"[{self.length},{self.dimension}])"
        )


def membership(v: int, code: LinearCode) -> bool:
    """True iff v (an int bit vector of the code's length) is a codeword."""
    return code.contains(v)


def build_base_code(ctx: FieldContext) -> LinearCode:
    """Level-u code: Hamming condition plus quad_sum(v) = 0."""
    code = LinearCode(ctx, ctx.u, (), ())
    # the stacked Hamming/power parity pair must cut out the same code
    stacked = build_hamming_parity(ctx).rows + build_power_parity(ctx).rows
    if gf2_rref(stacked, ctx.n)[0] != gf2_rref(code.parity_rows, ctx.n)[0]:
        raise RuntimeError("syndrome construction disagrees with stacked parity")
    return code


def _smallest_weight3_rep(ctx: FieldContext, target: int) -> int:
    """Lexicographically smallest (by sorted support) weight-3 vector with
    field sum 0 and quad_sum equal to target."""
    exp, log = ctx.gm.exp, ctx.gm.log
    qterm = ctx.qterm
    for a in range(ctx.n):
        for b in range(a + 1, ctx.n):
            t = log[exp[a] ^ exp[b]]
            if t <= b:
                continue
            if qterm[a] ^ qterm[b] ^ qterm[t] == target:
                return (1 << a) | (1 << b) | (1 << t)
    raise RuntimeError(f"no weight-3 vector with quad_sum {target}")


def build_chain(
    ctx: FieldContext, syndrome_targets: Optional[Sequence[int]] = None
) -> List[LinearCode]:
    """The full nested chain; entry i of the result is the level-i code.

    ``syndrome_targets`` fixes the order in which quad_sum values are adjoined
    (defaults to the standard basis 1, 2, 4, ...).  A partial list is
    completed canonically with the smallest independent values.
    """
    targets: List[int] = []
    if syndrome_targets is not None:
        for t in syndrome_targets:
            if not 0 < t < ctx.q:
                raise ValueError(f"syndrome target {t} outside F_2^{ctx.u}")
            targets.append(t)
        if gf2_rank(targets, ctx.u) != len(targets):
            raise ValueError("syndrome targets are dependent")
        if len(targets) > ctx.u:
            raise ValueError("more targets than the subfield dimension")
    else:
        targets = [1 << k for k in range(ctx.u)]
    cand = 1
    while len(targets) < ctx.u:
        if gf2_rank(targets + [cand], ctx.u) > len(targets):
            targets.append(cand)
        cand += 1
    reps = [_smallest_weight3_rep(ctx, t) for t in targets]
    chain = []
    for level in range(ctx.u + 1):
        k = ctx.u - level
        chain.append(LinearCode(ctx, level, targets[:k], reps[:k]))
    return chain


def count_codes_at_level(u: int, i: int) -> int:
    """Number of distinct level-i codes: the Gaussian binomial [u, u-i]_2."""
    if not 0 <= i <= u:
        raise ValueError(f"level {i} outside 0..{u}")
    k = u - i
    num = den = 1
    for t in range(k):
        num *= (1 << (u - t)) - 1
        den *= (1 << (k - t)) - 1
    assert num % den == 0
    return num // den


def count_full_chains(u: int) -> int:
    """Number of maximal nested chains: prod over 0 <= i < u of (2^(u-i) - 1)."""
    out = 1
    for i in range(u):
        out *= (1 << (u - i)) - 1
    return out


def extend_code(code: LinearCode) -> LinearCode:
    """Append the parity coordinate at index 0 (labeled by the element 0)."""
    if code.extended:
        raise ValueError("code is already extended")
    return LinearCode(
        code.ctx, code.level, code.syndrome_targets, code.adjoined_reps, extended=True
    )


@dataclass(frozen=True)
class DualSpectrum:
    """Nonzero dual weights with multiplicities; s is the external distance."""

    counts: Dict[int, int]

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(sorted(self.counts))

    @property
    def s(self) -> int:
        return len(self.counts)


def dual_enumerate(code: LinearCode) -> List[int]:
    """All 2^(syndrome width) words of the dual, Gray-code order."""
    if code.syndrome_width > 24:
        raise ValueError("dual enumeration capped at 2^24 words")
    return list(gf2_span(list(code.parity_rows)))


def dual_spectrum(code: LinearCode) -> DualSpectrum:
    counts: Dict[int, int] = {}
    for word in dual_enumerate(code):
        if word:
            w = word.bit_count()
            counts[w] = counts.get(w, 0) + 1
    return DualSpectrum(counts)


@dataclass(frozen=True)
class CyclicReport:
    cyclic: bool
    claimed: bool


def verify_cyclic(code: LinearCode) -> CyclicReport:
    """Closure of the dual under the coordinate rotation p -> p+1 mod n.

    Only the level-u and level-0 codes are claimed cyclic; for other levels
    the result is reported without any claim attached.
    """
    if code.extended:
        raise ValueError("cyclicity is about the unextended coordinate ring")
    n = code.length
    mask = (1 << n) - 1
    words = set(dual_enumerate(code))
    cyclic = all(((w << 1) | (w >> (n - 1))) & mask in words for w in words)
    return CyclicReport(cyclic=cyclic, claimed=code.level in (0, code.ctx.u))


def save_code(code: LinearCode, path_prefix: str) -> Tuple[str, str]:
    """Write ``<prefix>.json`` (descriptor) and ``<prefix>.pchk`` (0/1 rows)."""
    desc_path = path_prefix + ".json"
    pchk_path = path_prefix + ".pchk"
    with open(desc_path, "w", encoding="utf-8") as fh:
        json.dump(code.describe(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(pchk_path, "w", encoding="utf-8") as fh:
        for row in code.parity_rows:
            fh.write("".join("1" if (row >> p) & 1 else "0" for p in range(code.length)))
            fh.write("\n")
    return desc_path, pchk_path


def load_code(desc_path: str) -> LinearCode:
    """Rebuild a code from its JSON descriptor, checking the stored rows."""
    with open(desc_path, "r", encoding="utf-8") as fh:
        desc = json.load(fh)
    ctx = build_field_context(
        int(desc["m"]), int(desc["poly_m"], 0), int(desc["poly_u"], 0)
    )
    code = LinearCode(
        ctx,
        int(desc["level"]),
        [int(t) for t in desc["syndrome_targets"]],
        [int(v, 0) for v in desc["adjoined_reps"]],
        extended=bool(desc["extended"]),
    )
    if code.dimension != int(desc["dimension"]):
        raise ValueError("descriptor dimension disagrees with reconstruction")
    pchk_path = os.path.splitext(desc_path)[0] + ".pchk"
    if os.path.exists(pchk_path):
        with open(pchk_path, "r", encoding="utf-8") as fh:
            lines = [line.strip() for line in fh if line.strip()]
        rows = tuple(int(line[::-1], 2) for line in lines)
        if rows != code.parity_rows:
            raise ValueError("stored parity rows disagree with reconstruction")
    return code
