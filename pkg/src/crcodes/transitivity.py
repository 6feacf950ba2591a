"""Permutation actions on chain codes and orbit counts on their cosets.

Positions carry quadratic-pair labels (g1, g2) over the subfield, so an
invertible 2x2 subfield matrix acts columnwise as (g1, g2) -> (a*g1 + a1*g2,
b*g1 + b1*g2) and induces a coordinate permutation.  For vectors in the
kernel of the field-sum parity map the position weight function scales by
the determinant under this action, which is what makes the level codes
invariant: determinant 1 always works, and a diagonal part works exactly
when the determinant multiplies the admissible syndrome subspace onto
itself.  Squaring the field labels gives a further semilinear permutation
whose effect on the weight function is a twisted power; it rescues levels
where the linear stabilizer alone leaves too many orbits.

Orbit counting is generator-closure BFS over syndromes.  A coset is moved
by permuting its leader and repacking the syndrome, so every generator is
first checked to stabilize the code exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .codes import LinearCode
from .field import FieldContext, GF2Ext, QuadPair
from .gf2 import bit_support, gf2_span
from .regularity import CosetTable, enumerate_cosets

__all__ = [
    "Mat2",
    "OrbitPartition",
    "CTReport",
    "mat_identity",
    "mat_mul",
    "mat_det",
    "sl2_generators",
    "gl2_generators",
    "matrix_group_order",
    "matrix_to_permutation",
    "frobenius_permutation",
    "compose_permutations",
    "permute_word",
    "act_on_coset",
    "orbits_on_cosets",
    "orbit_weight2_structure",
    "translation_permutation",
    "lift_permutation",
    "extended_orbits",
    "default_acting_group",
    "semilinear_extension",
    "certify_transitivity",
    "conjecture_predicate",
    "conjecture_report",
]


@dataclass(frozen=True)
class Mat2:
    """The matrix [[a, a1], [b, b1]] with subfield entries."""

    a: int
    a1: int
    b: int
    b1: int

    def entries(self) -> Tuple[int, int, int, int]:
        return (self.a, self.a1, self.b, self.b1)


def mat_identity() -> Mat2:
    return Mat2(1, 0, 0, 1)


def mat_det(phi: Mat2, gu: GF2Ext) -> int:
    return gu.mul(phi.a, phi.b1) ^ gu.mul(phi.a1, phi.b)


def mat_mul(x: Mat2, y: Mat2, gu: GF2Ext) -> Mat2:
    return Mat2(
        gu.mul(x.a, y.a) ^ gu.mul(x.a1, y.b),
        gu.mul(x.a, y.a1) ^ gu.mul(x.a1, y.b1),
        gu.mul(x.b, y.a) ^ gu.mul(x.b1, y.b),
        gu.mul(x.b, y.a1) ^ gu.mul(x.b1, y.b1),
    )


def sl2_generators(ctx: FieldContext) -> List[Mat2]:
    """Three matrices generating the determinant-1 group over the subfield:
    two transvections and a determinant-1 diagonal whose conjugates supply
    the remaining transvections."""
    g = 2 if ctx.u > 1 else 1
    return [Mat2(1, 1, 0, 1), Mat2(1, 0, g, 1), Mat2(g, 0, 0, ctx.gu.inv(g))]


def gl2_generators(ctx: FieldContext) -> List[Mat2]:
    """Transvections plus one diagonal of primitive determinant."""
    g = 2 if ctx.u > 1 else 1
    return [Mat2(1, 1, 0, 1), Mat2(1, 0, g, 1), Mat2(g, 0, 0, 1)]


def matrix_group_order(gens: Sequence[Mat2], gu: GF2Ext) -> int:
    """Cardinality of the generated matrix group, by closure."""
    seen = {mat_identity().entries()}
    queue = deque([mat_identity()])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mat_mul(g, x, gu)
            if y.entries() not in seen:
                seen.add(y.entries())
                queue.append(y)
    return len(seen)


def matrix_to_permutation(ctx: FieldContext, phi: Mat2) -> Tuple[int, ...]:
    """Coordinate permutation of the pair labels under the column action."""
    gu = ctx.gu
    if mat_det(phi, gu) == 0:
        raise ValueError("singular matrix does not permute positions")
    perm = []
    for g1, g2 in ctx.quad_pairs:
        h1 = gu.mul(phi.a, g1) ^ gu.mul(phi.a1, g2)
        h2 = gu.mul(phi.b, g1) ^ gu.mul(phi.b1, g2)
        perm.append(ctx.position_of_pair(QuadPair(h1, h2)))
    return tuple(perm)


def frobenius_permutation(ctx: FieldContext, k: int) -> Tuple[int, ...]:
    """Position map of repeated label squaring: log doubles mod n."""
    return tuple((p << k) % ctx.n for p in range(ctx.n))


def compose_permutations(outer: Sequence[int], inner: Sequence[int]) -> Tuple[int, ...]:
    """Apply inner first, then outer."""
    return tuple(outer[p] for p in inner)


def permute_word(perm: Sequence[int], v: int) -> int:
    out = 0
    for p in bit_support(v):
        out |= 1 << perm[p]
    return out


def act_on_coset(perm: Sequence[int], syndrome: int, code: LinearCode, table: CosetTable) -> int:
    s = 0
    for p in bit_support(table.leader_of(syndrome)):
        s ^= code.unit_syndromes[perm[p]]
    return s


@dataclass(frozen=True)
class OrbitPartition:
    class_of: Tuple[int, ...]
    orbit_count: int
    orbit_weights: Tuple[int, ...]
    orbit_sizes: Tuple[int, ...]


def _check_stabilizes(perm: Sequence[int], code: LinearCode) -> Optional[int]:
    """Index of a generator row whose image leaves the code, or None."""
    for idx, row in enumerate(code.generator_rows):
        if not code.contains(permute_word(perm, row)):
            return idx
    return None


def orbits_on_cosets(
    gens: Sequence[Sequence[int]], code: LinearCode, table: Optional[CosetTable] = None
) -> OrbitPartition:
    """Orbit partition of all cosets under the generated permutation group."""
    if table is None:
        table = enumerate_cosets(code, with_distributions=False)
    for gi, perm in enumerate(gens):
        if len(perm) != code.length:
            raise ValueError(f"generator {gi} has wrong length")
        bad = _check_stabilizes(perm, code)
        if bad is not None:
            raise ValueError(
                f"generator {gi} does not stabilize the code "
                f"(moves generator row {bad} outside)"
            )
    size = len(table)
    class_of = [-1] * size
    weights: List[int] = []
    sizes: List[int] = []
    for s0 in range(size):
        if class_of[s0] >= 0:
            continue
        oid = len(weights)
        class_of[s0] = oid
        members = 1
        w = table.weight_of(s0)
        queue = deque([s0])
        while queue:
            s = queue.popleft()
            for perm in gens:
                t = act_on_coset(perm, s, code, table)
                if class_of[t] < 0:
                    if table.weight_of(t) != w:
                        raise RuntimeError("orbit mixes coset weights")
                    class_of[t] = oid
                    members += 1
                    queue.append(t)
        weights.append(w)
        sizes.append(members)
    return OrbitPartition(tuple(class_of), len(weights), tuple(weights), tuple(sizes))


@dataclass(frozen=True)
class Weight2Report:
    coset_count: int
    expected_count: int
    all_have_nonzero_det_pair: bool
    sum_identity_holds: bool


def orbit_weight2_structure(code: LinearCode, table: Optional[CosetTable] = None) -> Weight2Report:
    """Weight-2 coset census of the top-level code.

    Checks that every weight-2 coset contains a pair of positions whose
    quadratic determinant is nonzero, that the count is r*rbar^2, and that
    the weight function of a position sum splits as the pair sum plus the
    determinant.
    """
    if code.level != code.ctx.u or code.extended:
        raise ValueError("weight-2 census applies to the unextended top level")
    ctx = code.ctx
    if table is None:
        table = enumerate_cosets(code, with_distributions=False)
    exp, log, qterm = ctx.gm.exp, ctx.gm.log, ctx.qterm
    identity_ok = True
    for a in range(ctx.n):
        for b in range(a + 1, ctx.n):
            h = exp[a] ^ exp[b]
            pa, pb = ctx.quad_pairs[a], ctx.quad_pairs[b]
            det = ctx.pair_det(pa, pb)
            if qterm[log[h]] != qterm[a] ^ qterm[b] ^ det:
                identity_ok = False
    weight2 = [r for r in table.records if r.weight == 2]
    all_det = True
    for rec in weight2:
        found = False
        for a in range(ctx.n):
            sa = code.unit_syndromes[a]
            for b in range(a + 1, ctx.n):
                if sa ^ code.unit_syndromes[b] == rec.syndrome:
                    if ctx.pair_det(ctx.quad_pairs[a], ctx.quad_pairs[b]) != 0:
                        found = True
                        break
            if found:
                break
        if not found:
            all_det = False
    expected = ctx.r * ctx.rbar * ctx.rbar
    return Weight2Report(len(weight2), expected, all_det, identity_ok)


def translation_permutation(ctx: FieldContext, w: int) -> Tuple[int, ...]:
    """Label-addition permutation on the extended coordinate set.

    Position 0 is labeled by the zero field element and position j >= 1 by
    the field element with log j-1; adding w permutes the labels.
    """
    if not 0 <= w < (1 << ctx.m):
        raise ValueError("translation label out of range")

    def pos_of(x: int) -> int:
        return 0 if x == 0 else ctx.gm.log[x] + 1

    def label_of(p: int) -> int:
        return 0 if p == 0 else ctx.gm.exp[p - 1]

    return tuple(pos_of(w ^ label_of(p)) for p in range(ctx.n + 1))


def lift_permutation(perm: Sequence[int]) -> Tuple[int, ...]:
    """Extend a base-coordinate permutation by fixing the parity position."""
    return (0,) + tuple(p + 1 for p in perm)


def _matrix_perms(ctx: FieldContext, mats: Sequence[Mat2]) -> List[Tuple[int, ...]]:
    return [matrix_to_permutation(ctx, phi) for phi in mats]


@dataclass(frozen=True)
class ActingGroup:
    name: str
    matrices: Tuple[Mat2, ...]
    semilinear: Tuple[Tuple[int, int], ...] = ()  # (frobenius power, diagonal)

    def permutations(self, ctx: FieldContext) -> List[Tuple[int, ...]]:
        perms = _matrix_perms(ctx, self.matrices)
        for k, d in self.semilinear:
            diag = matrix_to_permutation(ctx, Mat2(d, 0, 0, 1))
            perms.append(compose_permutations(diag, frobenius_permutation(ctx, k)))
        return perms


def _subspace_of(code: LinearCode) -> frozenset:
    return frozenset(gf2_span(code.syndrome_targets))


def default_acting_group(code: LinearCode) -> ActingGroup:
    """The linear stabilizer used first: full 2x2 group at the ends, the
    determinant-1 group at level one, and the determinant-stabilizer of the
    admissible syndrome subspace in between."""
    ctx = code.ctx
    if code.extended:
        raise ValueError("acting groups are built on the unextended code")
    if code.level in (0, ctx.u):
        return ActingGroup("GL2", tuple(gl2_generators(ctx)))
    if code.level == 1:
        return ActingGroup("SL2", tuple(sl2_generators(ctx)))
    a_space = _subspace_of(code)
    gu = ctx.gu
    stab = [d for d in range(1, ctx.q) if {gu.mul(d, x) for x in a_space} == a_space]
    best = max(stab, key=gu.element_order)
    if gu.element_order(best) > 1:
        mats = tuple(sl2_generators(ctx)) + (Mat2(best, 0, 0, 1),)
        return ActingGroup("SL2+diag", mats)
    return ActingGroup("SL2", tuple(sl2_generators(ctx)))


def semilinear_extension(code: LinearCode) -> Tuple[Tuple[int, int], ...]:
    """Label-squaring permutations compatible with the admissible subspace.

    For each power k, squaring k times multiplies the position weight
    function by the alpha-component of alpha^(2^k) and raises it to the
    2^k-th power; a diagonal d is sought so that the composite maps the
    admissible subspace onto itself.  Returns (k, d) pairs.
    """
    ctx = code.ctx
    gu = ctx.gu
    a_space = _subspace_of(code)
    out = []
    for k in range(1, ctx.m):
        qk = ctx.quad_decompose(ctx.gm.exp[(1 << k) % ctx.n]).g2
        if qk == 0:
            continue
        twisted = {gu.power(x, 1 << k) for x in a_space}
        for d in range(1, ctx.q):
            scale = gu.mul(d, qk)
            if {gu.mul(scale, x) for x in twisted} == a_space:
                out.append((k, d))
                break
    return tuple(out)


@dataclass(frozen=True)
class CTReport:
    m: int
    level: int
    rho: int
    group: str
    orbit_count: int
    certified: bool
    predicted: bool
    orbit_weights: Tuple[int, ...]
    orbit_sizes: Tuple[int, ...]


def conjecture_predicate(u: int, i: int) -> bool:
    """Levels claimed completely transitive: the ends, level one, and small i."""
    return i in (0, 1, u) or (1 << i) <= u + 1


def certify_transitivity(
    code: LinearCode, table: Optional[CosetTable] = None
) -> CTReport:
    """One-sided verdict: certified when some stabilizing subgroup reaches
    rho+1 orbits; otherwise undetermined with the best orbit count found."""
    ctx = code.ctx
    if table is None:
        table = enumerate_cosets(code, with_distributions=False)
    group = default_acting_group(code)
    perms = group.permutations(ctx)
    orbits = orbits_on_cosets(perms, code, table)
    name = group.name
    if orbits.orbit_count > table.rho + 1 and 0 < code.level < ctx.u:
        semi = semilinear_extension(code)
        if semi:
            wider = ActingGroup(group.name + "+frob", group.matrices, semi)
            candidate = orbits_on_cosets(wider.permutations(ctx), code, table)
            if candidate.orbit_count < orbits.orbit_count:
                orbits = candidate
                name = wider.name
    return CTReport(
        m=ctx.m,
        level=code.level,
        rho=table.rho,
        group=name,
        orbit_count=orbits.orbit_count,
        certified=orbits.orbit_count == table.rho + 1,
        predicted=conjecture_predicate(ctx.u, code.level),
        orbit_weights=orbits.orbit_weights,
        orbit_sizes=orbits.orbit_sizes,
    )


def extended_orbits(
    code_star: LinearCode, table: Optional[CosetTable] = None
) -> Tuple[OrbitPartition, str]:
    """Orbits of the extended code under lifted base generators plus the
    label-addition translations."""
    if not code_star.extended:
        raise ValueError("code is not extended")
    base = code_star.base
    assert base is not None
    ctx = code_star.ctx
    if table is None:
        table = enumerate_cosets(code_star, with_distributions=False)
    translations = [translation_permutation(ctx, 1 << k) for k in range(ctx.m)]
    group = default_acting_group(base)
    perms = [lift_permutation(p) for p in group.permutations(ctx)] + translations
    orbits = orbits_on_cosets(perms, code_star, table)
    name = group.name + "+translations"
    if orbits.orbit_count > table.rho + 1 and 0 < base.level < ctx.u:
        semi = semilinear_extension(base)
        if semi:
            wider = ActingGroup(group.name + "+frob", group.matrices, semi)
            perms = [lift_permutation(p) for p in wider.permutations(ctx)] + translations
            candidate = orbits_on_cosets(perms, code_star, table)
            if candidate.orbit_count < orbits.orbit_count:
                orbits = candidate
                name = wider.name + "+translations"
    return orbits, name


def conjecture_report(
    m: int,
    levels: Optional[Sequence[int]] = None,
    syndrome_targets: Optional[Sequence[int]] = None,
) -> List[CTReport]:
    """Per-level transitivity verdicts next to the predicted levels."""
    from .field import build_field_context
    from .codes import build_chain

    if m > 8:
        raise ValueError("transitivity survey supported for m <= 8")
    ctx = build_field_context(m)
    chain = build_chain(ctx, syndrome_targets)
    picked = range(ctx.u + 1) if levels is None else levels
    return [certify_transitivity(chain[i]) for i in picked]
