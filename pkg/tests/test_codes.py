import itertools
import random

import pytest

from crcodes.field import build_field_context
from crcodes.codes import (
    build_base_code,
    build_chain,
    build_hamming_parity,
    build_power_parity,
    count_codes_at_level,
    count_full_chains,
    dual_enumerate,
    dual_spectrum,
    extend_code,
    load_code,
    membership,
    save_code,
    verify_cyclic,
)
from crcodes.gf2 import gf2_rank, gf2_span


def test_hamming_parity_columns():
    ctx = build_field_context(4)
    hm = build_hamming_parity(ctx)
    assert hm.n_rows == 4 and hm.n_cols == 15
    assert hm.rank() == 4
    for p in range(15):
        col = sum(((hm.rows[t] >> p) & 1) << t for t in range(4))
        assert col == ctx.gm.exp[p]


def test_power_parity_columns():
    for m in (4, 6):
        ctx = build_field_context(m)
        em = build_power_parity(ctx)
        assert em.rank() == ctx.u
        cols = []
        for p in range(ctx.n):
            col = sum(((em.rows[t] >> p) & 1) << t for t in range(ctx.m))
            cols.append(col)
            # every column lies in the subfield: zero alpha-component
            assert ctx.quad_decompose(col).g2 == 0
        for i in range(ctx.n):
            for j in range(i):
                same = (ctx.r * (i - j)) % ctx.n == 0
                assert (cols[i] == cols[j]) == same


def test_stacked_parity_rank():
    for m in (4, 6):
        ctx = build_field_context(m)
        rows = build_hamming_parity(ctx).rows + build_power_parity(ctx).rows
        assert gf2_rank(rows, ctx.n) == ctx.m + ctx.u


def test_chain_dimensions():
    for m, dims in ((4, [11, 10, 9]), (6, [57, 56, 55, 54])):
        ctx = build_field_context(m)
        chain = build_chain(ctx)
        assert [c.dimension for c in chain] == dims
        assert [c.level for c in chain] == list(range(ctx.u + 1))
        base = build_base_code(ctx)
        assert base.parity_rows == chain[ctx.u].parity_rows


def test_base_membership_equivalence_m4():
    # parity-product membership against field-sum plus quad_sum membership
    ctx = build_field_context(4)
    code = build_base_code(ctx)
    stacked = build_hamming_parity(ctx).rows + build_power_parity(ctx).rows
    for v in range(1 << 15):
        by_parity = all((row & v).bit_count() & 1 == 0 for row in stacked)
        h = 0
        t = v
        while t:
            low = t & -t
            h ^= ctx.gm.exp[low.bit_length() - 1]
            t ^= low
        by_sums = h == 0 and ctx.quad_sum(v) == 0
        assert by_parity == by_sums
        assert code.contains(v) == by_sums


def test_chain_nesting():
    for m in (4, 6):
        ctx = build_field_context(m)
        chain = build_chain(ctx)
        for i in range(ctx.u):
            finer = chain[i + 1]
            coarser = chain[i]
            for g in finer.generator_rows:
                assert membership(g, coarser)
        # adjoined representative j lies in level i exactly when j <= u - i
        targets = chain[0].syndrome_targets
        reps = chain[0].adjoined_reps
        for i in range(ctx.u + 1):
            for j, rep in enumerate(reps):
                assert membership(rep, chain[i]) == (j < ctx.u - i)
        for j, (t, rep) in enumerate(zip(targets, reps)):
            assert rep.bit_count() == 3
            assert ctx.quad_sum(rep) == t


def test_chain_custom_targets():
    ctx = build_field_context(6)
    chain = build_chain(ctx, [3, 5])
    assert chain[0].syndrome_targets == (3, 5, 1)
    assert [c.dimension for c in chain] == [57, 56, 55, 54]
    with pytest.raises(ValueError):
        build_chain(ctx, [3, 5, 6])  # dependent: 3 ^ 5 = 6
    with pytest.raises(ValueError):
        build_chain(ctx, [0])
    with pytest.raises(ValueError):
        build_chain(ctx, [8])
    with pytest.raises(ValueError):
        build_chain(ctx, [1, 2, 4, 7])


def test_min_weights_m4():
    ctx = build_field_context(4)
    chain = build_chain(ctx)
    for code, expect_w3 in zip(chain, [35, 15, 5]):
        counts = {}
        for c in code.codewords():
            w = c.bit_count()
            counts[w] = counts.get(w, 0) + 1
        assert min(w for w in counts if w > 0) == 3
        assert counts[3] == expect_w3


def test_extension_properties():
    ctx = build_field_context(4)
    code = build_chain(ctx)[2]
    ext = extend_code(code)
    assert (ext.length, ext.dimension) == (16, 9)
    weights = sorted({c.bit_count() for c in ext.codewords() if c})
    assert weights[0] == 4
    assert all(w % 2 == 0 for w in weights)
    with pytest.raises(ValueError):
        extend_code(ext)
    # parity coordinate is index 0: puncturing recovers the original code
    rng = random.Random(7)
    for _ in range(500):
        v = rng.getrandbits(15)
        par = v.bit_count() & 1
        assert membership(v, code) == membership((v << 1) | par, ext)
        if membership(v, code) and par == 0:
            assert not membership((v << 1) | 1, ext)


def test_extended_unit_syndromes():
    ctx = build_field_context(4)
    ext = extend_code(build_base_code(ctx))
    assert ext.unit_syndromes[0] == 1 << (ctx.m + ctx.u)
    for p in range(ctx.n):
        assert ext.unit_syndromes[p + 1] == ext.base.unit_syndromes[p] | (
            1 << (ctx.m + ctx.u)
        )


def test_dual_spectrum_three_weights():
    for m in (4, 6):
        ctx = build_field_context(m)
        chain = build_chain(ctx)
        half = 1 << (m - 1)
        step = 1 << (ctx.u - 1)
        for i in range(1, ctx.u + 1):
            sp = dual_spectrum(chain[i])
            assert sp.weights == (half - step, half, half + step)
            assert sp.s == 3
            w1, w2, w3 = sp.weights
            assert w1 + w3 == ctx.n + 1
            assert 2 * w2 == ctx.n + 1
        sp0 = dual_spectrum(chain[0])
        assert sp0.weights == (half,)
        assert sp0.s == 1


def test_extended_dual_spectrum():
    for m in (4, 6):
        ctx = build_field_context(m)
        chain = build_chain(ctx)
        half = 1 << (m - 1)
        step = 1 << (ctx.u - 1)
        for i in range(1, ctx.u + 1):
            sp = dual_spectrum(extend_code(chain[i]))
            assert sp.weights == (half - step, half, half + step, 1 << m)
            assert sp.s == 4
        sp0 = dual_spectrum(extend_code(chain[0]))
        assert sp0.weights == (half, 1 << m)
        assert sp0.s == 2


def test_dual_words_annihilate_code():
    ctx = build_field_context(4)
    code = build_base_code(ctx)
    words = dual_enumerate(code)
    assert len(words) == len(set(words)) == 1 << code.syndrome_width
    for d in words:
        for g in code.generator_rows:
            assert (d & g).bit_count() & 1 == 0


def test_cyclicity_reports():
    ctx = build_field_context(6)
    chain = build_chain(ctx)
    rep_u = verify_cyclic(chain[3])
    rep_0 = verify_cyclic(chain[0])
    assert rep_u.cyclic and rep_u.claimed
    assert rep_0.cyclic and rep_0.claimed
    for i in (1, 2):
        rep = verify_cyclic(chain[i])
        assert not rep.claimed
    with pytest.raises(ValueError):
        verify_cyclic(extend_code(chain[3]))


def _all_subspaces(u, k):
    vecs = list(range(1, 1 << u))
    seen = set()
    for combo in itertools.combinations(vecs, k):
        if gf2_rank(list(combo), u) != k:
            continue
        span = frozenset(gf2_span(list(combo)))
        seen.add(span)
    return seen


def test_count_codes_at_level_against_enumeration():
    for u in (2, 3):
        for i in range(u + 1):
            k = u - i
            if k == 0:
                assert count_codes_at_level(u, i) == 1
            else:
                assert count_codes_at_level(u, i) == len(_all_subspaces(u, k))
    assert count_codes_at_level(2, 1) == 3
    assert count_codes_at_level(3, 1) == 7
    assert count_codes_at_level(3, 2) == 7
    with pytest.raises(ValueError):
        count_codes_at_level(3, 4)


def test_count_full_chains_against_enumeration():
    for u in (2, 3):
        subs = {k: _all_subspaces(u, k) for k in range(1, u + 1)}
        flags = 0
        for flag in itertools.product(*(subs[k] for k in range(1, u + 1))):
            if all(flag[k] < flag[k + 1] for k in range(u - 1)):
                flags += 1
        assert count_full_chains(u) == flags
    assert count_full_chains(2) == 3
    assert count_full_chains(3) == 21


def test_membership_examples_level1():
    # weight-3 Hamming words belong to level i exactly when their quad_sum
    # falls in the adjoined span
    ctx = build_field_context(4)
    chain = build_chain(ctx)
    found = {0: False, 1: False, 2: False}
    for a in range(ctx.n):
        for b in range(a + 1, ctx.n):
            t = ctx.gm.log[ctx.gm.exp[a] ^ ctx.gm.exp[b]]
            if t <= b:
                continue
            v = (1 << a) | (1 << b) | (1 << t)
            s = ctx.quad_sum(v)
            assert membership(v, chain[0])
            assert membership(v, chain[1]) == (s in (0, 1))
            assert membership(v, chain[2]) == (s == 0)
            if s in found:
                found[s] = True
    assert all(found.values())


def test_parity_syndrome_matches_unit_xor():
    ctx = build_field_context(6)
    for code in (build_base_code(ctx), extend_code(build_base_code(ctx))):
        rng = random.Random(code.length)
        for _ in range(200):
            v = rng.getrandbits(code.length)
            assert code.parity.syndrome(v) == code.syndrome(v)


def test_save_load_roundtrip(tmp_path):
    ctx = build_field_context(4)
    code = build_chain(ctx)[1]
    desc, pchk = save_code(code, str(tmp_path / "level1"))
    loaded = load_code(desc)
    assert loaded.parity_rows == code.parity_rows
    assert loaded.level == 1 and not loaded.extended
    ext = extend_code(code)
    desc_e, _ = save_code(ext, str(tmp_path / "level1x"))
    loaded_e = load_code(desc_e)
    assert loaded_e.extended and loaded_e.parity_rows == ext.parity_rows
    # a tampered parity file must be rejected
    lines = (tmp_path / "level1.pchk").read_text().splitlines()
    lines[0] = lines[0][::-1]
    (tmp_path / "level1.pchk").write_text("\n".join(lines) + "\n")
    with pytest.raises(ValueError):
        load_code(desc)
