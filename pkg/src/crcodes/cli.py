"""Command line front end: build chains, verify claims, export graphs.

Exit codes: 0 all selected checks passed, 2 at least one check failed,
3 configuration error.  Reports are deterministic for a fixed config; the
JSON report schema is described in the README.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .codes import build_chain, dual_spectrum, extend_code, save_code
from .field import build_field_context, quad_sum
from .graphs import (
    all_distances,
    build_coset_graph,
    check_antipodal,
    check_distance_regular,
    export_graph,
    fold,
    verify_cover,
    verify_antipodal_cover_array,
)
from .regularity import (
    cria_array,
    design_lambda,
    enumerate_cosets,
    extended_cria_array,
    extended_weight4_codewords,
    verify_completely_regular,
    verify_design,
    verify_extended_array,
    verify_extension_condition,
    verify_mu_identity,
    verify_uniformly_packed,
    weight3_codewords,
)
from .transitivity import (
    certify_transitivity,
    conjecture_report,
    extended_orbits,
)

SCHEMA = "crcodes-report/1"
SUITES = ("cr", "up", "designs", "duals", "ct", "graph", "cover", "extended")


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep exit code 3 for bad flags
        raise ConfigError(message)


@dataclass
class Check:
    claim: str
    m: int
    level: int
    extended: bool
    ok: bool
    expected: str
    computed: str
    seconds: float

    def as_dict(self) -> Dict[str, object]:
        return {
            "claim": self.claim,
            "m": self.m,
            "level": self.level,
            "extended": self.extended,
            "ok": self.ok,
            "expected": self.expected,
            "computed": self.computed,
            "seconds": round(self.seconds, 4),
        }

    def line(self) -> str:
        tag = f"m={self.m} i={self.level}" + ("*" if self.extended else "")
        word = "PASS" if self.ok else "FAIL"
        return f"{word} {self.claim:<28} {tag:<10} {self.computed}"


class Workspace:
    """Caches per-m contexts, chains, coset tables, graphs and distances."""

    def __init__(self, targets: Optional[Sequence[int]] = None,
                 poly_m: Optional[int] = None, poly_u: Optional[int] = None):
        self.targets = targets
        self.poly_m = poly_m
        self.poly_u = poly_u
        # builders call back into the cache, so the lock must be re-entrant
        self._lock = threading.RLock()
        self._cache: Dict[Tuple, object] = {}

    def _get(self, key, builder):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = builder()
            return self._cache[key]

    def ctx(self, m):
        return self._get(("ctx", m), lambda: build_field_context(m, self.poly_m, self.poly_u))

    def chain(self, m):
        return self._get(("chain", m), lambda: build_chain(self.ctx(m), self.targets))

    def code(self, m, i, ext=False):
        if ext:
            return self._get(("ext", m, i), lambda: extend_code(self.chain(m)[i]))
        return self.chain(m)[i]

    def table(self, m, i, ext=False):
        key = ("table", m, i, ext)
        dists = m <= 6
        return self._get(
            key, lambda: enumerate_cosets(self.code(m, i, ext), with_distributions=dists)
        )

    def graph(self, m, i, ext=False):
        return self._get(("graph", m, i, ext), lambda: build_coset_graph(self.code(m, i, ext)))

    def dist(self, m, i, ext=False):
        return self._get(("dist", m, i, ext), lambda: all_distances(self.graph(m, i, ext)))

    def ct(self, m, i):
        return self._get(
            ("ct", m, i), lambda: certify_transitivity(self.code(m, i), self.table(m, i))
        )


def _check(claim, m, i, ext, ok, expected, computed, t0) -> Check:
    return Check(claim, m, i, ext, bool(ok), expected, computed, time.perf_counter() - t0)


def suite_cr(ws: Workspace, m: int, rng: random.Random, exhaustive: bool) -> List[Check]:
    out = []
    chain = ws.chain(m)
    for i, code in enumerate(chain):
        t0 = time.perf_counter()
        rep = verify_completely_regular(code, ws.table(m, i))
        expected = cria_array(m, i)
        got = str(rep.array) if rep.array else "not completely regular"
        out.append(_check("cria-array", m, i, False, rep.completely_regular
                          and rep.array == expected, str(expected), got, t0))
        t0 = time.perf_counter()
        mu_rep = verify_mu_identity(ws.table(m, i), expected)
        out.append(_check("mu-identity", m, i, False, mu_rep.ok,
                          "b_l*mu_l = c_(l+1)*mu_(l+1)", f"mu={mu_rep.mu}", t0))
    top = chain[-1]
    ctx = ws.ctx(m)
    t0 = time.perf_counter()
    if exhaustive and m == 4:
        vectors = range(1 << top.length)
        label = "exhaustive 2^15"
    else:
        count = 100_000
        vectors = (rng.getrandbits(top.length) for _ in range(count))
        label = f"{count} random vectors"
    ok = True
    for v in vectors:
        h = 0
        w = v
        while w:
            p = (w & -w).bit_length() - 1
            h ^= ctx.gm.exp[p]
            w &= w - 1
        if top.contains(v) != (h == 0 and quad_sum(ctx, v) == 0):
            ok = False
            break
    out.append(_check("membership-syndrome", m, ctx.u, False, ok,
                      "parity membership = zero field sum and zero weight sum",
                      label, t0))
    return out


def suite_up(ws: Workspace, m: int) -> List[Check]:
    out = []
    for i in range(ws.ctx(m).u + 1):
        for ext in (False, True):
            t0 = time.perf_counter()
            rep = verify_uniformly_packed(ws.code(m, i, ext), ws.table(m, i, ext))
            out.append(_check("uniformly-packed", m, i, ext, rep.uniformly_packed,
                              "rho = s", f"rho={rep.rho} s={rep.s}", t0))
    return out


def suite_duals(ws: Workspace, m: int) -> List[Check]:
    out = []
    half = 1 << (m - 1)
    quarter = 1 << (m // 2 - 1)
    for i, code in enumerate(ws.chain(m)):
        t0 = time.perf_counter()
        sp = dual_spectrum(code)
        if i == 0:
            expected = (half,)
        else:
            expected = (half - quarter, half, half + quarter)
        out.append(_check("dual-spectrum", m, i, False, sp.weights == expected,
                          str(expected), str(sp.weights), t0))
        if i > 0:
            t0 = time.perf_counter()
            cond = verify_extension_condition(code)
            out.append(_check("extension-condition", m, i, False, cond is True,
                              "w1+w3 = 2*w2 = n+1", f"verdict={cond}", t0))
    return out


def suite_designs(ws: Workspace, m: int) -> List[Check]:
    out = []
    n = (1 << m) - 1
    for i, code in enumerate(ws.chain(m)):
        lam = design_lambda(m, i)
        t0 = time.perf_counter()
        words = weight3_codewords(code)
        rep = verify_design(words, n, 3, 1)
        out.append(_check("design-weight3", m, i, False,
                          rep.ok and rep.lam == lam,
                          f"T({n},3,1,{lam})",
                          f"{len(words)} blocks, lambda={rep.lam}", t0))
        t0 = time.perf_counter()
        star = ws.code(m, i, ext=True)
        words4 = extended_weight4_codewords(star)
        rep4 = verify_design(words4, n + 1, 4, 2)
        out.append(_check("design-weight4", m, i, True,
                          rep4.ok and rep4.lam == lam,
                          f"T({n + 1},4,2,{lam})",
                          f"{len(words4)} blocks, lambda={rep4.lam}", t0))
    return out


def suite_ct(ws: Workspace, m: int) -> List[Check]:
    out = []
    for i in range(ws.ctx(m).u + 1):
        t0 = time.perf_counter()
        rep = ws.ct(m, i)
        out.append(_check("complete-transitivity", m, i, False, rep.certified,
                          f"{rep.rho + 1} orbits",
                          f"{rep.orbit_count} orbits via {rep.group}", t0))
        t0 = time.perf_counter()
        star = ws.code(m, i, ext=True)
        table = ws.table(m, i, ext=True)
        part, name = extended_orbits(star, table)
        out.append(_check("complete-transitivity", m, i, True,
                          part.orbit_count == table.rho + 1,
                          f"{table.rho + 1} orbits",
                          f"{part.orbit_count} orbits via {name}", t0))
    return out


def suite_graph(ws: Workspace, m: int) -> List[Check]:
    out = []
    for i in range(ws.ctx(m).u + 1):
        for ext in (False, True):
            t0 = time.perf_counter()
            g = ws.graph(m, i, ext)
            d = ws.dist(m, i, ext)
            rep = check_distance_regular(g, d)
            expected = extended_cria_array(m, i) if ext else cria_array(m, i)
            want_d = (2 if i == 0 else 4) if ext else (1 if i == 0 else 3)
            ok = (rep.connected and rep.distance_regular
                  and rep.array == expected and rep.diameter == want_d)
            note = f"D={rep.diameter} {rep.array}"
            if not ext and ws.ct(m, i).certified:
                note += " distance-transitive"
            out.append(_check("graph-distance-regular", m, i, ext, ok,
                              f"D={want_d} {expected}", note, t0))
            if i > 0:
                t0 = time.perf_counter()
                anti = check_antipodal(g, d)
                ok = anti.antipodal and anti.fibre_size == 1 << i
                out.append(_check("graph-antipodal", m, i, ext, ok,
                                  f"fibre {1 << i}",
                                  f"fibre {anti.fibre_size}", t0))
                if not ext and anti.antipodal:
                    t0 = time.perf_counter()
                    folded = fold(g, anti.fibres)
                    out.append(_check("graph-fold-complete", m, i, ext,
                                      folded.is_complete,
                                      f"complete on {1 << m}",
                                      f"{folded.vertex_count} vertices", t0))
    return out


def suite_cover(ws: Workspace, m: int) -> List[Check]:
    out = []
    u = ws.ctx(m).u
    for ext in (False, True):
        for i in range(1, u + 1):
            for j in range(i):
                t0 = time.perf_counter()
                rep = verify_cover(
                    ws.graph(m, i, ext), ws.graph(m, j, ext),
                    ws.code(m, i, ext), ws.code(m, j, ext),
                    ws.table(m, i, ext),
                )
                ok = rep.verdict and rep.fibre_size == 1 << (i - j)
                out.append(_check("graph-cover", m, i, ext, ok,
                                  f"-> level {j}, fibre {1 << (i - j)}",
                                  f"fibre {rep.fibre_size}, "
                                  f"bijective={rep.locally_bijective}", t0))
    for i in range(1, u + 1):
        t0 = time.perf_counter()
        rep = verify_antipodal_cover_array(ws.graph(m, i), ws.dist(m, i))
        out.append(_check("cover-array-shape", m, i, False,
                          rep.applicable and rep.matches,
                          "(N-1,(r-1)c2,1;1,c2,N-1)",
                          f"N={rep.folded_vertices} r={rep.fibre_size} "
                          f"{rep.array}", t0))
    return out


def suite_extended(ws: Workspace, m: int) -> List[Check]:
    out = []
    for i in range(ws.ctx(m).u + 1):
        star = ws.code(m, i, ext=True)
        table = ws.table(m, i, ext=True)
        t0 = time.perf_counter()
        if i == 0:
            rep = verify_completely_regular(star, table)
            ok = rep.completely_regular and rep.array == extended_cria_array(m, 0)
            out.append(_check("extended-array", m, i, True, ok,
                              str(extended_cria_array(m, 0)), str(rep.array), t0))
            continue
        rep = verify_extended_array(star, table)
        out.append(_check("extended-array", m, i, True,
                          rep.regularity.completely_regular and rep.matches_extended_form,
                          str(extended_cria_array(m, i)),
                          str(rep.regularity.array), t0))
        t0 = time.perf_counter()
        out.append(_check("extended-array-variant-nonmatch", m, i, True,
                          not rep.matches_variant_form,
                          "computed array differs from the +1 variant",
                          f"matches_variant={rep.matches_variant_form}", t0))
    return out


_SUITE_FN = {
    "cr": lambda ws, m, rng, ex: suite_cr(ws, m, rng, ex),
    "up": lambda ws, m, rng, ex: suite_up(ws, m),
    "designs": lambda ws, m, rng, ex: suite_designs(ws, m),
    "duals": lambda ws, m, rng, ex: suite_duals(ws, m),
    "ct": lambda ws, m, rng, ex: suite_ct(ws, m),
    "graph": lambda ws, m, rng, ex: suite_graph(ws, m),
    "cover": lambda ws, m, rng, ex: suite_cover(ws, m),
    "extended": lambda ws, m, rng, ex: suite_extended(ws, m),
}


def _parse_targets(raw: Optional[str]) -> Optional[List[int]]:
    if raw is None:
        return None
    try:
        return [int(part, 2) for part in raw.split(",") if part]
    except ValueError as exc:
        raise ConfigError(f"bad subspace basis {raw!r}: {exc}") from exc


def _parse_levels(raw: Optional[str]) -> Optional[List[int]]:
    if raw is None:
        return None
    try:
        return sorted({int(part) for part in raw.split(",") if part})
    except ValueError as exc:
        raise ConfigError(f"bad level list {raw!r}") from exc


def _validate_m(m: int, cap: int) -> None:
    if m % 2 or not 4 <= m <= cap:
        raise ConfigError(f"m must be even with 4 <= m <= {cap}, got {m}")


def _emit(report: Dict[str, object], checks: List[Check], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for check in checks:
            print(check.line())
        summary = report["summary"]
        print(f"{summary['passed']}/{summary['checks']} checks passed "
              f"({report['seconds']}s)")


def cmd_verify(args) -> int:
    ms = [args.m] if args.m else [4, 6]
    for m in ms:
        _validate_m(m, 8)
    suites = SUITES if args.suite is None else tuple(args.suite.split(","))
    for name in suites:
        if name not in SUITES:
            raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    ws = Workspace(_parse_targets(args.subspace_basis), args.prim_poly_m, args.prim_poly_u)
    t_start = time.perf_counter()
    tasks = [(m, name) for m in ms for name in suites]

    def run(task):
        m, name = task
        rng = random.Random(args.seed)
        return _SUITE_FN[name](ws, m, rng, args.exhaustive)

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            grouped = list(pool.map(run, tasks))
    else:
        grouped = [run(task) for task in tasks]
    checks: List[Check] = [c for group in grouped for c in group]
    if args.extended:
        checks = [c for c in checks if c.extended]
    passed = sum(1 for c in checks if c.ok)
    report = {
        "schema": SCHEMA,
        "command": "verify",
        "config": {
            "m": ms,
            "suites": list(suites),
            "seed": args.seed,
            "exhaustive": args.exhaustive,
            "subspace_basis": args.subspace_basis,
            "threads": args.threads,
        },
        "results": [c.as_dict() for c in checks],
        "summary": {
            "checks": len(checks),
            "passed": passed,
            "failed": len(checks) - passed,
            "verdict": "pass" if passed == len(checks) else "fail",
        },
        "seconds": round(time.perf_counter() - t_start, 3),
    }
    _emit(report, checks, args.format)
    return 0 if passed == len(checks) else 2


def cmd_build(args) -> int:
    _validate_m(args.m, 12)
    ctx = build_field_context(args.m, args.prim_poly_m, args.prim_poly_u)
    chain = build_chain(ctx, _parse_targets(args.subspace_basis))
    levels = _parse_levels(args.levels)
    picked = range(ctx.u + 1) if levels is None else levels
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for i in picked:
        if not 0 <= i <= ctx.u:
            raise ConfigError(f"level {i} out of range 0..{ctx.u}")
        code = chain[i]
        written.extend(save_code(code, str(out_dir / f"code_m{args.m}_i{i}")))
        if args.extended:
            written.extend(
                save_code(extend_code(code), str(out_dir / f"code_m{args.m}_i{i}_ext"))
            )
    report = {
        "schema": SCHEMA,
        "command": "build",
        "config": {"m": args.m, "levels": list(picked),
                   "subspace_basis": args.subspace_basis,
                   "extended": args.extended},
        "files": written,
        "dimensions": {i: chain[i].dimension for i in picked},
    }
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for path in written:
            print(path)
    return 0


_EXPORT_EXT = {"graph6": "g6", "edge-list": "edges", "json": "json"}


def cmd_export(args) -> int:
    _validate_m(args.m, 8)
    ctx = build_field_context(args.m, args.prim_poly_m, args.prim_poly_u)
    chain = build_chain(ctx, _parse_targets(args.subspace_basis))
    levels = _parse_levels(args.levels)
    picked = range(ctx.u + 1) if levels is None else levels
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for i in picked:
        if not 0 <= i <= ctx.u:
            raise ConfigError(f"level {i} out of range 0..{ctx.u}")
        code = extend_code(chain[i]) if args.extended else chain[i]
        graph = build_coset_graph(code)
        suffix = "_ext" if args.extended else ""
        name = f"gamma_m{args.m}_i{i}{suffix}.{_EXPORT_EXT[args.format]}"
        path = out_dir / name
        path.write_bytes(export_graph(graph, args.format))
        written.append(str(path))
    for path in written:
        print(path)
    return 0


def cmd_conjecture(args) -> int:
    _validate_m(args.m, 8)
    reports = conjecture_report(
        args.m,
        levels=_parse_levels(args.levels),
        syndrome_targets=_parse_targets(args.subspace_basis),
    )
    rows = []
    for rep in reports:
        verdict = "certified" if rep.certified else "undetermined"
        rows.append({
            "level": rep.level,
            "rho": rep.rho,
            "predicted": rep.predicted,
            "orbit_count": rep.orbit_count,
            "group": rep.group,
            "verdict": verdict,
        })
    if args.format == "json":
        print(json.dumps({
            "schema": SCHEMA,
            "command": "conjecture",
            "config": {"m": args.m, "subspace_basis": args.subspace_basis},
            "results": rows,
        }, indent=2, sort_keys=True))
    else:
        print(f"m={args.m}: completely transitive predicted for levels where "
              f"i in {{0, 1, u}} or 2^i <= u+1")
        for row in rows:
            print(f"  i={row['level']}: predicted={row['predicted']} "
                  f"orbits={row['orbit_count']} via {row['group']} -> {row['verdict']}")
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--subspace-basis", metavar="BITS[,BITS...]",
                        help="syndrome subspace basis as binary strings, e.g. 011,101")
    parser.add_argument("--prim-poly-m", type=lambda s: int(s, 0), default=None,
                        help="primitive polynomial for the big field (int, 0x.. ok)")
    parser.add_argument("--prim-poly-u", type=lambda s: int(s, 0), default=None,
                        help="primitive polynomial for the subfield")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--levels", help="comma-separated level list, default all")
    parser.add_argument("--extended", action="store_true",
                        help="extended codes (build/export: emit them; verify: only them)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crcodes",
                     description="nested completely regular codes: build, verify, export")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct a chain and save descriptors")
    p_build.add_argument("--m", type=int, required=True)
    p_build.add_argument("--format", choices=("text", "json"), default="text")
    _add_common(p_build)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("--m", type=int, default=None,
                          help="field exponent; default runs m=4 and m=6")
    p_verify.add_argument("--suite", help=f"comma list from: {', '.join(SUITES)}")
    p_verify.add_argument("--seed", type=int, default=20240901)
    p_verify.add_argument("--exhaustive", action="store_true",
                          help="replace sampling with exhaustive checks where feasible")
    p_verify.add_argument("--threads", type=int, default=1)
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    _add_common(p_verify)

    p_export = sub.add_parser("export", help="write coset graphs to files")
    p_export.add_argument("--m", type=int, required=True)
    p_export.add_argument("--format", choices=tuple(_EXPORT_EXT), default="graph6")
    _add_common(p_export)

    p_conj = sub.add_parser("conjecture", help="transitivity survey per level")
    p_conj.add_argument("--m", type=int, required=True)
    p_conj.add_argument("--format", choices=("text", "json"), default="text")
    _add_common(p_conj)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "build": cmd_build,
            "verify": cmd_verify,
            "export": cmd_export,
            "conjecture": cmd_conjecture,
        }[args.command]
        return handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
