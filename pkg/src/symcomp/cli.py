"""Batch command-line front end.

Subcommands run one computation or verification each and emit
machine-readable reports (JSON by default, CSV for bigraded tables).  Runs
are deterministic: all randomness flows from the --seed argument and reports
carry no timestamps, so identical invocations produce byte-identical output.

Exit codes: 0 all requested checks pass, 1 a verification failed,
2 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from fractions import Fraction

from . import __version__
from . import exactlin, monodromy, partitions, planecells, randgen, ranges, spectral, strata, transfer
from .exactlin import rat_str


class InputError(Exception):
    """Malformed input: reported with exit code 2."""


def _env_int(name: str, default: int) -> int:
    v = os.environ.get(name)
    return int(v) if v else default


def partition_cap() -> int:
    return _env_int("SYMCOMP_PARTITION_CAP", partitions.DEFAULT_WEIGHT_CAP)


def plane_cap() -> int:
    return _env_int("SYMCOMP_PLANE_CAP", strata.PLANE_POINT_CAP)


def coset_cap() -> int:
    return _env_int("SYMCOMP_COSET_CAP", transfer.DEFAULT_COSET_CAP)


def _emit(args, report: dict, table=None) -> None:
    """Write the report (and optional CSV table) to stdout or --output."""
    text = json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n"
    if args.output:
        os.makedirs(args.output, exist_ok=True)
        name = report.get("check", "report")
        with open(os.path.join(args.output, f"{name}.json"), "w") as fh:
            fh.write(text)
        if table is not None:
            with open(os.path.join(args.output, f"{name}.csv"), "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerows(table)
    if args.format == "csv" and table is not None:
        w = csv.writer(sys.stdout)
        w.writerows(table)
        for cav in report.get("caveats", []):
            print(f"# caveat: {cav}")
    else:
        sys.stdout.write(text)


def _json_default(x):
    if isinstance(x, Fraction):
        return rat_str(x)
    if isinstance(x, partitions.Partition):
        return str(x)
    if isinstance(x, frozenset):
        return sorted(x)
    raise TypeError(f"cannot serialize {type(x)!r}")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON input {path}: {exc}") from exc


def _parse_partition(text: str) -> partitions.Partition:
    try:
        return partitions.parse(text)
    except partitions.InvalidPartitionError as exc:
        raise InputError(str(exc)) from exc


def _manifold_class(args) -> ranges.ManifoldClass:
    if getattr(args, "plane", False):
        return ranges.PLANE
    if getattr(args, "class_file", None):
        return ranges.ManifoldClass.from_json(_load_json(args.class_file))
    try:
        return ranges.ManifoldClass(
            dim=args.dim,
            orientable=args.orientable,
            open_interior=args.open,
            connectivity=args.a,
        )
    except ranges.InvalidManifoldClassError as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# subcommands


def cmd_collapses(args) -> int:
    lam = _parse_partition(args.lam)
    if lam.weight > partition_cap():
        raise InputError(f"partition weight {lam.weight} exceeds cap {partition_cap()}")
    layers = strata.filtration_report(lam)
    table = [["p", "members"]]
    for p, members in layers:
        if members or p < max(lam.weight - 1, 1):
            table.append([p, " ".join(str(m) for m in members)])
    report = {
        "check": "collapse-layers",
        "lambda": str(lam),
        "layers": {str(p): [str(m) for m in members] for p, members in layers if members},
        "empty_from": next(
            (p for p, members in layers if not members and all(
                not m2 for _, m2 in layers[p:])), lam.weight),
    }
    _emit(args, report, table)
    return 0


def cmd_ranges(args) -> int:
    mc = _manifold_class(args)
    caveats = ranges.range_caveats(mc)
    rows = [["j", "window"]]
    values = {}
    for j in range(args.jmax + 1):
        f = ranges.stability_range(mc, args.k, j)
        rows.append([j, rat_str(f)])
        values[str(j)] = rat_str(f)
    report = {
        "check": "stability-windows",
        "class": mc.to_json(),
        "k": args.k,
        "windows": values,
        "coarse_window": {str(j): ranges.theorem_range(args.k, j) for j in range(args.jmax + 1)},
        "stabilization_map_defined": ranges.stabilization_defined(mc),
        "caveats": caveats,
    }
    if mc.dim == 2 and mc.open_interior:
        report["integral_half_window"] = {
            str(j): rat_str(ranges.integral_surface_range(args.k, j))
            for j in range(args.jmax + 1)
        }
    _emit(args, report, rows)
    return 0


def cmd_homology(args) -> int:
    try:
        c = exactlin.complex_from_json(_load_json(args.file))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad complex payload: {exc}") from exc
    hom = c.homology()
    table = [["degree", "betti"]] + [[n, hom.get(n, 0)] for n in c.degrees]
    report = {
        "check": "homology",
        "betti": {str(n): hom.get(n, 0) for n in c.degrees},
        "euler_characteristic": c.euler_characteristic(),
    }
    _emit(args, report, table)
    return 0


def cmd_ss(args) -> int:
    try:
        fc = spectral.FilteredComplex.from_json(_load_json(args.file))
    except (KeyError, ValueError, spectral.InvalidFiltrationError) as exc:
        raise InputError(f"bad filtered complex payload: {exc}") from exc
    pages = spectral.compute_pages(fc)
    table = [["r", "p", "q", "dim"]]
    for r in sorted(pages.pages):
        for (p, q), d in sorted(pages.pages[r].items()):
            table.append([r, p, q, d])
    ok = pages.converges() and pages.squares_vanish()
    report = {
        "check": "filtration-pages",
        "convention": "cochain (-r, r+1)" if fc.complex.direction == 1 else "chain (-r, r-1)",
        "pages": {
            str(r): {f"{p},{q}": d for (p, q), d in sorted(cells.items())}
            for r, cells in pages.pages.items()
        },
        "limit": {f"{p},{q}": d for (p, q), d in sorted(pages.einf.items())},
        "abutment": {str(n): d for n, d in sorted(pages.target.items())},
        "converges": pages.converges(),
        "differentials_square_to_zero": pages.squares_vanish(),
        "caveats": [
            "the engine consumes finite filtered complexes; whether a complex "
            "faithfully models a space's compactly supported cohomology is an "
            "input assumption, not verified here"
        ],
    }
    _emit(args, report, table)
    return 0 if ok else 1


def cmd_compare(args) -> int:
    data = _load_json(args.file)
    try:
        src = spectral.FilteredComplex.from_json(data["source"])
        dst = spectral.FilteredComplex.from_json(data["target"])
        f = {
            int(n): exactlin.QMatrix.from_triplets(
                dst.complex.dim(int(n)), src.complex.dim(int(n)), trips
            )
            for n, trips in data["map"].items()
        }
        rep = spectral.compare_pages(f, src, dst)
    except (KeyError, ValueError, spectral.InvalidFiltrationError) as exc:
        raise InputError(f"bad comparison payload: {exc}") from exc
    s = args.threshold
    hyp = rep.hypothesis_at(s)
    conc = rep.conclusion_at(s)
    report = {
        "check": "page-comparison",
        "threshold": s,
        "hypothesis_on_first_page": hyp,
        "conclusion_on_limit_page": conc,
        "cells": {
            f"{r},{p},{q}": {"src": ds, "dst": dd, "rank": rk}
            for (r, p, q), (ds, dd, rk) in sorted(rep.cells.items())
        },
    }
    _emit(args, report)
    if hyp and not conc:
        return 1
    return 0


def cmd_totalize(args) -> int:
    try:
        ss = _semisimplicial_from_json(_load_json(args.file))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad semisimplicial payload: {exc}") from exc
    total, _ = spectral.totalize(ss)
    hom = total.homology()
    pages = spectral.realization_ss(ss)
    levelwise = {
        str(p): {str(n): d for n, d in sorted(lvl.homology().items())}
        for p, lvl in enumerate(ss.levels)
    }
    e1_matches = all(
        pages.pages[1].get((p, q), 0) == ss.levels[p].homology().get(q, 0)
        for p in range(len(ss.levels))
        for q in ss.levels[p].degrees
    )
    report = {
        "check": "totalization",
        "total_betti": {str(n): d for n, d in sorted(hom.items())},
        "levelwise_betti": levelwise,
        "first_page_equals_level_homology": e1_matches,
        "converges": pages.converges(),
    }
    _emit(args, report)
    return 0 if (e1_matches and pages.converges()) else 1


def _semisimplicial_from_json(data: dict) -> spectral.SemisimplicialComplex:
    levels = [exactlin.complex_from_json(c) for c in data["levels"]]
    faces = {}
    for p_str, lst in data["faces"].items():
        p = int(p_str)
        faces[p] = []
        for fmap in lst:
            faces[p].append(
                {
                    int(n): exactlin.QMatrix.from_triplets(
                        levels[p - 1].dim(int(n)), levels[p].dim(int(n)), trips
                    )
                    for n, trips in fmap.items()
                }
            )
    return spectral.SemisimplicialComplex(levels, faces)


def cmd_flag(args) -> int:
    vertices = [v for v in args.vertices.split(",") if v]
    edges = []
    for e in args.edges.split(",") if args.edges else []:
        if not e:
            continue
        a, _, b = e.partition("-")
        if not b:
            raise InputError(f"edge {e!r} must look like a-b")
        edges.append((a, b))
    try:
        rep = spectral.flag_set_check(vertices, edges, args.truncation)
    except spectral.FlagSetError as exc:
        raise InputError(str(exc)) from exc
    report = {
        "check": "flag-set",
        "simplex_counts": rep.simplex_counts,
        "domination_holds": rep.domination_holds,
        "dominating_vertex": rep.dominating_vertex,
        "reduced_betti": {str(q): b for q, b in sorted(rep.reduced_betti.items())},
        "contractible_through": rep.contractible_through,
        "caveats": [
            "finite truncation only: the domination hypothesis is checked on "
            "the given vertex set, not on an infinite ambient set"
        ],
    }
    _emit(args, report)
    return 0


def cmd_e1(args) -> int:
    lam = _parse_partition(args.lam)
    mc = _manifold_class(args)
    oracle = _oracle_from_args(args)
    try:
        t = strata.assemble_e1(lam, mc, oracle)
    except strata.OracleCapError as exc:
        raise InputError(str(exc)) from exc
    table = [["p", "q", "dim", "components"]]
    for (p, q), d in sorted(t.cells.items()):
        comps = ";".join(f"{mu}:{b}" for mu, b in t.components[(p, q)])
        table.append([p, q, d, comps])
    report = {
        "check": "first-page-assembly",
        "lambda": str(lam),
        "class": mc.to_json(),
        "cells": {f"{p},{q}": d for (p, q), d in sorted(t.cells.items())},
        "columns": t.column_support(),
        "complete": t.complete,
        "missing": [str(m) for m in t.missing],
        "euler_characteristic": t.euler_characteristic(),
        "betti_upper_bounds": {str(n): b for n, b in sorted(t.betti_upper_bounds().items())},
        "caveats": _strata_caveats(mc),
    }
    _emit(args, report, table)
    return 0 if t.complete else 1


def _strata_caveats(mc) -> list[str]:
    out = [
        "differentials on the assembled first page are not synthesized; the "
        "table yields Euler characteristics and upper bounds only, unless "
        "differential matrices are supplied to the filtration engine"
    ]
    out.extend(ranges.range_caveats(mc))
    return out


def _oracle_from_args(args) -> strata.BettiOracle:
    if args.oracle == "builtin":
        return strata.BettiOracle(cap=plane_cap())
    data = _load_json(args.oracle)
    return strata.BettiOracle.from_json(data)


def cmd_certificate(args) -> int:
    try:
        cert = strata.range_certificate(
            args.dim, args.k, args.j, args.case, args.a,
            threshold_offset=1 if args.weaken else 0,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = {
        "check": "degree-window-certificate",
        "dim": args.dim,
        "k": args.k,
        "j": args.j,
        "case": args.case,
        "connectivity": args.a,
        "threshold": rat_str(cert.threshold),
        "cells_checked": len(cert.cells),
        "passed": cert.passed,
        "first_failure": (
            None
            if cert.first_failure is None
            else {
                "p": cert.first_failure.p,
                "q": cert.first_failure.q,
                "dual_degree": cert.first_failure.dual_degree,
                "bound": rat_str(cert.first_failure.bound),
            }
        ),
    }
    table = [["p", "q", "dual_degree", "bound", "vacuous", "ok"]]
    for cell in cert.cells:
        table.append([cell.p, cell.q, cell.dual_degree, rat_str(cell.bound),
                      int(cell.vacuous), int(cell.ok)])
    _emit(args, report, table)
    return 0 if cert.passed else 1


def cmd_euler(args) -> int:
    lam = _parse_partition(args.lam)
    mc = _manifold_class(args)
    oracle = _oracle_from_args(args)
    if args.reference_lambda:
        ref = strata.plane_oracle(_parse_partition(args.reference_lambda), cap=plane_cap())
    elif args.reference:
        ref = [int(x) for x in args.reference.split(",")]
    else:
        raise InputError("need --reference-lambda or --reference")
    rep = strata.euler_consistency(lam, mc, oracle, ref)
    report = {
        "check": "euler-consistency",
        "lambda": str(lam),
        "layer_sums": {str(p): v for p, v in sorted(rep.layer_sums.items())},
        "total": rep.total,
        "reference": rep.reference,
        "consistent": rep.consistent,
        "note": rep.note,
        "caveats": _strata_caveats(mc),
    }
    _emit(args, report)
    if rep.consistent is None:
        return 2
    return 0 if rep.consistent else 1


def cmd_oracle(args) -> int:
    lam = _parse_partition(args.lam)
    try:
        betti = strata.plane_oracle(lam, cap=plane_cap())
    except strata.OracleCapError as exc:
        raise InputError(str(exc)) from exc
    n = lam.cardinality
    report = {
        "check": "plane-stratum-betti",
        "lambda": str(lam),
        "compact_support_betti": list(betti),
        "dimension": 2 * n,
        "provenance": "builtin",
        "caveats": [
            "built-in model covers open-plane strata only; closed-surface "
            "strata need the twisted conversion and are not computed here"
        ],
    }
    table = [["degree", "betti"]] + [[q, b] for q, b in enumerate(betti)]
    _emit(args, report, table)
    return 0


def cmd_transfer(args) -> int:
    if args.j + args.k > coset_cap():
        raise InputError(f"tuple length {args.j + args.k} exceeds coset cap {coset_cap()}")
    model = transfer.ConfigurationModel(args.sites, k=args.k, cap=coset_cap())
    try:
        res = transfer.transfer_map(model, args.i, args.j)
    except (ValueError, transfer.CosetCapError) as exc:
        raise InputError(str(exc)) from exc
    report = {
        "check": "transfer-map",
        "sites": args.sites,
        "k": args.k,
        "from_level": args.j,
        "to_level": args.i,
        "matrix": res.matrix.to_triplets(),
        "source_dim": res.matrix.cols,
        "target_dim": res.matrix.rows,
        "normalization": (
            "raw coset-sum transfer; divide by (j-i)! for the family obeying "
            "the triangular algebra"
        ),
    }
    _emit(args, report)
    return 0


def cmd_verify(args) -> int:
    if args.what != "dold":
        raise InputError(f"unknown verification target {args.what!r}")
    try:
        sys_ = transfer.DoldSystem.from_json(_load_json(args.file))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad system payload: {exc}") from exc
    rep = transfer.dold_verify(sys_)
    report = {
        "check": "triangular-transfer-algebra",
        "passed": rep.passed,
        "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in rep.checks],
    }
    if rep.passed:
        con = transfer.dold_conclusions(sys_, rep)
        report["conclusions"] = {
            "stabilization_injective": {str(p): v for p, v in con.sigma_injective.items()},
            "transfer_after_stabilization_iso": {str(p): v for p, v in con.theta_sigma_iso.items()},
            "transfer_iso_where_stabilization_iso": {
                str(p): v for p, v in con.theta_iso_where_sigma_iso.items()
            },
        }
    _emit(args, report)
    return 0 if rep.passed else 1


def cmd_monodromy(args) -> int:
    try:
        ld = monodromy.LoopDatum.from_json(_load_json(args.file))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad loop payload: {exc}") from exc
    mv = monodromy.monodromy_pair(ld)
    verdict = monodromy.odd_move_agreement(ld)
    report = {
        "check": "orientation-signs",
        "s1": monodromy.s1(ld),
        "s2": monodromy.s2(ld),
        "orientation_chars": list(monodromy.orientation_chars(ld)),
        "weighted": mv.weighted,
        "unweighted": mv.unweighted,
        "tensor": mv.tensor,
        "odd_move": {"applicable": verdict.applicable, "agrees": verdict.agrees},
    }
    _emit(args, report)
    return 0


# ---------------------------------------------------------------------------
# the property-test battery


def _suite_items(seed: int):
    rng = random.Random(seed)
    items = []

    def add(check, ok, detail=""):
        items.append({"check": check, "status": "pass" if ok else "fail", "detail": detail})

    lam13 = partitions.parse("1+3")
    layers = dict(strata.filtration_report(lam13))
    add(
        "collapse-layer-table",
        [str(m) for m in layers[0]] == ["1+1+1+1"]
        and [str(m) for m in layers[1]] == ["1+1+2"]
        and [str(m) for m in layers[2]] == ["2+2"]
        and not layers.get(3),
        "layers of 1+3",
    )

    ok = True
    for k in range(1, 7):
        seen = {}
        frontier = {partitions.normalize([1] * k): 0}
        while frontier:
            nxt = {}
            for mu, depth in frontier.items():
                if mu in seen:
                    ok = ok and seen[mu] == depth
                    continue
                seen[mu] = depth
                ok = ok and depth == k - mu.cardinality
                for nu in partitions.elementary_collapses(mu):
                    nxt[nu] = depth + 1
            frontier = nxt
        ok = ok and len(seen) == len(partitions.enumerate_partitions(k))
    add("collapse-chain-lengths", ok, "k <= 6 exhaustive")

    ok = True
    witness = False
    for k in range(1, 5):
        for lam in partitions.enumerate_partitions(k):
            for j in range(0, 5):
                for p in range(0, k + j + 1):
                    repo = partitions.stab_collapse_map(lam, j, p)
                    ok = ok and repo.injective
                    if repo.in_window:
                        ok = ok and repo.bijective
                    if not repo.surjective:
                        witness = True
                        ok = ok and all(m.ones() == 0 for m in repo.missed)
    add("layer-stabilization-window", ok and witness, "k <= 4, j <= 4")

    ok = True
    for dim, orient, a in [(3, True, 0), (2, True, 0), (2, False, 0), (6, True, 2)]:
        mc = ranges.ManifoldClass(dim=dim, orientable=orient, open_interior=True, connectivity=a)
        for k in range(1, 5):
            prev = None
            for j in range(0, 9):
                f = ranges.stability_range(mc, k, j)
                ok = ok and f >= ranges.theorem_range(k, j)
                ok = ok and (prev is None or f >= prev)
                prev = f
                ok = ok and f == ranges.stability_range(ranges.puncture(mc), k, j)
    add("window-grid-and-puncture", ok, "4 classes, k <= 4, j <= 8")

    ok = True
    for _ in range(10):
        fc = randgen.random_filtered_complex(rng, max_dim=6, degrees=3, steps=4)
        pages = spectral.compute_pages(fc)
        ok = ok and pages.converges() and pages.squares_vanish()
    add("filtration-soundness", ok, "10 seeded complexes")

    ok = True
    for _ in range(5):
        s = rng.randint(2, 4)
        f, src, dst = randgen.comparison_instance(rng, s)
        rep = spectral.compare_pages(f, src, dst)
        if rep.hypothesis_at(s):
            ok = ok and rep.conclusion_at(s)
    add("page-comparison-window", ok, "5 engineered instances")

    ok = True
    for d, case, a in [
        (3, "high_dim", None),
        (4, "high_dim", None),
        (6, "high_dim", None),
        (2, "surface_orientable", None),
        (2, "surface_nonorientable", None),
        (3, "connectivity", 1),
        (4, "connectivity", 2),
        (6, "connectivity", 2),
    ]:
        for k in range(1, 4):
            for j in range(0, 5):
                cert = strata.range_certificate(d, k, j, case, a)
                ok = ok and cert.passed
    add("degree-window-certificates", ok, "cases x k <= 3 x j <= 4")

    repb = transfer.dold_verify(transfer.binomial_system(8))
    sysm = transfer.model_dold_system(4, 2)
    repm = transfer.dold_verify(sysm)
    conm = transfer.dold_conclusions(sysm, repm)
    add("triangular-transfer-algebra", repb.passed and repm.passed and conm.passed,
        "binomial top 8; 4-site model top 2")

    ok = True
    for _ in range(8):
        c, act = randgen.random_equivariant_complex(rng, n_letters=rng.randint(2, 4))
        quotient_then = exactlin.coinvariants(c, act).homology()
        hb = exactlin.homology_basis(c)
        gens2 = [
            (perm, exactlin.induced_homology_map(mats, c, c, hb, hb))
            for perm, mats in act.generators
        ]
        hc = exactlin.ChainComplex({n: b.dim for n, b in hb.items()}, {}, -1)
        then_quotient = exactlin.coinvariant_data(hc, exactlin.GroupAction(gens2),
                                                  check=False).complex
        degrees = set(quotient_then) | set(then_quotient.dims)
        ok = ok and all(
            quotient_then.get(n, 0) == then_quotient.dim(n) for n in degrees
        )
    add("coinvariants-exactness", ok, "8 seeded equivariant complexes")

    ok = True
    for lam in [partitions.parse(s) for s in ("1+1+2", "2+2", "1+1+1", "3+3")]:
        data = _all_loop_data(lam, d_max=4)
        for ld in data:
            verdict = monodromy.odd_move_agreement(ld)
            if verdict.applicable:
                ok = ok and verdict.agrees
    witness = monodromy.monodromy_pair(
        monodromy.LoopDatum.make(partitions.parse("2+2"), {2: (2, 1)}, [1, 1], 3)
    )
    add("orientation-sign-agreement", ok and witness.weighted != witness.unweighted,
        "exhaustive small data; even swap disagrees in odd dimension")

    oracle = strata.BettiOracle()
    t = strata.assemble_e1(partitions.parse("2"), ranges.PLANE, oracle)
    er = strata.euler_consistency(
        partitions.parse("2"), ranges.PLANE, oracle, strata.plane_oracle(partitions.parse("1+1"))
    )
    add("plane-assembly", t.complete and t.column_support() == [0] and bool(er.consistent),
        "pattern 2 against the two-point stratum")

    return items


def _all_loop_data(lam, d_max):
    from itertools import product

    mult = lam.multiplicities()
    perm_choices = []
    ms = sorted(mult)
    for m in ms:
        from itertools import permutations as perms

        perm_choices.append(list(perms(range(1, mult[m] + 1))))
    out = []
    for combo in product(*perm_choices):
        for us in product((1, -1), repeat=lam.cardinality):
            for d in range(2, d_max + 1):
                out.append(
                    monodromy.LoopDatum.make(
                        lam, dict(zip(ms, combo)), list(us), d
                    )
                )
    return out


def cmd_suite(args) -> int:
    items = _suite_items(args.seed)
    passed = all(i["status"] == "pass" for i in items)
    report = {
        "check": "suite",
        "seed": args.seed,
        "items": items,
        "passed": passed,
    }
    _emit(args, report)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="symcomp",
        description="exact verification workbench for stratified symmetric powers",
    )
    ap.add_argument("--version", action="version", version=f"symcomp {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", help="directory for report files")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("collapses", help="layer table of the merge order")
    p.add_argument("--lambda", dest="lam", required=True)
    common(p)
    p.set_defaults(fn=cmd_collapses)

    p = sub.add_parser("ranges", help="stability window table")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--orientable", action="store_true")
    p.add_argument("--non-orientable", dest="orientable", action="store_false")
    p.add_argument("--open", action="store_true", default=True)
    p.add_argument("--closed", dest="open", action="store_false")
    p.add_argument("--a", type=int, default=0, help="declared connectivity")
    p.add_argument("--class-file", help="JSON manifold class (overrides flags)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--jmax", type=int, default=8)
    common(p)
    p.set_defaults(fn=cmd_ranges)

    p = sub.add_parser("homology", help="Betti table of a complex")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("ss", help="pages of a filtered complex")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_ss)

    p = sub.add_parser("compare", help="page comparison of a filtered map")
    p.add_argument("file")
    p.add_argument("--threshold", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("totalize", help="total complex of a semisimplicial complex")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_totalize)

    p = sub.add_parser("flag", help="flag-set build and cone criterion")
    p.add_argument("--vertices", required=True, help="comma-separated names")
    p.add_argument("--edges", default="", help="comma-separated a-b pairs")
    p.add_argument("--truncation", type=int, default=3)
    common(p)
    p.set_defaults(fn=cmd_flag)

    p = sub.add_parser("e1", help="assemble the first page from stratum data")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--plane", action="store_true", help="use the plane class")
    p.add_argument("--class-file")
    p.add_argument("--oracle", default="builtin", help="'builtin' or JSON file")
    common(p)
    p.set_defaults(fn=cmd_e1)

    p = sub.add_parser("certificate", help="degree window certificate")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--case", required=True,
                   choices=("high_dim", "surface_orientable", "surface_nonorientable",
                            "connectivity"))
    p.add_argument("--a", type=int)
    p.add_argument("--weaken", action="store_true", help="lower the window by one (expects failure)")
    common(p)
    p.set_defaults(fn=cmd_certificate)

    p = sub.add_parser("euler", help="layered Euler characteristic consistency")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--plane", action="store_true")
    p.add_argument("--class-file")
    p.add_argument("--oracle", default="builtin")
    p.add_argument("--reference-lambda", help="plane stratum used as reference")
    p.add_argument("--reference", help="comma-separated Betti numbers")
    common(p)
    p.set_defaults(fn=cmd_euler)

    p = sub.add_parser("oracle", help="built-in plane stratum Betti numbers")
    p.add_argument("--lambda", dest="lam", required=True)
    common(p)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("transfer", help="coset-sum transfer on the site model")
    p.add_argument("--sites", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_transfer)

    p = sub.add_parser("verify", help="verify a structured system")
    p.add_argument("what", choices=("dold",))
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("monodromy", help="orientation signs of a loop datum")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_monodromy)

    p = sub.add_parser("suite", help="run the seeded property battery")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(fn=cmd_suite)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (partitions.PartitionCapError, strata.OracleCapError,
            transfer.CosetCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
