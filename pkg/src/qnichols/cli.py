"""Command-line surface with reproducible file-based input/output.

Exit codes: 0 ok, 2 input error, 3 resource cap exceeded, 4 invariant
violation (a result contradicting a structural identity; never swallowed).
All JSON output has sorted keys and canonically ordered arrays, so identical
invocations produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import cyclotomic, envgroup, nichols, quandle, supportcalc, weyl, ydmod
from .errors import InputError, InvariantViolationError, ResourceCapError


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _load_quandle(args) -> quandle.Quandle:
    if getattr(args, "catalog", None):
        return quandle.catalog(args.catalog)
    if getattr(args, "file", None):
        return quandle.Quandle.from_file(args.file)
    raise InputError("need --catalog NAME or --file PATH")


# -- subcommands ----------------------------------------------------------------


def cmd_quandle(args) -> int:
    if args.iso:
        q1 = quandle.Quandle.from_file(args.iso[0])
        q2 = quandle.Quandle.from_file(args.iso[1])
        iso = quandle.isomorphic(q1, q2)
        _emit({"isomorphic": iso is not None, "map": list(iso.map) if iso else None})
        return 0
    q = _load_quandle(args)
    orbits = quandle.inner_orbits(q)
    _emit(
        {
            "size": q.n,
            "table": [list(r) for r in q.table],
            "is_quandle": quandle.is_quandle(q.table),
            "is_crossed_set": quandle.is_crossed_set(q),
            "orbits": [list(o) for o in orbits],
            "indecomposable": len(orbits) == 1,
            "catalog_match": quandle.match_catalog(q),
        }
    )
    return 0


def cmd_envgroup(args) -> int:
    q = _load_quandle(args)
    if args.export_presentation:
        pres = envgroup.enveloping_presentation(q)
        sys.stdout.write(pres.to_text())
        return 0
    env = envgroup.finite_enveloping_group(q, args.max_cosets)
    g = env.group
    out = {
        "order": g.order,
        "classes": sorted(len(c) for c in g.conjugacy_classes()),
        "injective": len(set(env.images)) == q.n,
        "abelian_centralizers": g.has_abelian_centralizers(),
        "center_order": len(g.center()),
        "commutator_order": len(g.commutator_subgroup()),
        "generator_images": list(env.images),
        "decomposable_extension": env.decomposable_extension,
    }
    if args.export_group:
        out["group"] = g.to_json_dict()
    _emit(out)
    return 0


def cmd_charseqs(args) -> int:
    seqs = weyl.enumerate_charseqs(args.max_len)
    records = [
        {
            "seq": list(s),
            "witness": weyl.small_neighbor_witness(s),
            "rotations": sorted(list(r) for r in weyl.CharSeq(s).rotations()),
        }
        for s in seqs
    ]
    if args.emit == "json":
        _emit(records)
    else:
        for rec in records:
            rotations = "|".join(" ".join(map(str, r)) for r in rec["rotations"])
            print(f"{' '.join(map(str, rec['seq']))};{rec['witness']};{rotations}")
    return 0


def _build_group(spec) -> envgroup.FinGroup:
    if spec is None:
        raise InputError("module pair descriptor needs a 'group' or 'group_ref' entry")
    if isinstance(spec, str):
        # short references: "sl23" or "enveloping:<catalog name>"
        if spec == "sl23":
            return envgroup.sl23()[0]
        kind, _, name = spec.partition(":")
        if kind == "enveloping" and name:
            return envgroup.finite_enveloping_group(quandle.catalog(name)).group
        raise InputError(f"unknown group reference {spec!r}")
    kind = spec.get("type")
    if kind == "enveloping":
        return envgroup.finite_enveloping_group(quandle.catalog(spec["quandle"])).group
    if kind == "sl23":
        return envgroup.sl23()[0]
    if kind == "abelian":
        return ydmod.abelian_group(spec["orders"])
    raise InputError(f"unknown group type {kind!r}")


def _resolve_element(group: envgroup.FinGroup, ref) -> int:
    if isinstance(ref, int):
        if not 0 <= ref < group.order:
            raise InputError(f"element id {ref} out of range")
        return ref
    try:
        return group.names.index(ref)
    except ValueError:
        raise InputError(f"unknown element name {ref!r}")


def _build_module(group: envgroup.FinGroup, spec: dict) -> ydmod.YDModule:
    rep = _resolve_element(group, spec["class_rep"])
    character = {
        _resolve_element(group, k): cyclotomic.parse_cyc(v)
        for k, v in spec.get("character", {}).items()
    }
    return ydmod.induced_module(group, rep, character)


def _load_module_pair(path: str) -> tuple[ydmod.YDModule, ydmod.YDModule]:
    with open(path) as fh:
        spec = json.load(fh)
    if "diagonal" in spec:
        d = spec["diagonal"]
        qs = [cyclotomic.parse_cyc(d[k]) for k in ("q11", "q12", "q21", "q22")]
        return ydmod.diagonal_pair(*qs)
    group = _build_group(spec.get("group_ref", spec.get("group")))
    return _build_module(group, spec["V"]), _build_module(group, spec["W"])


def cmd_adjoint(args) -> int:
    v, w = _load_module_pair(args.spec)
    report = nichols.adjoint_power_report(v, w, args.m, cap=args.cap)
    report["x_space_dim"] = nichols.x_space_dim(v, w, args.m, cap=args.cap)
    if report["x_space_dim"] != report["dim"]:
        raise InvariantViolationError(
            "adjoint image dimension disagrees with the recursion computation"
        )
    _emit(report)
    return 0


def _parse_orbit(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"bad orbit list {text!r}")


def cmd_certify(args) -> int:
    q = _load_quandle(args)
    orbit_v = _parse_orbit(args.orbit_v)
    orbit_w = (
        _parse_orbit(args.orbit_w)
        if args.orbit_w
        else tuple(sorted(set(q.elements()) - set(orbit_v)))
    )
    ctx = supportcalc.TwoOrbitContext(q, orbit_v, orbit_w)
    out: dict = {
        "orbit_v": list(orbit_v),
        "orbit_w": list(orbit_w),
        "commuting": ctx.commuting,
    }
    if ctx.commuting:
        witness = supportcalc.comm_adw4_rejects(ctx)
        out["adW4_certificate"] = (
            {"base": list(min(witness)), "tuple": list(witness[min(witness)])}
            if witness
            else None
        )
        out["size_bound_m1_exceeded"] = supportcalc.size_bound_check(ctx, 1)
    else:
        out["nc_battery"] = supportcalc.nc_necessary_conditions(ctx)
        cert2 = supportcalc.find_adv2_certificate(ctx)
        cert4 = supportcalc.find_adw4_certificate_nc(ctx)
        out["adV2_certificate"] = list(cert2) if cert2 else None
        out["adW4_certificate"] = list(cert4) if cert4 else None
    _emit(out)
    return 0


def cmd_classify(args) -> int:
    report = supportcalc.classify(
        n_max=args.n_max,
        branch=args.branch,
        require_noncommuting_pair=not args.allow_abelian,
    )
    if not args.full:
        report["rejections"] = [
            {k: r[k] for k in ("rule_id", "branch")} for r in report["rejections"]
        ]
    _emit(report)
    return 0


# -- driver -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnichols",
        description="Exact computations on quandles, enveloping groups and braided operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_quandle = sub.add_parser("quandle", help="axioms, orbits and catalog matching")
    p_quandle.add_argument("--catalog")
    p_quandle.add_argument("--file")
    p_quandle.add_argument("--iso", nargs=2, metavar=("A", "B"))
    p_quandle.set_defaults(func=cmd_quandle)

    p_env = sub.add_parser("envgroup", help="finite enveloping quotient analysis")
    p_env.add_argument("--catalog")
    p_env.add_argument("--file")
    p_env.add_argument("--max-cosets", type=int, default=100_000)
    p_env.add_argument("--export-group", action="store_true")
    p_env.add_argument(
        "--export-presentation", action="store_true", help="print the relator words and exit"
    )
    p_env.set_defaults(func=cmd_envgroup)

    p_seq = sub.add_parser("charseqs", help="characteristic sequence enumeration")
    p_seq.add_argument("--max-len", type=int, required=True)
    p_seq.add_argument("--emit", choices=("json", "csv"), default="json")
    p_seq.set_defaults(func=cmd_charseqs)

    p_adj = sub.add_parser("adjoint", help="adjoint power dimensions of a module pair")
    p_adj.add_argument("--spec", required=True, help="module pair descriptor JSON")
    p_adj.add_argument("--m", type=int, required=True)
    p_adj.add_argument("--cap", type=int, default=nichols.DEFAULT_DIM_CAP)
    p_adj.set_defaults(func=cmd_adjoint)

    p_cert = sub.add_parser("certify", help="combinatorial certificates for a role split")
    p_cert.add_argument("--catalog")
    p_cert.add_argument("--file")
    p_cert.add_argument("--orbit-v", required=True, help="comma-separated elements")
    p_cert.add_argument("--orbit-w", help="defaults to the complement")
    p_cert.set_defaults(func=cmd_certify)

    p_cls = sub.add_parser("classify", help="two-orbit support classification search")
    p_cls.add_argument("--n-max", type=int, default=6)
    p_cls.add_argument("--branch", choices=("both", "comm", "nc"), default="both")
    p_cls.add_argument("--allow-abelian", action="store_true")
    p_cls.add_argument("--full", action="store_true", help="include full rejection witnesses")
    p_cls.set_defaults(func=cmd_classify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, json.JSONDecodeError, KeyError) as exc:
        print(f"input error: {exc!r}", file=sys.stderr)
        return 2
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3
    except InvariantViolationError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
