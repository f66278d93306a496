"""Command-line front end.

Exit codes: 0 = verified/consistent, 1 = refuted or inconsistent (the
report carries a witness), 2 = invalid input.  `--json` prints one
machine-readable report; `gen` without `--out` prints one JSON record
per line.  Maps are addressed either by a file path or by
``examples:<id>`` for the built-in gallery.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .corpus import CorpusSpec, gen_corpus
from .expressions import (
    ExpressionError,
    format_herm,
    format_poly,
    parse_expression,
    parse_point,
)
from .gallery import gallery_entry, gallery_ids, gallery_map
from .lemmas import (
    isometry_decompose,
    layered_pairing_check,
    pairing_divisibility_check,
    signed_squares_check,
)
from .linearize import cm_kernel_solve, paired_block_sum
from .mapfiles import MapFileError, load_map, autparams_to_dict
from .maps import (
    AnyMap,
    NotVerifiedError,
    multiplier,
    nontransversality_locus,
    segre_containment,
    span_dimension,
    transversality,
)
from .normalform import NormalizationError, normalize
from .polynomials import HoloPoly, VariableSpace
from .quadrics import cayley_identity_check, cayley_signs, cayley_transform, flip_map
from .scalars import format_scalar

OK, REFUTED, INVALID = 0, 1, 2


class InputError(ValueError):
    """Bad command input; maps to exit code 2."""


# -- report plumbing ---------------------------------------------------


def _scalar_str(x: Any) -> str:
    from .scalars import GaussianRational

    return format_scalar(GaussianRational.of(x) if not isinstance(x, GaussianRational) else x)


def _point_strs(pt: Sequence[Any]) -> List[str]:
    return [_scalar_str(x) for x in pt]


def _load(target: str) -> AnyMap:
    if target.startswith("examples:"):
        name = target[len("examples:") :]
        try:
            return gallery_map(name)
        except KeyError as exc:
            raise InputError(str(exc)) from exc
    path = Path(target)
    if not path.exists():
        raise InputError(f"no such map file: {target}")
    try:
        return load_map(path)
    except MapFileError as exc:
        raise InputError("; ".join(exc.errors)) from exc


def _load_instance(path_text: str) -> dict:
    path = Path(path_text)
    if not path.exists():
        raise InputError(f"no such instance file: {path_text}")
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("instance file must hold a JSON object")
    return data


def _family(data: dict, key: str, sp: VariableSpace) -> List[HoloPoly]:
    raw = data.get(key)
    if not isinstance(raw, list) or not raw:
        raise InputError(f"instance field {key!r} must be a nonempty list")
    out = []
    for idx, text in enumerate(raw):
        try:
            out.append(parse_expression(str(text), sp))
        except ExpressionError as exc:
            raise InputError(f"{key}[{idx}]: {exc}") from exc
    return out


def _instance_space(data: dict) -> Tuple[int, int, VariableSpace]:
    try:
        n = int(data["n"])
        ell = int(data.get("ell", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("instance file needs integer fields n (and ell)") from exc
    if n < 2:
        raise InputError("need n >= 2")
    return n, ell, VariableSpace(n)


def _cert_report(cert) -> Dict[str, Any]:
    rep: Dict[str, Any] = {
        "verified": cert.verified,
        "multiplier": format_herm(cert.multiplier),
    }
    if cert.denominator_norm is not None:
        rep["denominator_norm"] = format_herm(cert.denominator_norm)
    if not cert.verified:
        rep["witness"] = _point_strs(cert.witness)
        rep["witness_value"] = str(cert.witness_value)
    return rep


# -- subcommands -------------------------------------------------------


def _cmd_verify(args) -> Tuple[int, dict]:
    f = _load(args.map)
    cert = multiplier(f)
    rep = {"command": "verify", "map": args.map, **_cert_report(cert)}
    return (OK if cert.verified else REFUTED), rep


def _cmd_multiplier(args) -> Tuple[int, dict]:
    f = _load(args.map)
    cert = multiplier(f)
    rep = {"command": "multiplier", "map": args.map, **_cert_report(cert)}
    if cert.verified:
        rep["multiplier_at_zero"] = str(cert.multiplier_at_zero)
    return (OK if cert.verified else REFUTED), rep


def _cmd_transversal(args) -> Tuple[int, dict]:
    f = _load(args.map)
    try:
        pt = parse_point(args.point, f.source.space.n)
    except ExpressionError as exc:
        raise InputError(f"--point: {exc}") from exc
    try:
        rep_t = transversality(f, pt)
    except ValueError as exc:
        if isinstance(exc, NotVerifiedError):
            raise
        raise InputError(str(exc)) from exc
    rep = {
        "command": "transversal",
        "map": args.map,
        "point": _point_strs(rep_t.point),
        "multiplier_value": str(rep_t.multiplier_value),
        "transversal": rep_t.transversal,
        "side_preserving": rep_t.side_preserving,
    }
    return (OK if rep_t.transversal else REFUTED), rep


def _cmd_locus(args) -> Tuple[int, dict]:
    f = _load(args.map)
    loc = nontransversality_locus(f)
    rep = {
        "command": "locus",
        "map": args.map,
        "multiplier": format_herm(loc.multiplier),
        "vanishes_identically": loc.vanishes_identically,
        "locus": loc.description,
    }
    return OK, rep


def _cmd_span(args) -> Tuple[int, dict]:
    f = _load(args.map)
    return OK, {"command": "span", "map": args.map, "span": span_dimension(f)}


def _cmd_normalize(args) -> Tuple[int, dict]:
    f = _load(args.map)
    try:
        res = normalize(f)
    except NormalizationError as exc:
        return REFUTED, {
            "command": "normalize",
            "map": args.map,
            "normalized": False,
            "obstruction": str(exc),
        }
    comps = list(res.normal_form.components)
    if args.order is not None:
        comps = [c.truncate_weight(args.order) for c in comps]
    rep = {
        "command": "normalize",
        "map": args.map,
        "normalized": True,
        "f": [format_poly(c) for c in comps[:-1]],
        "g": format_poly(comps[-1]),
        "factors": [autparams_to_dict(g.params) for g in res.factors],
        "truncated_to": args.order,
    }
    return OK, rep


def _cmd_segre(args) -> Tuple[int, dict]:
    f = _load(args.map)
    try:
        pt = parse_point(args.at, f.source.space.n)
    except ExpressionError as exc:
        raise InputError(f"--at: {exc}") from exc
    sc = segre_containment(f, pt)
    rep = {
        "command": "segre",
        "map": args.map,
        "base_point": _point_strs(sc.base_point),
        "image_point": _point_strs(sc.image_point),
        "holds": sc.holds,
    }
    if not sc.holds:
        rep["residual"] = format_poly(sc.residual)
    return (OK if sc.holds else REFUTED), rep


def _division_report(outcome) -> Dict[str, Any]:
    rep: Dict[str, Any] = {"divisible": outcome.divisible}
    if outcome.divisible:
        rep["quotient"] = format_herm(outcome.quotient) if outcome.quotient is not None else None
    else:
        rep["witness_z"] = _point_strs(outcome.witness_z)
        rep["witness_xi"] = _point_strs(outcome.witness_xi)
        rep["witness_value"] = _scalar_str(outcome.witness_value)
    return rep


def _lemma_exit(consistent: Optional[bool], divisible: Optional[bool]) -> int:
    if consistent is False:
        return REFUTED
    if divisible is False:
        return REFUTED
    return OK


def _cmd_lemma(args) -> Tuple[int, dict]:
    data = _load_instance(args.instance)
    n, ell, sp = _instance_space(data)
    if args.which == "huang":
        a = _family(data, "a", sp)
        b = _family(data, "b", sp)
        v = pairing_divisibility_check(a, b, ell)
        rep = {
            "command": "lemma huang",
            "n": v.n,
            "ell": v.ell,
            "k": v.k,
            "hypotheses_met": v.hypotheses_met,
            "division": _division_report(v.division),
            "quotient_vanishes": v.quotient_vanishes,
            "consistent": v.consistent,
            "note": v.note,
        }
        return _lemma_exit(v.consistent, v.division.divisible), rep
    if args.which == "layers":
        raw = data.get("layers")
        if not isinstance(raw, list) or not raw:
            raise InputError("instance field 'layers' must be a nonempty list")
        layers = []
        for idx, layer in enumerate(raw):
            if not isinstance(layer, dict):
                raise InputError(f"layers[{idx}] must be an object with a and b")
            layers.append((_family(layer, "a", sp), _family(layer, "b", sp)))
        v = layered_pairing_check(layers, ell)
        rep = {
            "command": "lemma layers",
            "n": v.n,
            "ell": v.ell,
            "ks": list(v.ks),
            "hypotheses_met": v.hypotheses_met,
            "divisible": v.divisible,
            "failed_power": v.failed_power,
            "layer_sums_vanish": v.layer_sums_vanish,
            "quotient_vanishes": v.quotient_vanishes,
            "consistent": v.consistent,
            "note": v.note,
        }
        if v.division is not None and not v.division.divisible:
            rep["division"] = _division_report(v.division)
        return _lemma_exit(v.consistent, v.divisible), rep
    if args.which == "two":
        a = _family(data, "a", sp)
        b = _family(data, "b", sp)
        v = signed_squares_check(a, b, ell)
        rep = {
            "command": "lemma two",
            "n": v.n,
            "ell": v.ell,
            "k": v.k,
            "m": v.m,
            "hypotheses_met": v.hypotheses_met,
            "division": _division_report(v.division),
            "quotient_vanishes": v.quotient_vanishes,
            "consistent": v.consistent,
            "note": v.note,
        }
        if v.decomposition is not None:
            rep["decomposition"] = _decomposition_report(v.decomposition)
        return _lemma_exit(v.consistent, v.division.divisible), rep
    # dangelo
    a = _family(data, "a", sp)
    b = _family(data, "b", sp)
    d = isometry_decompose(a, b)
    rep = {"command": "lemma dangelo", **_decomposition_report(d)}
    return (OK if d.identity_holds else REFUTED), rep


def _decomposition_report(d) -> Dict[str, Any]:
    rep: Dict[str, Any] = {"identity_holds": d.identity_holds, "note": d.note}
    if not d.identity_holds:
        rep["witness_point"] = _point_strs(d.witness_point)
        rep["witness_value"] = _scalar_str(d.witness_value)
        return rep
    w = d.isometry
    rep["exact"] = w.exact
    if w.exact:
        rep["matrix"] = [
            [_scalar_str(w.matrix[i, j]) for j in range(w.matrix.shape[1])]
            for i in range(w.matrix.shape[0])
        ]
    else:
        rep["matrix_approx"] = [[repr(x) for x in row] for row in w.approx]
        rep["residual"] = repr(w.residual)
    return rep


def _cmd_cm(args) -> Tuple[int, dict]:
    if args.which == "kernel":
        if args.n is None or args.s is None:
            raise InputError("cm kernel needs --n and --s (and --ell)")
        n, ell, s = args.n, args.ell, args.s
        datum = None
    else:
        data = _load_instance(args.instance)
        n, ell, sp = _instance_space(data)
        try:
            s = int(data["s"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("instance file needs integer field s") from exc
        raw = data.get("pairs")
        if not isinstance(raw, list):
            raise InputError("instance field 'pairs' must be a list of [p, q]")
        ps, qs = [], []
        for idx, pair in enumerate(raw):
            if not isinstance(pair, list) or len(pair) != 2:
                raise InputError(f"pairs[{idx}] must be [p, q]")
            try:
                ps.append(parse_expression(str(pair[0]), sp))
                qs.append(parse_expression(str(pair[1]), sp))
            except ExpressionError as exc:
                raise InputError(f"pairs[{idx}]: {exc}") from exc
        try:
            gamma = int(data.get("gamma", 0))
            delta = int(data.get("delta", 0))
        except (TypeError, ValueError) as exc:
            raise InputError("gamma and delta must be integers") from exc
        datum = paired_block_sum(ps, qs, gamma, delta) if ps else None
    try:
        rep_k = cm_kernel_solve(n, ell, s, datum)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rep = {
        "command": f"cm {args.which}",
        "n": rep_k.n,
        "ell": rep_k.ell,
        "s": rep_k.s,
        "unknowns": rep_k.unknown_count,
        "equations": rep_k.equation_count,
        "consistent": rep_k.consistent,
        "kernel_dimension": rep_k.kernel_dimension,
        "expectation": rep_k.expectation,
        "matches_expectation": rep_k.matches_expectation,
        "note": rep_k.note,
    }
    if rep_k.consistent and rep_k.particular is not None:
        p_comps, q_comp = rep_k.particular
        rep["particular"] = {
            "p": [format_poly(c) for c in p_comps],
            "q": format_poly(q_comp),
        }
    return (OK if rep_k.consistent else REFUTED), rep


def _cmd_cayley(args) -> Tuple[int, dict]:
    n = args.n
    if n < 2:
        raise InputError("need n >= 2")
    ells = [args.ell] if args.ell is not None else list(range(0, (n - 1) // 2 + 1))
    comps = cayley_transform(n)
    checks = {}
    for ell in ells:
        checks[str(ell)] = cayley_identity_check(n, ell)
    rep = {
        "command": "cayley",
        "n": n,
        "components": [format_poly(c) for c in comps],
        "identity_by_ell": checks,
        "signs_by_ell": {
            str(ell): list(cayley_signs(n, ell)) for ell in ells
        },
    }
    return (OK if all(checks.values()) else REFUTED), rep


def _cmd_flip(args) -> Tuple[int, dict]:
    try:
        f = flip_map(args.n, args.ell)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    cert = multiplier(f)
    rep = {
        "command": "flip",
        "n": args.n,
        "source_ell": f.source.num_negative,
        "target_ell": f.target.num_negative,
        "f": [format_poly(c) for c in f.z_components],
        "g": format_poly(f.w_component),
        **_cert_report(cert),
    }
    return (OK if cert.verified else REFUTED), rep


def _cmd_gen(args) -> Tuple[int, dict]:
    try:
        spec = CorpusSpec(
            n=args.n,
            ell=args.ell,
            big_n=args.big_n,
            ellp=args.ellp,
            psi_weight_bound=args.psi_bound,
            height_bound=args.height,
            count=args.count,
            seed=args.seed,
        )
        entries = gen_corpus(spec)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    written = []
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for entry in entries:
            path = outdir / f"{entry['metadata']['name']}.json"
            with open(path, "w", encoding="utf-8") as handle:
                json.dump(entry, handle, indent=2, sort_keys=True)
                handle.write("\n")
            written.append(str(path))
    else:
        for entry in entries:
            print(json.dumps(entry, sort_keys=True))
    rep = {
        "command": "gen",
        "count": len(entries),
        "seed": args.seed,
        "written": written,
    }
    return OK, rep


def _cmd_examples(args) -> Tuple[int, dict]:
    if args.id is None:
        return OK, {"command": "examples", "ids": list(gallery_ids())}
    try:
        entry = gallery_entry(args.id)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    return OK, {"command": "examples", "id": args.id, "mapfile": entry}


# -- dispatch ----------------------------------------------------------


def _build_parser(default_seed: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadricmaps",
        description="Exact certificates for maps between real hyperquadrics.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable report")
    parser.add_argument(
        "--seed",
        type=int,
        default=default_seed,
        help="seed for randomized commands (default: QUADRICMAPS_SEED or 0)",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add(name, fn, helptext):
        p = sub.add_parser(name, help=helptext)
        p.set_defaults(fn=fn)
        return p

    p = add("verify", _cmd_verify, "check the quadric-to-quadric identity")
    p.add_argument("map")
    p = add("multiplier", _cmd_multiplier, "exact multiplier certificate")
    p.add_argument("map")
    p = add("transversal", _cmd_transversal, "transversality at a point")
    p.add_argument("map")
    p.add_argument("--point", required=True, help='point "(c1, .., cn)" on the source')
    p = add("locus", _cmd_locus, "where transversality fails")
    p.add_argument("map")
    p = add("normalize", _cmd_normalize, "paired polynomial normal form")
    p.add_argument("map")
    p.add_argument("--order", type=int, default=None, help="truncate the display to this weight")
    p = add("span", _cmd_span, "dimension of the linear span of the components")
    p.add_argument("map")
    p = add("segre", _cmd_segre, "image inside one target Segre variety?")
    p.add_argument("map")
    p.add_argument("--at", required=True, help='base point "(c1, .., cn)"')

    p = sub.add_parser("lemma", help="algebraic lemma checkers")
    lemma_sub = p.add_subparsers(dest="which", metavar="which", required=True)
    for which, helptext in (
        ("huang", "pairing-sum divisibility, single layer"),
        ("layers", "layered pairing sums"),
        ("two", "signed squares against the mixed-sign form"),
        ("dangelo", "norm-sum identity with isometry recovery"),
    ):
        q = lemma_sub.add_parser(which, help=helptext)
        q.add_argument("instance", help="JSON instance file")
        q.set_defaults(fn=_cmd_lemma)

    p = sub.add_parser("cm", help="linearized-operator kernels")
    cm_sub = p.add_subparsers(dest="which", metavar="which", required=True)
    q = cm_sub.add_parser("kernel", help="homogeneous kernel at one weight")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--ell", type=int, default=0)
    q.add_argument("--s", type=int, required=True)
    q.set_defaults(fn=_cmd_cm)
    q = cm_sub.add_parser("solve", help="solve against a paired-block datum")
    q.add_argument("instance", help="JSON instance file")
    q.set_defaults(fn=_cmd_cm)

    p = add("cayley", _cmd_cayley, "bounded-realization change of coordinates")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, default=None)
    p = add("flip", _cmd_flip, "sign-reversing self-equivalence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p = add("gen", _cmd_gen, "generate a seeded normalization corpus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--N", dest="big_n", type=int, required=True)
    p.add_argument("--ellp", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--psi-bound", type=int, default=4)
    p.add_argument("--height", type=int, default=2)
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--out", default=None, help="write one map file per entry here")
    p = add("examples", _cmd_examples, "list or print the built-in gallery")
    p.add_argument("id", nargs="?", default=None)

    return parser


def _human(rep: dict) -> str:
    lines = []
    for key, value in rep.items():
        if isinstance(value, (list, dict)):
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def run_command(argv: Sequence[str]) -> Tuple[int, dict]:
    """Dispatch one command line; returns (exit code, report)."""
    default_seed = int(os.environ.get("QUADRICMAPS_SEED", "0"))
    parser = _build_parser(default_seed)
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = OK if exc.code == 0 else INVALID
        usage = parser.format_usage().strip().removeprefix("usage: ")
        return code, {"command": "help", "usage": usage}
    if getattr(args, "fn", None) is None:
        return INVALID, {
            "command": None,
            "error": "no command given",
            "usage": parser.format_usage().strip().removeprefix("usage: "),
        }
    try:
        code, rep = args.fn(args)
    except InputError as exc:
        return INVALID, {"command": args.command, "error": str(exc)}
    except NotVerifiedError as exc:
        return REFUTED, {"command": args.command, "error": str(exc)}
    rep["exit"] = code
    rep["json"] = args.json
    return code, rep


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, rep = run_command(sys.argv[1:] if argv is None else argv)
    as_json = bool(rep.pop("json", False))
    rep.pop("exit", None)
    if as_json:
        print(json.dumps(rep, indent=2, sort_keys=True))
    else:
        print(_human(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
