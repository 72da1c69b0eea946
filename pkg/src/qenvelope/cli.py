"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 a checked identity failed.
"""

import argparse
import json
import sys
from importlib import resources
from math import gcd

from qenvelope.cyclo import root_of_unity
from qenvelope.lattice import (
    enumerate_intermediate_lattices,
    index,
    iso_rank,
    k_map_image_order,
    k_map_is_iso,
    lambda_generator,
    predicted_iso_rank,
    root_lattice,
    weight_lattice,
)
from qenvelope.orbits import TSV_COLUMNS, dckp_table, format_tsv
from qenvelope.pbw import (
    ReducedAlgebra,
    UnsupportedRankError,
    expected_dimension,
    load_rewrite_system,
    save_rewrite_system,
)
from qenvelope.pbw.rewriting import CompletionError
from qenvelope.reps import (
    NoSmallModuleError,
    Representation,
    RepresentationError,
    builtin_representation,
    central_small_module_exists,
    construct_central_one_dim,
    default_level,
    is_absolutely_irreducible,
    l_character_of,
    trick_check,
    verify_relations,
)
from qenvelope.rootdata import build_root_datum, validate_ell

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_FALSIFIED = 0, 1, 2
_WEIGHT_NAMES = {"Λ", "L", "P", "LAMBDA", "Lambda", "lambda"}
ENUMERATION_LIMIT = 2_000_000


def load_schema(name):
    """The committed JSON schema ``schemas/<name>.schema.json``."""
    text = resources.files("qenvelope").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- helpers ------------------------------------------------------------------


def _data(args):
    types, ranks = args.type or [], args.rank or []
    if not types or len(types) != len(ranks):
        raise UsageError("give one --rank for every --type")
    out = []
    for t, r in zip(types, ranks):
        try:
            out.append(build_root_datum(t.upper(), r))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return out


def _single(args):
    data = _data(args)
    if len(data) != 1:
        raise UsageError("this subcommand takes a single simple type")
    return data[0]


def _ell(args, data):
    try:
        return validate_ell(args.l, [(d.type, d.rank) for d in data])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def select_lattice(datum, selector):
    selector = selector.strip()
    if selector in ("Q", "q"):
        return root_lattice(datum)
    if selector in _WEIGHT_NAMES:
        return weight_lattice(datum)
    lattices = enumerate_intermediate_lattices(datum)
    try:
        return lattices[int(selector)]
    except (ValueError, IndexError):
        raise UsageError(
            f"lattice selector {selector!r} is not Q, Λ or an index below {len(lattices)}"
        ) from None


def _selectors(value, count):
    parts = [p for p in value.split(",")] if value else []
    if len(parts) != count:
        raise UsageError(f"need {count} comma-separated lattice selectors, got {value!r}")
    return parts


def _cyclo(x):
    e = x.root_exponent()
    out = {"coeffs": x.to_json()}
    if e is not None:
        out["root_exponent"] = e
    return out


def _signed_sum(coeffs, symbol):
    out = ""
    for i, c in enumerate(coeffs):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        out += f" {sign} {mag}{symbol}{i + 1}" if out else f"{'-' if c < 0 else ''}{mag}{symbol}{i + 1}"
    return out or "0"


def _emit(args, doc, text):
    if args.format == "json":
        body = json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"
    else:
        body = text if text.endswith("\n") else text + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


# -- subcommands ------------------------------------------------------------------


def cmd_lattices(args):
    datum = _single(args)
    lattices = enumerate_intermediate_lattices(datum)
    q, lam = lattices[0], lattices[-1]
    rows = []
    for i, m in enumerate(lattices):
        rows.append(
            {
                "index": i,
                "name": m.label(),
                "basis": [list(v) for v in m.hnf],
                "index_over_Q": m.index_over_root_lattice(),
                "index_in_weight_lattice": m.index_in_weight_lattice(),
            }
        )
    ok = all(r["index_over_Q"] * r["index_in_weight_lattice"] == q.index_in_weight_lattice() for r in rows)
    try:
        gen = list(lambda_generator(datum))
    except ValueError:
        gen = None
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "lattices",
        "type": datum.label,
        "count": len(lattices),
        "weight_over_root_index": lam.index_over_root_lattice(),
        "lambda_generator": gen,
        "lattices": rows,
        "consistent": ok,
    }
    lines = [f"{datum.label}: {len(lattices)} lattices, |Λ/Q| = {lam.index_over_root_lattice()}"]
    if gen is not None:
        lines.append("λ_Λ = " + _signed_sum(gen, "λ"))
    for r in rows:
        lines.append(f"  [{r['index']}] {r['name']}: |M/Q| = {r['index_over_Q']}, basis {r['basis']}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_isogeny_rank(args):
    data = _data(args)
    ell = _ell(args, data)
    ms = [select_lattice(d, s) for d, s in zip(data, _selectors(args.M, len(data)))]
    ns = [select_lattice(d, s) for d, s in zip(data, _selectors(args.N, len(data)))]
    try:
        computed = iso_rank(ms, ns, ell)
        image = k_map_image_order(ms, ns, ell)
        bijective = k_map_is_iso(ms, ns, ell)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    predicted = predicted_iso_rank(ms, ns, ell)
    quotient = 1
    for m, n in zip(ms, ns):
        quotient *= index(m, n)
    iso_ok = bijective == (gcd(quotient, ell) == 1)
    agree = computed == predicted and iso_ok
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "isogeny-rank",
        "types": [d.label for d in data],
        "ell": ell,
        "M": [m.label() for m in ms],
        "N": [n.label() for n in ns],
        "index_N_over_M": quotient,
        "image_order": image,
        "computed_rank": computed,
        "predicted_rank": predicted,
        "bijective": bijective,
        "agree": agree,
    }
    text = (
        f"{'x'.join(d.label for d in data)} ell={ell} |N/M|={quotient}: "
        f"computed rank {computed}, predicted rank {predicted}, K-map bijective={bijective}"
        + ("" if agree else "  FALSIFIED")
    )
    _emit(args, doc, text)
    return EXIT_OK if agree else EXIT_FALSIFIED


def cmd_verify_rep(args):
    if bool(args.builtin) == bool(args.file):
        raise UsageError("give exactly one of --builtin or --file")
    try:
        rep = builtin_representation(args.builtin) if args.builtin else Representation.load(args.file)
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read representation: {exc}") from None
    report = verify_relations(rep)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify-rep",
        "name": rep.name,
        "type": rep.datum.label,
        "ell": rep.ell,
        "level": rep.level,
        "dim": rep.dim,
        "passed": report.passed,
        "relations_checked": report.checked,
        "failed_relations": report.failed_labels(),
    }
    lines = [f"{rep.name or 'representation'} ({rep.datum.label}, dim {rep.dim}, ell={rep.ell}, level {rep.level})"]
    lines.append(f"relations: {'pass' if report.passed else 'FAIL'} ({report.checked} checked)")
    status = EXIT_OK
    if report.passed:
        eta, central = l_character_of(rep)
        irr = is_absolutely_irreducible(rep)
        trick = trick_check(rep)
        k2 = eta.k_values[0] ** 2
        eps_exp = None
        e = k2.root_exponent()
        if e is not None and e % (rep.level // rep.ell) == 0:
            eps_exp = e // (rep.level // rep.ell)
        doc.update(
            {
                "irreducible": irr,
                "central": central,
                "k_values": [_cyclo(v) for v in eta.k_values],
                "k1_power_2ell": _cyclo(k2),
                "k1_power_2ell_eps_exponent": eps_exp,
                "trick_check": trick.passed,
                "trick_violations": trick.violations,
            }
        )
        lines.append(f"absolutely irreducible: {irr}")
        lines.append(f"l-character: {'central' if central else 'not central'}")
        val = {None: repr(k2), 0: "1", 1: "eps"}.get(eps_exp, f"eps^{eps_exp}")
        lines.append(f"eta(K1^{2 * rep.ell}) = {val}")
        lines.append(f"K_a^2 trick: {'pass' if trick.passed else 'FAIL'}")
        if not trick.passed:
            status = EXIT_FALSIFIED
    else:
        for label in report.failed_labels():
            lines.append(f"  residual at {label}")
        status = EXIT_FALSIFIED
    _emit(args, doc, "\n".join(lines))
    return status


def cmd_pbw(args):
    if args.load:
        try:
            alg = load_rewrite_system(args.load)
        except (OSError, KeyError, ValueError) as exc:
            raise UsageError(f"cannot load rewrite system: {exc}") from None
        datum, lattice, ell = alg.pres.datum, alg.pres.lattice, alg.pres.ell
        if not isinstance(alg, ReducedAlgebra):
            raise UsageError("stored system has no l-character")
    else:
        datum = _single(args)
        ell = _ell(args, [datum])
        lattice = select_lattice(datum, args.lattice)
        try:
            alg = ReducedAlgebra(lattice, ell, level=args.level)
        except UnsupportedRankError as exc:
            raise UsageError(str(exc)) from None
    confluent = alg.is_confluent()
    expected = expected_dimension(datum, ell)
    shape = alg.pbw_shape_ok()
    if expected <= ENUMERATION_LIMIT:
        count, method = alg.reduced_dimension(), "enumerated"
    else:
        count, method = (expected if shape else None), "leading-word shape"
    ok = confluent and count == expected
    if args.save:
        save_rewrite_system(alg, args.save)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "pbw",
        "type": datum.label,
        "ell": ell,
        "level": alg.level,
        "lattice": lattice.label(),
        "rules": len(alg.system.rules),
        "confluent": confluent,
        "pbw_shape": shape,
        "normal_basis_count": count,
        "expected": expected,
        "count_method": method,
        "agree": ok,
    }
    text = (
        f"{datum.label} ell={ell} M={lattice.label()}: {len(alg.system.rules)} rules, "
        f"{'confluent' if confluent else 'NOT confluent'}, {count} monomials "
        f"(ell^dim g = {expected}, {method})" + ("" if ok else "  FALSIFIED")
    )
    _emit(args, doc, text)
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_central_small(args):
    datum = _single(args)
    ell = _ell(args, [datum])
    lattice = select_lattice(datum, args.lattice)
    try:
        exists = central_small_module_exists(lattice, ell, args.z_order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    m = lattice.index_over_root_lattice()
    d = gcd(ell, m)
    level = args.level or default_level(lattice, ell, args.z_order)
    if level % args.z_order or level % ell:
        raise UsageError(f"level {level} must be divisible by ell and by the order of z")
    z_value = root_of_unity(level, level // args.z_order)
    built = roundtrip = None
    status = EXIT_OK
    detail = ""
    try:
        rep = construct_central_one_dim(lattice, ell, z_value)
    except NoSmallModuleError:
        built = False
    except UnsupportedRankError as exc:
        built = None
        detail = str(exc)
    except RepresentationError as exc:
        raise UsageError(str(exc)) from None
    else:
        built = True
        verified = verify_relations(rep).passed
        eta, central = l_character_of(rep)
        roundtrip = verified and central and eta.k_values[0] ** 2 == z_value
    coherent = built is None or (built == exists and (not built or roundtrip))
    if not coherent:
        status = EXIT_FALSIFIED
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "central-small",
        "type": datum.label,
        "ell": ell,
        "lattice": lattice.label(),
        "m": m,
        "d": d,
        "z_order": args.z_order,
        "level": level,
        "exists": exists,
        "constructed": built,
        "roundtrip": roundtrip,
        "coherent": coherent,
    }
    if exists:
        text = f"small module exists: 1-dimensional (order {args.z_order} divides m/d = {m // d})"
        if built:
            text += f"; constructed and verified={roundtrip}"
        elif detail:
            text += f"; {detail}"
    else:
        text = f"no small module (order {args.z_order} does not divide m/d = {m // d})"
    if not coherent:
        text += "  FALSIFIED"
    _emit(args, doc, text)
    return status


def cmd_dckp_table(args):
    ranks = _int_list(args.ranks)
    ells = _int_list(args.l_values)
    for e in ells:
        if e % 2 == 0 or e < 1:
            raise UsageError(f"ell must be odd, got {e}")
    rows = dckp_table(ranks, ells)
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": "dckp-table",
            "columns": list(TSV_COLUMNS),
            "rows": [list(r) for r in rows],
        }
        _emit(args, doc, "")
    else:
        _emit(args, None, format_tsv(rows))
    bad = [r for r in rows if r[-1] == "falsified"]
    return EXIT_FALSIFIED if bad else EXIT_OK


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


# -- parser -------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="qenvelope", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt="text", choices=("text", "json")):
        sp.add_argument("--format", choices=choices, default=fmt)
        sp.add_argument("--output", "-o", help="write to a file instead of stdout")

    def typed(sp, repeat=False):
        action = "append"
        sp.add_argument("--type", action=action, help="simple type letter (repeat for semisimple)")
        sp.add_argument("--rank", action=action, type=int)

    sp = sub.add_parser("lattices", help="list the lattices between Q and Λ")
    typed(sp)
    common(sp)
    sp.set_defaults(func=cmd_lattices)

    sp = sub.add_parser("isogeny-rank", help="rank of U^N over the image of U^M")
    typed(sp, repeat=True)
    sp.add_argument("--M", default=None, help="selectors per factor: Q, Λ or an index")
    sp.add_argument("--N", default=None)
    sp.add_argument("--l", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_isogeny_rank)

    sp = sub.add_parser("verify-rep", help="check a representation against the relations")
    sp.add_argument("--builtin", choices=("sl3-showcase", "counit"))
    sp.add_argument("--file")
    common(sp)
    sp.set_defaults(func=cmd_verify_rep)

    sp = sub.add_parser("pbw", help="complete the reduced algebra and count its PBW basis")
    typed(sp)
    sp.add_argument("--l", type=int)
    sp.add_argument("--lattice", default="Q")
    sp.add_argument("--level", type=int, default=None)
    sp.add_argument("--save", help="write the completed rewrite system as JSON")
    sp.add_argument("--load", help="read a rewrite system written by --save")
    common(sp)
    sp.set_defaults(func=cmd_pbw)

    sp = sub.add_parser("central-small", help="1-dimensional modules for central characters")
    typed(sp)
    sp.add_argument("--lattice", default="Λ")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--z-order", type=int, required=True)
    sp.add_argument("--level", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_central_small)

    sp = sub.add_parser("dckp-table", help="class dimensions and DCKP bounds in type A")
    sp.add_argument("--ranks", default="2,3,4,5,6,7")
    sp.add_argument("--l", dest="l_values", default="5,7")
    common(sp, fmt="tsv", choices=("tsv", "json"))
    sp.set_defaults(func=cmd_dckp_table)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "isogeny-rank":
        n = len(args.type or [])
        args.M = args.M or ",".join(["Q"] * n)
        args.N = args.N or ",".join(["Λ"] * n)
    if args.command == "pbw" and not args.load and args.l is None:
        parser.error("pbw needs --l unless --load is given")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qenvelope: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CompletionError, UnsupportedRankError) as exc:
        print(f"qenvelope: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED if isinstance(exc, CompletionError) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
