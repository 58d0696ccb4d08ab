"""Command line interface over the validators, the calculus and the reports.

Every command writes a single JSON document (sorted keys, two-space
indent, trailing newline) to stdout or to ``--output``.  Wall-clock
timings go to stderr so that reports for a fixed seed are byte-identical
across runs.  Exit codes: 0 when every gating check passes, 1 when a
check fails, 2 on malformed or invalid input, 3 when a bracket arity
exceeds the configured cap (``--arity-cap`` or the ``NPLECTIC_ARITY_CAP``
environment variable).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from pathlib import Path

from .calculus import ce_differential, contract, higher_bracket, lie_derivative, schouten, tensor_jacobi_residual
from .cohomology import (
    NotACocycle,
    ce_cohomology_table,
    class_of,
    extension_cohomology_table,
    poisson_bracket,
    poisson_jacobi_residual,
)
from .elements import Cotensor, Tensor
from .engine import (
    DEFAULT_EXTENSION_ARITY_CAP,
    ExtensionElement,
    extension_jacobi_residual,
    structure_from_json,
    symplectic_basis,
)
from .identities import cartan_suite, pairing_suite, random_symplectic
from .linf import ExtensionLinf, TensorLinf, check_momentum_map, jacobi_residual
from .models import momentum_from_json
from .pairs import PairMorphismCandidate, pair_from_json, validate_morphism, validate_pair
from .report import Report, canonical_json
from .sampling import random_cotensor, random_tensor
from .scalars import CapExceeded


class InputError(Exception):
    """Unreadable, malformed or structurally invalid input."""


# ---------------------------------------------------------------------------
# loading helpers
# ---------------------------------------------------------------------------

def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _load_pair(data):
    if isinstance(data, dict) and "omega" in data:
        data = data.get("pair", data)
    try:
        return pair_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad pair: {exc}") from exc


def _load_structure(data):
    try:
        return structure_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad structure: {exc}") from exc


def _load_element(cls, pair, data, what: str):
    try:
        return cls.from_json(pair, data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad {what}: {exc}") from exc


def _field(data, key: str):
    try:
        return data[key]
    except (KeyError, TypeError) as exc:
        raise InputError(f"missing field {key!r}") from exc


def _arity_cap(args) -> int:
    if getattr(args, "arity_cap", None) is not None:
        return args.arity_cap
    env = os.environ.get("NPLECTIC_ARITY_CAP")
    if env is None:
        return DEFAULT_EXTENSION_ARITY_CAP
    try:
        return int(env)
    except ValueError:
        raise InputError(f"NPLECTIC_ARITY_CAP must be an integer, got {env!r}") from None


def _parse_span(text: str, what: str) -> range:
    """An inclusive MIN:MAX span, e.g. '-1:4'."""
    lo, sep, hi = text.partition(":")
    try:
        if not sep:
            v = int(text)
            return range(v, v + 1)
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise InputError(f"bad {what} span {text!r}; expected MIN:MAX") from None


def _result_extra(result) -> dict:
    return {"result": result.to_json(), "display": repr(result)}


# ---------------------------------------------------------------------------
# command handlers; each returns (report, extra top-level JSON fields)
# ---------------------------------------------------------------------------

def cmd_validate_pair(args):
    pair = _load_pair(_read_json(args.input))
    report = validate_pair(pair, samples=args.samples, seed=args.seed,
                           max_degree=args.max_degree)
    return report, {}


def cmd_validate_morphism(args):
    data = _read_json(args.input)
    try:
        cand = PairMorphismCandidate.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad morphism: {exc}") from exc
    report = validate_morphism(cand, samples=args.samples, seed=args.seed,
                               max_degree=args.max_degree)
    return report, {}


def cmd_bracket(args):
    data = _read_json(args.input)
    pair = _load_pair(_field(data, "pair"))
    raw = _field(data, "args")
    if not isinstance(raw, list) or not raw:
        raise InputError("'args' must be a nonempty list of tensors")
    xs = [_load_element(Tensor, pair, t, "tensor") for t in raw]
    if args.schouten:
        if len(xs) != 2:
            raise InputError("the schouten bracket takes exactly two arguments")
        result = schouten(xs[0], xs[1])
    else:
        result = higher_bracket(len(xs), xs)
    report = Report("bracket", {"family": pair.family, "arity": len(xs),
                                "schouten": bool(args.schouten)})
    return report, _result_extra(result)


def cmd_differential(args):
    data = _read_json(args.input)
    pair = _load_pair(_field(data, "pair"))
    f = _load_element(Cotensor, pair, _field(data, "element"), "cotensor")
    report = Report("differential", {"family": pair.family})
    return report, _result_extra(ce_differential(f))


def _tensor_cotensor_input(args):
    data = _read_json(args.input)
    pair = _load_pair(_field(data, "pair"))
    x = _load_element(Tensor, pair, _field(data, "tensor"), "tensor")
    f = _load_element(Cotensor, pair, _field(data, "cotensor"), "cotensor")
    return pair, x, f


def cmd_contract(args):
    pair, x, f = _tensor_cotensor_input(args)
    report = Report("contract", {"family": pair.family})
    return report, _result_extra(contract(x, f))


def cmd_lie_derivative(args):
    pair, x, f = _tensor_cotensor_input(args)
    try:
        result = lie_derivative(x, f)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = Report("lie-derivative", {"family": pair.family})
    return report, _result_extra(result)


def cmd_nplectic_check(args):
    data = _read_json(args.input)
    pair = _load_pair(_field(data, "pair"))
    try:
        n = int(_field(data, "n"))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad degree n: {exc}") from exc
    omega = _load_element(Cotensor, pair, _field(data, "omega"), "cotensor")
    report = Report("nplectic-check", {"family": pair.family, "n": n})
    report.add("degree_at_least_one", n >= 1)
    degree_ok = omega.is_zero() or omega.grade == -(n + 1)
    report.add("homogeneous_of_degree", degree_ok,
               expected=-(n + 1), found=sorted(omega.degrees()))
    residual = ce_differential(omega)
    report.add("closed", residual.is_zero(),
               **({} if residual.is_zero() else {"residual": repr(residual)}))
    return report, {}


def cmd_jacobi(args):
    s = _load_structure(_read_json(args.input))
    cap = _arity_cap(args)
    rng = random.Random(args.seed)
    pair = s.pair
    report = Report("jacobi", {
        "family": pair.family, "n": s.n, "seed": args.seed, "count": args.count,
        "max_arity": args.max_arity, "arity_cap": cap,
    })
    tensor_op = TensorLinf(pair)
    extension_op = ExtensionLinf(s, cap)
    cache: dict = {}
    grades = [g for g in range(0, s.n + 1)
              if symplectic_basis(s, g, max_poly_degree=2)] or [0]
    max_grade = min(pair.ngens, 3)
    for k in range(2, args.max_arity + 1):
        zero_bad = agree_bad = 0
        witness = None
        for _ in range(args.count):
            xs = [random_tensor(rng, pair, rng.randrange(max_grade + 1), max_degree=2)
                  for _ in range(k)]
            direct = tensor_jacobi_residual(xs)
            generic = jacobi_residual(tensor_op, xs)
            if direct != generic:
                agree_bad += 1
            if not direct.is_zero():
                zero_bad += 1
                if witness is None:
                    witness = {"args": [repr(x) for x in xs], "residual": repr(direct)}
        details = {"instances": args.count, "nonzero": zero_bad, "disagreements": agree_bad}
        if witness is not None:
            details["witness"] = witness
        report.add(f"tensor_jacobi_arity_{k}", zero_bad == 0 and agree_bad == 0, **details)

        zero_bad = agree_bad = 0
        witness = None
        for _ in range(args.count):
            es = []
            for _ in range(k):
                g = rng.choice(grades)
                es.append(ExtensionElement(
                    s, random_cotensor(rng, pair, s.n - g, max_degree=2),
                    random_symplectic(rng, s, g, cache)))
            direct = extension_jacobi_residual(es, cap)
            generic = jacobi_residual(extension_op, es)
            if direct != generic:
                agree_bad += 1
            if not direct.is_zero():
                zero_bad += 1
                if witness is None:
                    witness = {"args": [repr(e) for e in es], "residual": repr(direct)}
        details = {"instances": args.count, "nonzero": zero_bad, "disagreements": agree_bad}
        if witness is not None:
            details["witness"] = witness
        report.add(f"extension_jacobi_arity_{k}", zero_bad == 0 and agree_bad == 0, **details)
    return report, {}


def cmd_cohomology(args):
    data = _read_json(args.input)
    has_structure = isinstance(data, dict) and "omega" in data
    if args.plain:
        pair = _load_structure(data).pair if has_structure else _load_pair(data)
        if args.weights is not None:
            weights = list(_parse_span(args.weights, "weights"))
        else:
            weights = [0] if pair.poly_nvars == 0 else [0, 1, 2]
        if args.degrees is not None:
            span = _parse_span(args.degrees, "degrees")
            max_word_len = max(span.stop - 1, 0)
        else:
            max_word_len = pair.ngens
        table = ce_cohomology_table(pair, max_word_len, weights=weights)
        report = Report("cohomology", {"family": pair.family, "mode": "pair",
                                       "weights": weights})
        return report, {"table": table}
    if not has_structure:
        raise InputError(
            "extension cohomology needs a structure with omega; pass --plain for pair tables")
    s = _load_structure(data)
    degrees = (_parse_span(args.degrees, "degrees") if args.degrees is not None
               else range(-1, s.n + 3))
    if args.weights is not None:
        weights = list(_parse_span(args.weights, "weights"))
    else:
        weights = [0] if s.pair.poly_nvars == 0 else [0, 1, 2]
    table = extension_cohomology_table(s, degrees, weights)
    report = Report("cohomology", {
        "family": s.pair.family, "n": s.n, "mode": "extension",
        "degrees": list(degrees), "weights": weights,
    })
    return report, {"table": table}


def cmd_poisson(args):
    s = _load_structure(_read_json(args.input))
    cap = _arity_cap(args)
    data = _read_json(args.elements)
    raw = _field(data, "elements")
    if not isinstance(raw, list) or not raw:
        raise InputError("'elements' must be a nonempty list")
    report = Report("poisson", {
        "family": s.pair.family, "n": s.n, "arity": len(raw), "arity_cap": cap,
        "jacobi": bool(args.jacobi),
    })
    classes = []
    for i, item in enumerate(raw, start=1):
        if not isinstance(item, dict):
            raise InputError(f"element {i} must be an object with 'f' and 'x'")
        try:
            e = ExtensionElement.from_json(s, item)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad element {i}: {exc}") from exc
        degree = item.get("degree")
        try:
            cls = class_of(e, degree=degree)
        except NotACocycle as exc:
            report.add(f"cocycle_{i}", False, residual=repr(exc.residual))
            continue
        except ValueError as exc:
            raise InputError(f"element {i}: {exc}") from exc
        report.add(f"cocycle_{i}", True)
        classes.append(cls)
    if len(classes) != len(raw):
        return report, {}
    result = poisson_bracket(len(classes), classes, cap)
    extra = {"result": result.to_json(), "display": repr(result),
             "zero_class": result.is_zero()}
    if args.jacobi:
        residual = poisson_jacobi_residual(classes, cap)
        report.add("weak_jacobi", residual.is_zero(),
                   **({} if residual.is_zero() else {"residual": repr(residual)}))
    return report, extra


def cmd_momentum_check(args):
    s = _load_structure(_read_json(args.input))
    cap = _arity_cap(args)
    data = _read_json(args.candidate)
    try:
        algebra, fields, potentials = momentum_from_json(s, data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad candidate: {exc}") from exc
    try:
        ok, details = check_momentum_map(s, algebra, fields, potentials,
                                         max_arity=args.max_arity, cap=cap)
    except CapExceeded:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = Report("momentum-check", {
        "family": s.pair.family, "n": s.n, "generators": algebra.dim,
        "max_arity": args.max_arity, "arity_cap": cap,
    })
    cocycle_issues = [i for i in details["issues"] if i["gate"] == "cocycle"]
    morphism_issues = [i for i in details["issues"] if i["gate"] == "morphism"]
    report.add("cocycle_gate", not cocycle_issues,
               **({"issues": cocycle_issues} if cocycle_issues else {}))
    report.add("morphism_gate", ok and not morphism_issues,
               **({"issues": morphism_issues} if morphism_issues else {}))
    extra = {"classes": [None if c is None else repr(c) for c in details["classes"]]}
    return report, extra


def cmd_identities(args):
    data = _read_json(args.input)
    has_structure = isinstance(data, dict) and "omega" in data
    if has_structure:
        s = _load_structure(data)
        pair = s.pair
    else:
        pair = _load_pair(data)
    report = cartan_suite(pair, count=args.count, seed=args.seed)
    report.title = "identities"
    if has_structure:
        pairing = pairing_suite(s, count=args.pairing_count, seed=args.seed)
        report.checks.extend(pairing.checks)
        report.meta["n"] = s.n
        report.meta["pairing_count"] = args.pairing_count
    return report, {}


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------

def _add_output(p):
    p.add_argument("--output", metavar="PATH",
                   help="write the JSON report here instead of stdout")


def _add_sampling(p, samples: int):
    p.add_argument("--samples", type=int, default=samples, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--max-degree", type=int, default=3, metavar="D",
                   help="largest polynomial degree drawn for random elements")


def _add_cap(p):
    p.add_argument("--arity-cap", type=int, default=None, metavar="K",
                   help="largest bracket arity to evaluate "
                        "(default: NPLECTIC_ARITY_CAP or 6)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nplectic",
        description="Exact calculus, cohomology and certification for "
                    "higher symplectic structures over Lie-Rinehart pairs.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate-pair", help="check the pair axioms on random data")
    p.add_argument("input", help="pair or structure JSON file")
    _add_sampling(p, 25)
    _add_output(p)
    p.set_defaults(handler=cmd_validate_pair)

    p = sub.add_parser("validate-morphism", help="check the morphism equations")
    p.add_argument("input", help="morphism JSON file with domain/codomain/f/g")
    _add_sampling(p, 25)
    _add_output(p)
    p.set_defaults(handler=cmd_validate_morphism)

    p = sub.add_parser("bracket", help="higher bracket of tensors")
    p.add_argument("input", help="JSON file with 'pair' and a list 'args'")
    p.add_argument("--schouten", action="store_true",
                   help="binary odd bracket instead of the alternating one")
    _add_output(p)
    p.set_defaults(handler=cmd_bracket)

    p = sub.add_parser("differential", help="apply the complex differential")
    p.add_argument("input", help="JSON file with 'pair' and 'element'")
    _add_output(p)
    p.set_defaults(handler=cmd_differential)

    p = sub.add_parser("contract", help="contract a tensor into a cotensor")
    p.add_argument("input", help="JSON file with 'pair', 'tensor' and 'cotensor'")
    _add_output(p)
    p.set_defaults(handler=cmd_contract)

    p = sub.add_parser("lie-derivative", help="flow derivative of a cotensor")
    p.add_argument("input", help="JSON file with 'pair', 'tensor' and 'cotensor'")
    _add_output(p)
    p.set_defaults(handler=cmd_lie_derivative)

    p = sub.add_parser("nplectic-check", help="degree and closedness of a structure")
    p.add_argument("input", help="structure JSON file with 'pair', 'n' and 'omega'")
    _add_output(p)
    p.set_defaults(handler=cmd_nplectic_check)

    p = sub.add_parser("jacobi", help="weak Jacobi checks via two code paths")
    p.add_argument("input", help="structure JSON file")
    p.add_argument("--max-arity", type=int, default=4, metavar="K")
    p.add_argument("--count", type=int, default=10, metavar="N",
                   help="random instances per arity and family")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    _add_cap(p)
    _add_output(p)
    p.set_defaults(handler=cmd_jacobi)

    p = sub.add_parser("cohomology", help="cohomology dimension tables")
    p.add_argument("input", help="structure JSON file (or pair file with --plain)")
    p.add_argument("--degrees", metavar="MIN:MAX",
                   help="inclusive degree window (default -1:n+2)")
    p.add_argument("--weights", metavar="MIN:MAX",
                   help="inclusive polynomial weight window (default 0:2)")
    p.add_argument("--plain", action="store_true",
                   help="table of the plain complex of the pair instead")
    _add_output(p)
    p.set_defaults(handler=cmd_cohomology)

    p = sub.add_parser("poisson", help="bracket of classes from cocycle data")
    p.add_argument("input", help="structure JSON file")
    p.add_argument("elements", help="JSON file with a list 'elements' of {f, x}")
    p.add_argument("--jacobi", action="store_true",
                   help="also check the weak Jacobi identity on the classes")
    _add_cap(p)
    _add_output(p)
    p.set_defaults(handler=cmd_poisson)

    p = sub.add_parser("momentum-check", help="certify a momentum-map candidate")
    p.add_argument("input", help="structure JSON file")
    p.add_argument("candidate", help="JSON file with algebra/fields/potentials")
    p.add_argument("--max-arity", type=int, default=3, metavar="K")
    _add_cap(p)
    _add_output(p)
    p.set_defaults(handler=cmd_momentum_check)

    p = sub.add_parser("identities", help="randomized flow-calculus identity suite")
    p.add_argument("input", help="pair or structure JSON file")
    p.add_argument("--count", type=int, default=200, metavar="N")
    p.add_argument("--pairing-count", type=int, default=50, metavar="N",
                   help="instances per arity for the pairing checks")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    _add_output(p)
    p.set_defaults(handler=cmd_identities)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        report, extra = args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    payload = report.to_json()
    payload.update(extra)
    text = canonical_json(payload)
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    elapsed = time.perf_counter() - started
    print(f"{args.command}: {elapsed:.3f}s", file=sys.stderr)
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
