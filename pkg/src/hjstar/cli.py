"""Command-line front end.

Input is one JSON document::

    {"kind": "moduli", "genus": 0, "k": 1, "chains": [[2], [3, 2]]}
    {"kind": "stargraph", "k": 2, "chains": [[3]]}
    {"kind": "bamboo", "weights": [-1, -2, -1, -2, 0]}

``genus`` is optional (default 0).  ``moduli`` and ``stargraph`` carry the
same fields; ``stargraph`` reads them as the resolution graph only, so the
subcommands that need the linear model (``matrix --part Dinf/full``,
``model``, ``cs-check``, ``ample``) still accept it, while ``dot`` exports
the star graph for ``stargraph`` and the linear model for ``moduli``.

Exit codes: 0 success, 1 the mathematics says no (invalid data, form not
negative definite, no certificate, failed check), 2 usage or input error.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Mapping, Optional, Tuple

from . import report
from .blowup import Bamboo, build_fiber_bamboo, build_model, contract_to_base
from .cfrac import cf_eval_reversed, dual_chain
from .equiv import (enumerate_and_crosscheck, equivalence_report, search_certificate,
                    solve_ample, validate_moduli, verify_certificate)
from .quadform import (model_cs_check, model_indices,
                       star_diagonal, star_elimination_order)
from .stargraph import PARTS, ModuliData, intersection_matrix, model_intersection_matrix, to_dot

SUBCOMMANDS = ("validate", "matrix", "diag", "dual", "trace", "model", "cs-check",
               "ample", "equiv", "enumerate", "dot")

_FIELDS = {
    "moduli": ({"kind", "k", "chains"}, {"genus"}),
    "stargraph": ({"kind", "k", "chains"}, {"genus"}),
    "bamboo": ({"kind", "weights"}, set()),
}

DEFAULT_BOUNDS = {"kmax": 4, "smax": 3, "nmax": 3, "wmax": 5}


class InputError(ValueError):
    """Malformed or out-of-range input document."""


class UsageError(ValueError):
    """Subcommand applied to a document or flags it cannot handle."""


@dataclass(frozen=True)
class InputDocument:
    kind: str
    genus: int = 0
    k: Optional[int] = None
    chains: Tuple[Tuple[int, ...], ...] = ()
    weights: Tuple[int, ...] = ()

    def moduli(self) -> ModuliData:
        return ModuliData(self.genus, self.k, self.chains)


def _int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{name}: expected an integer, got {json.dumps(value)}")
    return value


def _list(value, name: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{name}: expected a list, got {json.dumps(value)}")
    return value


def parse_input(text: str) -> InputDocument:
    """Parse and validate one JSON input document.

    Every error names the offending field and the violated constraint.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})")
    if not isinstance(data, dict):
        raise InputError("malformed document: top level must be a JSON object")
    if "kind" not in data:
        raise InputError("missing field: kind")
    kind = data["kind"]
    if kind not in _FIELDS:
        raise InputError(f"unknown kind {json.dumps(kind)}; expected one of "
                         + ", ".join(sorted(_FIELDS)))
    required, optional = _FIELDS[kind]
    for name in sorted(set(data) - required - optional):
        raise InputError(f"unexpected field for kind {kind}: {name}")
    for name in sorted(required - set(data)):
        raise InputError(f"missing field for kind {kind}: {name}")

    if kind == "bamboo":
        weights = tuple(_int(w, f"weights[{i}]")
                        for i, w in enumerate(_list(data["weights"], "weights")))
        if len(weights) < 3:
            raise InputError("weights: a bamboo needs at least 3 curves")
        return InputDocument(kind, weights=weights)

    genus = _int(data.get("genus", 0), "genus")
    if genus < 0:
        raise InputError(f"genus: must be ≥ 0, got {genus}")
    k = _int(data["k"], "k")
    if k < 1:
        raise InputError(f"k: must be ≥ 1, got {k}")
    chains = []
    for i, chain in enumerate(_list(data["chains"], "chains")):
        chain = _list(chain, f"chains[{i}]")
        if not chain:
            raise InputError(f"chains[{i}]: chain must be non-empty")
        for j, w in enumerate(chain):
            if _int(w, f"chains[{i}][{j}]") < 2:
                raise InputError(f"chains[{i}][{j}]: chain entry must be ≥ 2, got {w}")
        chains.append(tuple(chain))
    return InputDocument(kind, genus, k, tuple(chains))


# -- subcommands --------------------------------------------------------------
# Each returns (exit code, text report, json report).

def _needs_chains(doc: Optional[InputDocument], name: str) -> ModuliData:
    if doc is None:
        raise UsageError(f"{name} needs an input document (--input FILE or --stdin)")
    if doc.kind == "bamboo":
        raise UsageError(f"{name} needs kind moduli or stargraph, got bamboo")
    return doc.moduli()


def _validate(doc, flags):
    rep = validate_moduli(_needs_chains(doc, "validate"))
    return (0 if rep.valid else 1), report.validate_text(rep), report.validate_json(rep)


def _matrix(doc, flags):
    md = _needs_chains(doc, "matrix")
    part = flags.get("part") or "D0"
    if part not in PARTS:
        raise UsageError(f"unknown part {part!r}; expected one of {', '.join(PARTS)}")
    if part == "D0":
        star = md.star()
        labels, m = star.vertex_labels(), intersection_matrix(star)
    else:
        model = build_model(md)
        labels, m = model.vertex_labels(part), model_intersection_matrix(model, part)
    return 0, report.matrix_text(labels, m), report.matrix_json(labels, m)


def _diag(doc, flags):
    star = _needs_chains(doc, "diag").star()
    diag = star_diagonal(star)
    labels = star.vertex_labels()
    order = [labels[i] for i in star_elimination_order(star)]
    ok = diag.negative_definite
    return ((0 if ok else 1), report.diag_text(order, diag.entries, ok),
            report.diag_json(order, diag.entries, ok))


def _dual(doc, flags):
    md = _needs_chains(doc, "dual")
    rows = []
    for chain in md.chains:
        l_chain = dual_chain(chain)
        rows.append((chain, l_chain, 1 / cf_eval_reversed(chain), 1 / cf_eval_reversed(l_chain)))
    return 0, report.dual_text(rows), report.dual_json(rows)


def _trace(doc, flags):
    if doc is not None and doc.kind == "bamboo":
        c = contract_to_base(Bamboo(doc.weights))
        return (0 if c.success else 1), report.contraction_text(c), report.contraction_json(c)
    md = _needs_chains(doc, "trace")
    traces = [build_fiber_bamboo(md.k, chain).forward_trace() for chain in md.chains]
    if len(traces) == 1:
        text = report.trace_text(traces)
    else:
        text = "\n".join(f"# chain {i}\n" + report.trace_text([t])
                         for i, t in enumerate(traces, 1))
    return 0, text, {"traces": [[list(w) for w in t] for t in traces]}


def _model(doc, flags):
    m = build_model(_needs_chains(doc, "model"))
    return 0, report.model_text(m), report.model_json(m)


def _cs_check(doc, flags):
    m = build_model(_needs_chains(doc, "cs-check"))
    ok = model_cs_check(m)
    a = model_indices(m)
    return (0 if ok else 1), report.indices_text(a, ok), report.indices_json(a, ok)


def _ample(doc, flags):
    md = _needs_chains(doc, "ample")
    bound = flags.get("bound") or 12
    cert = solve_ample(md)
    if cert is None:
        cert = search_certificate(md, bound)
    if cert is not None and not verify_certificate(md, cert):
        raise RuntimeError("certificate failed verification")
    return (0 if cert else 1), report.cert_text(cert, bound), report.cert_json(cert, bound)


def _equiv(doc, flags):
    rep = equivalence_report(_needs_chains(doc, "equiv"), flags.get("bound") or 12)
    ok = rep.agreement and rep.cond2
    return (0 if ok else 1), report.equiv_text(rep), report.equiv_json(rep)


def _enumerate(doc, flags):
    b = {name: flags.get(name) or default for name, default in DEFAULT_BOUNDS.items()}
    summary = enumerate_and_crosscheck(b["kmax"], b["smax"], b["nmax"], b["wmax"],
                                       search_bound=flags.get("bound") or 12)
    code = 0 if summary.disagreements == 0 else 1
    return code, report.enumerate_text(summary), report.enumerate_json(summary)


def _dot(doc, flags):
    md = _needs_chains(doc, "dot")
    text = to_dot(md.star() if doc.kind == "stargraph" else build_model(md))
    return 0, text, {"dot": text}


_HANDLERS = {
    "validate": _validate, "matrix": _matrix, "diag": _diag, "dual": _dual,
    "trace": _trace, "model": _model, "cs-check": _cs_check, "ample": _ample,
    "equiv": _equiv, "enumerate": _enumerate, "dot": _dot,
}


def run_subcommand(name: str, document: Optional[InputDocument],
                   flags: Optional[Mapping] = None) -> Tuple[int, str]:
    """Run one subcommand and return ``(exit_code, report_text)``.

    ``flags`` may hold ``json``, ``bound``, ``part``, ``kmax``, ``smax``,
    ``nmax`` and ``wmax``; missing keys take their defaults.
    """
    flags = dict(flags or {})
    if name not in _HANDLERS:
        return 2, f"error: unknown subcommand {name!r}\n"
    try:
        code, text, data = _HANDLERS[name](document, flags)
    except UsageError as exc:
        return 2, f"error: {exc}\n"
    except ValueError as exc:
        return 2, f"error: {exc}\n"
    except RuntimeError as exc:
        return 1, f"error: {exc}\n"
    if flags.get("json"):
        text = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    return code, text


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hjstar",
        description="Exact continued-fraction and resolution-graph calculus.")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="FILE", help="read the JSON document from FILE")
    src.add_argument("--stdin", action="store_true", help="read the JSON document from stdin")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--bound", type=_positive, default=12,
                   help="coefficient bound for certificate search (default 12)")
    p.add_argument("--part", choices=PARTS, default="D0",
                   help="matrix: which part of the model (default D0)")
    for name, default in DEFAULT_BOUNDS.items():
        p.add_argument(f"--{name}", type=_positive, default=default,
                       help=f"enumerate bound (default {default})")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    doc = None
    if args.input or args.stdin:
        try:
            if args.stdin:
                text = sys.stdin.read()
            else:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            doc = parse_input(text)
        except (OSError, InputError) as exc:
            sys.stderr.write(f"error: {exc}\n")
            return 2
    elif args.subcommand != "enumerate":
        sys.stderr.write(f"error: {args.subcommand} needs --input FILE or --stdin\n")
        return 2
    code, text = run_subcommand(args.subcommand, doc, vars(args))
    (sys.stderr if text.startswith("error:") else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
