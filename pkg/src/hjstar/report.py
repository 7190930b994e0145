"""Text and JSON rendering shared by the CLI and its golden tests.

Rationals are always printed as a reduced ``p/q`` or a plain integer, never
as decimals; :func:`parse_rational` reads them back.
"""

import re

from gmpy2 import mpq

_RATIONAL = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def fmt_q(x) -> str:
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str):
    m = _RATIONAL.match(text)
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError("zero denominator")
    return mpq(int(num), int(den or 1))


def fmt_tuple(xs) -> str:
    return "(" + ",".join(str(x) for x in xs) + ")"


def fmt_chains(chains) -> str:
    return "[" + ", ".join(fmt_tuple(c) for c in chains) + "]"


def fmt_cf(chain) -> str:
    return "[" + ",".join(str(x) for x in chain) + "]"


def _yes(flag: bool) -> str:
    return "true" if flag else "false"


def fmt_header(md) -> str:
    return f"g={md.genus} k={md.k} s={md.s} chains={fmt_chains(md.chains)}"


# -- individual reports -------------------------------------------------------

def validate_text(rep) -> str:
    md = rep.md
    verdict = (f"sum = {fmt_q(rep.total)} < {md.k}: VALID" if rep.valid
               else f"sum = {fmt_q(rep.total)} not < {md.k}: INVALID")
    return f"moduli: {fmt_header(md)}\n{verdict}\n"


def validate_json(rep) -> dict:
    md = rep.md
    return {"genus": md.genus, "k": md.k, "chains": [list(c) for c in md.chains],
            "sum": fmt_q(rep.total), "valid": rep.valid,
            "structure": {"k_at_least_1": True, "entries_at_least_2": True}}


def matrix_text(labels, m) -> str:
    width = max(len(str(x)) for row in m for x in row)
    lw = max(len(s) for s in labels)
    lines = [f"{lab:<{lw}}  " + " ".join(f"{x:>{width}}" for x in row)
             for lab, row in zip(labels, m)]
    return "\n".join(lines) + "\n"


def matrix_json(labels, m) -> dict:
    return {"labels": list(labels), "matrix": m}


def diag_text(labels, diag, negdef: bool) -> str:
    return (f"order: {' '.join(labels)}\n"
            f"pivots: {', '.join(fmt_q(x) for x in diag)}\n"
            f"negative definite: {_yes(negdef)}\n")


def diag_json(labels, diag, negdef: bool) -> dict:
    return {"order": list(labels), "pivots": [fmt_q(x) for x in diag],
            "negative_definite": negdef}


def dual_text(rows) -> str:
    """``rows``: (k_chain, l_chain, 1/[k_n..k_1], 1/[l_m..l_1])."""
    out = []
    for k_chain, l_chain, a, b in rows:
        out.append(f"{fmt_tuple(k_chain)} -> {fmt_tuple(l_chain)}  "
                   f"1/{fmt_cf(k_chain[::-1])} + 1/{fmt_cf(l_chain[::-1])} = "
                   f"{fmt_q(a)} + {fmt_q(b)} = {fmt_q(a + b)}")
    return "\n".join(out) + ("\n" if out else "")


def dual_json(rows) -> dict:
    return {"duals": [{"k_chain": list(k), "l_chain": list(l),
                       "inv_k_reversed": fmt_q(a), "inv_l_reversed": fmt_q(b),
                       "sum": fmt_q(a + b)} for k, l, a, b in rows]}


def trace_text(traces) -> str:
    """One tuple per line; several traces are separated by a blank line."""
    blocks = ["\n".join(fmt_tuple(t) for t in tr) for tr in traces]
    return "\n\n".join(blocks) + "\n"


def contraction_text(c) -> str:
    lines = [fmt_tuple(t) for t in c.trace]
    lines.append(f"base k={c.k}" if c.success else f"stuck at {fmt_tuple(c.final)}")
    return "\n".join(lines) + "\n"


def contraction_json(c) -> dict:
    return {"trace": [list(t) for t in c.trace], "success": c.success, "k": c.k}


def model_text(m) -> str:
    lines = [f"model: g={m.genus} k={m.k} s={m.s}",
             f"σ0 weight {m.center_0_weight}; σ∞ weight {m.center_inf_weight}"]
    for i, b in enumerate(m.branches, 1):
        path = (m.center_0_weight,) + b.path_weights() + (m.center_inf_weight,)
        lines.append(f"bamboo {i}: k-chain {fmt_tuple(b.k_chain)}, "
                     f"l-chain {fmt_tuple(b.l_chain)}, path {fmt_tuple(path)}")
    return "\n".join(lines) + "\n"


def model_json(m) -> dict:
    return {"genus": m.genus, "k": m.k, "s": m.s,
            "sigma0_weight": m.center_0_weight, "sigma_inf_weight": m.center_inf_weight,
            "bamboos": [{"k_chain": list(b.k_chain), "l_chain": list(b.l_chain),
                         "exceptional_weight": b.exceptional_weight}
                        for b in m.branches]}


def indices_text(a, ok: bool) -> str:
    lines = ["point  curve  index"]
    for p, c, v in a.rows():
        lines.append(f"{p}  {c}  {fmt_q(v)}")
    sums = a.curve_sums()
    for c, w in a.self_intersection.items():
        lines.append(f"sum on {c}: {fmt_q(sums[c])} (self-intersection {w})")
    lines.append(f"index theorem: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n"


def indices_json(a, ok: bool) -> dict:
    sums = a.curve_sums()
    return {"indices": [{"point": p, "curve": c, "index": fmt_q(v)} for p, c, v in a.rows()],
            "sums": {c: fmt_q(sums[c]) for c in a.self_intersection},
            "self_intersection": dict(a.self_intersection), "pass": ok}


def cert_text(cert, bound: int) -> str:
    if cert is None:
        return f"none (searched ≤ {bound})\n"
    branches = "; ".join(f"branch {i}: {fmt_tuple(c)}" for i, c in enumerate(cert.coeffs, 1))
    return f"a={cert.a}" + (f"; {branches}" if branches else "") + "\n"


def cert_json(cert, bound: int) -> dict:
    if cert is None:
        return {"certificate": None, "search_bound": bound}
    return {"certificate": {"a": cert.a, "coeffs": [list(c) for c in cert.coeffs]},
            "search_bound": bound}


def equiv_text(rep) -> str:
    md = rep.md
    cert = rep.certificate
    c1 = (f"{rep.certificate_source}: {cert_text(cert, rep.search_bound).strip()}"
          if cert is not None else f"none (searched ≤ {rep.search_bound})")
    lines = [
        f"moduli: {fmt_header(md)}",
        f"cond1 ample certificate on D∞: {_yes(rep.cond1_found)} [{c1}]",
        f"cond2 D0 negative definite: {_yes(rep.cond2)} "
        f"(center pivot {fmt_q(rep.center_pivot)})",
        f"cond3 sum 1/[k_1..k_n] = {fmt_q(rep.cond3_total)} < {md.k}: {_yes(rep.cond3)}",
        f"  reversed order sum 1/[k_n..k_1] = {fmt_q(rep.cond3_reversed_total)} "
        f"< {md.k}: {_yes(rep.cond3_reversed)}",
        f"cond4 sum 1/[l_1..l_m] = {fmt_q(rep.cond4_total)} > {md.s - md.k}: {_yes(rep.cond4)}",
        f"agreement: {_yes(rep.agreement)}",
    ]
    return "\n".join(lines) + "\n"


def equiv_json(rep) -> dict:
    md = rep.md
    return {
        "genus": md.genus, "k": md.k, "chains": [list(c) for c in md.chains],
        "cond1_found": rep.cond1_found, "cond2": rep.cond2, "cond3": rep.cond3,
        "cond4": rep.cond4, "certificate_source": rep.certificate_source,
        **cert_json(rep.certificate, rep.search_bound),
        "center_pivot": fmt_q(rep.center_pivot),
        "cond3_sum": fmt_q(rep.cond3_total),
        "cond3_reversed_sum": fmt_q(rep.cond3_reversed_total),
        "cond3_reversed": rep.cond3_reversed,
        "cond4_sum": fmt_q(rep.cond4_total),
        "agreement": rep.agreement,
    }


def enumerate_text(summary) -> str:
    b = summary.bounds
    lines = [
        f"bounds: k<={b['k_max']} s<={b['s_max']} n<={b['n_max']} "
        f"w<={b['w_max']} search<={b['search_bound']}",
        f"instances: {summary.instances}",
        f"valid: {summary.valid}",
        f"invalid: {summary.invalid}",
        f"disagreements: {summary.disagreements}",
    ]
    for md, name in summary.failures[:20]:
        lines.append(f"  FAIL {name}: {fmt_header(md)}")
    lines.append(f"cond3 reversed-order mismatches: {summary.order_mismatches}")
    if summary.first_order_mismatch is not None:
        lines.append(f"  first: {fmt_header(summary.first_order_mismatch)}")
    return "\n".join(lines) + "\n"


def enumerate_json(summary) -> dict:
    return {
        "bounds": summary.bounds, "instances": summary.instances,
        "valid": summary.valid, "invalid": summary.invalid,
        "disagreements": summary.disagreements,
        "failures": [{"k": md.k, "chains": [list(c) for c in md.chains], "check": name}
                     for md, name in summary.failures],
        "cond3_reversed_mismatches": summary.order_mismatches,
        "first_cond3_reversed_mismatch": (
            None if summary.first_order_mismatch is None else
            {"k": summary.first_order_mismatch.k,
             "chains": [list(c) for c in summary.first_order_mismatch.chains]}),
    }
