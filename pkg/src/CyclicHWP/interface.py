"""Certificates and command runners.

A certificate records the base cycles of one instance, optionally with the
sign maps of the construction and verification summaries. It is written as
JSON with one base cycle per line, or as a line-oriented text rendition;
deserialize reads both. The run_* functions back the CLI subcommands and
return the process exit status.
"""

import json
import logging
import sys

import pandas as pd

from CyclicHWP.classes.classes import BaseCycleSet, Certificate, LiftedCycle
from CyclicHWP.errors import InputError, ParseError
from CyclicHWP.functions.core import canonical, make_params, pack

logger = logging.getLogger(__name__)

TEXT_HEADER = "cyclichwp-certificate"
MAP_NAMES = ("f", "phi", "F", "G")
REPORT_FIELDS = ("ok", "missing", "duplicated", "transversality_failures", "structure_failures")

# exit statuses
OK = 0
FAILED = 1
INVALID = 2


def maps_of(base):
    provenance = base.provenance
    return {name: provenance[name].to_dict() for name in MAP_NAMES if name in provenance}


def base_to_certificate(base, emit_maps=False, verification=None):
    return Certificate(
        base.params,
        [canonical(cycle) for cycle in base.shorts],
        [canonical(cycle) for cycle in base.longs],
        maps=maps_of(base) if emit_maps else None,
        verification=verification,
    )


def certificate_to_base(cert):
    """Base set of a loaded certificate, cycles left unchecked for the verifier"""
    p = cert.params
    return BaseCycleSet(
        p,
        [LiftedCycle(c, p.M, p.ell, strict=False) for c in cert.short_base_cycles],
        [LiftedCycle(c, p.M, p.ell, strict=False) for c in cert.long_base_cycles],
    )


def _json_cycles(cycles):
    if not cycles:
        return "[]"
    lines = ["    " + json.dumps([list(u) for u in cycle], separators=(",", ":")) for cycle in cycles]
    return "[\n" + ",\n".join(lines) + "\n  ]"


def serialize_json(cert):
    d = cert.to_dict()
    parts = [
        f'  "schema_version": {json.dumps(d["schema_version"])}',
        f'  "params": {json.dumps(d["params"])}',
        f'  "short_base_cycles": {_json_cycles(cert.short_base_cycles)}',
        f'  "long_base_cycles": {_json_cycles(cert.long_base_cycles)}',
    ]
    for key in ("maps", "verification"):
        if key in d:
            parts.append(f'  "{key}": {json.dumps(d[key], sort_keys=True)}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def _text_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def serialize_text(cert):
    lines = [f"{TEXT_HEADER} {cert.schema_version}"]
    lines.append("params " + " ".join(f"{k}={v}" for k, v in cert.params.to_dict().items()))
    for kind, cycles in (("short", cert.short_base_cycles), ("long", cert.long_base_cycles)):
        for cycle in cycles:
            lines.append(kind + " " + " ".join(f"{a},{b}" for a, b in cycle))
    for name, table in (cert.maps or {}).items():
        lines.append(f"map {name} " + " ".join(f"{x}:{value}" for x, value in table.items()))
    for level, summary in (cert.verification or {}).items():
        fields = " ".join(f"{k}={_text_value(v)}" for k, v in summary.items())
        lines.append(f"verification {level} {fields}")
    return "\n".join(lines) + "\n"


def serialize(cert, fmt="json"):
    if fmt == "text":
        return serialize_text(cert)
    return serialize_json(cert)


def _parse_int(token, line, column):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line, column)


def _parse_field_value(token, line, column):
    if token in ("true", "false"):
        return token == "true"
    return _parse_int(token, line, column)


def _tokens(text):
    """Whitespace separated tokens with their 1-based columns"""
    column = 0
    for token in text.split():
        column = text.index(token, column)
        yield token, column + 1
        column += len(token)


def deserialize_text(text, strict=True):
    d = {"short_base_cycles": [], "long_base_cycles": []}
    header_seen = False
    for number, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        tokens = list(_tokens(raw))
        keyword, keyword_column = tokens[0]

        if not header_seen:
            if keyword != TEXT_HEADER or len(tokens) != 2:
                raise ParseError(f"expected '{TEXT_HEADER} <version>'", number, keyword_column)
            d["schema_version"] = tokens[1][0]
            header_seen = True
        elif keyword == "params":
            params = {}
            for token, column in tokens[1:]:
                key, sep, value = token.partition("=")
                if not sep:
                    raise ParseError(f"expected key=value, got {token!r}", number, column)
                params[key] = _parse_int(value, number, column + len(key) + 1)
            d["params"] = params
        elif keyword in ("short", "long"):
            cycle = []
            for token, column in tokens[1:]:
                a, sep, b = token.partition(",")
                if not sep:
                    raise ParseError(f"expected a vertex a,b, got {token!r}", number, column)
                cycle.append([_parse_int(a, number, column), _parse_int(b, number, column + len(a) + 1)])
            d[f"{keyword}_base_cycles"].append(cycle)
        elif keyword == "map":
            if len(tokens) < 2:
                raise ParseError("map line without a name", number, keyword_column)
            table = {}
            for token, column in tokens[2:]:
                x, sep, value = token.partition(":")
                if not sep:
                    raise ParseError(f"expected residue:value, got {token!r}", number, column)
                table[str(_parse_int(x, number, column))] = _parse_int(value, number, column + len(x) + 1)
            d.setdefault("maps", {})[tokens[1][0]] = table
        elif keyword == "verification":
            if len(tokens) < 2:
                raise ParseError("verification line without a level", number, keyword_column)
            summary = {}
            for token, column in tokens[2:]:
                key, sep, value = token.partition("=")
                if not sep:
                    raise ParseError(f"expected key=value, got {token!r}", number, column)
                summary[key] = _parse_field_value(value, number, column + len(key) + 1)
            d.setdefault("verification", {})[tokens[1][0]] = summary
        else:
            raise ParseError(f"unknown line type {keyword!r}", number, keyword_column)

    if not header_seen:
        raise ParseError("empty certificate", 1, 1)
    return Certificate.from_dict(d, strict=strict)


def deserialize(text, strict=True):
    """Certificate from JSON or text, told apart by the first non-blank character"""
    stripped = text.lstrip()
    if not stripped:
        raise ParseError("empty certificate", 1, 1)
    if stripped[0] == "{":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, e.colno)
        return Certificate.from_dict(d, strict=strict)
    return deserialize_text(text, strict=strict)


def read_certificate(path, strict=True):
    with open(path) as f:
        return deserialize(f.read(), strict=strict)


def write_text(text, path=None):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w") as f:
        f.write(text)


def maps_frame(base):
    """One row per residue of Z_M^-, one nullable column per sign map"""
    from CyclicHWP.functions.completion import z_minus

    params = base.params
    rows = {"residue": z_minus(params)}
    for name in MAP_NAMES:
        sign_map = base.provenance.get(name)
        values = [sign_map.get(x) if sign_map is not None else None for x in rows["residue"]]
        rows[name] = pd.array(values, dtype="Int64")
    return pd.DataFrame(rows)


def print_report(title, report, stream=None, limit=10):
    stream = stream if stream is not None else sys.stdout
    print(f"{title}: {'OK' if report.ok else 'FAILED'}", file=stream)
    if report.ok:
        return
    for field in REPORT_FIELDS[1:]:
        items = getattr(report, field)
        if items:
            shown = ", ".join(str(x) for x in items[:limit])
            more = f", ... ({len(items)} in total)" if len(items) > limit else ""
            print(f"  {field}: {shown}{more}", file=stream)


def verify_base(base, level, progress=True, stream=None):
    """Run the requested verification level, returning (ok, summaries)"""
    from CyclicHWP.verifier import check_base, check_factorization, develop

    summaries = {}
    if level == "none":
        return True, summaries
    report = check_base(base)
    summaries["base"] = report.summary()
    print_report("Base criterion", report, stream)
    if not report.ok or level == "base":
        return report.ok, summaries

    full = check_factorization(develop(base), base.params, progress=progress)
    summaries["full"] = full.summary()
    print_report("Factorization", full, stream)
    return full.ok, summaries


def run_generate(args):
    from CyclicHWP.functions.completion import assemble

    params = make_params(args.ell, args.n)
    base = assemble(params)
    logger.info("generated %s", base)
    # the certificate goes to stdout unless an output file is given
    stream = sys.stdout if args.output else sys.stderr
    ok, summaries = verify_base(base, args.verify, progress=not args.quiet, stream=stream)

    cert = base_to_certificate(base, emit_maps=args.emit_maps, verification=summaries or None)
    write_text(serialize(cert, args.format), args.output)
    if args.output:
        print(f"Certificate for {params} (v = {params.v}) written to {args.output}")
    if args.maps_csv:
        maps_frame(base).to_csv(args.maps_csv, index=False)
        print(f"Sign maps written to {args.maps_csv}", file=stream)
    return OK if ok else FAILED


def run_verify(args):
    cert = read_certificate(args.input)
    logger.info("loaded %s from %s", cert, args.input)
    base = certificate_to_base(cert)
    ok, summaries = verify_base(base, args.level, progress=not args.quiet)
    if args.report:
        with open(args.report, "w") as f:
            json.dump({"params": cert.params.to_dict(), **summaries}, f, indent=2)
    return OK if ok else FAILED


def factor_record(factor, index, as_integers=False):
    params = factor.params
    if as_integers:
        cycles = [[pack(u, params) for u in cycle] for cycle in factor.cycles()]
    else:
        cycles = [[list(u) for u in cycle] for cycle in factor.cycles()]
    return {"index": index, "type": factor.type_label, "cycles": cycles}


def run_develop(args):
    from CyclicHWP.verifier import check_base, develop, factor_count

    if args.factor_index is None and not args.all:
        raise InputError("pass --factor-index I, or --all to emit every factor")
    cert = read_certificate(args.input)
    base = certificate_to_base(cert)
    report = check_base(base)
    if not report.ok:
        print_report("Base criterion", report, sys.stderr)
        return FAILED
    fact = develop(base)

    if args.all:
        indices = range(factor_count(cert.params))
    else:
        indices = [args.factor_index]
    lines = [
        json.dumps(factor_record(fact[i], i, args.as_integers), separators=(",", ":"))
        for i in indices
    ]
    write_text("\n".join(lines) + "\n", args.output)
    return OK


def run_skolem(args):
    from CyclicHWP.functions.skolem import generate_skolem, validate_skolem

    if args.order < 1:
        raise InputError(f"order must be positive, got {args.order}")
    seq = generate_skolem(args.order)
    print(f"order {seq.order}, {seq.flavor}")
    print("sequence: " + " ".join(str(s) for s in seq.entries))
    print("pairs: " + " ".join(f"({a},{b})" for a, b in seq.pairs()))

    if args.check:
        for order in range(1, args.order + 1):
            if not validate_skolem(generate_skolem(order)):
                print(f"check: order {order} FAILED")
                return FAILED
        print(f"check: orders 1..{args.order} OK")
    return OK


def run_trace(args):
    from CyclicHWP.functions.completion import (
        RHO,
        alternating_total,
        build_completion_cycles,
        build_G,
        flip_set,
        glue_F,
    )
    from CyclicHWP.functions.helper import parity_sign
    from CyclicHWP.functions.long_cycles import build_long_set, long_pair_specs
    from CyclicHWP.functions.short_cycles import build_base_gons, build_D, lift_all, sigma_table
    from CyclicHWP.functions.skolem import generate_skolem

    params = make_params(args.ell, args.n)
    p = params
    print(f"Instance {p!r}")
    print("=" * len(f"Instance {p!r}"))

    dset = build_D(p)
    print(f"D = {dset}, |D-bar| = {len(dset.dbar)}")
    specs = long_pair_specs(p, dset)
    print("D' = {" + ",".join(str(2 * d) for s in specs for d in (s.d1, s.d2)) + "}")
    for spec in specs:
        print(f"long pair {spec}")
    longs, f = build_long_set(p, dset)
    print("f: " + " ".join(f"{d}:{f[d]}" for d in dset))
    s = -sum(parity_sign(d) * f[d] for d in dset) % p.ell
    print(f"s = {s}")

    order = p.n - 2 * p.k
    skolem = generate_skolem(order) if order else None
    print(f"Skolem: {skolem}" if skolem else "Skolem: none (n = 2k)")
    A, B, gons = build_base_gons(p, skolem, dset)
    for i, cycle in enumerate(A, 1):
        print(f"A_{i} = {cycle}")
    for i, gon in enumerate(gons, 1):
        flag = "alternating" if gon.alternating else "not alternating"
        print(f"B_{i} = {gon.cycle} ({flag})")

    table, offset = sigma_table(p, A, B, dset)
    print("Sigma_mu: " + " ".join(f"{mu}:{value}" for mu, value in table.items()) + f" (S' = {offset})")
    _, phi, mu = lift_all(p, A, B, s, dset)
    print(f"mu = {mu}")

    F = glue_F(f, phi, p)
    t, X, g = flip_set(F, RHO, p, dset)
    print(f"sum g = {alternating_total(g, p)}, t = {t}, X = {X}")
    G = build_G(F, RHO, p, dset)
    C, _ = build_completion_cycles(p, F, G)
    ln = p.ln
    print(f"y_{ln - 1} = {C[ln - 1].b}, y_{2 * ln - 1} = {C[2 * ln - 1].b}")
    return OK

