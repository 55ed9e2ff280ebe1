"""Command-line interface.

Subcommands expose every core operation for batch use.  Exit codes carry the
mathematical verdict so shell pipelines can branch on completeness:

* ``decide``:  0 = complete, 1 = incomplete, 2 = input error
* ``verify``:  0 = certificate valid, 1 = invalid, 2 = malformed input
* everything else: 0 on success, 2 on any malformed input

Results go to stdout, diagnostics to stderr.  All output is deterministic:
the same input files produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import flow as flow_module
from .documents import (
    DocumentError,
    FieldDocument,
    certificate_from_text,
    certificate_to_text,
    field_document_from_text,
    field_document_to_text,
)
from .field import (
    Form2,
    Verdict,
    canonical2,
    decide_complete,
    divergence,
    from_form2,
    pushforward,
    reduce,
    verify_certificate,
)
from .laurent import poly_to_text
from .lattice import NotInLattice
from .parsing import (
    ParseError,
    format_complex,
    parse_complex,
    parse_gaussian_rational,
    parse_poly,
)


def _load_field_document(path: str) -> FieldDocument:
    return field_document_from_text(Path(path).read_text(encoding="utf-8"))


def _cmd_decide(args: argparse.Namespace) -> int:
    document = _load_field_document(args.field_file)
    certificate = decide_complete(document.vector_field())
    sys.stdout.write(certificate_to_text(certificate))
    return 0 if certificate.verdict is Verdict.COMPLETE else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    document = _load_field_document(args.field_file)
    certificate = certificate_from_text(Path(args.certificate_file).read_text(encoding="utf-8"))
    if verify_certificate(document.vector_field(), certificate):
        print("valid")
        return 0
    print("invalid")
    return 1


def _cmd_reduce(args: argparse.Namespace) -> int:
    document = _load_field_document(args.field_file)
    step = reduce(document.vector_field())
    names = tuple(f"w{i + 1}" for i in range(step.basis.rank))
    lines = [f"dim: {step.dim_before}", f"rank: {step.basis.rank}"]
    for index, row in enumerate(step.basis.rows, start=1):
        lines.append(f"row{index}: " + " ".join(str(a) for a in row))
    for index, f in enumerate(step.f_list, start=1):
        lines.append(f"f{index}: {poly_to_text(f, names)}")
    for index, q in enumerate(step.reduced.ps, start=1):
        lines.append(f"reduced{index}: {poly_to_text(q, names)}")
    print("\n".join(lines))
    return 0


def _cmd_divergence(args: argparse.Namespace) -> int:
    document = _load_field_document(args.field_file)
    print(poly_to_text(divergence(document.vector_field()), document.var_names))
    return 0


def _cmd_canonical2(args: argparse.Namespace) -> int:
    document = _load_field_document(args.field_file)
    form = canonical2(document.vector_field())
    print(f"a1: {form.a1}")
    print(f"a2: {form.a2}")
    print(f"f: {poly_to_text(form.f, ('w',))}")
    print(f"c1: {form.c1}")
    print(f"c2: {form.c2}")
    return 0


def _cmd_flow(args: argparse.Namespace) -> int:
    document = _load_field_document(args.field_file)
    field = document.vector_field()
    z0 = [parse_complex(part) for part in args.z0.split(",")]
    t = parse_complex(args.t)
    use_exact = args.exact
    if not args.exact and not args.numeric:
        try:
            exact = flow_module.build_exact_flow(field)
        except (flow_module.IncompleteFieldError, flow_module.ChainTooDeepError):
            exact = None
        use_exact = exact is not None
    if use_exact:
        exact = flow_module.build_exact_flow(field)
        endpoint = flow_module.eval_exact(exact, z0, t)
        print("status: ok")
        print("engine: exact")
        for name, z in zip(document.var_names, endpoint):
            print(f"{name}: {format_complex(z)}")
        return 0
    result = flow_module.integrate_numeric(field, z0, t, rtol=args.rtol, atol=args.atol)
    print(f"status: {result.status.value}")
    print("engine: numeric")
    if result.ok:
        assert result.endpoint is not None
        for name, z in zip(document.var_names, result.endpoint):
            print(f"{name}: {format_complex(z)}")
    else:
        assert result.t_star is not None
        print(f"t_star: {format_complex(result.t_star)}")
    print(f"steps: {result.steps}")
    print(f"min_step: {result.min_step!r}")
    return 0


def _parse_matrix(text: str) -> list[list[int]]:
    rows = []
    for chunk in text.split(";"):
        entries = chunk.replace(",", " ").split()
        if not entries:
            raise ValueError("empty matrix row")
        try:
            rows.append([int(entry) for entry in entries])
        except ValueError as exc:
            raise ValueError(f"non-integer matrix entry in {chunk!r}") from exc
    return rows


def _cmd_pushforward(args: argparse.Namespace) -> int:
    document = _load_field_document(args.field_file)
    matrix = _parse_matrix(args.matrix)
    transported = pushforward(document.vector_field(), matrix)
    out = FieldDocument.from_vector_field(transported, document.var_names, document.label, document.source)
    sys.stdout.write(field_document_to_text(out))
    return 0


def _cmd_generate(args: argparse.Namespace) -> int:
    if not args.form2:
        raise ValueError("only --form2 generation is available")
    a_parts = args.a.split(",")
    if len(a_parts) != 2:
        raise ValueError("--a expects two comma-separated integers")
    try:
        a1, a2 = (int(part) for part in a_parts)
    except ValueError as exc:
        raise ValueError(f"non-integer entry in --a {args.a!r}") from exc
    c_parts = args.c.split(",")
    if len(c_parts) != 2:
        raise ValueError("--c expects two comma-separated exact complex literals")
    c1, c2 = (parse_gaussian_rational(part) for part in c_parts)
    f = parse_poly(args.f, ("w",))
    field = from_form2(Form2(a1, a2, f, c1, c2))
    document = FieldDocument.from_vector_field(field)
    sys.stdout.write(field_document_to_text(document))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusfield",
        description="Completeness certificates, canonical forms and flows for Laurent vector fields on the complex torus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    decide = sub.add_parser("decide", help="decide completeness; prints the certificate")
    decide.add_argument("field_file")
    decide.set_defaults(handler=_cmd_decide)

    verify = sub.add_parser("verify", help="replay a certificate against a field")
    verify.add_argument("field_file")
    verify.add_argument("certificate_file")
    verify.set_defaults(handler=_cmd_verify)

    reduce_cmd = sub.add_parser("reduce", help="one lattice reduction step")
    reduce_cmd.add_argument("field_file")
    reduce_cmd.set_defaults(handler=_cmd_reduce)

    divergence_cmd = sub.add_parser("divergence", help="print sum_i z_i dp_i/dz_i")
    divergence_cmd.add_argument("field_file")
    divergence_cmd.set_defaults(handler=_cmd_divergence)

    canonical = sub.add_parser("canonical2", help="canonical form of a complete 2-torus field")
    canonical.add_argument("field_file")
    canonical.set_defaults(handler=_cmd_canonical2)

    flow_cmd = sub.add_parser("flow", help="evaluate the time-t flow map")
    flow_cmd.add_argument("field_file")
    flow_cmd.add_argument("--z0", required=True, help="comma-separated complex start, e.g. 1,0.5+0.5i")
    flow_cmd.add_argument("--t", required=True, help="complex time, e.g. 1 or 2+1i")
    engine = flow_cmd.add_mutually_exclusive_group()
    engine.add_argument("--exact", action="store_true", help="require the closed-form flow")
    engine.add_argument("--numeric", action="store_true", help="force numeric integration")
    flow_cmd.add_argument("--rtol", type=float, default=1e-9)
    flow_cmd.add_argument("--atol", type=float, default=1e-12)
    flow_cmd.set_defaults(handler=_cmd_flow)

    push = sub.add_parser("pushforward", help="transport through a unimodular monomial substitution")
    push.add_argument("field_file")
    push.add_argument("--matrix", required=True, help="rows separated by ';', e.g. '1,0;1,1'")
    push.set_defaults(handler=_cmd_pushforward)

    generate = sub.add_parser("generate", help="emit a field file from canonical data")
    generate.add_argument("--form2", action="store_true", help="generate from (a1,a2,f,c1,c2)")
    generate.add_argument("--a", required=True, help="a1,a2 (integers)")
    generate.add_argument("--f", required=True, help="Laurent polynomial in w, e.g. 'w - w^-1'")
    generate.add_argument("--c", required=True, help="c1,c2 (exact complex literals)")
    generate.set_defaults(handler=_cmd_generate)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.handler(args)
    except (DocumentError, ParseError, NotInLattice, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
