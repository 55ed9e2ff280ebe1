"""Versioned text documents for fields and completeness certificates.

Both document kinds share one line-oriented container: the first significant
line is the format tag ``torus-field/1``, followed by ``key: value`` lines.
Blank lines and lines starting with ``#`` are ignored.  All coefficients are
serialized through the exact expression grammar (numerator/denominator text,
never floats), so documents round-trip without loss, and emission is fully
deterministic: identical inputs produce byte-identical documents.

Field document::

    torus-field/1
    kind: field
    label: optional free text
    source: optional free text
    dim: 2
    vars: z1 z2
    p1: z1*z2 + 1
    p2: -z1*z2 + 2

Certificate document (reduction-step polynomials use variables w1..wm)::

    torus-field/1
    kind: certificate
    verdict: complete
    terminal: base-constant
    steps: 1
    step1.dim: 2
    step1.rank: 1
    step1.row1: 1 1
    step1.f1: w1 + 1
    step1.f2: -w1 + 2
    step1.reduced1: 3
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .field import (
    CompletenessCertificate,
    ReductionStep,
    Terminal,
    VectorField,
    Verdict,
)
from .laurent import LaurentPoly, poly_to_text
from .lattice import LatticeBasis
from .parsing import ParseError, parse_poly

FORMAT_TAG = "torus-field/1"


class DocumentError(ValueError):
    """Malformed or inconsistent document text."""


@dataclass(frozen=True)
class FieldDocument:
    """A vector field as text: declared variables plus one expression per p_i."""

    dim: int
    var_names: tuple[str, ...]
    expressions: tuple[str, ...]
    label: str | None = None
    source: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "var_names", tuple(self.var_names))
        object.__setattr__(self, "expressions", tuple(self.expressions))
        if self.dim < 1:
            raise DocumentError("field dimension must be at least 1")
        if len(self.var_names) != self.dim or len(self.expressions) != self.dim:
            raise DocumentError("need one variable name and one expression per coordinate")

    def vector_field(self) -> VectorField:
        try:
            ps = tuple(parse_poly(text, self.var_names) for text in self.expressions)
        except (ParseError, ValueError) as exc:
            raise DocumentError(str(exc)) from exc
        return VectorField(self.dim, ps)

    @classmethod
    def from_vector_field(
        cls,
        field: VectorField,
        var_names: tuple[str, ...] | None = None,
        label: str | None = None,
        source: str | None = None,
    ) -> "FieldDocument":
        names = var_names if var_names is not None else tuple(f"z{i + 1}" for i in range(field.dim))
        expressions = tuple(poly_to_text(p, names) for p in field.ps)
        return cls(field.dim, tuple(names), expressions, label, source)


def _parse_lines(text: str) -> list[tuple[str, str]]:
    lines = [line.strip() for line in text.splitlines()]
    significant = [line for line in lines if line and not line.startswith("#")]
    if not significant:
        raise DocumentError("empty document")
    if significant[0] != FORMAT_TAG:
        raise DocumentError(f"unsupported format tag {significant[0]!r}; expected {FORMAT_TAG!r}")
    pairs: list[tuple[str, str]] = []
    for line in significant[1:]:
        if ":" not in line:
            raise DocumentError(f"malformed line {line!r}; expected 'key: value'")
        key, _, value = line.partition(":")
        pairs.append((key.strip(), value.strip()))
    return pairs


def _pairs_to_map(pairs: list[tuple[str, str]]) -> dict[str, str]:
    out: dict[str, str] = {}
    for key, value in pairs:
        if key in out:
            raise DocumentError(f"duplicate key {key!r}")
        out[key] = value
    return out


def _pop_int(entries: dict[str, str], key: str) -> int:
    if key not in entries:
        raise DocumentError(f"missing key {key!r}")
    raw = entries.pop(key)
    try:
        return int(raw)
    except ValueError as exc:
        raise DocumentError(f"key {key!r} must be an integer, got {raw!r}") from exc


def field_document_to_text(document: FieldDocument) -> str:
    lines = [FORMAT_TAG, "kind: field"]
    if document.label is not None:
        lines.append(f"label: {document.label}")
    if document.source is not None:
        lines.append(f"source: {document.source}")
    lines.append(f"dim: {document.dim}")
    lines.append("vars: " + " ".join(document.var_names))
    for index, expression in enumerate(document.expressions, start=1):
        lines.append(f"p{index}: {expression}")
    return "\n".join(lines) + "\n"


def field_document_from_text(text: str) -> FieldDocument:
    entries = _pairs_to_map(_parse_lines(text))
    if entries.pop("kind", None) != "field":
        raise DocumentError("document kind is not 'field'")
    label = entries.pop("label", None)
    source = entries.pop("source", None)
    dim = _pop_int(entries, "dim")
    if dim < 1:
        raise DocumentError("field dimension must be at least 1")
    if "vars" in entries:
        var_names = tuple(entries.pop("vars").split())
        if len(var_names) != dim:
            raise DocumentError(f"expected {dim} variable names, got {len(var_names)}")
    else:
        var_names = tuple(f"z{i + 1}" for i in range(dim))
    expressions = []
    for index in range(1, dim + 1):
        key = f"p{index}"
        if key not in entries:
            raise DocumentError(f"missing key {key!r}")
        expressions.append(entries.pop(key))
    if entries:
        raise DocumentError(f"unknown keys: {sorted(entries)}")
    document = FieldDocument(dim, var_names, tuple(expressions), label, source)
    document.vector_field()  # validate the expressions eagerly
    return document


def _w_names(rank: int) -> tuple[str, ...]:
    return tuple(f"w{i + 1}" for i in range(rank))


def certificate_to_text(certificate: CompletenessCertificate) -> str:
    lines = [
        FORMAT_TAG,
        "kind: certificate",
        f"verdict: {certificate.verdict.value}",
        f"terminal: {certificate.terminal.value}",
        f"steps: {len(certificate.chain)}",
    ]
    for number, step in enumerate(certificate.chain, start=1):
        prefix = f"step{number}"
        names = _w_names(step.basis.rank)
        lines.append(f"{prefix}.dim: {step.dim_before}")
        lines.append(f"{prefix}.rank: {step.basis.rank}")
        for row_index, row in enumerate(step.basis.rows, start=1):
            lines.append(f"{prefix}.row{row_index}: " + " ".join(str(a) for a in row))
        for f_index, f in enumerate(step.f_list, start=1):
            lines.append(f"{prefix}.f{f_index}: {poly_to_text(f, names)}")
        for q_index, q in enumerate(step.reduced.ps, start=1):
            lines.append(f"{prefix}.reduced{q_index}: {poly_to_text(q, names)}")
    return "\n".join(lines) + "\n"


def certificate_from_text(text: str) -> CompletenessCertificate:
    entries = _pairs_to_map(_parse_lines(text))
    if entries.pop("kind", None) != "certificate":
        raise DocumentError("document kind is not 'certificate'")
    verdict_text = entries.pop("verdict", None)
    terminal_text = entries.pop("terminal", None)
    try:
        verdict = Verdict(verdict_text)
        terminal = Terminal(terminal_text)
    except ValueError as exc:
        raise DocumentError(f"bad verdict/terminal: {exc}") from exc
    step_count = _pop_int(entries, "steps")
    if step_count < 0:
        raise DocumentError("step count must be nonnegative")
    chain = []
    for number in range(1, step_count + 1):
        prefix = f"step{number}"
        dim_before = _pop_int(entries, f"{prefix}.dim")
        rank = _pop_int(entries, f"{prefix}.rank")
        rows = []
        for row_index in range(1, rank + 1):
            key = f"{prefix}.row{row_index}"
            if key not in entries:
                raise DocumentError(f"missing key {key!r}")
            raw = entries.pop(key).split()
            try:
                rows.append(tuple(int(x) for x in raw))
            except ValueError as exc:
                raise DocumentError(f"non-integer basis row in {key!r}") from exc
        names = _w_names(rank)
        f_list = [_parse_step_poly(entries, f"{prefix}.f{i}", names) for i in range(1, dim_before + 1)]
        reduced_ps = [_parse_step_poly(entries, f"{prefix}.reduced{i}", names) for i in range(1, rank + 1)]
        try:
            basis = LatticeBasis(dim_before, tuple(rows))
            step = ReductionStep(dim_before, basis, tuple(f_list), VectorField(rank, tuple(reduced_ps)))
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
        chain.append(step)
    if entries:
        raise DocumentError(f"unknown keys: {sorted(entries)}")
    try:
        return CompletenessCertificate(verdict, tuple(chain), terminal)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def _parse_step_poly(entries: dict[str, str], key: str, names: tuple[str, ...]) -> LaurentPoly:
    if key not in entries:
        raise DocumentError(f"missing key {key!r}")
    try:
        return parse_poly(entries.pop(key), names)
    except (ParseError, ValueError) as exc:
        raise DocumentError(f"bad polynomial under {key!r}: {exc}") from exc
