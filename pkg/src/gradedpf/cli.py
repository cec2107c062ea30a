"""Text format, analysis pipeline and command-line entry point.

Document grammar (one statement per line, ``#`` starts a comment)::

    field Q | field GF <p>
    grading <d>
    vertex <name>
    arrow <name> : <src> -> <tgt> deg (<k1>, ..., <kd>)      # no deg clause when d = 0
    relation <expr>          # expr: [coeff *] a.b.c (+|- [coeff *] path)*
    group generator <name> { vertex <v> -> <w>, ...; arrow <a> -> [coeff *] <b>, ... }
    option length_cap <n> | option order_cap <n>
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path as FsPath

from .errors import GradedPFError, InputError, InvariantViolation
from .freealg import AlgElement
from .presentation import DEFAULT_LENGTH_CAP, Presentation, build_algebra
from .quiver import GradedQuiver, Path
from .scalars import GF, QQ, Matrix

# ---------------------------------------------------------------------------
# errors
# ---------------------------------------------------------------------------


class ParseError(InputError):
    """Syntax error with a position and the tokens that would have been accepted."""

    def __init__(self, message: str, line: int, col: int, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        super().__init__(f"line {line}, column {col}: {self.detail}")

    @property
    def detail(self) -> str:
        if not self.expected:
            return self.message
        return f"{self.message} (expected {', '.join(self.expected)})"


class SemanticError(ParseError):
    pass


# ---------------------------------------------------------------------------
# tokens
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<word>[A-Za-z0-9_][A-Za-z0-9_']*)|(?P<sym>->|[:(),+\-*./{};]))")
_ARROW_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_INT = re.compile(r"[0-9]+\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # word, sym, nl, eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    for ln, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0]
        pos = 0
        while True:
            while pos < len(body) and body[pos] in " \t":
                pos += 1
            if pos >= len(body):
                break
            m = _TOKEN.match(body, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {body[pos]!r}", ln, pos + 1)
            kind = "word" if m.group("word") else "sym"
            txt = m.group(kind)
            out.append(Token(kind, txt, ln, m.start(kind) + 1))
            pos = m.end()
        out.append(Token("nl", "\n", ln, len(body) + 1))
    last = out[-1] if out else Token("nl", "\n", 1, 1)
    out.append(Token("eof", "", last.line, last.col))
    return out


# ---------------------------------------------------------------------------
# documents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InputDocument:
    field: str = "Q"  # "Q" or "GF p"
    grading: int = 0
    vertices: tuple = ()
    arrows: tuple = ()  # (name, src, tgt, degree)
    relations: tuple = ()  # each: tuple of (Fraction, word tuple)
    generators: tuple = ()  # (name, ((v, w), ...), ((a, coeff, b), ...))
    options: tuple = ()  # sorted (key, value)
    positions: dict = dc_field(default_factory=dict, compare=False, hash=False, repr=False)

    def option(self, key: str, default=None):
        return dict(self.options).get(key, default)


_STATEMENTS = ("field", "grading", "vertex", "arrow", "relation", "group", "option")


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.field = None
        self.grading = None
        self.vertices: list[str] = []
        self.arrows: list[tuple] = []
        self.arrow_info: dict[str, tuple] = {}
        self.relations: list[tuple] = []
        self.generators: list[tuple] = []
        self.options: dict[str, int] = {}
        self.positions: dict = {}

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, message, expected=(), tok=None):
        t = tok or self.tok
        raise ParseError(message, t.line, t.col, expected)

    def semantic(self, message, tok):
        raise SemanticError(message, tok.line, tok.col)

    def expect_sym(self, sym: str) -> Token:
        if self.tok.kind == "sym" and self.tok.text == sym:
            return self.advance()
        self.fail(f"unexpected {self._describe(self.tok)}", [repr(sym)])

    def expect_word(self, what: str) -> Token:
        if self.tok.kind == "word":
            return self.advance()
        self.fail(f"unexpected {self._describe(self.tok)}", [what])

    def expect_keyword(self, kw: str) -> Token:
        if self.tok.kind == "word" and self.tok.text == kw:
            return self.advance()
        self.fail(f"unexpected {self._describe(self.tok)}", [repr(kw)])

    def expect_int(self, what="integer") -> int:
        t = self.expect_word(what)
        if not _INT.match(t.text):
            self.fail(f"{t.text!r} is not an integer", [what], t)
        return int(t.text)

    def signed_int(self) -> int:
        sign = 1
        if self.tok.kind == "sym" and self.tok.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
        return sign * self.expect_int()

    def end_statement(self):
        if self.tok.kind in ("nl", "eof"):
            if self.tok.kind == "nl":
                self.advance()
            return
        self.fail(f"unexpected {self._describe(self.tok)}", ["end of line"])

    @staticmethod
    def _describe(t: Token) -> str:
        if t.kind == "nl":
            return "end of line"
        if t.kind == "eof":
            return "end of input"
        return f"{t.text!r}"

    # grammar
    def parse(self) -> InputDocument:
        while self.tok.kind != "eof":
            if self.tok.kind == "nl":
                self.advance()
                continue
            t = self.tok
            if t.kind != "word" or t.text not in _STATEMENTS:
                self.fail(f"unexpected {self._describe(t)}", _STATEMENTS)
            getattr(self, "stmt_" + t.text)()
        return InputDocument(
            field=self.field or "Q",
            grading=self.grading if self.grading is not None else 0,
            vertices=tuple(self.vertices),
            arrows=tuple(self.arrows),
            relations=tuple(self.relations),
            generators=tuple(self.generators),
            options=tuple(sorted(self.options.items())),
            positions=self.positions,
        )

    def stmt_field(self):
        kw = self.advance()
        if self.field is not None:
            self.semantic("field declared twice", kw)
        t = self.expect_word("Q or GF")
        if t.text == "Q":
            self.field = "Q"
        elif t.text == "GF" or re.fullmatch(r"GF[0-9]+", t.text):
            if t.text == "GF":
                pt = self.tok
                p = self.expect_int("prime")
            else:
                pt, p = t, int(t.text[2:])
            try:
                GF(p)
            except ValueError:
                self.semantic(f"GF needs a prime, {p} is not prime", pt)
            self.field = f"GF {p}"
        else:
            self.fail(f"unknown field {t.text!r}", ["Q", "GF <p>"], t)
        self.end_statement()

    def stmt_grading(self):
        kw = self.advance()
        if self.grading is not None:
            self.semantic("grading declared twice", kw)
        if self.arrows:
            self.semantic("grading must be declared before the first arrow", kw)
        self.grading = self.expect_int("grading rank")
        self.end_statement()

    def _vertex_ref(self) -> str:
        t = self.expect_word("vertex name")
        if t.text not in self.vertices:
            self.semantic(f"unknown vertex {t.text!r}", t)
        return t.text

    def _arrow_ref(self) -> tuple:
        t = self.expect_word("arrow name")
        if t.text not in self.arrow_info:
            self.semantic(f"unknown arrow {t.text!r}", t)
        return t.text, t

    def stmt_vertex(self):
        self.advance()
        t = self.expect_word("vertex name")
        if t.text in self.vertices:
            self.semantic(f"vertex {t.text!r} declared twice", t)
        self.vertices.append(t.text)
        self.end_statement()

    def stmt_arrow(self):
        self.advance()
        t = self.expect_word("arrow name")
        if not _ARROW_NAME.match(t.text):
            self.fail(f"arrow name {t.text!r} must start with a letter or underscore", ["arrow name"], t)
        if t.text in self.arrow_info:
            self.semantic(f"arrow {t.text!r} declared twice", t)
        self.expect_sym(":")
        s = self._vertex_ref()
        self.expect_sym("->")
        e = self._vertex_ref()
        d = self.grading if self.grading is not None else 0
        if self.tok.kind == "word" and self.tok.text == "deg":
            kw = self.advance()
            if d == 0:
                self.semantic("deg clause given but the grading rank is 0", kw)
            self.expect_sym("(")
            vals = [self.signed_int()]
            while self.tok.kind == "sym" and self.tok.text == ",":
                self.advance()
                vals.append(self.signed_int())
            close = self.tok
            self.expect_sym(")")
            if len(vals) != d:
                self.semantic(f"degree has {len(vals)} entries, the grading rank is {d}", close)
            deg = tuple(vals)
        else:
            if d:
                self.fail(f"unexpected {self._describe(self.tok)}", ["'deg'"])
            deg = ()
        self.arrows.append((t.text, s, e, deg))
        self.arrow_info[t.text] = (s, e, deg)
        self.end_statement()

    def _coeff(self) -> Fraction:
        num = self.expect_int("coefficient")
        if self.tok.kind == "sym" and self.tok.text == "/":
            self.advance()
            den_tok = self.tok
            den = self.expect_int("denominator")
            if den == 0:
                self.semantic("zero denominator", den_tok)
            return Fraction(num, den)
        return Fraction(num)

    def _term(self, sign: int):
        start = self.tok
        coeff = Fraction(1)
        if self.tok.kind == "word" and _INT.match(self.tok.text):
            coeff = self._coeff()
            self.expect_sym("*")
        name, nt = self._arrow_ref()
        word = [name]
        while self.tok.kind == "sym" and self.tok.text == ".":
            self.advance()
            nxt, ntok = self._arrow_ref()
            if self.arrow_info[word[-1]][1] != self.arrow_info[nxt][0]:
                self.semantic(f"arrows {word[-1]!r} and {nxt!r} do not concatenate", ntok)
            word.append(nxt)
        return sign * coeff, tuple(word), start

    def _signed_terms(self):
        sign = 1
        if self.tok.kind == "sym" and self.tok.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
        terms = [self._term(sign)]
        while self.tok.kind == "sym" and self.tok.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
            terms.append(self._term(sign))
        return terms

    def _degree(self, word):
        d = self.grading or 0
        acc = [0] * d
        for a in word:
            for c, x in enumerate(self.arrow_info[a][2]):
                acc[c] += x
        return tuple(acc)

    def stmt_relation(self):
        kw = self.advance()
        terms = self._signed_terms()
        acc: dict[tuple, Fraction] = {}
        for c, w, tok in terms:
            if len(w) < 2:
                self.semantic(f"relation term {'.'.join(w)!r} has length < 2", tok)
            acc[w] = acc.get(w, Fraction(0)) + c
        by_ends: dict = {}
        for c, w, tok in terms:
            ends = (self.arrow_info[w[0]][0], self.arrow_info[w[-1]][1])
            deg = self._degree(w)
            prev = by_ends.setdefault(ends, (deg, w))
            if prev[0] != deg:
                self.semantic(
                    f"relation is not homogeneous: {'.'.join(prev[1])} has degree {list(prev[0])}, "
                    f"{'.'.join(w)} has degree {list(deg)}",
                    tok,
                )
        rel = tuple((c, w) for w, c in acc.items() if c)
        self.positions.setdefault("relations", []).append((kw.line, kw.col))
        self.relations.append(rel)
        self.end_statement()

    def _skip_nl(self):
        while self.tok.kind == "nl":
            self.advance()

    def stmt_group(self):
        self.advance()
        self.expect_keyword("generator")
        nt = self.expect_word("generator name")
        if any(g[0] == nt.text for g in self.generators):
            self.semantic(f"generator {nt.text!r} declared twice", nt)
        self._skip_nl()
        self.expect_sym("{")
        vmap: dict[str, str] = {}
        amap: dict[str, tuple] = {}
        mode = None
        while True:
            self._skip_nl()
            t = self.tok
            if t.kind == "sym" and t.text == "}":
                self.advance()
                break
            if t.kind == "sym" and t.text in ";,":
                self.advance()
                continue
            if t.kind == "word" and t.text in ("vertex", "arrow"):
                mode = self.advance().text
                continue
            if t.kind == "eof":
                self.fail("unterminated generator block", ["'}'"])
            if mode is None:
                self.fail(f"unexpected {self._describe(t)}", ["'vertex'", "'arrow'", "'}'"])
            if mode == "vertex":
                src_tok = self.tok
                v = self._vertex_ref()
                self.expect_sym("->")
                w = self._vertex_ref()
                if v in vmap:
                    self.semantic(f"vertex {v!r} mapped twice", src_tok)
                vmap[v] = w
            else:
                a, at = self._arrow_ref()
                self.expect_sym("->")
                sign = 1
                if self.tok.kind == "sym" and self.tok.text in "+-":
                    sign = -1 if self.advance().text == "-" else 1
                coeff = Fraction(1)
                if self.tok.kind == "word" and _INT.match(self.tok.text):
                    coeff = self._coeff()
                    self.expect_sym("*")
                b, _ = self._arrow_ref()
                if a in amap:
                    self.semantic(f"arrow {a!r} mapped twice", at)
                amap[a] = (sign * coeff, b)
        self.generators.append(
            (
                nt.text,
                tuple(sorted(vmap.items())),
                tuple((a, c, b) for a, (c, b) in sorted(amap.items())),
            )
        )
        self.end_statement()

    def stmt_option(self):
        self.advance()
        t = self.expect_word("option name")
        if t.text not in ("length_cap", "order_cap"):
            self.fail(f"unknown option {t.text!r}", ["length_cap", "order_cap"], t)
        vt = self.tok
        v = self.expect_int("positive integer")
        if v < (2 if t.text == "length_cap" else 1):
            self.semantic(f"{t.text} is too small", vt)
        self.options[t.text] = v
        self.end_statement()


def parse(text: str) -> InputDocument:
    return _Parser(text).parse()


def _fmt_coeff(c: Fraction) -> str:
    return f"{c.numerator}" if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _emit_expr(terms) -> str:
    parts = []
    for c, w in terms:
        path = ".".join(w)
        mag = abs(c)
        body = path if mag == 1 else f"{_fmt_coeff(mag)}*{path}"
        parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def emit(doc: InputDocument) -> str:
    """Canonical text of a document; ``parse(emit(d)) == d``."""
    lines = [f"field {doc.field}", f"grading {doc.grading}"]
    lines += [f"vertex {v}" for v in doc.vertices]
    for name, s, t, deg in doc.arrows:
        line = f"arrow {name} : {s} -> {t}"
        if doc.grading:
            line += " deg (" + ", ".join(str(x) for x in deg) + ")"
        lines.append(line)
    lines += [f"relation {_emit_expr(r)}" for r in doc.relations]
    for name, vmap, amap in doc.generators:
        chunks = []
        if vmap:
            chunks.append("vertex " + ", ".join(f"{v} -> {w}" for v, w in vmap))
        if amap:
            items = []
            for a, c, b in amap:
                if c == 1:
                    items.append(f"{a} -> {b}")
                elif c == -1:
                    items.append(f"{a} -> -{b}")
                else:
                    items.append(f"{a} -> {_fmt_coeff(c)}*{b}")
            chunks.append("arrow " + ", ".join(items))
        lines.append(f"group generator {name} {{ " + "; ".join(chunks) + " }")
    lines += [f"option {k} {v}" for k, v in doc.options]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# building and analysis
# ---------------------------------------------------------------------------


def make_field(spec: str):
    spec = spec.strip()
    if spec == "Q":
        return QQ
    m = re.fullmatch(r"GF\s*\(?\s*([0-9]+)\s*\)?", spec)
    if not m:
        raise InputError(f"unknown field {spec!r}; use Q or GF<p>")
    try:
        return GF(int(m.group(1)))
    except ValueError as exc:
        raise InputError(str(exc)) from None


@dataclass
class Built:
    quiver: GradedQuiver
    field: object
    presentation: Presentation
    algebra: object
    generators: list


def build(doc: InputDocument, field_spec: str | None = None, length_cap: int | None = None) -> Built:
    from .covering import automorphism

    field = make_field(field_spec or doc.field)
    q = GradedQuiver.build(
        list(doc.vertices), [(n, s, t, deg) for n, s, t, deg in doc.arrows], grading_rank=doc.grading
    )
    rels = []
    positions = doc.positions.get("relations", [])
    for n, r in enumerate(doc.relations):
        terms = []
        for c, w in r:
            try:
                coeff = field(c)
            except ZeroDivisionError:
                line, col = positions[n] if n < len(positions) else (0, 0)
                raise SemanticError(f"coefficient {c} is undefined in {field!r}", line, col) from None
            idx = [q.arrow_index(a) for a in w]
            terms.append((q.path(idx), coeff))
        rels.append(AlgElement(q, field, terms))
    pres = Presentation.split(q, field, rels)
    cap = length_cap or doc.option("length_cap", DEFAULT_LENGTH_CAP)
    if cap < 2:
        raise InputError("the length cap must be at least 2")
    alg = build_algebra(pres, cap)
    gens = []
    for _, vmap, amap in doc.generators:
        try:
            gens.append(
                automorphism(q, field, dict(vmap), {a: (field(c), b) for a, c, b in amap})
            )
        except ZeroDivisionError:
            raise InputError(f"a generator coefficient is undefined in {field!r}") from None
    return Built(q, field, pres, alg, gens)


def _vname(alg, i):
    return alg.vertices[i]


def _deg(h):
    return list(h)


def analyze(
    doc: InputDocument,
    field_spec: str | None = None,
    length_cap: int | None = None,
    order_cap: int | None = None,
) -> dict:
    """Run the whole pipeline; refusals of a stage are recorded, not raised."""
    from .covering import DEFAULT_ORDER_CAP, close_group, orbit_algebra, verify_transfer
    from .errors import HypothesisFailed, NotSplit, NotWeaklyBasic
    from .frobenius import constant_degree_check, nakayama_automorphism, nakayama_form_from_basis, pf_check
    from .structure import classify, radical_arrow_image, radical_by_criterion

    b = build(doc, field_spec, length_cap)
    A = b.algebra
    out: dict = {}
    out["input"] = {
        "field": repr(b.field),
        "grading_rank": doc.grading,
        "vertices": list(doc.vertices),
        "arrows": [a[0] for a in doc.arrows],
        "relations": [_emit_expr(r) for r in doc.relations],
    }
    out["algebra"] = {
        "dimension": A.dim,
        "groebner_basis": [g.format() for g in A.groebner],
        "basis": list(A.labels),
        "graded_pieces": [
            {"source": _vname(A, i), "target": _vname(A, j), "degree": _deg(h), "dim": len(idx)}
            for (i, j, h), idx in A.pieces.items()
        ],
    }
    J = radical_by_criterion(A)
    out["radical"] = {
        "dimension": J.total_dim,
        "matches_arrow_ideal": J == radical_arrow_image(A),
        "nilpotency_index": J.nilpotency_index(),
    }
    c = classify(A, J)
    out["classification"] = {
        "weakly_basic": c.weakly_basic,
        "basic": c.basic,
        "split": c.split,
        "connected": c.connected,
        "local_dims": {A.vertices[i]: d for i, d in enumerate(c.local_dims)},
        "local_radical_dims": {A.vertices[i]: d for i, d in enumerate(c.local_radical_dims)},
        "witnesses": list(c.witnesses),
    }
    stages: dict = {}
    report = None
    try:
        report = pf_check(A, J)
    except NotWeaklyBasic as exc:
        stages["pf_check"] = str(exc)
    if report is not None:
        out["pf"] = {
            "is_pf": report.is_pf,
            "statement": report.statement,
            "nakayama_permutation": (
                {A.vertices[i]: A.vertices[j] for i, j in report.nakayama.items()} if report.is_pf else None
            ),
            "degree_map": (
                {A.vertices[i]: _deg(h) for i, h in report.degree_map.items()} if report.is_pf else None
            ),
            "socle_support": {
                A.vertices[i]: [[A.vertices[t], _deg(h)] for t, h in s] for i, s in report.socle_support.items()
            },
            "witnesses": list(report.witnesses),
        }
        if report.is_pf:
            try:
                form = nakayama_form_from_basis(A, report)
            except NotSplit as exc:
                stages["form"] = str(exc)
                form = None
            if form is not None:
                eta = nakayama_automorphism(A, form)
                out["form"] = {
                    "block_dims": [
                        {"piece": [A.vertices[k[0]], A.vertices[k[1]], _deg(k[2])], "size": m.rows}
                        for k, m in form.blocks.items()
                    ],
                    "digest": form.digest(),
                    "canonical": form.canonical(),
                }
                out["nakayama_automorphism"] = {
                    A.labels[k]: A.format_vector(eta.images[k]) for k, p in enumerate(A.paths) if p.length == 1
                }
                try:
                    out["constant_degree"] = {"holds": True, "value": constant_degree_check(A, form)}
                except HypothesisFailed as exc:
                    out["constant_degree"] = {"holds": False, "hypothesis": exc.hypothesis, "witness": exc.witness}
    if doc.generators:
        G = close_group(A, b.generators, order_cap or doc.option("order_cap", DEFAULT_ORDER_CAP))
        lam = orbit_algebra(A, G)
        tr = verify_transfer(A, G)
        tr.pop("lift_nu", None)
        out["group"] = {
            "order": G.order,
            "orbits": [[A.vertices[v] for v in orb] for orb in lam.orbits],
            "orbit_algebra": {
                "vertices": list(lam.vertices),
                "dimension": lam.dim,
                "basis": list(lam.labels),
            },
            "transfer": tr,
        }
    out["stages"] = stages
    out["document"] = emit(doc)
    return out


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def to_text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in report.items():
        if k in ("document",):
            continue
        if isinstance(v, dict):
            if not v:
                lines.append(f"{pad}{k}: {{}}")
                continue
            lines.append(f"{pad}{k}:")
            lines.append(to_text(v, indent + 1).rstrip("\n"))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(f"{pad}  - " + ", ".join(f"{a}={json.dumps(b, ensure_ascii=False)}" for a, b in item.items()))
        else:
            lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# form re-verification
# ---------------------------------------------------------------------------


def check_form_report(report: dict) -> tuple[bool, str]:
    """Rebuild the form stored in a JSON report and verify it from scratch."""
    from .frobenius import BilinearForm, check_form

    if "form" not in report or "document" not in report:
        raise InputError("report has no form to check")
    doc = parse(report["document"])
    A = build(doc).algebra
    canon = report["form"]["canonical"]
    vidx = {v: i for i, v in enumerate(A.vertices)}
    try:
        nu = {vidx[a]: vidx[b] for a, b in canon["nakayama"].items()}
        degrees = {vidx[a]: tuple(h) for a, h in canon["degrees"].items()}
        blocks = {}
        for blk in canon["blocks"]:
            s, t, h = blk["piece"]
            key = (vidx[s], vidx[t], tuple(h))
            blocks[key] = Matrix(A.field, blk["matrix"], blk["cols"])
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"malformed form data: {exc}") from None
    form = BilinearForm(A, nu, degrees, blocks)
    problems = check_form(form)
    if problems:
        return False, "; ".join(problems)
    if form.digest() != report["form"]["digest"]:
        return False, "digest does not match the stored pairing matrices"
    return True, "form verified"


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------


def corpus_dir() -> FsPath:
    return FsPath(__file__).parent / "data"


def corpus_files() -> list[FsPath]:
    return sorted(corpus_dir().glob("*.alg"))


def _expectations(text: str) -> dict:
    exp = {}
    for line in text.splitlines():
        m = re.match(r"#\s*expect:\s*(.*)", line)
        if m:
            for item in m.group(1).split():
                k, _, v = item.partition("=")
                exp[k] = v
    return exp


def _lookup(report: dict, key: str):
    table = {
        "dimension": lambda r: r["algebra"]["dimension"],
        "is_pf": lambda r: r.get("pf", {}).get("is_pf"),
        "weakly_basic": lambda r: r["classification"]["weakly_basic"],
        "constant_degree": lambda r: r.get("constant_degree", {}).get("value"),
        "orbit_is_pf": lambda r: r.get("group", {}).get("transfer", {}).get("orbit_is_pf"),
        "pf_agree": lambda r: r.get("group", {}).get("transfer", {}).get("pf_agree"),
        "covering": lambda r: r.get("group", {}).get("transfer", {}).get("covering"),
        "radical_match": lambda r: r["radical"]["matches_arrow_ideal"],
    }
    return table[key](report)


def run_corpus(out=sys.stdout) -> bool:
    ok_all = True
    rows = []
    for path in corpus_files():
        text = path.read_text(encoding="utf-8")
        exp = _expectations(text)
        try:
            rep = analyze(parse(text))
            bad = []
            for k, v in exp.items():
                got = _lookup(rep, k)
                if json.dumps(got) != v and str(got) != v:
                    bad.append(f"{k}: expected {v}, got {json.dumps(got)}")
            status = "PASS" if not bad else "FAIL"
            detail = "; ".join(bad)
        except GradedPFError as exc:
            status, detail = "FAIL", f"{type(exc).__name__}: {exc}"
        ok_all &= status == "PASS"
        rows.append((path.name, status, detail))
    width = max((len(r[0]) for r in rows), default=4)
    for name, status, detail in rows:
        print(f"{name:<{width}}  {status}" + (f"  {detail}" if detail else ""), file=out)
    print(f"{sum(r[1] == 'PASS' for r in rows)}/{len(rows)} passed", file=out)
    return ok_all


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="gradedpf", description="Graded pseudo-Frobenius analysis of quiver algebras.")
    sub = ap.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", help="analyse one document")
    an.add_argument("file")
    an.add_argument("--json", action="store_true", help="machine-readable output")
    an.add_argument("--length-cap", type=int)
    an.add_argument("--order-cap", type=int)
    an.add_argument("--field", help="override the ground field (Q or GFp)")
    cf = sub.add_parser("check-form", help="re-verify the form stored in a JSON report")
    cf.add_argument("file")
    sub.add_parser("corpus", help="run the bundled example corpus")
    args = ap.parse_args(argv)
    try:
        if args.command == "analyze":
            text = _read(args.file)
            doc = parse(text)
            rep = analyze(doc, args.field, args.length_cap, args.order_cap)
            sys.stdout.write(to_json(rep) if args.json else to_text(rep))
            return 0
        if args.command == "check-form":
            try:
                data = json.loads(_read(args.file))
            except json.JSONDecodeError as exc:
                raise InputError(f"{args.file} is not JSON: {exc.msg} at line {exc.lineno}") from None
            ok, msg = check_form_report(data)
            print(msg)
            return 0 if ok else 3
        return 0 if run_corpus() else 3
    except ParseError as exc:
        print(f"{getattr(args, 'file', '')}:{exc.line}:{exc.col}: error: {exc.detail}", file=sys.stderr)
        return 1
    except GradedPFError as exc:
        label = "invariant violation" if isinstance(exc, InvariantViolation) else "error"
        print(f"{label}: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001 - last-resort contract
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
