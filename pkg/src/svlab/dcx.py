"""Reader and writer for the line-oriented DCX text format.

::

    dcx 1
    complex <name> dim <n>
    cells <k> <count>
    face <k> <cell> <f0> ... <fk>
    chain|cochain|measure <name> on <complex> dim <k>
    term <cell> <p>/<q>
    cocycle <name> on <complex> mod <d>
    label <edge> <value>
    tower <name> base <complex> cocycle <cocycle> sheets <d>
    path <name> on <complex>
    walk <p>/<q> <step> <step> ...        # steps are +e or -e
    value <name> <p>/<q>

``#`` starts a comment.  Blocks are written in the order above, each kind
sorted by insertion order, so serialising the same document twice gives
identical bytes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from svlab.chains import RationalChain, RationalCochain
from svlab.covering import EdgeCocycle
from svlab.delta_complex import DeltaComplex
from svlab.errors import ParseError, SvlabError
from svlab.measures import MeasureChain
from svlab.paths import PathChain

__all__ = ["DcxDocument", "TowerSpec", "parse", "serialize", "load", "dump", "fmt"]

_RATIONAL = re.compile(r"^([+-]?\d+)/(\d+)$")
_NAME = re.compile(r"^[A-Za-z0-9_.~()\-]+$")


def fmt(q) -> str:
    """Exact rational as ``p/q`` in lowest terms with ``q > 0``."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(token: str, line=None) -> Fraction:
    m = _RATIONAL.match(token)
    if not m or int(m.group(2)) == 0:
        raise ParseError(f"expected a rational p/q, got {token!r}", line)
    return Fraction(int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class TowerSpec:
    name: str
    base: str
    cocycle: str
    sheets: int


@dataclass
class DcxDocument:
    complexes: dict = field(default_factory=dict)
    chains: dict = field(default_factory=dict)
    cochains: dict = field(default_factory=dict)
    measures: dict = field(default_factory=dict)
    cocycles: dict = field(default_factory=dict)
    towers: dict = field(default_factory=dict)
    paths: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)

    def complex_name(self, X: DeltaComplex) -> str:
        for name, Y in self.complexes.items():
            if Y is X or Y == X:
                return name
        raise SvlabError("complex is not part of this document")

    def add_complex(self, name: str, X: DeltaComplex) -> str:
        self.complexes[name] = X
        return name

    def only(self, kind: str):
        table = getattr(self, kind)
        if len(table) != 1:
            raise SvlabError(f"expected exactly one {kind[:-1]} in the document, found {len(table)}")
        return next(iter(table.values()))

    def __eq__(self, other):
        if not isinstance(other, DcxDocument):
            return NotImplemented
        fields = ("complexes", "chains", "cochains", "measures", "cocycles", "towers", "paths", "values")
        return all(getattr(self, f) == getattr(other, f) for f in fields)


def _int(token, line, what="integer"):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected {what}, got {token!r}", line) from None


def _name(token, line):
    if not _NAME.match(token):
        raise ParseError(f"bad name {token!r}", line)
    return token


class _Reader:
    def __init__(self, known=None):
        self.doc = DcxDocument()
        self.known = dict(known or {})
        self.block = None

    def lookup_complex(self, name, line):
        if name in self.doc.complexes:
            return self.doc.complexes[name]
        if name in self.known:
            return self.known[name]
        raise ParseError(f"unknown complex {name!r}", line)

    def close(self):
        b, self.block = self.block, None
        if b is None:
            return
        kind = b["kind"]
        line = b["line"]
        try:
            if kind == "complex":
                n = b["dim"]
                counts = [b["cells"].get(k) for k in range(n + 1)]
                if None in counts:
                    missing = counts.index(None)
                    raise ParseError(f"complex {b['name']}: missing 'cells {missing}'", line)
                faces = []
                for k in range(1, n + 1):
                    rows = b["faces"].get(k, {})
                    if sorted(rows) != list(range(counts[k])):
                        absent = next(t for t in range(counts[k]) if t not in rows)
                        raise ParseError(f"complex {b['name']}: missing face row for cell {k}:{absent}", line)
                    faces.append(tuple(rows[t] for t in range(counts[k])))
                self.doc.complexes[b["name"]] = DeltaComplex(tuple(counts), tuple(faces), name=b["name"])
            elif kind in ("chain", "cochain", "measure"):
                X, k = b["complex"], b["dim"]
                if kind == "chain":
                    self.doc.chains[b["name"]] = RationalChain(X, k, b["terms"])
                elif kind == "cochain":
                    self.doc.cochains[b["name"]] = RationalCochain(X, k, b["terms"])
                else:
                    self.doc.measures[b["name"]] = MeasureChain(X, k, b["terms"])
            elif kind == "cocycle":
                X = b["complex"]
                n_edges = X.counts[1] if X.dim >= 1 else 0
                labels = [b["labels"].get(e, 0) for e in range(n_edges)]
                self.doc.cocycles[b["name"]] = EdgeCocycle(X, b["mod"], tuple(labels))
            elif kind == "path":
                self.doc.paths[b["name"]] = PathChain(b["complex"], b["walks"])
        except ParseError:
            raise
        except SvlabError as exc:
            raise ParseError(str(exc), line) from exc

    def feed(self, lineno, tokens):
        head = tokens[0]
        b = self.block
        if head == "cells" and b and b["kind"] == "complex":
            if len(tokens) != 3:
                raise ParseError("cells <k> <count>", lineno)
            k, count = _int(tokens[1], lineno), _int(tokens[2], lineno)
            if not 0 <= k <= b["dim"] or count < 0:
                raise ParseError(f"bad cells line for dimension {k}", lineno)
            b["cells"][k] = count
        elif head == "face" and b and b["kind"] == "complex":
            k = _int(tokens[1], lineno) if len(tokens) > 1 else -1
            if not 1 <= k <= b["dim"] or len(tokens) != k + 4:
                raise ParseError("face <k> <cell> <f0> ... <fk>", lineno)
            t = _int(tokens[2], lineno)
            b["faces"].setdefault(k, {})[t] = tuple(_int(x, lineno) for x in tokens[3:])
        elif head == "term" and b and b["kind"] in ("chain", "cochain", "measure"):
            if len(tokens) != 3:
                raise ParseError("term <cell> <p>/<q>", lineno)
            cell = _int(tokens[1], lineno)
            b["terms"][cell] = b["terms"].get(cell, 0) + parse_rational(tokens[2], lineno)
        elif head == "label" and b and b["kind"] == "cocycle":
            if len(tokens) != 3:
                raise ParseError("label <edge> <value>", lineno)
            b["labels"][_int(tokens[1], lineno)] = _int(tokens[2], lineno)
        elif head == "walk" and b and b["kind"] == "path":
            if len(tokens) < 3:
                raise ParseError("walk <p>/<q> <step> ...", lineno)
            coeff = parse_rational(tokens[1], lineno)
            steps = []
            for tok in tokens[2:]:
                if tok[0] not in "+-":
                    raise ParseError(f"step {tok!r} needs a sign", lineno)
                steps.append((_int(tok[1:], lineno), 1 if tok[0] == "+" else -1))
            b["walks"].append((tuple(steps), coeff))
        else:
            self.close()
            self.start(lineno, tokens)

    def start(self, lineno, tokens):
        head = tokens[0]
        if head == "complex":
            if len(tokens) != 4 or tokens[2] != "dim":
                raise ParseError("complex <name> dim <n>", lineno)
            self.block = dict(kind="complex", line=lineno, name=_name(tokens[1], lineno),
                              dim=_int(tokens[3], lineno), cells={}, faces={})
        elif head in ("chain", "cochain", "measure"):
            if len(tokens) != 6 or tokens[2] != "on" or tokens[4] != "dim":
                raise ParseError(f"{head} <name> on <complex> dim <k>", lineno)
            X = self.lookup_complex(tokens[3], lineno)
            k = _int(tokens[5], lineno)
            if not 0 <= k <= X.dim:
                raise ParseError(f"dimension {k} not in 0..{X.dim}", lineno)
            self.block = dict(kind=head, line=lineno, name=_name(tokens[1], lineno), complex=X, dim=k, terms={})
        elif head == "cocycle":
            if len(tokens) != 6 or tokens[2] != "on" or tokens[4] != "mod":
                raise ParseError("cocycle <name> on <complex> mod <d>", lineno)
            self.block = dict(kind="cocycle", line=lineno, name=_name(tokens[1], lineno),
                              complex=self.lookup_complex(tokens[3], lineno),
                              mod=_int(tokens[5], lineno), labels={})
        elif head == "path":
            if len(tokens) != 4 or tokens[2] != "on":
                raise ParseError("path <name> on <complex>", lineno)
            self.block = dict(kind="path", line=lineno, name=_name(tokens[1], lineno),
                              complex=self.lookup_complex(tokens[3], lineno), walks=[])
        elif head == "tower":
            if len(tokens) != 8 or tokens[2:7:2] != ["base", "cocycle", "sheets"]:
                raise ParseError("tower <name> base <complex> cocycle <cocycle> sheets <d>", lineno)
            self.doc.towers[_name(tokens[1], lineno)] = TowerSpec(
                tokens[1], tokens[3], tokens[5], _int(tokens[7], lineno)
            )
        elif head == "value":
            if len(tokens) != 3:
                raise ParseError("value <name> <p>/<q>", lineno)
            self.doc.values[_name(tokens[1], lineno)] = parse_rational(tokens[2], lineno)
        else:
            raise ParseError(f"unexpected {head!r}", lineno)


def parse(text: str, known_complexes=None) -> DcxDocument:
    """Parse DCX text; ``known_complexes`` resolves names defined elsewhere."""
    reader = _Reader(known_complexes)
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if not seen_header:
            if tokens != ["dcx", "1"]:
                raise ParseError("missing 'dcx 1' header", lineno)
            seen_header = True
            continue
        reader.feed(lineno, tokens)
    if not seen_header:
        raise ParseError("empty document")
    reader.close()
    doc = reader.doc
    for spec in doc.towers.values():
        if spec.base not in doc.complexes and spec.base not in reader.known:
            raise ParseError(f"tower {spec.name}: unknown complex {spec.base!r}")
        if spec.cocycle not in doc.cocycles:
            raise ParseError(f"tower {spec.name}: unknown cocycle {spec.cocycle!r}")
        if doc.cocycles[spec.cocycle].d != spec.sheets:
            raise ParseError(f"tower {spec.name}: cocycle is mod {doc.cocycles[spec.cocycle].d}, not {spec.sheets}")
    return doc


def _complex_lines(name, X):
    out = [f"complex {name} dim {X.dim}"]
    out += [f"cells {k} {c}" for k, c in enumerate(X.counts)]
    for k in range(1, X.dim + 1):
        for t, row in enumerate(X.faces[k - 1]):
            out.append(f"face {k} {t} " + " ".join(map(str, row)))
    return out


def serialize(doc: DcxDocument) -> str:
    lines = ["dcx 1"]
    for name, X in doc.complexes.items():
        lines += _complex_lines(name, X)

    def ref(X):
        return doc.complex_name(X)

    for kind, table in (("chain", doc.chains), ("cochain", doc.cochains), ("measure", doc.measures)):
        for name, c in table.items():
            lines.append(f"{kind} {name} on {ref(c.complex)} dim {c.k}")
            lines += [f"term {cell} {fmt(v)}" for cell, v in c.items()]
    for name, c in doc.cocycles.items():
        lines.append(f"cocycle {name} on {ref(c.complex)} mod {c.d}")
        lines += [f"label {e} {v}" for e, v in enumerate(c.labels) if v]
    for spec in doc.towers.values():
        lines.append(f"tower {spec.name} base {spec.base} cocycle {spec.cocycle} sheets {spec.sheets}")
    for name, p in doc.paths.items():
        lines.append(f"path {name} on {ref(p.complex)}")
        for path, coeff in p.terms:
            steps = " ".join(f"{'+' if s > 0 else '-'}{e}" for e, s in path)
            lines.append(f"walk {fmt(coeff)} {steps}")
    for name, v in doc.values.items():
        lines.append(f"value {name} {fmt(v)}")
    return "\n".join(lines) + "\n"


def load(path, known_complexes=None) -> DcxDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), known_complexes)


def dump(doc: DcxDocument, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(doc))
