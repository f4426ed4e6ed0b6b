"""Minimal RDF model with deterministic N-Triples / Turtle serialization.

Documents are plain triple sets plus a prefix table.  Serialization sorts
triples lexicographically by subject, predicate, object so identical
documents always produce byte-identical output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NTriplesSyntaxError

# Namespace table.  The instance/ontology/action namespaces follow the
# conventional virtualhome2kg layout; ho/hra hang off the ontology root;
# x3do and time use the public X3D Ontology 4.0 and W3C Time namespaces.
EX = "http://example.org/virtualhome2kg/instance/"
VH2KG = "http://example.org/virtualhome2kg/ontology/"
AN = "http://example.org/virtualhome2kg/ontology/action/"
HO = "http://example.org/virtualhome2kg/ontology/ho/"
HRA = "http://example.org/virtualhome2kg/ontology/hra/"
X3DO = "https://www.web3d.org/specifications/X3dOntology4.0#"
TIME = "http://www.w3.org/2006/time#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"

PREFIXES = {
    "ex": EX,
    "": VH2KG,
    "vh2kg-an": AN,
    "ho": HO,
    "hra": HRA,
    "x3do": X3DO,
    "time": TIME,
    "rdf": RDF,
    "rdfs": RDFS,
    "xsd": XSD,
}

#: Namespaces whose IRIs count as schema constants, not entities.
SCHEMA_NAMESPACES = (VH2KG, AN, HO, HRA, X3DO, TIME, RDF, RDFS, XSD)

XSD_STRING = XSD + "string"
XSD_INT = XSD + "int"
XSD_DECIMAL = XSD + "decimal"


@dataclass(frozen=True, order=True)
class Literal:
    lexical: str
    datatype: str = XSD_STRING


@dataclass(frozen=True)
class Triple:
    subject: str
    predicate: str
    object: object  # str (IRI) or Literal

    def sort_key(self):
        o = self.object
        okey = (0, o, "") if isinstance(o, str) else (1, o.lexical, o.datatype)
        return (self.subject, self.predicate, okey)


def integer(value: int) -> Literal:
    return Literal(str(int(value)), XSD_INT)


def decimal(value: float, places: int = 9) -> Literal:
    # Fixed-point lexical form keeps serialization byte-stable.
    lex = f"{value:.{places}f}".rstrip("0")
    if lex.endswith("."):
        lex += "0"
    return Literal(lex, XSD_DECIMAL)


def string(value: str) -> Literal:
    return Literal(value, XSD_STRING)


@dataclass
class KgDocument:
    prefixes: dict = field(default_factory=lambda: dict(PREFIXES))
    triples: set = field(default_factory=set)

    def add(self, s: str, p: str, o) -> None:
        self.triples.add(Triple(s, p, o))

    def update(self, other: "KgDocument") -> None:
        self.triples |= other.triples

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples, key=Triple.sort_key)


def _escape(text: str) -> str:
    return (text.replace("\\", "\\\\").replace('"', '\\"')
            .replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t"))


def _unescape(text: str) -> str:
    return (text.replace("\\t", "\t").replace("\\r", "\r").replace("\\n", "\n")
            .replace('\\"', '"').replace("\\\\", "\\"))


def _nt_term(o) -> str:
    if isinstance(o, str):
        return f"<{o}>"
    if o.datatype == XSD_STRING:
        return f'"{_escape(o.lexical)}"'
    return f'"{_escape(o.lexical)}"^^<{o.datatype}>'


def serialize_ntriples(doc: KgDocument) -> str:
    lines = [f"<{t.subject}> <{t.predicate}> {_nt_term(t.object)} ."
             for t in doc.sorted_triples()]
    return "\n".join(lines) + ("\n" if lines else "")


_LOCAL_RE = re.compile(r"^[A-Za-z0-9_.-]*$")


def _qname(iri: str, prefixes: dict) -> str:
    best = None
    for prefix, ns in prefixes.items():
        if iri.startswith(ns) and (best is None or len(ns) > len(prefixes[best])):
            local = iri[len(ns):]
            if _LOCAL_RE.match(local) and not local.startswith((".", "-")) \
                    and not local.endswith("."):
                best = prefix
    if best is None:
        return f"<{iri}>"
    return f"{best}:{iri[len(prefixes[best]):]}"


def _ttl_term(o, prefixes) -> str:
    if isinstance(o, str):
        return _qname(o, prefixes)
    if o.datatype == XSD_STRING:
        return f'"{_escape(o.lexical)}"'
    return f'"{_escape(o.lexical)}"^^{_qname(o.datatype, prefixes)}'


def serialize_turtle(doc: KgDocument) -> str:
    out = []
    for prefix, ns in doc.prefixes.items():
        out.append(f"@prefix {prefix}: <{ns}> .")
    out.append("")
    for t in doc.sorted_triples():
        s = _qname(t.subject, doc.prefixes)
        p = "a" if t.predicate == RDF + "type" else _qname(t.predicate, doc.prefixes)
        out.append(f"{s} {p} {_ttl_term(t.object, doc.prefixes)} .")
    return "\n".join(out) + "\n"


_NT_LINE = re.compile(
    r'^<([^>]*)>\s+<([^>]*)>\s+'
    r'(?:<([^>]*)>|"((?:[^"\\]|\\.)*)"(?:\^\^<([^>]*)>)?)\s*\.\s*$')


def parse_ntriples(text: str) -> KgDocument:
    """Parse N-Triples text back into a KgDocument (IRIs and typed literals)."""
    doc = KgDocument()
    for line_no, line in enumerate(text.split("\n"), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        m = _NT_LINE.match(line)
        if not m:
            raise NTriplesSyntaxError(f"line {line_no}: cannot parse {line!r}")
        s, p, o_iri, o_lex, o_dt = m.groups()
        if o_iri is not None:
            doc.add(s, p, o_iri)
        else:
            doc.add(s, p, Literal(_unescape(o_lex), o_dt or XSD_STRING))
    return doc


def graph_stats(doc: KgDocument) -> dict:
    """Entity / property / triple counts.

    Entities are distinct IRIs in subject or object position excluding
    schema-level constants (anything in an ontology namespace).
    """
    entities = set()
    predicates = set()
    for t in doc.triples:
        predicates.add(t.predicate)
        for term in (t.subject, t.object):
            if isinstance(term, str) and not term.startswith(SCHEMA_NAMESPACES):
                entities.add(term)
    return {"entities": len(entities), "properties": len(predicates),
            "triples": len(doc.triples)}


class KgIndex:
    """Simple lookup structures over a document for pattern evaluation."""

    def __init__(self, doc: KgDocument):
        self.doc = doc
        self.by_subject: dict[str, list[Triple]] = {}
        self.by_predicate: dict[str, list[Triple]] = {}
        for t in doc.triples:
            self.by_subject.setdefault(t.subject, []).append(t)
            self.by_predicate.setdefault(t.predicate, []).append(t)

    def objects(self, subject: str, predicate: str) -> list:
        return [t.object for t in self.by_subject.get(subject, ())
                if t.predicate == predicate]

    def object(self, subject: str, predicate: str):
        objs = self.objects(subject, predicate)
        return objs[0] if objs else None

    def subjects(self, predicate: str, obj=None) -> list[str]:
        return [t.subject for t in self.by_predicate.get(predicate, ())
                if obj is None or t.object == obj]

    def has(self, s, p, o) -> bool:
        return Triple(s, p, o) in self.doc.triples
