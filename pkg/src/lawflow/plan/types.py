"""Semantic types for plan values and tool signatures.

The vocabulary is closed: Str, Int, Bool, Date, Contract, Section, Text, plus
the constructors List<T> and Pair<A,B>. Types are compared structurally;
there is no subtyping except that Str unifies with Text (a summary is a
string with provenance expectations, not a distinct runtime shape).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

ATOMS = ("Str", "Int", "Bool", "Date", "Contract", "Section", "Text")


@dataclass(frozen=True)
class SemType:
    name: str
    args: tuple["SemType", ...] = field(default=())

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}<{','.join(str(a) for a in self.args)}>"


STR = SemType("Str")
INT = SemType("Int")
BOOL = SemType("Bool")
DATE = SemType("Date")
CONTRACT = SemType("Contract")
SECTION = SemType("Section")
TEXT = SemType("Text")


def list_of(item: SemType) -> SemType:
    return SemType("List", (item,))


def pair_of(a: SemType, b: SemType) -> SemType:
    return SemType("Pair", (a, b))


_TYPE_TOKEN = re.compile(r"[A-Za-z]+|[<>,]")


def parse_type(text: str) -> SemType:
    """Parse "List<Pair<Str,Contract>>" style type expressions."""
    tokens = _TYPE_TOKEN.findall(text.replace(" ", ""))
    pos = 0

    def parse() -> SemType:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"truncated type: {text!r}")
        name = tokens[pos]
        pos += 1
        if name in ATOMS:
            return SemType(name)
        if name == "List":
            _expect("<")
            item = parse()
            _expect(">")
            return list_of(item)
        if name == "Pair":
            _expect("<")
            a = parse()
            _expect(",")
            b = parse()
            _expect(">")
            return pair_of(a, b)
        raise ValueError(f"unknown type name {name!r} in {text!r}")

    def _expect(tok: str):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            raise ValueError(f"expected {tok!r} in type {text!r}")
        pos += 1

    result = parse()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in type {text!r}")
    return result


def unifies(actual: SemType, expected: SemType) -> bool:
    """Structural match; Str and Text are interchangeable."""
    if {actual.name, expected.name} == {"Str", "Text"}:
        return True
    if actual.name != expected.name or len(actual.args) != len(expected.args):
        return False
    return all(unifies(a, e) for a, e in zip(actual.args, expected.args))
