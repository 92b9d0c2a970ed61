"""JSON algebra documents.

A document looks like::

    {
      "p": 3,
      "even_basis": ["x1", "x2", "x3"],
      "odd_basis": ["y1"],
      "brackets": [
        {"left": "x1", "right": "x2", "value": [["x3", 1]]},
        {"left": "y1", "right": "y1", "value": [["x3", 1]]}
      ],
      "p_operator": [{"on": "x3", "value": [["x3", 1]]}]
    }

Unlisted brackets are zero, except that a pair whose mirror is listed takes
the super skew-symmetric value. Unlisted [p]-images are zero. The canonical
serialization sorts object keys, orders entries and terms by basis
position, reduces coefficients mod p and drops zero terms; basis lists keep
their order because it fixes the coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .linalg import is_prime
from .restricted import POperator
from .superalgebra import LieSuperalgebra, from_brackets

Terms = tuple[tuple[str, int], ...]


class DocumentError(ValueError):
    """Schema or content violation in an algebra document."""


@dataclass(frozen=True)
class BracketEntry:
    left: str
    right: str
    value: Terms


@dataclass(frozen=True)
class PEntry:
    on: str
    value: Terms


@dataclass(frozen=True)
class AlgebraDocument:
    p: int
    even_basis: tuple[str, ...]
    odd_basis: tuple[str, ...]
    brackets: tuple[BracketEntry, ...] = ()
    p_operator: tuple[PEntry, ...] = ()

    @property
    def names(self) -> tuple[str, ...]:
        return self.even_basis + self.odd_basis


def _fail(where: str, msg: str):
    raise DocumentError(f"{where}: {msg}")


def _terms(raw, where: str, pos: dict[str, int], p: int) -> Terms:
    if not isinstance(raw, list):
        _fail(where, "expected a list of [label, coefficient] pairs")
    acc: dict[str, int] = {}
    for k, term in enumerate(raw):
        w = f"{where}[{k}]"
        if not (isinstance(term, list) and len(term) == 2):
            _fail(w, "expected a [label, coefficient] pair")
        label, coeff = term
        if not isinstance(label, str):
            _fail(w, f"label must be a string, got {label!r}")
        if label not in pos:
            _fail(w, f"unknown label {label!r}")
        if isinstance(coeff, bool) or not isinstance(coeff, int):
            _fail(w, f"coefficient must be an integer, got {coeff!r}")
        acc[label] = (acc.get(label, 0) + coeff) % p
    return tuple(sorted(((lab, c) for lab, c in acc.items() if c), key=lambda t: pos[t[0]]))


def from_dict(data) -> AlgebraDocument:
    if not isinstance(data, dict):
        _fail("document", "top level must be a JSON object")
    allowed = {"p", "even_basis", "odd_basis", "brackets", "p_operator"}
    extra = set(data) - allowed
    if extra:
        _fail("document", f"unexpected fields {sorted(extra)}")
    for key in ("p", "even_basis", "odd_basis"):
        if key not in data:
            _fail(key, "missing required field")
    p = data["p"]
    if isinstance(p, bool) or not isinstance(p, int):
        _fail("p", f"must be an integer, got {p!r}")
    if p == 2:
        _fail("p", "characteristic 2 is not supported; need an odd prime")
    if not is_prime(p):
        _fail("p", f"{p} is not prime")
    basis = {}
    for key in ("even_basis", "odd_basis"):
        labels = data[key]
        if not isinstance(labels, list) or not all(isinstance(x, str) and x for x in labels):
            _fail(key, "must be a list of non-empty strings")
        basis[key] = tuple(labels)
    names = basis["even_basis"] + basis["odd_basis"]
    if len(set(names)) != len(names):
        dup = sorted({x for x in names if names.count(x) > 1})
        _fail("basis", f"duplicate labels {dup}")
    pos = {x: i for i, x in enumerate(names)}
    even = set(basis["even_basis"])

    brackets = []
    seen = set()
    raw = data.get("brackets", [])
    if not isinstance(raw, list):
        _fail("brackets", "must be a list")
    for k, entry in enumerate(raw):
        w = f"brackets[{k}]"
        if not isinstance(entry, dict) or set(entry) != {"left", "right", "value"}:
            _fail(w, "expected an object with fields left, right, value")
        left, right = entry["left"], entry["right"]
        for side, lab in (("left", left), ("right", right)):
            if lab not in pos:
                _fail(f"{w}.{side}", f"unknown label {lab!r}")
        if (left, right) in seen:
            _fail(w, f"duplicate entry for [{left}, {right}]")
        seen.add((left, right))
        brackets.append(BracketEntry(left, right, _terms(entry["value"], f"{w}.value", pos, p)))
    brackets.sort(key=lambda e: (pos[e.left], pos[e.right]))

    images = []
    seen_on = set()
    raw = data.get("p_operator", [])
    if not isinstance(raw, list):
        _fail("p_operator", "must be a list")
    for k, entry in enumerate(raw):
        w = f"p_operator[{k}]"
        if not isinstance(entry, dict) or set(entry) != {"on", "value"}:
            _fail(w, "expected an object with fields on, value")
        on = entry["on"]
        if on not in even:
            _fail(f"{w}.on", f"{on!r} is not an even basis label")
        if on in seen_on:
            _fail(w, f"duplicate entry for {on!r}")
        seen_on.add(on)
        value = _terms(entry["value"], f"{w}.value", pos, p)
        for lab, _ in value:
            if lab not in even:
                _fail(f"{w}.value", f"[p]-image has odd component {lab!r}")
        images.append(PEntry(on, value))
    images.sort(key=lambda e: pos[e.on])
    return AlgebraDocument(p, basis["even_basis"], basis["odd_basis"], tuple(brackets), tuple(images))


def parse(text: str) -> AlgebraDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(data)


def to_dict(doc: AlgebraDocument) -> dict:
    return {
        "p": doc.p,
        "even_basis": list(doc.even_basis),
        "odd_basis": list(doc.odd_basis),
        "brackets": [
            {"left": e.left, "right": e.right, "value": [[lab, c] for lab, c in e.value]} for e in doc.brackets
        ],
        "p_operator": [{"on": e.on, "value": [[lab, c] for lab, c in e.value]} for e in doc.p_operator],
    }


def serialize(doc: AlgebraDocument) -> str:
    return json.dumps(to_dict(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_algebra(doc: AlgebraDocument) -> tuple[LieSuperalgebra, POperator]:
    brackets = {(e.left, e.right): dict(e.value) for e in doc.brackets}
    A = from_brackets(doc.even_basis, doc.odd_basis, doc.p, brackets)
    images = np.zeros((A.m, A.dim), dtype=np.int64)
    for e in doc.p_operator:
        for lab, c in e.value:
            images[A.index(e.on), A.index(lab)] += c
    return A, POperator(A, images)


def from_algebra(A: LieSuperalgebra, P: POperator | None = None) -> AlgebraDocument:
    """Minimal document: pairs i <= j, plus any i > j pair not implied by skew-symmetry."""
    names, p, c = A.names, A.p, A.constants

    def terms(vec) -> Terms:
        return tuple((names[k], int(x)) for k, x in enumerate(vec) if x % p)

    entries = []
    for i in range(A.dim):
        for j in range(A.dim):
            if i <= j:
                if c[i, j].any():
                    entries.append(BracketEntry(names[i], names[j], terms(c[i, j])))
            else:
                sign = 1 if (A.parity(i) and A.parity(j)) else -1
                implied = sign * c[j, i] % p
                if not np.array_equal(implied, c[i, j]):
                    entries.append(BracketEntry(names[i], names[j], terms(c[i, j])))
    images = []
    if P is not None:
        for i in range(A.m):
            if P.images[i].any():
                images.append(PEntry(names[i], terms(P.images[i])))
    return AlgebraDocument(p, A.even_names, A.odd_names, tuple(entries), tuple(images))
