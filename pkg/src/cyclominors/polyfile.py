"""Polynomial documents: JSON or line-oriented text, auto-detected.

JSON::

    {"n": 4, "terms": [{"exp": 0, "coeff": "1"}, {"exp": 2, "coeff": "1"}]}

Text (``#`` starts a comment)::

    n=4
    0 1
    2 1/2*w^3 - 1
"""

from __future__ import annotations

import json
from pathlib import Path

from cyclominors.cyclotomic import format_elem, parse_elem
from cyclominors.errors import UsageError
from cyclominors.spectral import SparsePoly


def _build(n, terms: list[tuple[object, str]], where: str) -> SparsePoly:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise UsageError(f"{where}: field 'n' must be a positive integer, got {n!r}")
    seen = set()
    out = []
    for i, (exp, coeff) in enumerate(terms):
        if not isinstance(exp, int) or isinstance(exp, bool):
            raise UsageError(f"{where}: terms[{i}].exp must be an integer, got {exp!r}")
        if not 0 <= exp < n:
            raise UsageError(f"{where}: terms[{i}].exp={exp} out of range 0..{n - 1}")
        if exp in seen:
            raise UsageError(f"{where}: terms[{i}].exp={exp} repeated")
        seen.add(exp)
        if not isinstance(coeff, str):
            raise UsageError(f"{where}: terms[{i}].coeff must be a string, got {coeff!r}")
        try:
            c = parse_elem(coeff, n)
        except UsageError as exc:
            raise UsageError(f"{where}: terms[{i}].coeff: {exc}") from None
        if not c:
            raise UsageError(f"{where}: terms[{i}].coeff is zero")
        out.append((exp, c))
    return SparsePoly(n, tuple(out))


def parse_poly_document(text: str, where: str = "<poly>") -> SparsePoly:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{where}: invalid JSON: {exc.msg} at line {exc.lineno}") from None
        if "n" not in doc:
            raise UsageError(f"{where}: missing field 'n'")
        terms = doc.get("terms")
        if not isinstance(terms, list):
            raise UsageError(f"{where}: field 'terms' must be a list")
        pairs = []
        for i, t in enumerate(terms):
            if not isinstance(t, dict) or "exp" not in t or "coeff" not in t:
                raise UsageError(f"{where}: terms[{i}] needs fields 'exp' and 'coeff'")
            pairs.append((t["exp"], t["coeff"]))
        return _build(doc["n"], pairs, where)

    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            key, sep, val = line.partition("=")
            if not sep or key.strip() != "n":
                raise UsageError(f"{where}:{lineno}: expected header 'n=<int>'")
            try:
                n = int(val)
            except ValueError:
                raise UsageError(f"{where}:{lineno}: field 'n' must be an integer") from None
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise UsageError(f"{where}:{lineno}: expected '<exp> <coeff>'")
        try:
            exp = int(parts[0])
        except ValueError:
            raise UsageError(f"{where}:{lineno}: field 'exp' must be an integer") from None
        pairs.append((exp, parts[1]))
    if n is None:
        raise UsageError(f"{where}: missing header 'n=<int>'")
    return _build(n, pairs, where)


def load_poly(path: str | Path) -> SparsePoly:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read poly file {path}: {exc.strerror}") from None
    return parse_poly_document(text, str(path))


def poly_to_document(p: SparsePoly) -> dict:
    return {"n": p.modulus, "terms": [{"exp": e, "coeff": format_elem(c)} for e, c in p.terms]}
