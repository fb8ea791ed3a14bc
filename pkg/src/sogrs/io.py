"""JSON export and import.  Elements are stored as discrete logs, -1 for zero."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

from sogrs.codes import LinearCode, Verdict
from sogrs.errors import ParseError
from sogrs.field import FieldContext, make_field
from sogrs.grs import CertificatePoly, GrsSpec, grs_code
from sogrs.linalg import MatrixGF
from sogrs.provenance import DerivationRecord

SCHEMA_VERSION = 1


def field_to_json(F: FieldContext) -> dict:
    return {"p": F.p, "h": F.h, "modulus": list(F.modulus), "generator": list(F.generator)}


def field_from_json(obj: dict) -> FieldContext:
    try:
        F = make_field(int(obj["p"]), int(obj["h"]), obj.get("modulus"))
    except KeyError as exc:
        raise ParseError(f"field descriptor lacks {exc.args[0]!r}") from None
    gen = obj.get("generator")
    if gen is not None and tuple(int(c) for c in gen) != F.generator:
        raise ParseError(f"field generator {gen} differs from the tabulated {list(F.generator)}")
    return F


def _log_rows(F: FieldContext, rows, shape_hint: str) -> np.ndarray:
    try:
        arr = np.asarray(rows, dtype=np.int64)
    except (TypeError, ValueError):
        raise ParseError(f"{shape_hint} must be integers") from None
    if arr.size and (arr.min() < -1 or arr.max() >= F.order):
        raise ParseError(f"{shape_hint} entries must lie in -1..{F.order - 1}")
    return arr


def code_to_json(C: LinearCode) -> dict:
    out = {"schema": SCHEMA_VERSION, "field": field_to_json(C.field), "n": C.n, "k": C.k,
           "generator": C.gen.to_list(), "provenance": C.provenance.to_json()}
    if C.mds_reason:
        out["mds_reason"] = C.mds_reason
    return out


def code_from_json(obj: dict) -> LinearCode:
    for key in ("field", "n", "k", "generator"):
        if key not in obj:
            raise ParseError(f"code JSON lacks {key!r}")
    F = field_from_json(obj["field"])
    n, k = int(obj["n"]), int(obj["k"])
    G = _log_rows(F, obj["generator"], "generator").reshape(k, n) if k else \
        np.empty((0, n), dtype=np.int64)
    if G.shape != (k, n):
        raise ParseError(f"generator shape {G.shape} does not match k={k}, n={n}")
    rec = DerivationRecord.from_json(obj.get("provenance"))
    return LinearCode(MatrixGF._wrap(F, G), rec, mds_reason=obj.get("mds_reason"))


def spec_to_json(spec: GrsSpec, cert: CertificatePoly | None = None) -> dict:
    out = {"schema": SCHEMA_VERSION, "field": field_to_json(spec.field),
           "extended": spec.extended, "k": spec.k,
           "locators": spec.locators.tolist(), "multipliers": spec.multipliers.tolist()}
    if cert is not None:
        out["certificate"] = {"lambda": int(cert.lam), "h": [int(c) for c in cert.coeffs]}
    return out


def spec_from_json(obj: dict) -> tuple[GrsSpec, CertificatePoly | None]:
    for key in ("field", "k", "locators", "multipliers"):
        if key not in obj:
            raise ParseError(f"GRS spec JSON lacks {key!r}")
    F = field_from_json(obj["field"])
    a = _log_rows(F, obj["locators"], "locators")
    v = _log_rows(F, obj["multipliers"], "multipliers")
    spec = GrsSpec(F, a, v, int(obj["k"]), bool(obj.get("extended", False)))
    cert = obj.get("certificate")
    if cert is None:
        return spec, None
    coeffs = tuple(int(c) for c in _log_rows(F, cert["h"], "certificate"))
    return spec, CertificatePoly(coeffs, int(cert.get("lambda", 0)))


def verdict_to_json(v: Verdict) -> dict:
    return v.to_json()


def verdict_from_json(obj: dict) -> Verdict:
    try:
        return Verdict(obj["claim"], obj["mode"], obj["result"], obj.get("witness"),
                       dict(obj.get("detail", {})))
    except KeyError as exc:
        raise ParseError(f"verdict JSON lacks {exc.args[0]!r}") from None


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=None, separators=(",", ":"), sort_keys=True)


def load_json(path: str | Path) -> dict:
    try:
        text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def write_json(obj: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def load_code(path: str | Path) -> LinearCode:
    """Read a code file; a GRS spec file is accepted too and expanded to its code."""
    obj = load_json(path)
    if "generator" in obj:
        return code_from_json(obj)
    if "locators" in obj:
        spec, _ = spec_from_json(obj)
        return with_generator_root(grs_code(spec))
    raise ParseError(f"{path}: neither a code nor a GRS spec")


def with_generator_root(C: LinearCode) -> LinearCode:
    """Give a code without a replayable root its own generator as the root."""
    if C.provenance.root:
        return C
    root = {"field": field_to_json(C.field), "generator": C.gen.to_list()}
    return C.with_provenance(DerivationRecord(root, C.provenance.steps))
