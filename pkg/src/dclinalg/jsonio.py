"""JSON encoding and decoding of scalars, matrices, and results.

Wire formats (all numbers finite doubles):

    scalar   [[re_st, im_st], [re_inf, im_inf]]
    matrix   {"rows": m, "cols": n,
              "standard": [[[re, im], ...row...], ...],      # row-major
              "infinitesimal": [[[re, im], ...], ...]}
    eigen    {"type": "eig", "matrix": M, "pairs": [...], "complex_pairs": [...]}
             with pairs of {"value": scalar, "vector": matrix, "residual": [r_st, r_inf]}
    spectral {"type": "spectral", "matrix": M, "U": matrix, "residual": [...],
              "blocks": [{"kind": "Eigen"|"Sub", "lambda": x, "mu": [re, im], "mu_abs": x}]}
    svd      {"type": "svd", "matrix": M, "U": matrix, "V": matrix,
              "standard_blocks": [{"sigma": x, "nu": [re, im]}],
              "infinitesimal_values": [...], "r": r, "p": p, "residual": [...]}

Result documents embed the input matrix so that a verification pass needs
no second file.
"""

from __future__ import annotations

import math

import numpy as np

from .eig import RightEigenPair
from .matrix import DCMatrix
from .scalar import DualComplex
from .spectral import SpectralBlock, SpectralDecomposition
from .svd import SingularBlock, SvdResult


class SchemaError(ValueError):
    """The document does not match the expected wire format."""


def _num(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise SchemaError(f"{where}: numbers must be finite, got {value!r}")
    return value


def _pair(value, where: str) -> complex:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SchemaError(f"{where}: expected [re, im]")
    return complex(_num(value[0], where), _num(value[1], where))


def _field(doc, key: str, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"{where}: missing field {key!r}")
    return doc[key]


def encode_scalar(q: DualComplex) -> list:
    return [[q.standard.real, q.standard.imag],
            [q.infinitesimal.real, q.infinitesimal.imag]]


def decode_scalar(obj) -> DualComplex:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise SchemaError("scalar: expected [[re_st, im_st], [re_inf, im_inf]]")
    return DualComplex(_pair(obj[0], "scalar"), _pair(obj[1], "scalar"))


def _encode_part(part: np.ndarray) -> list:
    return [[[z.real, z.imag] for z in row] for row in part]


def _decode_part(obj, m: int, n: int, where: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != m:
        raise SchemaError(f"{where}: expected {m} rows")
    out = np.zeros((m, n), dtype=complex)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"{where}: row {i} must have {n} entries")
        for j, entry in enumerate(row):
            out[i, j] = _pair(entry, f"{where}[{i}][{j}]")
    return out


def encode_matrix(a: DCMatrix) -> dict:
    return {
        "rows": a.rows,
        "cols": a.cols,
        "standard": _encode_part(a.standard),
        "infinitesimal": _encode_part(a.infinitesimal),
    }


def decode_matrix(obj) -> DCMatrix:
    m = _field(obj, "rows", "matrix")
    n = _field(obj, "cols", "matrix")
    if not isinstance(m, int) or not isinstance(n, int) or m < 1 or n < 1:
        raise SchemaError("matrix: rows and cols must be positive integers")
    st = _decode_part(_field(obj, "standard", "matrix"), m, n, "standard")
    inf = _decode_part(_field(obj, "infinitesimal", "matrix"), m, n, "infinitesimal")
    return DCMatrix(st, inf)


def _encode_residual(residual) -> list:
    return [float(residual[0]), float(residual[1])]


def _decode_residual(obj, where: str) -> tuple[float, float]:
    if not isinstance(obj, list) or len(obj) != 2:
        raise SchemaError(f"{where}: residual must be [r_st, r_inf]")
    return (_num(obj[0], where), _num(obj[1], where))


def encode_eigenpair(pair: RightEigenPair) -> dict:
    doc = {
        "value": encode_scalar(pair.value),
        "vector": encode_matrix(pair.vector),
        "residual": _encode_residual(pair.residual),
    }
    if pair.warning:
        doc["warning"] = pair.warning
    return doc


def decode_eigenpair(obj) -> RightEigenPair:
    value = decode_scalar(_field(obj, "value", "pair"))
    vector = decode_matrix(_field(obj, "vector", "pair"))
    residual = _decode_residual(_field(obj, "residual", "pair"), "pair")
    warning = obj.get("warning")
    if warning is not None and not isinstance(warning, str):
        raise SchemaError("pair: warning must be a string")
    return RightEigenPair(value, vector, residual, warning)


def encode_eig_result(a: DCMatrix, pairs, complex_pairs) -> dict:
    return {
        "type": "eig",
        "matrix": encode_matrix(a),
        "pairs": [encode_eigenpair(p) for p in pairs],
        "complex_pairs": [encode_eigenpair(p) for p in complex_pairs],
    }


def encode_spectral(a: DCMatrix, dec: SpectralDecomposition) -> dict:
    blocks = []
    for b in dec.blocks:
        entry = {"kind": b.kind, "lambda": b.lam}
        if b.kind == "Sub":
            entry["mu"] = [b.mu.real, b.mu.imag]
            entry["mu_abs"] = abs(b.mu)
        blocks.append(entry)
    return {
        "type": "spectral",
        "matrix": encode_matrix(a),
        "U": encode_matrix(dec.U),
        "blocks": blocks,
        "residual": _encode_residual(dec.residual),
    }


def decode_spectral(doc) -> tuple[DCMatrix, SpectralDecomposition]:
    a = decode_matrix(_field(doc, "matrix", "spectral"))
    u = decode_matrix(_field(doc, "U", "spectral"))
    raw = _field(doc, "blocks", "spectral")
    if not isinstance(raw, list):
        raise SchemaError("spectral: blocks must be a list")
    blocks = []
    for i, entry in enumerate(raw):
        kind = _field(entry, "kind", f"blocks[{i}]")
        lam = _num(_field(entry, "lambda", f"blocks[{i}]"), f"blocks[{i}].lambda")
        if kind == "Eigen":
            blocks.append(SpectralBlock("Eigen", lam))
        elif kind == "Sub":
            mu = _pair(_field(entry, "mu", f"blocks[{i}]"), f"blocks[{i}].mu")
            blocks.append(SpectralBlock("Sub", lam, mu))
        else:
            raise SchemaError(f"blocks[{i}]: unknown kind {kind!r}")
    residual = _decode_residual(_field(doc, "residual", "spectral"), "spectral")
    return a, SpectralDecomposition(u, tuple(blocks), residual)


def encode_svd(a: DCMatrix, res: SvdResult) -> dict:
    blocks = []
    for b in res.standard_blocks:
        entry = {"sigma": b.sigma}
        if b.nu is not None:
            entry["nu"] = [b.nu.real, b.nu.imag]
        blocks.append(entry)
    return {
        "type": "svd",
        "matrix": encode_matrix(a),
        "U": encode_matrix(res.U),
        "V": encode_matrix(res.V),
        "standard_blocks": blocks,
        "infinitesimal_values": list(res.infinitesimal_values),
        "r": res.standard_rank,
        "p": res.infinitesimal_rank,
        "residual": _encode_residual(res.residual),
    }


def decode_svd(doc) -> tuple[DCMatrix, SvdResult]:
    a = decode_matrix(_field(doc, "matrix", "svd"))
    u = decode_matrix(_field(doc, "U", "svd"))
    v = decode_matrix(_field(doc, "V", "svd"))
    raw = _field(doc, "standard_blocks", "svd")
    if not isinstance(raw, list):
        raise SchemaError("svd: standard_blocks must be a list")
    blocks = []
    for i, entry in enumerate(raw):
        sigma = _num(_field(entry, "sigma", f"standard_blocks[{i}]"),
                     f"standard_blocks[{i}].sigma")
        nu = None
        if isinstance(entry, dict) and "nu" in entry:
            nu = _pair(entry["nu"], f"standard_blocks[{i}].nu")
        blocks.append(SingularBlock(sigma, nu))
    raw_vals = _field(doc, "infinitesimal_values", "svd")
    if not isinstance(raw_vals, list):
        raise SchemaError("svd: infinitesimal_values must be a list")
    inf_vals = tuple(_num(x, f"infinitesimal_values[{i}]") for i, x in enumerate(raw_vals))
    r = _field(doc, "r", "svd")
    p = _field(doc, "p", "svd")
    if not isinstance(r, int) or not isinstance(p, int):
        raise SchemaError("svd: r and p must be integers")
    residual = _decode_residual(_field(doc, "residual", "svd"), "svd")
    return a, SvdResult(u, v, tuple(blocks), inf_vals, r, p, residual)


def decode_eig_result(doc) -> tuple[DCMatrix, list, list]:
    a = decode_matrix(_field(doc, "matrix", "eig"))
    raw = _field(doc, "pairs", "eig")
    raw_c = _field(doc, "complex_pairs", "eig")
    if not isinstance(raw, list) or not isinstance(raw_c, list):
        raise SchemaError("eig: pairs and complex_pairs must be lists")
    return a, [decode_eigenpair(p) for p in raw], [decode_eigenpair(p) for p in raw_c]
