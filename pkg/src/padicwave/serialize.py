"""JSON and CSV encodings for every artifact the toolkit emits.

Conventions: rationals are strings "u*p^e" or "l/p^s" (both accepted on
input), complex numbers are [re, im] pairs, every grid carries an explicit
(p, support_exp, constancy_exp), and reports embed the RunConfig that
produced them.  Serialization is deterministic (sorted keys) so identical
inputs give byte-identical artifacts.
"""

from __future__ import annotations

import io
import json

import numpy as np

from .config import RunConfig
from .errors import ParseError
from .frames import FrameReport
from .gridfn import CosetGrid, TestFunction
from .masks import TrigPolynomial
from .mra import MraReport
from .padic import PAdicRational, RootOfUnity
from .wavelet import ResultantSystem, WaveletPackage


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _pairs(vec) -> list[list[float]]:
    return [_pair(z) for z in np.asarray(vec)]


def _unpair(pair) -> complex:
    try:
        re, im = pair
        return complex(float(re), float(im))
    except (TypeError, ValueError) as bad:
        raise ParseError(f"expected [re, im], got {pair!r}") from bad


def rational_to_string(x: PAdicRational) -> str:
    return x.to_string()


def rational_from_string(text: str, p: int | None = None) -> PAdicRational:
    try:
        return PAdicRational.from_string(text, p)
    except ValueError as bad:
        raise ParseError(str(bad)) from bad


def root_of_unity_to_json(r: RootOfUnity) -> dict:
    return {"n": r.n, "s": r.s}


def root_of_unity_from_json(obj: dict, p: int) -> RootOfUnity:
    try:
        return RootOfUnity.make(p, int(obj["n"]), int(obj["s"]))
    except (KeyError, TypeError, ValueError) as bad:
        raise ParseError(f"bad root of unity {obj!r}") from bad


def test_function_to_json(f: TestFunction) -> dict:
    return {
        "p": f.grid.p,
        "support_exp": f.grid.support_exp,
        "constancy_exp": f.grid.constancy_exp,
        "values": _pairs(f.values),
    }


def test_function_from_json(obj: dict) -> TestFunction:
    try:
        grid = CosetGrid(int(obj["p"]), int(obj["support_exp"]), int(obj["constancy_exp"]))
        values = np.array([_unpair(v) for v in obj["values"]])
    except (KeyError, TypeError, ValueError) as bad:
        raise ParseError(f"bad test function: {bad}") from bad
    if len(values) != grid.size:
        raise ParseError(f"expected {grid.size} values, got {len(values)}")
    return TestFunction(grid, values)


def test_function_to_csv(f: TestFunction) -> str:
    out = io.StringIO()
    out.write("node,re,im\n")
    n_exp = f.grid.support_exp
    for j in range(f.grid.size):
        z = f.values[j]
        # uniform node label j/p^N; canonical form only when N < 0
        label = f"{j}/{f.grid.p}^{n_exp}" if n_exp >= 0 else str(f.grid.node(j))
        out.write(f"{label},{z.real!r},{z.imag!r}\n")
    return out.getvalue()


def mask_to_json(m: TrigPolynomial) -> dict:
    return {"p": m.p, "coeffs": _pairs(m.coeffs)}


def mask_from_json(obj: dict) -> TrigPolynomial:
    try:
        coeffs = [_unpair(c) for c in obj["coeffs"]]
        return TrigPolynomial(int(obj["p"]), np.array(coeffs))
    except (KeyError, TypeError, ValueError) as bad:
        raise ParseError(f"bad mask: {bad}") from bad


def mra_report_to_json(report: MraReport, config: RunConfig) -> dict:
    return {
        "config": config.as_dict(),
        "p": report.p,
        "support_exp": report.support_exp,
        "constancy_exp": report.constancy_exp,
        "refinable": report.refinable,
        "extracted_mask": None
        if report.extracted_mask is None
        else mask_to_json(report.extracted_mask),
        "residual": report.residual,
        "zero_count": report.zero_count,
        "zero_index_set": list(report.zero_index_set),
        "threshold": report.threshold,
        "phi_hat_at_zero": _pair(report.phi_hat_at_zero),
        "is_mra": report.is_mra,
        "orthonormal_gram": report.orthonormal_gram,
        "orthonormal_spectral": report.orthonormal_spectral,
        "phi_hat_support_exp": report.phi_hat_support_exp,
        "tested_sphere_points": [
            {"point": pt, "abs_value": v} for pt, v in report.sphere_checks
        ],
        "tol": report.tol,
        "refine_tol": report.refine_tol,
    }


def resultant_system_to_json(system: ResultantSystem) -> dict:
    return {
        "size": system.size,
        "g_row": _pairs(system.g_row),
        "h_row": _pairs(system.h_row),
        "matrix": [_pairs(row) for row in system.matrix],
        "det": _pair(system.det),
    }


def wavelet_package_to_json(pkg: WaveletPackage, config: RunConfig) -> dict:
    return {
        "config": config.as_dict(),
        "scaling_mask": mask_to_json(pkg.m0),
        "wavelet_mask": mask_to_json(pkg.n0),
        "psi": test_function_to_json(pkg.psi),
        "psi_hat": test_function_to_json(pkg.psi_hat),
        "resultant_system": resultant_system_to_json(pkg.system),
        "complement_ok": pkg.complement_ok,
        "spanning_ok": pkg.spanning_ok,
        "seed": pkg.seed,
    }


def frame_report_to_json(report: FrameReport, config: RunConfig) -> dict:
    return {
        "config": config.as_dict(),
        "gram_eigenvalues": list(report.gram_eigenvalues),
        "rank": report.rank,
        "lower_bound": report.lower_bound,
        "upper_bound": report.upper_bound,
        "block_orthogonal": report.block_orthogonal,
        "stable_under_radius_growth": report.stable_under_radius_growth,
    }


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def flatten_to_csv(obj: dict) -> str:
    """Key,value rows for report payloads; nested values are JSON-encoded."""
    out = io.StringIO()
    out.write("key,value\n")
    for key in sorted(obj):
        val = obj[key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        out.write(f"{key},{json.dumps(val) if isinstance(val, str) else val}\n")
    return out.getvalue()
