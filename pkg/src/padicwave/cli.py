"""Command-line front end.

Subcommands: haar, mask-from-zeros, scaling, verify, wavelet, frame-bounds,
transform.  Exit codes: 0 when the requested certification is positive, 2 on
a negative verdict (not refinable, no compact support, failed synthesis),
1 on usage or input errors.  Output is deterministic for fixed inputs and
flags; with --out DIR each payload lands in its own file, otherwise a single
JSON document goes to stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .config import RunConfig
from .errors import ParseError, PreconditionError
from .frames import DegenerateFamily, TranslateFamily, frame_bounds, multi_scale_bounds
from .gridfn import TestFunction, fourier, inverse_fourier
from .masks import SingularSystem, TrigPolynomial, haar_mask, mask_from_zeros
from .mra import NoCompactSupport, scaling_from_mask, verify_mra, zero_indices
from .padic import require_prime
from .serialize import (
    dumps,
    flatten_to_csv,
    frame_report_to_json,
    mask_from_json,
    mask_to_json,
    mra_report_to_json,
    rational_from_string,
    test_function_from_json,
    test_function_to_csv,
    test_function_to_json,
    wavelet_package_to_json,
)
from .wavelet import (
    NoWaveletMask,
    WaveletConstructionError,
    build_wavelet_package,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REFUTED = 2


class _NegativeVerdict(Exception):
    """Internal: the computation finished but the certification is negative."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors follow the 1 = error convention
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="padicwave", description=__doc__)
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--exact", action="store_true")
    common.add_argument("--max-support", type=int, default=20)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", type=Path, default=None, metavar="DIR")

    sub = parser.add_subparsers(dest="command", required=True)

    cmd = sub.add_parser("haar", parents=[common], help="full pipeline for the unit-coefficient mask")
    cmd.add_argument("--p", type=int, required=True)

    cmd = sub.add_parser("mask-from-zeros", parents=[common], help="interpolate a mask through prescribed zeros")
    cmd.add_argument("--p", type=int, required=True)
    cmd.add_argument("--degree", type=int, required=True)
    cmd.add_argument("--zeros", type=str, default="", help="comma-separated points, e.g. 1/2^2,3/2^3")

    cmd = sub.add_parser("scaling", parents=[common], help="scaling transform from a mask file")
    cmd.add_argument("--mask", type=Path, required=True)
    cmd.add_argument("--N", type=int, required=True, dest="n_exp")

    cmd = sub.add_parser("verify", parents=[common], help="MRA certification of a function file")
    cmd.add_argument("--input", type=Path, required=True)

    cmd = sub.add_parser("wavelet", parents=[common], help="wavelet synthesis from a mask file (p = 2)")
    cmd.add_argument("--mask", type=Path, required=True)
    cmd.add_argument("--N", type=int, default=None, dest="n_exp")

    cmd = sub.add_parser("frame-bounds", parents=[common], help="frame bounds of a translate family")
    cmd.add_argument("--psi", type=Path, required=True)
    cmd.add_argument("--radius", type=int, required=True)
    cmd.add_argument("--scales", type=str, default=None, metavar="JMIN:JMAX")

    cmd = sub.add_parser("transform", parents=[common], help="Fourier transform of a function file")
    cmd.add_argument("--input", type=Path, required=True)
    cmd.add_argument("--inverse", action="store_true")
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        tol=args.tol,
        max_support=args.max_support,
        seed=args.seed,
        exact=args.exact,
        output_format=args.format,
    )


def _load_json(path: Path) -> dict:
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as bad:
        raise ParseError(f"cannot read {path}: {bad}") from bad


def _load_function(path: Path) -> TestFunction:
    obj = _load_json(path)
    if "values" not in obj and "psi" in obj:  # accept a wavelet package file
        obj = obj["psi"]
    return test_function_from_json(obj)


def _emit(payloads: dict[str, dict | str], config: RunConfig, out_dir: Path | None) -> None:
    """Write named payloads; strings are preformatted (CSV), dicts are JSON."""
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, payload in payloads.items():
            if isinstance(payload, str):
                (out_dir / f"{name}.csv").write_text(payload)
            else:
                (out_dir / f"{name}.json").write_text(dumps(payload))
        return
    if config.output_format == "csv":
        parts = []
        for name, payload in payloads.items():
            body = payload if isinstance(payload, str) else flatten_to_csv(payload)
            parts.append(f"# {name}\n{body}")
        sys.stdout.write("\n".join(parts))
        return
    doc = {"config": config.as_dict()}
    doc.update({k: v for k, v in payloads.items() if not isinstance(v, str)})
    sys.stdout.write(dumps(doc))


def _function_payload(f: TestFunction, config: RunConfig):
    if config.output_format == "csv":
        return test_function_to_csv(f)
    return test_function_to_json(f)


def _cmd_haar(args, config: RunConfig) -> dict:
    require_prime(args.p)
    m0 = haar_mask(args.p)
    phi_hat, _ = scaling_from_mask(
        m0, 0, max_support=config.max_support, tol=config.tol, exact=config.exact
    )
    phi = inverse_fourier(phi_hat)
    report = verify_mra(phi, config.tol, exact_mask=m0 if config.exact else None)
    payloads: dict = {
        "mask": mask_to_json(m0),
        "phi_hat": _function_payload(phi_hat, config),
        "mra_report": mra_report_to_json(report, config),
    }
    good = report.is_mra and report.orthonormal_gram
    if args.p == 2:
        pkg = build_wavelet_package(m0, 0, seed=config.seed, tol=config.tol)
        family = TranslateFamily(pkg.psi, 0, max(pkg.psi.grid.support_exp, 0) + 2)
        frame = frame_bounds(family, config.tol)
        payloads["wavelet_package"] = wavelet_package_to_json(pkg, config)
        payloads["frame_report"] = frame_report_to_json(frame, config)
        good = good and pkg.complement_ok and pkg.spanning_ok
    if not good:
        raise _NegativeVerdict(payloads)
    return payloads


def _cmd_mask_from_zeros(args, config: RunConfig) -> dict:
    require_prime(args.p)
    zeros = [
        rational_from_string(tok, args.p)
        for tok in args.zeros.split(",")
        if tok.strip()
    ]
    mask = mask_from_zeros(args.p, args.degree, zeros)
    return {"mask": mask_to_json(mask)}


def _cmd_scaling(args, config: RunConfig) -> dict:
    mask = mask_from_json(_load_json(args.mask))
    phi_hat, support_exp = scaling_from_mask(
        mask, args.n_exp, max_support=config.max_support, tol=config.tol, exact=config.exact
    )
    zidx = zero_indices(phi_hat, config.tol, mask if config.exact else None)
    report = {
        "config": config.as_dict(),
        "support_exp": support_exp,
        "zero_index_set": list(zidx),
        "zero_count": len(zidx),
        "threshold": phi_hat.grid.size - mask.p**args.n_exp,
    }
    return {"phi_hat": _function_payload(phi_hat, config), "scaling_report": report}


def _cmd_verify(args, config: RunConfig) -> dict:
    phi = _load_function(args.input)
    report = verify_mra(phi, config.tol)
    payloads = {"mra_report": mra_report_to_json(report, config)}
    if not report.is_mra:
        raise _NegativeVerdict(payloads)
    return payloads


def _infer_n_exp(mask: TrigPolynomial) -> int:
    deg = mask.degree
    return max(0, math.ceil(math.log2(deg))) if deg > 0 else 0


def _cmd_wavelet(args, config: RunConfig) -> dict:
    mask = mask_from_json(_load_json(args.mask))
    n_exp = args.n_exp if args.n_exp is not None else _infer_n_exp(mask)
    pkg = build_wavelet_package(
        mask, n_exp, seed=config.seed, tol=config.tol, max_support=config.max_support
    )
    return {"wavelet_package": wavelet_package_to_json(pkg, config)}


def _cmd_frame_bounds(args, config: RunConfig) -> dict:
    psi = _load_function(args.psi)
    if args.scales is None:
        report = frame_bounds(TranslateFamily(psi, 0, args.radius), config.tol)
    else:
        try:
            j_min, j_max = (int(tok) for tok in args.scales.split(":"))
        except ValueError as bad:
            raise ParseError(f"bad --scales {args.scales!r}") from bad
        report = multi_scale_bounds(psi, j_min, j_max, args.radius, config.tol)
    return {"frame_report": frame_report_to_json(report, config)}


def _cmd_transform(args, config: RunConfig) -> dict:
    f = _load_function(args.input)
    out = inverse_fourier(f) if args.inverse else fourier(f)
    return {"transform": _function_payload(out, config)}


_COMMANDS = {
    "haar": _cmd_haar,
    "mask-from-zeros": _cmd_mask_from_zeros,
    "scaling": _cmd_scaling,
    "verify": _cmd_verify,
    "wavelet": _cmd_wavelet,
    "frame-bounds": _cmd_frame_bounds,
    "transform": _cmd_transform,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config(args)
    except (ParseError, ValueError) as bad:
        sys.stderr.write(f"error: {bad}\n")
        return EXIT_ERROR
    try:
        payloads = _COMMANDS[args.command](args, config)
    except _NegativeVerdict as verdict:
        _emit(verdict.args[0], config, args.out)
        return EXIT_REFUTED
    except (NoCompactSupport, SingularSystem, NoWaveletMask, WaveletConstructionError, DegenerateFamily) as refuted:
        sys.stderr.write(f"refuted: {refuted}\n")
        return EXIT_REFUTED
    except (ParseError, PreconditionError, ValueError, OSError) as bad:
        sys.stderr.write(f"error: {bad}\n")
        return EXIT_ERROR
    _emit(payloads, config, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
