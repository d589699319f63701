"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 a conditioning hypothesis failed
(``NotATest``, ``MarginalNotInvertible``, ``DegenerateEffect``,
``TriangleMismatch``); the error name is written into the report.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, bomb, serialize as ser
from .classical import condition, condition_ntest, verify_triangle
from .cstar import INV_TOL, TOL_POS, PUMap, center
from .dist import label_key
from .errors import CatprobError, TriangleMismatch, ValidationFailure
from .models import country_model, hair_model
from .quantum import TOL_TRIANGLE, condition_param, verify_triangle_q

SUBCOMMANDS = ("examples", "classical-condition", "quantum-condition", "verify", "bomb")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    input_path: Path | None = None
    example: str | None = None
    ntest: bool = False
    probes: int | None = None
    seed: int = 0
    tol: float = TOL_POS
    inv_tol: float = INV_TOL
    tol_triangle: float = TOL_TRIANGLE
    output: Path | None = None
    format: str = "json"


class Report(dict):
    """JSON body plus the lines used for ``--format text``."""

    def __init__(self, command: str, body: dict, text: list[str]):
        super().__init__(ser.envelope(command, body))
        self.text = text


# --- classical -------------------------------------------------------------------

def _classical_report(command: str, f, phi, title: str | None = None) -> Report:
    r = condition(f, phi)
    ok = verify_triangle(r)
    body = {"result": ser.conditioning_to_json(r), "triangle_commutes": ok}
    text = [title] if title else []
    text += [
        f"joint       : {r.joint!r}",
        f"marginal    : {r.marginal!r}",
        f"f|φ         : {r.cond_true!r}",
        f"f|φ⊥        : {r.cond_false!r}",
        f"triangle    : {'commutes' if ok else 'DOES NOT COMMUTE'}",
    ]
    if r.degenerate_points:
        text.append("degenerate  : " + ", ".join(sorted(map(label_key, r.degenerate_points))))
    return Report(command, body, text)


def _load_json(path: Path | None):
    if path is None:
        raise ser.SchemaError("an input file is required")
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _classical_condition(cfg: RunConfig) -> Report:
    obj = _load_json(cfg.input_path)
    try:
        f = ser.kleisli_from_json(obj["model"])
    except KeyError:
        raise ser.SchemaError("model file needs a 'model' entry") from None
    from .dist import tensor
    carrier = tensor(f.source, f.target)
    if not cfg.ntest:
        if "predicate" not in obj:
            raise ser.SchemaError("model file needs a 'predicate' entry (or use --ntest)")
        phi = ser.predicate_from_json(obj["predicate"], carrier)
        return _classical_report("classical-condition", f, phi)
    if "predicates" not in obj:
        raise ser.SchemaError("--ntest needs a 'predicates' list")
    phis = [ser.predicate_from_json(p, carrier) for p in obj["predicates"]]
    conds = condition_ntest(f, phis)
    body = {"conditionals": [ser.kleisli_to_json(c) for c in conds]}
    text = [f"f|φ{i} : {c!r}" for i, c in enumerate(conds, 1)]
    return Report("classical-condition", body, text)


# --- quantum ---------------------------------------------------------------------

def _quantum_condition(cfg: RunConfig) -> Report:
    obj = _load_json(cfg.input_path)
    try:
        a = ser.shape_from_json(obj["A"])
        b = ser.shape_from_json(obj["B"])
        fobj = obj["f"]
        e_obj = obj["e"]
    except KeyError as exc:
        raise ser.SchemaError(f"scenario is missing {exc.args[0]!r}") from None
    z, _ = center(a)
    if isinstance(fobj, dict):
        f = ser.pumap_from_json(fobj)
    else:
        f = PUMap(b, z, ser.matrix_from_json(fobj))
    from .cstar import tensor
    e = ser.element_from_json(e_obj, tensor(a, b))
    probes = cfg.probes if cfg.probes is not None else int(obj.get("probes", 16))
    seed = cfg.seed if cfg.seed is not None else int(obj.get("seed", 0))
    rng = np.random.default_rng(seed)
    r = condition_param(a, f, e, tol=cfg.tol, inv_tol=cfg.inv_tol, probes=probes, rng=rng)
    body = {"A": list(a.block_dims), "B": list(b.block_dims), "probes": probes,
            "seed": seed, "result": ser.qconditioning_to_json(r),
            "triangle_ok": r.residual <= cfg.tol_triangle}
    text = [
        f"A = {a!r}, B = {b!r}, probes = {probes}, seed = {seed}",
        "marginal spectrum : " + str(ser.spectrum(r.marginal_effect.element)),
        f"triangle residual : {r.residual:.3e}",
        "f|e  matrix:", *_matrix_lines(r.cond_true.matrix),
        "f|e⊥ matrix:", *_matrix_lines(r.cond_false.matrix),
    ]
    return Report("quantum-condition", body, text)


def _matrix_lines(m) -> list[str]:
    def fmt(z):
        z = complex(z)
        re, im = ser.round_float(z.real), ser.round_float(z.imag)
        return f"{re:+.6f}{im:+.6f}j"
    return ["  " + " ".join(fmt(z) for z in row) for row in np.asarray(m)]


def _verify(cfg: RunConfig) -> Report:
    obj = _load_json(cfg.input_path)
    res = obj.get("result", obj)
    kind = res.get("kind")
    if kind == "classical":
        ok = verify_triangle(ser.conditioning_from_json(res))
        body = {"kind": kind, "triangle_commutes": ok}
        text = [f"triangle {'commutes' if ok else 'does NOT commute'} (exact)"]
    elif kind == "quantum":
        probes = cfg.probes if cfg.probes is not None else 16
        residual = verify_triangle_q(ser.qconditioning_from_json(res), probes,
                                     np.random.default_rng(cfg.seed))
        ok = residual <= cfg.tol_triangle
        body = {"kind": kind, "residual": float(f"{residual:.3e}"), "probes": probes,
                "triangle_commutes": ok}
        text = [f"triangle residual {residual:.3e} ({'ok' if ok else 'FAIL'}, "
                f"tolerance {cfg.tol_triangle:g})"]
    else:
        raise ser.SchemaError("result must have kind 'classical' or 'quantum'")
    if not ok:
        raise TriangleMismatch(text[0])
    return Report("verify", body, text)


# --- bomb ------------------------------------------------------------------------

def _bomb(command: str) -> Report:
    rep = bomb.run_bomb_tester()
    stages = []
    text = ["Elitzur–Vaidman bomb tester on C({L,D}) ⊗ M3 ⊗ M2 (dim 72)",
            "basis per branch: " + " ".join(bomb.BASIS_LABELS)]
    for name, st in zip(bomb.STAGE_NAMES, rep.states):
        entry = {"stage": name, "branches": []}
        text.append(f"after {name}:")
        for br in bomb.branches(st):
            vec = None if br.vector is None else [ser.complex_to_json(z) for z in br.vector]
            entry["branches"].append({"env": br.label, "weight": ser.round_float(br.weight),
                                      "vector": vec})
            if br.vector is None:
                text.append(f"  {br.label}: weight {br.weight:.6g}, mixed")
            else:
                amps = " + ".join(f"{ser.round_float(z.real):.6g}|{lab}⟩"
                                  for z, lab in zip(br.vector, bomb.BASIS_LABELS) if abs(z) > 0)
                text.append(f"  {br.label}: weight {ser.round_float(br.weight):.6g}, {amps}")
        stages.append(entry)
    body = {
        "p_detect": ser.round_float(rep.p_detect),
        "p_dud_given_detect": ser.round_float(rep.p_dud_given_detect),
        "p_dud_given_not_detect": ser.round_float(rep.p_dud_given_not_detect),
        "outcome_probabilities": {k: ser.round_float(v)
                                  for k, v in rep.outcome_probabilities.items()},
        "stages": stages,
    }
    text += [
        f"p_detect = {body['p_detect']!r}",
        f"p_dud_given_detect = {body['p_dud_given_detect']!r}",
        f"p_dud_given_not_detect = {body['p_dud_given_not_detect']!r}",
    ]
    return Report(command, body, text)


def _examples(cfg: RunConfig) -> Report:
    if cfg.example == "hair":
        f, phi = hair_model()
        return _classical_report("examples hair", f, phi, "gender / long hair, X = 1")
    if cfg.example == "country":
        f, phi = country_model()
        return _classical_report("examples country", f, phi, "two countries, X = {A, B}")
    if cfg.example == "bomb":
        return _bomb("examples bomb")
    raise ser.SchemaError(f"unknown example {cfg.example!r}")


def run(cfg: RunConfig) -> tuple[int, Report | None]:
    """Execute one invocation; returns ``(exit code, report)``."""
    handlers = {
        "examples": _examples,
        "classical-condition": _classical_condition,
        "quantum-condition": _quantum_condition,
        "verify": _verify,
        "bomb": lambda c: _bomb("bomb"),
    }
    try:
        return 0, handlers[cfg.subcommand](cfg)
    except ValidationFailure as exc:
        name = type(exc).__name__
        return 2, Report(cfg.subcommand, {"error": name, "message": str(exc)},
                         [f"error: {name}: {exc}"])
    except (OSError, json.JSONDecodeError, ser.SchemaError, CatprobError,
            ValueError, KeyError, TypeError) as exc:
        print(f"catprob: malformed input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1, None


def render(report: Report, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(report.text) + "\n"
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def d(v):
        return argparse.SUPPRESS if suppress else v
    parser.add_argument("--seed", type=int, default=d(None),
                        help="RNG seed for randomized probes (default 0)")
    parser.add_argument("--format", choices=("json", "text"), default=d("json"))
    parser.add_argument("--out", type=Path, default=d(None), help="write the report here")
    parser.add_argument("--tol", type=float, default=d(TOL_POS), help="positivity tolerance")
    parser.add_argument("--inv-tol", type=float, default=d(INV_TOL),
                        help="smallest eigenvalue treated as invertible")
    parser.add_argument("--tol-triangle", type=float, default=d(TOL_TRIANGLE))


class _Parser(argparse.ArgumentParser):
    # usage errors are malformed input; exit code 2 is kept for validation failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="catprob", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(p, suppress=False)
    common = _Parser(add_help=False)
    _global_options(common, suppress=True)
    sub = p.add_subparsers(dest="subcommand", required=True)

    ex = sub.add_parser("examples", parents=[common], help="run a worked example")
    ex.add_argument("example", choices=("hair", "country", "bomb"))

    cc = sub.add_parser("classical-condition", parents=[common],
                        help="condition a Kleisli map on a predicate")
    cc.add_argument("--model", type=Path, required=True)
    cc.add_argument("--ntest", action="store_true",
                    help="read a list of 'predicates' forming an n-test")

    qc = sub.add_parser("quantum-condition", parents=[common],
                        help="condition f: B → Z(A) on an effect on A ⊗ B")
    qc.add_argument("--scenario", type=Path, required=True)
    qc.add_argument("--probes", type=int, default=None)

    vf = sub.add_parser("verify", parents=[common], help="re-check a stored result")
    vf.add_argument("--result", type=Path, required=True)
    vf.add_argument("--probes", type=int, default=None)

    sub.add_parser("bomb", parents=[common], help="run the bomb tester")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    path = getattr(args, "model", None) or getattr(args, "scenario", None) \
        or getattr(args, "result", None)
    seed = args.seed
    if seed is None and args.subcommand != "quantum-condition":
        seed = 0
    return RunConfig(
        subcommand=args.subcommand,
        input_path=path,
        example=getattr(args, "example", None),
        ntest=getattr(args, "ntest", False),
        probes=getattr(args, "probes", None),
        seed=seed,
        tol=args.tol,
        inv_tol=args.inv_tol,
        tol_triangle=args.tol_triangle,
        output=args.out,
        format=args.format,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    code, report = run(cfg)
    if report is not None:
        out = render(report, cfg.format)
        if cfg.output is not None:
            cfg.output.write_text(out, encoding="utf-8")
        else:
            sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
