"""Command-line front end.

Subcommands mirror the library operations; all inputs and outputs are the
JSON documents described in the README.  ``verify-ne`` exits 0 when the
profile is an equilibrium and 1 with a witness manipulation otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import (
    InputError,
    Instance,
    StrategicPairs,
    load_instance,
    load_matching,
    load_pairs,
    load_profile,
    serialize_instance,
)
from .da import da_on_profile, run_da
from .dynamics import (
    first_accomplice_deviation,
    first_woman_deviation,
    run_inconspicuous_dynamics,
    run_pushup_dynamics,
    trace_to_dict,
    verify_ne_one_for_many,
)
from .gen import derive_rng, generate_instance
from .harness import (
    EquilibriumCheckError,
    ExperimentConfig,
    run_experiment,
    write_csv,
)
from .manipulation import (
    ManipulationResult,
    find_accomplice_manipulation,
    find_one_for_many_manipulation,
    one_for_many_to_accomplice,
)
from .stability import blocking_pairs, is_x_stable


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(doc: dict) -> None:
    print(json.dumps(doc))


def _manipulation_doc(res: ManipulationResult) -> dict:
    doc: dict = {"found": res.found, "manipulator": res.manipulator}
    if res.found:
        assert res.new_list is not None and res.resulting_matching is not None
        doc.update(
            new_list=list(res.new_list.order),
            promoted=res.promoted,
            beneficiary_gain=res.beneficiary_gain,
            matching=list(res.resulting_matching.man_to_woman),
        )
    return doc


def _load_beneficiaries(text: str) -> tuple[list[int], dict[int, list[int]]]:
    doc = json.loads(text)
    by_m = {int(m): [int(w) for w in ws] for m, ws in doc["beneficiaries"].items()}
    pm = [int(m) for m in doc.get("men", sorted(by_m))]
    return pm, by_m


def _cmd_da(args: argparse.Namespace) -> int:
    inst = load_instance(_read(args.instance))
    if args.profile:
        mu = da_on_profile(load_profile(_read(args.profile), inst))
    else:
        mu = run_da(inst.men, inst.women)
    _emit({"matching": list(mu.man_to_woman)})
    return 0


def _cmd_stability(args: argparse.Namespace) -> int:
    inst = load_instance(_read(args.instance))
    mu = load_matching(_read(args.matching))
    report = blocking_pairs(inst, mu)
    doc = {"blocking_pairs": sorted(list(p) for p in report.blocking), "nsp": report.nsp}
    if args.pairs:
        x = load_pairs(_read(args.pairs), n=inst.n)
        doc["x_stable"] = is_x_stable(inst, mu, x)
    _emit(doc)
    return 0


def _cmd_manipulate(args: argparse.Namespace) -> int:
    inst = load_instance(_read(args.instance))
    sp = load_profile(_read(args.profile), inst)
    m, w = (int(v) for v in args.pair.split(","))
    res = find_accomplice_manipulation(sp, (m, w), mode=args.mode)
    _emit(_manipulation_doc(res))
    return 0


def _cmd_dynamics(args: argparse.Namespace) -> int:
    inst = load_instance(_read(args.instance))
    text = _read(args.pairs)
    if args.game == "woman":
        women = [int(w) for w in json.loads(text)["women"]]
        trace = run_inconspicuous_dynamics(inst, women, policy=args.policy, seed=args.seed)
    elif args.game == "one-for-many":
        pm, by_m = _load_beneficiaries(text)
        pairs = one_for_many_to_accomplice(pm, by_m)
        trace = run_pushup_dynamics(inst, pairs, policy=args.policy, seed=args.seed)
        if not verify_ne_one_for_many(trace.fixed_point, pm, by_m):
            raise EquilibriumCheckError(
                "reduced-game fixed point is not a one-for-many equilibrium"
            )
    else:
        pairs = load_pairs(text, n=inst.n)
        trace = run_pushup_dynamics(inst, pairs, policy=args.policy, seed=args.seed)
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace_to_dict(trace)))
    report = blocking_pairs(inst, trace.final_matching)
    _emit(
        {
            "converged_at": trace.converged_at,
            "matching": list(trace.final_matching.man_to_woman),
            "blocking_pairs": sorted(list(p) for p in report.blocking),
        }
    )
    return 0


def _cmd_verify_ne(args: argparse.Namespace) -> int:
    inst = load_instance(_read(args.instance))
    sp = load_profile(_read(args.profile), inst)
    text = _read(args.pairs)
    if args.game == "woman":
        women = [int(w) for w in json.loads(text)["women"]]
        hit = first_woman_deviation(sp, women)
        if hit is None:
            _emit({"nash_equilibrium": True})
            return 0
        w, res = hit
        _emit({"nash_equilibrium": False, "woman": w, "witness": _manipulation_doc(res)})
        return 1
    if args.game == "one-for-many":
        pm, by_m = _load_beneficiaries(text)
        for m in sorted(pm):
            res = find_one_for_many_manipulation(sp, m, by_m.get(m, ()))
            if res.found:
                _emit(
                    {
                        "nash_equilibrium": False,
                        "man": m,
                        "witness": _manipulation_doc(res),
                    }
                )
                return 1
        _emit({"nash_equilibrium": True})
        return 0
    pairs = load_pairs(text, n=inst.n)
    pair_hit = first_accomplice_deviation(sp, pairs)
    if pair_hit is None:
        _emit({"nash_equilibrium": True})
        return 0
    pair, res = pair_hit
    _emit({"nash_equilibrium": False, "pair": list(pair), "witness": _manipulation_doc(res)})
    return 1


def _cmd_gen(args: argparse.Namespace) -> int:
    rng = derive_rng(args.seed)
    inst = generate_instance(
        args.n, model=args.model, rng=rng, phi_m=args.phi_m, phi_w=args.phi_w
    )
    text = serialize_instance(inst)
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text)
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig.from_json(_read(args.config))
    rows = run_experiment(cfg, threads=args.threads)
    write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchgames",
        description="Two-sided manipulation games on stable matching markets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("da", help="run deferred acceptance")
    p.add_argument("--instance", required=True)
    p.add_argument("--profile")
    p.set_defaults(func=_cmd_da)

    p = sub.add_parser("stability", help="blocking pairs of a matching")
    p.add_argument("--instance", required=True)
    p.add_argument("--matching", required=True)
    p.add_argument("--pairs")
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("manipulate", help="search a single accomplice manipulation")
    p.add_argument("--instance", required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("--pair", required=True, metavar="M,W")
    p.add_argument("--mode", choices=("best", "first"), default="best")
    p.set_defaults(func=_cmd_manipulate)

    p = sub.add_parser("dynamics", help="run best-response dynamics to a fixed point")
    p.add_argument("--instance", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--game", choices=("accomplice", "one-for-many", "woman"), default="accomplice")
    p.add_argument("--policy", choices=("fixed", "random"), default="fixed")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trace")
    p.set_defaults(func=_cmd_dynamics)

    p = sub.add_parser("verify-ne", help="check a profile for equilibrium (exit 0/1)")
    p.add_argument("--instance", required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--game", choices=("accomplice", "one-for-many", "woman"), default="accomplice")
    p.set_defaults(func=_cmd_verify_ne)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--model", choices=("impartial", "mallows"), default="impartial")
    p.add_argument("--phi-m", type=float, default=None, dest="phi_m")
    p.add_argument("--phi-w", type=float, default=None, dest="phi_w")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("experiment", help="run an experiment sweep to CSV")
    p.add_argument("kind", choices=("length", "welfare"))
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, EquilibriumCheckError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
