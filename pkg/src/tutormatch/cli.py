"""Command-line entry point: scenario tooling and the API server.

    tutormatch generate --count N --seed S --out FILE
    tutormatch run --scenario FILE --out REPORT
    tutormatch evaluate --scenario FILE --trials K
    tutormatch serve --credentials FILE [--host H --port P --log-file F]
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .model import PersonalityPreference
from .simulate import (
    PopulationSpec,
    Scenario,
    ScenarioRequest,
    evaluate_trials,
    generate_population,
    load_scenario,
    render_summary,
    render_trials,
    report_bytes,
    run_scenario,
    scenario_to_doc,
)

PREFERENCE_CYCLE = (PersonalityPreference.SIMILAR, PersonalityPreference.DIFFERENT,
                    PersonalityPreference.INDIFFERENT)


def _cmd_generate(args) -> int:
    subjects = tuple(s for s in args.subjects.split(",") if s)
    spec = PopulationSpec(count=args.count, subjects=subjects)
    population = generate_population(spec, args.seed)
    n_requests = args.requests if args.requests is not None else min(args.count, 10)
    if n_requests > 0 and not population:
        print("cannot synthesize requests for an empty population", file=sys.stderr)
        return 2
    requests = [
        ScenarioRequest(
            requester_id=population[i % len(population)].id,
            subject=subjects[i % len(subjects)],
            preference=PREFERENCE_CYCLE[i % len(PREFERENCE_CYCLE)],
        )
        for i in range(n_requests)
    ]
    scenario = Scenario(
        seed=args.seed,
        population=list(population) if args.inline_population else spec,
        requests=requests,
    )
    out = Path(args.out)
    out.write_text(json.dumps(scenario_to_doc(scenario), indent=2) + "\n",
                   encoding="utf-8")
    print(f"wrote scenario with population {args.count} and "
          f"{n_requests} requests to {out}")
    return 0


def _cmd_run(args) -> int:
    report = run_scenario(load_scenario(args.scenario))
    Path(args.out).write_bytes(report_bytes(report))
    print(render_summary(report))
    print(f"report written to {args.out}")
    return 0


def _cmd_evaluate(args) -> int:
    summary = evaluate_trials(load_scenario(args.scenario), args.trials)
    print(render_trials(summary))
    if args.out:
        Path(args.out).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n",
                                  encoding="utf-8")
        print(f"summary written to {args.out}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app
    from .auth import TokenStore, load_credentials
    from .service import TutoringService
    from .store import EventLog

    service = TutoringService(EventLog(args.log_file))
    tokens = TokenStore(load_credentials(args.credentials),
                        lifetime_ms=int(args.token_lifetime_hours * 3_600_000))
    uvicorn.run(create_app(service, tokens), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tutormatch")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a runnable scenario file")
    g.add_argument("--count", type=int, required=True, help="population size")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--subjects", default="calculus", help="comma-separated subject ids")
    g.add_argument("--requests", type=int, default=None,
                   help="number of synthesized requests (default min(count, 10))")
    g.add_argument("--inline-population", action="store_true",
                   help="embed generated profiles instead of the generator spec")
    g.set_defaults(func=_cmd_generate)

    r = sub.add_parser("run", help="run a scenario and write its report")
    r.add_argument("--scenario", required=True)
    r.add_argument("--out", required=True)
    r.set_defaults(func=_cmd_run)

    e = sub.add_parser("evaluate", help="repeat a scenario with derived seeds")
    e.add_argument("--scenario", required=True)
    e.add_argument("--trials", type=int, required=True)
    e.add_argument("--out", default=None)
    e.set_defaults(func=_cmd_evaluate)

    s = sub.add_parser("serve", help="start the HTTP API")
    s.add_argument("--host", default=os.environ.get("TUTORMATCH_HOST", "127.0.0.1"))
    s.add_argument("--port", type=int,
                   default=int(os.environ.get("TUTORMATCH_PORT", "8000")))
    s.add_argument("--log-file",
                   default=os.environ.get("TUTORMATCH_LOG_FILE", "tutormatch-events.jsonl"))
    s.add_argument("--credentials",
                   default=os.environ.get("TUTORMATCH_CREDENTIALS"),
                   help="JSON file mapping userId to secret")
    s.add_argument("--token-lifetime-hours", type=float,
                   default=float(os.environ.get("TUTORMATCH_TOKEN_LIFETIME_HOURS", "24")))
    s.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve" and not args.credentials:
        print("serve requires --credentials (or TUTORMATCH_CREDENTIALS)", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
