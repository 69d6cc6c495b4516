import logging
import time

import pandas as pd

from CyclicHWP.errors import CyclicHWPError

logger = logging.getLogger(__name__)


def instances(ells, n_span):
    """(ell, n) pairs with n running over n_span values from 2k upwards"""
    for ell in ells:
        start = (ell - 1) // 2
        for n in range(start, start + n_span):
            yield ell, n


def process_single_instance(ell, n, full=False, progress=False):
    """Generate and verify one instance.

    Returns (success, row, error_message).
    """
    from CyclicHWP.functions.completion import assemble
    from CyclicHWP.functions.core import make_params
    from CyclicHWP.verifier import check_base, check_factorization, develop

    row = {"ell": ell, "n": n, "M": None, "v": None, "r": None, "r_prime": None,
           "mu": None, "t": None, "ok": False, "seconds": None}
    started = time.perf_counter()
    try:
        params = make_params(ell, n)
        row.update({key: value for key, value in params.to_dict().items() if key != "ell" and key != "n"})
        base = assemble(params)
    except CyclicHWPError as e:
        return False, row, str(e)
    row["mu"] = base.provenance["mu"]
    row["t"] = base.provenance["t"]

    report = check_base(base)
    error = None if report.ok else f"base criterion {report}"
    if report.ok and full:
        full_report = check_factorization(develop(base), params, progress=progress)
        error = None if full_report.ok else f"factorization {full_report}"

    row["ok"] = error is None
    row["seconds"] = round(time.perf_counter() - started, 3)
    return row["ok"], row, error


def run_sweep(args):
    """Entry point for the sweep subcommand."""
    todo = list(instances(args.ell, args.n_span))
    if not todo:
        print("No instances to sweep.")
        return 1

    level = "full" if args.full else "base"
    print("CyclicHWP Sweep")
    print("===============")
    print(f"Checking {len(todo)} instance(s), verification level {level}")
    print()

    results = []
    for i, (ell, n) in enumerate(todo, 1):
        print(f"[{i}/{len(todo)}] ell={ell} n={n} ... ", end="", flush=True)
        success, row, error = process_single_instance(ell, n, args.full, progress=not args.quiet)
        if success:
            print(f"OK (v = {row['v']}, mu = {row['mu']}, t = {row['t']})")
        else:
            print(f"FAILED: {error}")
        results.append((ell, n, success, row, error))

    ok = sum(1 for _, _, s, _, _ in results if s)
    fail = len(results) - ok
    print(f"\nSummary: {ok}/{len(results)} succeeded, {fail} failed")
    if fail:
        print("Failed:")
        for ell, n, success, _, error in results:
            if not success:
                print(f"  - ell={ell} n={n}: {error}")

    if args.csv:
        df = pd.DataFrame([row for _, _, _, row, _ in results])
        df.to_csv(args.csv, index=False)
        logger.info("sweep table written to %s", args.csv)

    return 0 if fail == 0 else 1
