"""Transition-bias edit experiment.

Trains the HMM twice on the same synthetic text, once with the shipped
biases and once with noun->noun made unlikely and noun->verb likely, and
reports the tag of *part* in "Le train part à cinq heures ." plus the
corpus error count of each model.

    python scripts/bias_sensitivity.py --seeds 5
"""
import argparse

from fstag.experiments import FIXTURE, bias_sensitivity


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--sentences", type=int, default=300)
    ap.add_argument("--compound-weight", type=float, default=2.0)
    args = ap.parse_args()

    print(f"fixture: {FIXTURE}")
    print("seed  part(before)  errors(before)  part(after)  errors(after)  fixed  worse")
    shown = 0
    for seed in range(args.seeds):
        r = bias_sensitivity(seed=seed, sentences=args.sentences,
                             compound_weight=args.compound_weight)
        shown += r.fixed and r.side_effect
        print(f"{seed:>4}  {r.before.fixture_tag.name:>12}  {r.before.report.errors:>14}  "
              f"{r.after.fixture_tag.name:>11}  {r.after.report.errors:>13}  "
              f"{'yes' if r.fixed else 'no':>5}  {'yes' if r.side_effect else 'no':>5}")
    print(f"fixed with a bad side effect on {shown} of {args.seeds} corpora")


if __name__ == "__main__":
    main()
