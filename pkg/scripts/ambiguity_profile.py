"""Rank ambiguous word forms by frequency and show cumulative coverage.

Reads a text file, or a synthetic corpus when no file is given.

    python scripts/ambiguity_profile.py [FILE] --limit 20
"""
import argparse

from fstag.evaluation import ambiguity_profile, format_profile
from fstag.pipeline import Analyzer
from fstag.synthetic import SyntheticConfig, generate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("file", nargs="?")
    ap.add_argument("--limit", type=int, default=20)
    ap.add_argument("--sentences", type=int, default=500)
    args = ap.parse_args()

    an = Analyzer.default()
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            lines = fh.readlines()
    else:
        lines = [g.text for g in generate(SyntheticConfig(args.sentences))]
    tokens = [tok for line in lines for tok in an.tokens(line)]
    profile = ambiguity_profile(tokens, an.lexicon, an.guesser)
    print(format_profile(profile, args.limit), end="")
    if profile.total:
        print(f"# forms covering half of the ambiguity: {profile.forms_for_coverage(0.5)}")


if __name__ == "__main__":
    main()
