"""Error rate, remaining ambiguity and tags per word for each engine.

Rules are scored at each tier depth on a synthetic corpus; the HMM and
the combined tagger use a model trained on a disjoint synthetic text.

    python scripts/tier_table.py --sentences 200 --seed 0
"""
import argparse

from fstag.evaluation import evaluate, format_table
from fstag.combiner import combine_lattice
from fstag.experiments import analyze_gold, decode_corpus, tier_reports, train_model
from fstag.hmm import default_biases
from fstag.pipeline import Analyzer
from fstag.rules import default_rule_pack
from fstag.synthetic import SyntheticConfig, generate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sentences", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--train-sentences", type=int, default=1000)
    args = ap.parse_args()

    an = Analyzer.default()
    pack = default_rule_pack()
    corpus = generate(SyntheticConfig(args.sentences, args.seed))
    lattices = analyze_gold(an, corpus)
    gold = [g.tags for g in corpus]
    rows = tier_reports(pack, lattices, gold)

    text = generate(SyntheticConfig(args.train_sentences, args.seed + 1))
    model = train_model(an, analyze_gold(an, text), default_biases())
    rows.append(("hmm", evaluate(decode_corpus(model, lattices), gold)))
    rows.append(("combined", evaluate([combine_lattice(pack, model, l) for l in lattices], gold)))
    print(f"{sum(len(l) for l in lattices)} words, {len(lattices)} sentences")
    print(format_table(rows), end="")


if __name__ == "__main__":
    main()
