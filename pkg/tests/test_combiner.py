import numpy as np
from hypothesis import given, settings, strategies as st

from fstag.combiner import combine_lattice, tag_combined
from fstag.hmm import HmmModel, decode
from fstag.lattice import make_lattice
from fstag.rules import Tier, apply_tiers, parse_rules_text
from fstag.tagset import parse_tag, parse_tags

from randomgen import random_lattice, random_model, random_pack, seeded

A, N, V = parse_tag("ADJ-SG"), parse_tag("NOUN-SG"), parse_tag("VERB-P3SG")

PACK = parse_rules_text("""
HEURISTIC
RULE x-noun SELECT {NOUN-SG} ON WORD {x}
RULE y-no-verb REMOVE {VERB-P3SG} ON WORD {y}
PREFER ADJ-SG > NOUN-SG > VERB-P3SG
""")


def verb_loving_model():
    """Every class puts nearly all its mass on VERB-P3SG when it can."""
    tags = (A, N, V)
    classes = (frozenset({N, V}), frozenset({A, N, V}), frozenset({N}))
    emission = np.array([[0, 0.02, 0.98], [0.005, 0.015, 0.98], [0, 1, 0]])
    return HmmModel(tags, np.full(3, 1 / 3), np.full((3, 3), 1 / 3), classes, emission)


def test_three_steps():
    l = make_lattice(["v", "x", "y"], [parse_tags(["NOUN-SG", "VERB-P3SG"])] * 2
                     + [parse_tags(["ADJ-SG", "NOUN-SG", "VERB-P3SG"])])
    m = verb_loving_model()
    assert decode(m, l) == [V, V, V]
    # kept, overruled by the rules, then settled by the ranking
    assert tag_combined(PACK, m, l) == [V, N, A]


def test_hmm_cannot_change_unambiguous_words():
    l = make_lattice(["x"], [parse_tags(["NOUN-SG"])])
    assert tag_combined(PACK, verb_loving_model(), l) == [N]


def test_reduced_variant_decodes_survivors():
    l = make_lattice(["v", "x", "y"], [parse_tags(["NOUN-SG", "VERB-P3SG"])] * 2
                     + [parse_tags(["ADJ-SG", "NOUN-SG", "VERB-P3SG"])])
    out = tag_combined(PACK, verb_loving_model(), l, hmm_on_reduced=True)
    assert out == [V, N, N]


def test_trace_records_rule_firings():
    l = make_lattice(["x"], [parse_tags(["NOUN-SG", "VERB-P3SG"])])
    trace = {}
    combine_lattice(PACK, verb_loving_model(), l, trace=trace)
    assert trace


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_output_is_a_step_one_survivor(seed, reduced):
    rng = seeded(seed)
    l = random_lattice(rng)
    pack = random_pack(rng)
    m = random_model(rng, [l])
    survivors = apply_tiers(pack, l, Tier.HEURISTIC)
    out = combine_lattice(pack, m, l, hmm_on_reduced=reduced)
    assert out.is_disambiguated
    for c, s in zip(out, survivors):
        assert c.readings <= s.readings
        if len(s.readings) == 1:
            assert c.readings == s.readings
    if not reduced:
        path = decode(m, l)
        for c, s, t in zip(out, survivors, path):
            if t in s.readings:
                assert c.readings == {t}
