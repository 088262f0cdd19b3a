import pytest
from hypothesis import given, settings, strategies as st

from fstag.lattice import make_lattice
from fstag.rules import (Condition, PreferenceRanking, Tier, apply_final_preference, apply_rule,
                         apply_tier, apply_tiers, parse_rules_text, run_tier)
from fstag.tagset import parse_tag, parse_tags

from randomgen import random_lattice, random_rule, seeded

T = parse_tag


def lat(*pairs):
    return make_lattice([w for w, _ in pairs], [parse_tags(t.split()) for _, t in pairs])


AVONS = parse_rules_text("""
RELIABLE
RULE avons-verb SELECT {VAUX-P1P2} ON WORD {avons} IF (*-1 IWORD {nous})
RULE avons-noun SELECT {NOUN-SG} ON WORD {avons} IF (NOT *-1 IWORD {nous})
""")


def test_avons_verb_reading_after_nous():
    l = lat(("nous", "PRON-P1P2 PC"), ("ne", "NEG"), ("les", "DET-PL PC"),
            ("avons", "NOUN-SG VAUX-P1P2"), ("pas", "ADV NOUN-SG"))
    out = apply_rule(AVONS.rule("avons-verb"), l)
    assert out[3].readings == {T("VAUX-P1P2")}


def test_last_reading_is_protected():
    l = lat(("nous", "PRON-P1P2"), ("avons", "NOUN-SG"))
    assert apply_rule(AVONS.rule("avons-verb"), l) is l


def test_noun_reading_without_nous():
    l = lat(("les", "DET-PL"), ("avons", "NOUN-SG VAUX-P1P2"))
    assert apply_rule(AVONS.rule("avons-verb"), l) is l
    assert run_tier(AVONS.reliable, l)[1].readings == {T("NOUN-SG")}


def test_remove_action():
    pack = parse_rules_text("RELIABLE RULE r REMOVE {PC} IF (-1 C {PREP PREP-A PREP-DE})")
    l = lat(("à", "PREP-A"), ("l'", "DET-SG PC"), ("est", "NOUN-SG VAUX-P3SG"))
    assert apply_rule(pack.rule("r"), l)[1].readings == {T("DET-SG")}


def test_conditions_see_the_input_lattice():
    # both cohorts qualify before the rule runs, so both are reduced
    pack = parse_rules_text("RELIABLE RULE r SELECT {ADV} IF (1 {NOUN-SG})")
    l = lat(("a", "ADV NOUN-SG"), ("b", "ADV NOUN-SG"), ("c", "NOUN-SG"))
    out = apply_rule(pack.rule("r"), l)
    assert [c.readings for c in out][:2] == [{T("ADV")}, {T("ADV")}]


def test_fixpoint_reaches_chained_reductions():
    pack = parse_rules_text("RELIABLE RULE r SELECT {ADV} IF (1 C {ADV})")
    l = lat(("a", "ADV NOUN-SG"), ("b", "ADV NOUN-SG"), ("c", "ADV"))
    from fstag.rules import TierTrace
    trace = TierTrace()
    out = run_tier(pack.reliable, l, trace)
    assert all(c.readings == {T("ADV")} for c in out)
    assert trace.passes == 3 and trace.fired == ["r", "r"]


def test_scan_with_barrier_and_careful():
    c = Condition(offset=-1, scan=True, tags=parse_tags(["PRON-P1P2"]),
                  barrier=parse_tags(["PUNCT", "VERB-P3SG"]))
    l = lat(("je", "PRON-P1P2"), ("ne", "NEG"), ("le", "PC DET-SG"), ("pense", "VERB-P1P2"))
    assert c.holds(l, 3)
    l2 = lat(("je", "PRON-P1P2"), (",", "PUNCT"), ("pense", "VERB-P1P2"))
    assert not c.holds(l2, 2)
    careful = Condition(offset=-1, careful=True, tags=parse_tags(["PC"]))
    assert not careful.holds(l, 3)
    assert Condition(offset=-1, tags=parse_tags(["PC"])).holds(l, 3)
    cbar = Condition(offset=-1, scan=True, tags=parse_tags(["PRON-P1P2"]),
                     barrier=parse_tags(["PC"]), careful_barrier=True)
    assert cbar.holds(l, 3)


def test_boundaries():
    l = lat(("a", "ADV"), ("b", "ADV"))
    bos = Condition(offset=-1, boundary="BOS")
    eos = Condition(offset=1, boundary="EOS")
    assert bos.holds(l, 0) and not bos.holds(l, 1)
    assert eos.holds(l, 1) and not eos.holds(l, 0)


def test_condition_validation():
    with pytest.raises(ValueError):
        Condition(offset=1)
    with pytest.raises(ValueError):
        Condition(offset=1, tags=parse_tags(["ADV"]), barrier=parse_tags(["PC"]))
    with pytest.raises(ValueError):
        Condition(offset=0, scan=True, tags=parse_tags(["ADV"]))


def test_final_preference_examples():
    rank = parse_rules_text("PREFER PREP > ADJ-SG\nPREFER PRON > PAP-SG").final
    out = apply_final_preference(rank, lat(("x", "PREP ADJ-SG"), ("y", "PRON PAP-SG"),
                                           ("z", "NOUN-SG")))
    assert [c.readings for c in out] == [{T("PREP")}, {T("PRON")}, {T("NOUN-SG")}]


def test_ranking_variants_and_unlisted_tags():
    rank = PreferenceRanking((T("DET-PL"), T("PREP"), T("PC")),
                             {"des": (T("PREP-DE"),)})
    assert rank.best(parse_tags(["PREP-DE", "PC"])) is T("PREP-DE")
    assert rank.best(parse_tags(["PREP-DE", "PREP"])) is T("PREP")
    assert rank.best(parse_tags(["NOUN-SG", "ADV"])) is T("NOUN-SG")
    assert rank.best(parse_tags(["DET-PL", "PREP-DE"]), "des") is T("PREP-DE")
    assert rank.best(parse_tags(["DET-PL", "PREP-DE"]), "Des") is T("PREP-DE")
    ranked = rank.ranked()
    assert ranked[:4] == [T("DET-PL"), T("PREP"), T("PREP-DE"), T("PREP-A")]


def test_identity_when_nothing_applies(pack):
    l = lat(("Oh", "MISC"), ("!", "PUNCT"))
    assert apply_tiers(pack, l, Tier.RELIABLE) is l


def test_train_part_after_heuristics(pack, analyzer):
    (l,) = analyzer.lattices("Le train part à cinq heures")
    assert l[2].readings == {T("NOUN-SG"), T("VERB-P3SG")}
    assert apply_tiers(pack, l, "heuristic")[2].readings == {T("VERB-P3SG")}
    assert apply_tier(pack, l, 2)[2].readings == {T("VERB-P3SG")}


def test_preposition_clitic_finite_verb_is_forbidden(pack, analyzer):
    (l,) = analyzer.lattices("à l'est")
    out = apply_tiers(pack, l, "reliable")
    assert T("PC") not in out[1].readings


def test_apply_tiers_trace(pack, analyzer):
    (l,) = analyzer.lattices("nous ne les avons pas")
    trace = {}
    apply_tiers(pack, l, 3, trace=trace)
    assert "avons-verb" in trace[Tier.RELIABLE].fired
    assert Tier.HEURISTIC in trace


def _check_subset(before, after):
    assert len(before) == len(after)
    for b, a in zip(before, after):
        assert a.readings and a.readings <= b.readings


@settings(max_examples=200)
@given(st.integers(0, 2**32 - 1))
def test_random_rules_never_empty_a_cohort(seed):
    rng = seeded(seed)
    l = random_lattice(rng)
    rules = [random_rule(rng, f"r{i}") for i in range(rng.randint(1, 4))]
    for r in rules:
        _check_subset(l, apply_rule(r, l))
    fix = run_tier(rules, l)
    _check_subset(l, fix)
    assert run_tier(rules, fix) == fix


@settings(max_examples=200)
@given(st.integers(0, 2**32 - 1))
def test_shipped_pack_total_and_monotone(pack, seed):
    l = random_lattice(seeded(seed), pool=pack.final.ranked()[:20])
    previous = l
    for depth in (1, 2, 3):
        out = apply_tiers(pack, l, depth)
        _check_subset(previous, out)
        previous = out
    assert previous.is_disambiguated
    assert apply_tiers(pack, l, 3) == previous
