#include <gtest/gtest.h>

#include <random>

#include "lt/corpus.hpp"
#include "lt/formula.hpp"
#include "lt/rewrite.hpp"
#include "lt/store.hpp"
#include "oracle.hpp"

using namespace lt;

namespace {

std::vector<std::string> all_tables() {
    std::vector<std::string> out = {"(PIQ)=(-PVQ)", "(PV(QVR))=((PVQ)VR)", "(P*Q)=-(-PV-Q)", "(P=Q)=((PIQ)*(QIP))",
                                    "(AVA)IA",      "BI(AVB)",             "(AVB)I(BVA)",    "(AV(BVC))I(BV(AVC))",
                                    "(BIC)I((AVB)I(AVC))"};
    for (const ReportRow& r : builtin_corpus()) out.push_back(r.formula);
    return out;
}

Formula P(const char* s) {
    return parse(s);
}

}  // namespace

TEST(Parse, Shapes) {
    EXPECT_TRUE(equal(P("(PI-P)I-P"), imp(imp(var('P'), neg(var('P'))), neg(var('P')))));
    EXPECT_TRUE(equal(P("PV---P"), dis(var('P'), neg(neg(neg(var('P')))))));
    EXPECT_TRUE(equal(P("((AVA)IA)"), imp(dis(var('A'), var('A')), var('A'))));
}

TEST(Parse, Errors) {
    auto pos = [](const char* s) {
        try {
            parse(s);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1L;
    };
    EXPECT_EQ(pos("PIQ)"), 3);
    EXPECT_GE(pos("(PIQ"), 0);
    EXPECT_GE(pos("PVQVR"), 0);
    EXPECT_GE(pos("P&Q"), 0);
    EXPECT_GE(pos("PI"), 0);
    EXPECT_GE(pos(""), 0);
    EXPECT_GE(pos("I"), 0);
}

TEST(Print, ClassicStyle) {
    EXPECT_EQ(print(imp(var('P'), dis(var('P'), var('P')))), "PI(PVP)");
    EXPECT_EQ(print(var('P')), "P");
    EXPECT_EQ(print(P("((AVA)IA)")), "(AVA)IA");
}

TEST(Print, RoundTripTables) {
    for (const std::string& s : all_tables()) {
        Formula f = parse(s);
        EXPECT_TRUE(equal(parse(print(f)), f)) << s;
    }
    EXPECT_EQ(all_tables().size(), 32u);
}

TEST(Print, RoundTripRandom) {
    std::mt19937 rng(3);
    for (int i = 0; i < 2000; ++i) {
        Formula f = oracle::random_formula(rng, 5);
        std::string t = print(f);
        EXPECT_TRUE(equal(parse(t), f)) << t;
        EXPECT_EQ(print(parse(t)), t);
    }
}

TEST(Match, WorkedExamples) {
    auto s = match(P("(AVA)IA"), P("(-PV-P)I-P"), "A");
    ASSERT_TRUE(s);
    EXPECT_EQ(print(*s), "{A:=-P}");
    s = match(P("AI(AVB)"), P("PI(PVP)"), "AB");
    ASSERT_TRUE(s);
    EXPECT_TRUE(equal(s->at('A'), var('P')));
    EXPECT_TRUE(equal(s->at('B'), var('P')));
    EXPECT_FALSE(match(P("BI(AVB)"), P("PIP")));
}

TEST(Match, NonSchematicLiteral) {
    EXPECT_FALSE(match(P("AIP"), P("QIR"), "A"));
    EXPECT_TRUE(match(P("AIP"), P("QIP"), "A"));
}

TEST(Match, SoundOnRandomPairs) {
    std::mt19937 rng(5);
    int hits = 0;
    for (int i = 0; i < 5000; ++i) {
        Formula p = oracle::random_formula(rng, 3, "AB");
        Formula s = i % 2 ? oracle::random_formula(rng, 4) : lt::apply({{'A', oracle::random_formula(rng, 2)}}, p);
        if (auto sig = match(p, s)) {
            ++hits;
            EXPECT_TRUE(equal(lt::apply(*sig, p), s));
        }
    }
    EXPECT_GT(hits, 1000);
}

TEST(Apply, Simultaneous) {
    EXPECT_EQ(print(lt::apply({{'A', neg(var('P'))}}, P("(AVA)IA"))), "(-PV-P)I-P");
    EXPECT_TRUE(equal(lt::apply({}, P("PIQ")), P("PIQ")));
    Formula qir = imp(var('Q'), var('R'));
    EXPECT_TRUE(equal(lt::apply({{'A', qir}}, P("AIA")), imp(qir, qir)));
    EXPECT_EQ(print(lt::apply({{'A', var('B')}, {'B', var('A')}}, P("AIB"))), "BIA");
}

TEST(Forms, SchematicAndCanonical) {
    EXPECT_EQ(print(schematic_form(P("PI(PVQ)"))), "AI(AVB)");
    EXPECT_EQ(print(canonical_form(P("BI(BVA)"))), "PI(PVQ)");
}

TEST(Truth, Tautology) {
    EXPECT_TRUE(tautology(P("PV-P")));
    EXPECT_FALSE(tautology(P("PI(-PVQ)")));
    EXPECT_TRUE(tautology(P("PI(-PIQ)")));
    std::mt19937 rng(9);
    for (int i = 0; i < 2000; ++i) {
        Formula f = oracle::random_formula(rng, 5);
        EXPECT_EQ(tautology(f), oracle::valid(f)) << print(f);
    }
}

TEST(Positions, Polarity) {
    auto p = positions(P("P"));
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p[0].polarity, Polarity::positive);
    p = positions(P("-P"));
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[1].polarity, Polarity::negative);
    p = positions(P("PIQ"));
    ASSERT_EQ(p.size(), 3u);
    EXPECT_EQ(p[0].polarity, Polarity::positive);
    EXPECT_EQ(p[1].polarity, Polarity::negative);
    EXPECT_EQ(p[2].polarity, Polarity::positive);
    EXPECT_EQ(positions(P("P=Q"))[1].polarity, Polarity::none);
    EXPECT_EQ(print(p[2].path), "2");
    EXPECT_EQ(print(Path{}), "root");
}

TEST(Positions, PolaritySemantics) {
    // strengthening a positive position or weakening a negative one never turns a tautology false
    std::mt19937 rng(21);
    Formula a = var('P'), b = dis(var('P'), var('Q'));  // a implies b
    for (int i = 0; i < 500; ++i) {
        Formula f = oracle::random_formula(rng, 4, "PQ");
        for (const Position& pos : positions(f)) {
            if (pos.polarity == Polarity::none) continue;
            Formula strong = replace_at(f, pos.path, pos.polarity == Polarity::positive ? a : b);
            Formula weak = replace_at(f, pos.path, pos.polarity == Polarity::positive ? b : a);
            EXPECT_TRUE(oracle::valid(imp(strong, weak))) << print(f) << " at " << print(pos.path);
        }
    }
}

TEST(Rewrite, WorkedExamples) {
    EXPECT_EQ(print(rewrite_subterm(P("P=(PVP)"), *find_definition("4.01"), {}, Direction::forward)),
              "(PI(PVP))*((PVP)IP)");
    EXPECT_EQ(print(rewrite_subterm(P("PIQ"), *find_definition("1.01"), {}, Direction::forward)), "-PVQ");
    EXPECT_EQ(print(rewrite_subterm(P("(-PV-P)I-P"), *find_definition("1.01"), {0}, Direction::backward)),
              "(PI-P)I-P");
}

TEST(Rewrite, ImplicationPolarity) {
    Rule r{"2.07", P("AI(AVA)")->a, P("AI(AVA)")->b, Rule::Kind::implication};
    // A -> AVA: at a positive position A may become AVA
    EXPECT_EQ(print(rewrite_subterm(P("QIP"), r, {1}, Direction::forward)), "QI(PVP)");
    EXPECT_THROW(rewrite_subterm(P("PIQ"), r, {0}, Direction::forward), RewriteError);
    EXPECT_EQ(print(rewrite_subterm(P("(PVP)IQ"), r, {0}, Direction::backward)), "PIQ");
    EXPECT_THROW(rewrite_subterm(P("P=Q"), r, {0}, Direction::forward), RewriteError);
    EXPECT_THROW(rewrite_subterm(P("PIQ"), r, {0, 0}, Direction::forward), RewriteError);
}

TEST(Rewrite, DefinitionsInvertAndTouchOnePosition) {
    std::mt19937 rng(33);
    int applied = 0;
    for (int i = 0; i < 1000; ++i) {
        Formula f = oracle::random_formula(rng, 4);
        for (const Position& pos : positions(f)) {
            for (const Rule& d : definitions()) {
                Formula g;
                try {
                    g = rewrite_subterm(f, d, pos.path, Direction::forward);
                } catch (const RewriteError&) {
                    continue;
                }
                ++applied;
                EXPECT_TRUE(oracle::valid(equiv(f, g))) << print(f);
                EXPECT_TRUE(equal(rewrite_subterm(g, d, pos.path, Direction::backward), f)) << print(f);
                for (const Position& q : positions(f)) {
                    bool inside = q.path.size() >= pos.path.size() &&
                                  std::equal(pos.path.begin(), pos.path.end(), q.path.begin());
                    bool above = pos.path.size() > q.path.size() &&
                                 std::equal(q.path.begin(), q.path.end(), pos.path.begin());
                    if (!inside && !above) EXPECT_TRUE(equal(subterm(g, q.path), q.sub));
                }
            }
        }
    }
    EXPECT_GT(applied, 200);
}

TEST(Store, Initial) {
    TheoremStore s = TheoremStore::initial();
    EXPECT_EQ(s.size(), 9u);
    EXPECT_EQ(display_label(*s.find("1.2")), "*1.2");
    EXPECT_EQ(s.find("4.01")->kind, EntryKind::definition);
    s.add_proved("2.20", P("PI(PVQ)"));
    EXPECT_EQ(print(s.find("2.20")->formula), "AI(AVB)");
    EXPECT_EQ(display_label(*s.find("2.20")), "2.20");
    auto r = s.rule("2.20");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->kind, Rule::Kind::implication);
    EXPECT_FALSE(s.rule("9.99"));
}
