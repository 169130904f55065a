#include "corpus.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "vud/error.hpp"
#include "vud/model.hpp"
#include "vud/revision.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vud;
using fixture::atoms;

namespace {

KnowledgeBase example2() { return KnowledgeBase::from(fixture::example2()); }

KnowledgeBase with_updatable(KnowledgeBase kb, std::set<Atom> facts) {
    kb.updatable = std::move(facts);
    return kb;
}

Rule fact(const char* name) { return Rule{{atom(name)}, {}}; }

PostulateOptions with_reviser() {
    PostulateOptions o;
    o.reviser = [](const KnowledgeBase& kb, const Literal& a) { return revision_alternatives(kb, a); };
    return o;
}

const std::vector<std::string> kTheoremSet = {"KB*1", "KB*2", "KB*3.1", "KB*3.2", "KB*4.1",
                                              "KB*4.2", "KB*5", "KB*6", "KB*7.3"};

} // namespace

TEST(KnowledgeBase, RoundTripsDatabase) {
    Database db = fixture::example2();
    KnowledgeBase kb = KnowledgeBase::from(db);
    EXPECT_EQ(kb.immutable, db.idb);
    EXPECT_EQ(kb.updatable, db.edb);
    EXPECT_EQ(kb.constraints, db.ic);
    EXPECT_EQ(kb.database(), db);
}

TEST(FormulaLiteral, FactsAndDenials) {
    EXPECT_EQ(formula_literal(fact("p")), Literal(atom("p")));
    EXPECT_EQ(formula_literal(Rule{{}, {Literal(atom("p"))}}), Literal(atom("p"), false));
    EXPECT_THROW(formula_literal(parse_database("p :- q.").idb[0]), InvalidRequest);
}

TEST(GeneralizedRevision, DerivableAtomLeavesKbUnchanged) {
    EXPECT_EQ(generalized_revision(example2(), Literal(atom("p"))), example2());
}

TEST(GeneralizedRevision, InsertsExplanation) {
    auto kb = with_updatable(example2(), atoms({"e", "f"}));
    EXPECT_EQ(generalized_revision(kb, Literal(atom("p"))).updatable, atoms({"a", "e", "f"}));
    EXPECT_EQ(generalized_revision(kb, fact("p")).updatable, atoms({"a", "e", "f"}));
}

TEST(GeneralizedRevision, ConstraintBlocksAlpha) {
    EXPECT_EQ(generalized_revision(example2(), Literal(atom("b"))), example2());
    EXPECT_FALSE(consistent_with_immutable(example2(), Literal(atom("b"))));
    EXPECT_TRUE(consistent_with_immutable(example2(), Literal(atom("p"))));
}

TEST(GeneralizedRevision, NegativeLiteralDeletesHittingSet) {
    auto out = generalized_revision(example2(), Literal(atom("p"), false));
    EXPECT_EQ(out.updatable, atoms({"e", "f"}));
    EXPECT_EQ(out.immutable, example2().immutable);
    auto alternatives = revision_alternatives(example2(), Literal(atom("p"), false));
    ASSERT_EQ(alternatives.size(), 1u);
    EXPECT_EQ(alternatives[0], out);
}

TEST(GeneralizedRevision, RepairsViolatedConstraint) {
    KnowledgeBase kb = KnowledgeBase::from(parse_database("v :- a. :- v, c. c. d."));
    auto out = generalized_revision(kb, Literal(atom("a")));
    EXPECT_EQ(out.updatable, atoms({"a", "d"}));
    EXPECT_TRUE(check_ic(out.database()).empty());
}

TEST(GeneralizedRevision, AlternativesAllSatisfyAlpha) {
    std::mt19937 rng(71);
    for (int i = 0; i < 150; ++i) {
        corpus::Shape shape;
        shape.base_atoms = 5;
        shape.views = 3;
        Database db = corpus::propositional(rng, shape);
        KnowledgeBase kb = KnowledgeBase::from(db);
        for (const auto& v : db.view_predicates()) {
            for (bool positive : {true, false}) {
                Literal alpha(atom(v), positive);
                if (!consistent_with_immutable(kb, alpha)) continue;
                for (const auto& out : revision_alternatives(kb, alpha)) {
                    Database after = out.database();
                    EXPECT_EQ(derives(after, atom(v)), positive) << to_string(db) << v;
                    EXPECT_TRUE(check_ic(after).empty());
                    EXPECT_EQ(out.immutable, kb.immutable);
                }
            }
        }
    }
}

TEST(GeneralizedRevision, VacuityForConsistentBaseFact) {
    std::mt19937 rng(72);
    for (int i = 0; i < 150; ++i) {
        Database db = corpus::propositional(rng, {});
        KnowledgeBase kb = KnowledgeBase::from(db);
        for (std::size_t k = 0; k < 6; ++k) {
            Atom b = atom("b" + std::to_string(k));
            Database plus = db;
            plus.edb.insert(b);
            if (!check_ic(plus).empty()) continue;
            EXPECT_EQ(generalized_revision(kb, Literal(b)), KnowledgeBase::from(plus)) << to_string(db);
        }
    }
}

TEST(GeneralizedRevision, Idempotent) {
    std::mt19937 rng(73);
    for (int i = 0; i < 150; ++i) {
        Database db = corpus::propositional(rng, {});
        KnowledgeBase kb = KnowledgeBase::from(db);
        for (const auto& v : db.view_predicates()) {
            for (bool positive : {true, false}) {
                Literal alpha(atom(v), positive);
                auto once = generalized_revision(kb, alpha);
                EXPECT_EQ(generalized_revision(once, alpha), once) << to_string(db) << v;
            }
        }
    }
}

TEST(Kr, Examples) {
    auto reduced = with_updatable(example2(), atoms({"e", "f"}));
    EXPECT_EQ(kr(reduced, {Literal(atom("p"))}, {}).updatable, atoms({"a", "e", "f"}));
    EXPECT_EQ(kr(example2(), {}, {Literal(atom("p"))}).updatable, atoms({"e", "f"}));
    EXPECT_EQ(kr(example2(), {}, {}), example2());
}

TEST(Kr, NegativeLiteralSwitchesSide) {
    EXPECT_EQ(kr(example2(), {Literal(atom("p"), false)}, {}).updatable, atoms({"e", "f"}));
}

TEST(KbEquivalent, Reflexive) {
    auto r = kb_equivalent(example2(), fact("p"), fact("p"), 2);
    EXPECT_TRUE(r.equivalent);
    EXPECT_FALSE(r.witness);
}

TEST(KbEquivalent, RuleSeparatesHeadFromBody) {
    KnowledgeBase kb;
    kb.immutable = parse_database("p :- q.").idb;
    auto r = kb_equivalent(kb, fact("p"), fact("q"), 2);
    EXPECT_FALSE(r.equivalent);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(*r.witness, atoms({"p"}));
    EXPECT_TRUE(r.exhaustive);
}

TEST(KbEquivalent, ViewsWithSameSupport) {
    // A shared body is not enough: E = {p} separates them. Mutual
    // definition is.
    KnowledgeBase kb;
    kb.immutable = parse_database("p :- a. q :- a.").idb;
    EXPECT_FALSE(kb_equivalent(kb, fact("p"), fact("q"), 1).equivalent);
    kb.immutable = parse_database("p :- a. q :- p. p :- q.").idb;
    EXPECT_TRUE(kb_equivalent(kb, fact("p"), fact("q"), 3).equivalent);
}

TEST(KbEquivalent, BoundZeroIsVacuous) {
    KnowledgeBase kb;
    kb.immutable = parse_database("p :- q.").idb;
    auto r = kb_equivalent(kb, fact("p"), fact("q"), 0);
    EXPECT_TRUE(r.equivalent);
    EXPECT_FALSE(r.exhaustive);
}

TEST(KbEquivalent, RelationalUsesUpdatableConstants) {
    KnowledgeBase kb = KnowledgeBase::from(parse_database("p(X) :- e(X). q(X) :- e(X), f(X). e(c).f(d)."));
    auto r = kb_equivalent(kb, Rule{{atom("p", {"c"})}, {}}, Rule{{atom("q", {"c"})}, {}}, 1);
    EXPECT_FALSE(r.equivalent);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(*r.witness, atoms({"e(c)"}));
}

TEST(Postulates, ExampleTwoHolds) {
    auto kb = example2();
    Literal alpha(atom("p"));
    auto report = check_postulates(kb, alpha, generalized_revision(kb, alpha), with_reviser());
    EXPECT_TRUE(report.passes(kAllPostulates)) << report.to_string();
    EXPECT_EQ(report.results.size(), kAllPostulates.size());
    for (const auto& name : kAllPostulates) EXPECT_NE(report.find(name), nullptr);
}

TEST(Postulates, DeletionHolds) {
    auto kb = example2();
    Literal alpha(atom("p"), false);
    auto report = check_postulates(kb, alpha, generalized_revision(kb, alpha), with_reviser());
    EXPECT_TRUE(report.passes(kAllPostulates)) << report.to_string();
}

TEST(Postulates, WeakSuccessFailsWhenAlphaMissing) {
    auto kb = with_updatable(example2(), atoms({"e", "f"}));
    Literal alpha(atom("p"));
    auto report = check_postulates(kb, alpha, kb);
    const auto* r = report.find("KB*2");
    ASSERT_NE(r, nullptr);
    EXPECT_EQ(r->verdict, Verdict::fails);
    EXPECT_NE(r->detail.find("p"), std::string::npos);
    auto failures = report.failures();
    EXPECT_NE(std::find(failures.begin(), failures.end(), "KB*2"), failures.end());
}

TEST(Postulates, DroppingARuleFailsImmutableInclusion) {
    auto kb = example2();
    Literal alpha(atom("p"));
    auto revised = kb;
    revised.immutable.pop_back();
    auto report = check_postulates(kb, alpha, revised);
    EXPECT_EQ(report.find("KB*3.2")->verdict, Verdict::fails);
}

TEST(Postulates, KbStarSixSkippedWithoutReviser) {
    auto kb = example2();
    auto report = check_postulates(kb, Literal(atom("p")), kb);
    EXPECT_EQ(report.find("KB*6")->verdict, Verdict::skipped);
    EXPECT_FALSE(report.find("KB*6")->detail.empty());
    EXPECT_TRUE(report.passes({"KB*6"}));
}

TEST(Postulates, ReportLinesAreTabSeparated) {
    auto kb = example2();
    auto text = check_postulates(kb, Literal(atom("p")), kb).to_string();
    std::size_t lines = 0;
    for (std::size_t pos = 0; (pos = text.find('\n', pos)) != std::string::npos; ++pos) ++lines;
    EXPECT_EQ(lines, kAllPostulates.size());
    EXPECT_EQ(text.rfind("KB*1\tholds\t", 0), 0u);
}

TEST(Postulates, OverDeletionFailsRelevance) {
    // Removing e as well as a is more than p's removal needs.
    auto kb = example2();
    Literal alpha(atom("p"), false);
    auto revised = with_updatable(kb, atoms({"f"}));
    auto report = check_postulates(kb, alpha, revised);
    EXPECT_EQ(report.find("KB*2")->verdict, Verdict::holds);
    EXPECT_FALSE(report.passes({"KB*7.1", "KB*7.2", "KB*7.3"})) << report.to_string();
}

TEST(Postulates, RevisionSatisfiesTheoremSetOnCorpus) {
    std::mt19937 rng(74);
    std::size_t checked = 0;
    for (int i = 0; i < 60; ++i) {
        corpus::Shape shape;
        shape.base_atoms = 5;
        shape.views = 3;
        shape.max_rules = 5;
        Database db = corpus::propositional(rng, shape);
        KnowledgeBase kb = KnowledgeBase::from(db);
        auto views = db.view_predicates();
        Atom a = atom(*std::next(views.begin(), static_cast<long>(rng() % views.size())));
        Literal alpha(a, rng() % 2 == 0);
        auto report = check_postulates(kb, alpha, generalized_revision(kb, alpha), with_reviser());
        EXPECT_TRUE(report.passes(kTheoremSet)) << to_string(db) << report.to_string();
        ++checked;
    }
    EXPECT_EQ(checked, 60u);
}
