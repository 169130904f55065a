#include "corpus.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "vud/analysis.hpp"
#include "vud/error.hpp"
#include "vud/parser.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace vud;
using fixture::atoms;

namespace {

bool has_kind(const std::vector<Violation>& vs, Violation::Kind k) {
    for (const auto& v : vs)
        if (v.kind == k) return true;
    return false;
}

std::size_t stratum_of(const Strata& strata, const std::string& pred) {
    for (std::size_t i = 0; i < strata.size(); ++i)
        if (strata[i].count(pred)) return i;
    return strata.size();
}

} // namespace

TEST(Parse, RuleWithTwoBodyAtoms) {
    Database db = parse_database("p :- a, e.");
    ASSERT_EQ(db.idb.size(), 1u);
    EXPECT_EQ(db.idb[0].head, std::vector<Atom>{atom("p")});
    EXPECT_EQ(db.idb[0].body, (std::vector<Literal>{Literal(atom("a")), Literal(atom("e"))}));
}

TEST(Parse, EmptyInput) {
    EXPECT_EQ(parse_database(""), Database{});
    EXPECT_EQ(parse_database("% only a comment\n\n"), Database{});
}

TEST(Parse, Denial) {
    Database db = parse_database(":- b.");
    ASSERT_EQ(db.ic.size(), 1u);
    EXPECT_EQ(db.ic[0].body, std::vector<Literal>{Literal(atom("b"))});
    EXPECT_TRUE(db.idb.empty());
}

TEST(Parse, EqualityHeadBecomesDenial) {
    Database db = parse_database("eq(Y, Z) :- g(X, Y), g(X, Z).");
    ASSERT_EQ(db.ic.size(), 1u);
    ASSERT_EQ(db.ic[0].body.size(), 3u);
    EXPECT_TRUE(db.ic[0].body[2].atom.is_equality());
    EXPECT_FALSE(db.ic[0].body[2].positive);
}

TEST(Parse, VariablesAreUppercase) {
    Database db = parse_database("p(X, c) :- e(X, c).");
    EXPECT_TRUE(db.idb[0].head[0].args[0].is_variable());
    EXPECT_TRUE(db.idb[0].head[0].args[1].is_constant());
}

TEST(Parse, DisjunctiveHead) {
    Database db = parse_database("p | q :- a.");
    ASSERT_EQ(db.idb.size(), 1u);
    EXPECT_TRUE(db.idb[0].is_disjunctive());
}

TEST(Parse, ErrorsCarryPosition) {
    try {
        parse_database("p :- a\nq.");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_GE(e.line(), 1u);
    }
    EXPECT_THROW(parse_database("p(a). p(a, b)."), ParseError);
    EXPECT_THROW(parse_database("p(X)."), ParseError);
    EXPECT_THROW(parse_database("p :- ."), ParseError);
}

TEST(Parse, Atom) {
    EXPECT_EQ(parse_atom("p"), atom("p"));
    EXPECT_EQ(parse_atom("staff_chair(aravindan,gerhard)."), atom("staff_chair", {"aravindan", "gerhard"}));
}

TEST(Parse, RoundTripOnCorpus) {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        corpus::Shape shape;
        shape.negation = i % 2 == 0;
        Database db = i % 3 == 0 ? corpus::relational(rng) : corpus::propositional(rng, shape);
        EXPECT_EQ(parse_database(to_string(db)), db) << to_string(db);
    }
}

TEST(Parse, RoundTripOnExamples) {
    for (const auto& db : {fixture::example2(), fixture::staff()}) EXPECT_EQ(parse_database(to_string(db)), db);
}

TEST(Ground, ExampleTwoIsItsOwnGrounding) {
    Database db = fixture::example2();
    EXPECT_EQ(ground(db), db);
}

TEST(Ground, StaffRuleHas216Instances) {
    Database db = fixture::staff();
    auto universe = herbrand_universe(db);
    ASSERT_EQ(universe.size(), 6u);
    auto instances = ground_instances(db.idb[0], universe);
    EXPECT_EQ(instances.size(), 216u);
    std::set<Rule> distinct(instances.begin(), instances.end());
    EXPECT_EQ(distinct.size(), 216u);
    for (const auto& r : instances) EXPECT_TRUE(r.is_ground());
}

TEST(Ground, VariableFreeRuleIsSingleton) {
    Rule r = parse_database("p :- a, e.").idb[0];
    EXPECT_EQ(ground_instances(r, {"x", "y"}), std::vector<Rule>{r});
}

TEST(Ground, EqualityDecidedDuringInstantiation) {
    Database db = fixture::staff();
    Database g = ground(db);
    for (const auto& c : g.ic)
        for (const auto& l : c.body) EXPECT_FALSE(l.atom.is_equality());
    // 6^3 instances per constraint, minus those where Y = Z.
    EXPECT_EQ(g.ic.size(), 2u * (216u - 36u));
}

TEST(Ground, Idempotent) {
    std::mt19937 rng(12);
    for (int i = 0; i < 60; ++i) {
        Database db = corpus::relational(rng);
        Database once = ground(db);
        EXPECT_EQ(ground(once), once);
    }
    EXPECT_EQ(ground(ground(fixture::staff())), ground(fixture::staff()));
}

TEST(Ground, MatchesOracleInstances) {
    std::mt19937 rng(13);
    for (int i = 0; i < 60; ++i) {
        Database db = corpus::relational(rng);
        auto mine = ground(db).idb;
        auto theirs = oracle::ground_rules(db);
        EXPECT_EQ(fixture::as_set(mine), fixture::as_set(theirs));
    }
}

TEST(Stratify, DefiniteIsOneStratum) {
    EXPECT_EQ(stratify(fixture::example2()), (Strata{{"p", "q"}}));
}

TEST(Stratify, NegationOrdersStrata) {
    EXPECT_EQ(stratify(parse_database("p :- not q. q :- e.")), (Strata{{"q"}, {"p"}}));
}

TEST(Stratify, SelfNegationFails) {
    try {
        stratify(parse_database("p :- e, not p."));
        FAIL() << "expected NotStratifiable";
    } catch (const NotStratifiable& e) {
        EXPECT_EQ(e.cycle(), (std::vector<std::string>{"p", "p"}));
    }
}

TEST(Stratify, NegativeCycleThroughTwoPredicatesFails) {
    EXPECT_THROW(stratify(parse_database("p :- e, not q. q :- p.")), NotStratifiable);
}

TEST(Stratify, NegationFreeCorpusHasOneStratum) {
    std::mt19937 rng(14);
    for (int i = 0; i < 100; ++i) {
        Database db = corpus::propositional(rng, {});
        EXPECT_EQ(stratify(db).size(), 1u);
    }
}

TEST(Stratify, DependenciesRespectLevels) {
    std::mt19937 rng(15);
    corpus::Shape shape;
    shape.negation = true;
    for (int i = 0; i < 100; ++i) {
        Database db = corpus::propositional(rng, shape);
        Strata strata = stratify(db);
        auto views = db.view_predicates();
        for (const auto& r : db.idb) {
            std::size_t h = stratum_of(strata, r.head[0].predicate);
            ASSERT_LT(h, strata.size());
            for (const auto& l : r.body) {
                if (!views.count(l.atom.predicate)) continue;
                std::size_t b = stratum_of(strata, l.atom.predicate);
                if (l.positive) EXPECT_LE(b, h);
                else EXPECT_LT(b, h);
            }
        }
    }
}

TEST(Validate, AcceptsBothExamples) {
    EXPECT_TRUE(validate(fixture::example2()).empty());
    EXPECT_TRUE(validate(fixture::staff()).empty());
}

TEST(Validate, ViewAndBase) {
    auto vs = validate(parse_database("a :- e. a. e."));
    EXPECT_TRUE(has_kind(vs, Violation::Kind::view_and_base));
}

TEST(Validate, UnitClauseInIdb) {
    Database db;
    db.idb.push_back(Rule{{atom("p")}, {}});
    EXPECT_TRUE(has_kind(validate(db), Violation::Kind::unit_clause));
}

TEST(Validate, UnsafeVariables) {
    EXPECT_TRUE(has_kind(validate(parse_database("p(X) :- e(Y).")), Violation::Kind::unsafe_variable));
    EXPECT_TRUE(has_kind(validate(parse_database("p(X) :- e(X), not f(Y).")), Violation::Kind::unsafe_variable));
    EXPECT_TRUE(validate(parse_database("p(X) :- e(X), not f(X).")).empty());
}

TEST(Syntax, ConstantsAndViews) {
    Database db = fixture::staff();
    EXPECT_EQ(db.view_predicates(), std::set<std::string>{"staff_chair"});
    EXPECT_TRUE(db.is_view(atom("staff_chair", {"a", "b"})));
    EXPECT_FALSE(db.is_view(atom("group_chair", {"a", "b"})));
    EXPECT_EQ(db.constants().size(), 6u);
    EXPECT_EQ(db.edb, atoms({"group_chair(infor1,matthias)", "group_chair(infor2,gerhard)",
                             "staff_group(delhibabu,infor1)", "staff_group(aravindan,infor1)"}));
}
