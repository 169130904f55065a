#include "vud/revision.hpp"

#include "vud/abduction.hpp"
#include "vud/analysis.hpp"
#include "vud/error.hpp"
#include "vud/hitting_set.hpp"
#include "vud/model.hpp"
#include "vud/sld.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace vud {

KnowledgeBase KnowledgeBase::from(const Database& db) { return {db.idb, db.edb, db.ic}; }

Database KnowledgeBase::database() const { return {immutable, updatable, constraints}; }

Literal formula_literal(const Rule& alpha) {
    if (alpha.head.size() == 1 && alpha.body.empty() && alpha.head.front().is_ground())
        return {alpha.head.front(), true};
    if (alpha.head.empty() && alpha.body.size() == 1 && alpha.body.front().positive &&
        alpha.body.front().atom.is_ground())
        return {alpha.body.front().atom, false};
    throw InvalidRequest("formula " + to_string(alpha) + " is not a ground literal");
}

namespace {

bool holds(const Literal& alpha, const Interpretation& m) { return m.contains(alpha.atom) == alpha.positive; }

std::string literal_text(const Literal& l) { return (l.positive ? "" : "not ") + to_string(l.atom); }

bool is_view(const KnowledgeBase& kb, const Atom& a) {
    return std::any_of(kb.immutable.begin(), kb.immutable.end(), [&](const Rule& r) {
        return std::any_of(r.head.begin(), r.head.end(), [&](const Atom& h) { return h.predicate == a.predicate; });
    });
}

bool has_negated_user_literal(const std::vector<Constraint>& ic) {
    for (const auto& c : ic)
        for (const auto& l : c.body)
            if (!l.positive && !l.atom.is_equality()) return true;
    return false;
}

std::set<std::string> constants_of(const Atom& a) {
    std::set<std::string> out;
    for (const auto& t : a.args)
        if (t.is_constant()) out.insert(t.name);
    return out;
}

// Constants of the whole knowledge base plus those of the given atoms.
std::set<std::string> universe_of(const KnowledgeBase& kb, const Atom& a, const Atom& b = {}) {
    std::set<std::string> out = kb.database().constants();
    for (const auto* x : {&a, &b}) {
        auto c = constants_of(*x);
        out.insert(c.begin(), c.end());
    }
    return out;
}

// Minimal clause sets (ground rules plus facts as unit rules) deriving
// `goal`, read off the success branches of its SLD tree.
std::vector<std::set<Rule>> kernels(const Database& db, const Atom& goal) {
    if (!db.is_view(goal)) {
        if (db.edb.count(goal)) return {{Rule{{goal}, {}}}};
        return {};
    }
    SldTree tree = sld_tree(db, goal);
    std::vector<std::set<Rule>> sets;
    for (auto leaf : tree.success_leaves()) {
        const SldNode& n = tree.nodes[leaf];
        std::set<Rule> s(n.rules.begin(), n.rules.end());
        for (const auto& f : n.used_facts) s.insert(Rule{{f}, {}});
        sets.push_back(std::move(s));
    }
    return minimal_members(sets);
}

std::set<Atom> facts_of(const std::set<Rule>& clauses) {
    std::set<Atom> out;
    for (const auto& r : clauses)
        if (r.body.empty() && r.head.size() == 1) out.insert(r.head.front());
    return out;
}

std::vector<Rule> rules_of(const std::set<Rule>& clauses) {
    std::vector<Rule> out;
    for (const auto& r : clauses)
        if (!r.body.empty()) out.push_back(r);
    return out;
}

// Fact sets whose removal would make `a` underivable, one per minimal proof.
SetFamily<Atom> deletion_family(const Database& db, const Atom& a) {
    if (!db.is_view(a)) {
        if (db.edb.count(a)) return {{a}};
        return {};
    }
    return explanation_family(db, a, ExplanationKind::minimal);
}

// Base fact sets whose insertion makes `a` derivable, constraints ignored.
std::vector<std::set<Atom>> insertion_options(const Database& db, const Atom& a) {
    if (!db.is_view(a)) return {{a}};
    SldTree tree = sld_tree(db, a);
    BranchFacts branches = branch_fact_sets(tree);
    std::set<std::set<Atom>> unique(branches.failure_assumed.begin(), branches.failure_assumed.end());
    std::vector<std::set<Atom>> kept;
    for (const auto& delta : unique) {
        Database next = db;
        next.edb.insert(delta.begin(), delta.end());
        if (least_model(next).contains(a)) kept.push_back(delta);
    }
    auto out = minimal_members(kept);
    sort_by_size(out);
    return out;
}

// Sets of facts that together make the first violated constraint instance
// true.
SetFamily<Atom> violation_family(const Database& db, const IcViolation& v) {
    std::vector<std::set<Atom>> acc{{}};
    for (const auto& l : v.constraint.body) {
        if (!l.positive || l.atom.is_equality()) continue;
        Atom g = vud::apply(l.atom, v.witness);
        SetFamily<Atom> options = deletion_family(db, g);
        std::vector<std::set<Atom>> next;
        for (const auto& prefix : acc)
            for (const auto& o : options) {
                std::set<Atom> u = prefix;
                u.insert(o.begin(), o.end());
                next.push_back(std::move(u));
            }
        acc = minimal_members(next);
    }
    return {acc.begin(), acc.end()};
}

// Minimal hitting sets that avoid `protect`; empty when some member lies
// inside it.
std::vector<std::set<Atom>> removable_hitting_sets(const SetFamily<Atom>& family, const std::set<Atom>& protect) {
    SetFamily<Atom> reduced;
    for (const auto& s : family) {
        std::set<Atom> r;
        for (const auto& x : s)
            if (!protect.count(x)) r.insert(x);
        if (r.empty()) return {};
        reduced.insert(std::move(r));
    }
    return minimal_hitting_sets(reduced);
}

class RevisionSearch {
public:
    RevisionSearch(const KnowledgeBase& kb, const Literal& alpha, const RevisionOptions& options)
        : kb_(kb), alpha_(alpha), options_(options) {}

    std::vector<KnowledgeBase> run() {
        visit(kb_.updatable, {}, 0);
        return solutions_;
    }

private:
    const KnowledgeBase& kb_;
    Literal alpha_;
    RevisionOptions options_;
    std::set<std::pair<std::set<Atom>, std::set<Atom>>> seen_;
    std::set<std::set<Atom>> found_;
    std::vector<KnowledgeBase> solutions_;

    bool full() const { return solutions_.size() >= options_.max_solutions; }

    // Puts back every deleted fact the result can keep, so each remaining
    // deletion is needed on its own.
    std::set<Atom> restore(std::set<Atom> facts) const {
        for (const auto& f : kb_.updatable) {
            if (facts.count(f)) continue;
            facts.insert(f);
            Database db{kb_.immutable, facts, kb_.constraints};
            Interpretation m = least_model(db);
            if (!holds(alpha_, m) || !check_ic(db, m).empty()) facts.erase(f);
        }
        return facts;
    }

    void visit(const std::set<Atom>& facts, const std::set<Atom>& inserted, std::size_t depth) {
        if (full() || depth > options_.max_iterations) return;
        if (!seen_.insert({facts, inserted}).second) return;
        Database db{kb_.immutable, facts, kb_.constraints};
        Interpretation m = least_model(db);
        if (!holds(alpha_, m)) {
            if (alpha_.positive) {
                for (const auto& o : insertion_options(db, alpha_.atom)) {
                    std::set<Atom> next = facts, ins = inserted;
                    next.insert(o.begin(), o.end());
                    ins.insert(o.begin(), o.end());
                    visit(next, ins, depth + 1);
                }
            } else {
                for (const auto& h : removable_hitting_sets(deletion_family(db, alpha_.atom), inserted)) {
                    std::set<Atom> next = facts;
                    for (const auto& x : h) next.erase(x);
                    visit(next, inserted, depth + 1);
                }
            }
            return;
        }
        auto violations = check_ic(db, m);
        if (violations.empty()) {
            std::set<Atom> kept = restore(facts);
            if (found_.insert(kept).second) solutions_.push_back({kb_.immutable, kept, kb_.constraints});
            return;
        }
        // Repairs only delete. A protected literal is never removed again.
        std::set<Atom> protect = inserted;
        if (alpha_.positive && !is_view(kb_, alpha_.atom)) protect.insert(alpha_.atom);
        for (const auto& h : removable_hitting_sets(violation_family(db, violations.front()), protect)) {
            std::set<Atom> next = facts;
            for (const auto& x : h) next.erase(x);
            visit(next, inserted, depth + 1);
        }
    }
};

} // namespace

bool consistent_with_immutable(const KnowledgeBase& kb, const Literal& alpha) {
    Database bare{kb.immutable, {}, kb.constraints};
    auto works = [&](const std::set<Atom>& e) {
        Database d = bare;
        d.edb = e;
        Interpretation m = least_model(d);
        return holds(alpha, m) && check_ic(d, m).empty();
    };
    if (alpha.positive) {
        for (const auto& e : insertion_options(bare, alpha.atom))
            if (works(e)) return true;
    } else if (works({})) {
        return true;
    }
    if (!has_negated_user_literal(kb.constraints)) return false;

    // Negated literals in constraints are not monotone: try every base fact
    // set over the relevant atoms.
    GroundProgram program(bare, universe_of(kb, alpha.atom), {alpha.atom});
    auto base = program.base_atoms();
    if (base.size() > 16) return false;
    for (std::uint32_t mask = 0; mask < (1u << base.size()); ++mask) {
        std::vector<char> f(program.atom_count(), 0);
        for (std::size_t i = 0; i < base.size(); ++i)
            if (mask & (1u << i)) f[base[i]] = 1;
        auto m = program.closure(f);
        auto id = program.find(alpha.atom);
        bool in = id && m[*id];
        if (in == alpha.positive && program.consistent(m)) return true;
    }
    return false;
}

std::vector<KnowledgeBase> revision_alternatives(const KnowledgeBase& kb, const Literal& alpha,
                                                 const RevisionOptions& options) {
    if (!alpha.atom.is_ground()) throw InvalidRequest("formula " + literal_text(alpha) + " is not ground");
    Database db = kb.database();
    Interpretation m = least_model(db);
    if (holds(alpha, m) && check_ic(db, m).empty()) return {kb};
    if (!consistent_with_immutable(kb, alpha)) return {kb};
    return RevisionSearch(kb, alpha, options).run();
}

KnowledgeBase generalized_revision(const KnowledgeBase& kb, const Literal& alpha, const RevisionOptions& options) {
    RevisionOptions first = options;
    first.max_solutions = 1;
    auto all = revision_alternatives(kb, alpha, first);
    return all.empty() ? kb : all.front();
}

KnowledgeBase generalized_revision(const KnowledgeBase& kb, const Rule& alpha, const RevisionOptions& options) {
    return generalized_revision(kb, formula_literal(alpha), options);
}

KnowledgeBase kr(const KnowledgeBase& kb, const std::set<Literal>& delta_plus, const std::set<Literal>& delta_minus,
                 std::size_t max_iterations) {
    std::set<Atom> plus, minus;
    for (const auto& l : delta_plus) (l.positive ? plus : minus).insert(l.atom);
    for (const auto& l : delta_minus) (l.positive ? minus : plus).insert(l.atom);
    for (const auto& a : plus)
        if (minus.count(a)) throw InvalidRequest(to_string(a) + " is both added and removed");

    KnowledgeBase out = kb;
    for (std::size_t round = 0; round < max_iterations; ++round) {
        Database db = out.database();
        Interpretation m = least_model(db);
        std::set<Atom> add, remove;
        for (const auto& a : plus) {
            if (m.contains(a)) continue;
            std::vector<std::set<Atom>> options;
            if (!db.is_view(a)) {
                options = {{a}};
            } else {
                options = insertion_candidates(db, a);
                if (options.empty()) options = insertion_options(db, a);
            }
            if (!options.empty()) add.insert(options.front().begin(), options.front().end());
        }
        for (const auto& a : minus) {
            if (!m.contains(a)) continue;
            auto hs = minimal_hitting_sets(deletion_family(db, a));
            if (!hs.empty()) remove.insert(hs.front().begin(), hs.front().end());
        }
        if (add.empty() && remove.empty()) break;
        KnowledgeBase next = out;
        for (const auto& x : remove) next.updatable.erase(x);
        next.updatable.insert(add.begin(), add.end());
        if (next == out) break;
        out = std::move(next);
    }
    return out;
}

namespace {

// Every ground atom over the rule signature and the given extra atoms.
std::vector<Atom> ground_signature(const KnowledgeBase& kb, const std::vector<Atom>& extra) {
    Database db = kb.database();
    std::map<std::string, std::size_t> sig = db.signature();
    std::set<std::string> constants = db.constants();
    for (const auto& a : extra) {
        sig.emplace(a.predicate, a.arity());
        auto c = constants_of(a);
        constants.insert(c.begin(), c.end());
    }
    std::vector<std::string> universe(constants.begin(), constants.end());
    std::vector<Atom> out;
    for (const auto& [pred, arity] : sig) {
        if (pred == kEqualityPredicate) continue;
        if (arity == 0) {
            out.emplace_back(pred);
            continue;
        }
        if (universe.empty()) continue;
        std::vector<std::size_t> odo(arity, 0);
        while (true) {
            std::vector<std::string> args;
            for (auto i : odo) args.push_back(universe[i]);
            out.push_back(atom_of(pred, args));
            std::size_t k = arity;
            while (k > 0 && ++odo[k - 1] == universe.size()) odo[--k] = 0;
            if (k == 0) break;
        }
    }
    return out;
}

} // namespace

KbEquivalence kb_equivalent(const KnowledgeBase& kb, const Rule& alpha_rule, const Rule& beta_rule,
                            std::size_t bound) {
    Literal alpha = formula_literal(alpha_rule), beta = formula_literal(beta_rule);
    KbEquivalence out;
    std::vector<Atom> atoms = ground_signature(kb, {alpha.atom, beta.atom});
    std::set<Atom> atom_set(atoms.begin(), atoms.end());
    GroundProgram program(Database{kb.immutable, {}, {}}, universe_of(kb, alpha.atom, beta.atom), atom_set);
    auto a = *program.find(alpha.atom), b = *program.find(beta.atom);
    std::vector<GroundProgram::AtomId> ids;
    for (const auto& x : atoms) ids.push_back(*program.find(x));

    std::size_t n = ids.size();
    std::size_t k = std::min(bound, n);
    out.exhaustive = k == n;
    std::vector<std::size_t> pick;
    // Subsets in order of size, each as increasing index combinations.
    for (std::size_t size = 0; size <= k; ++size) {
        pick.assign(size, 0);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            std::vector<char> f(program.atom_count(), 0);
            for (auto i : pick) f[ids[i]] = 1;
            auto m = program.closure(f);
            bool da = (m[a] != 0) == alpha.positive, db = (m[b] != 0) == beta.positive;
            if (da != db) {
                out.equivalent = false;
                std::set<Atom> w;
                for (auto i : pick) w.insert(atoms[i]);
                out.witness = std::move(w);
                return out;
            }
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

const PostulateResult* PostulateReport::find(const std::string& name) const {
    for (const auto& r : results)
        if (r.name == name) return &r;
    return nullptr;
}

bool PostulateReport::passes(const std::vector<std::string>& names) const {
    for (const auto& n : names) {
        const auto* r = find(n);
        if (!r || r->verdict == Verdict::fails) return false;
    }
    return true;
}

std::vector<std::string> PostulateReport::failures() const {
    std::vector<std::string> out;
    for (const auto& r : results)
        if (r.verdict == Verdict::fails) out.push_back(r.name);
    return out;
}

std::string PostulateReport::to_string() const {
    std::ostringstream os;
    for (const auto& r : results) {
        const char* v = r.verdict == Verdict::holds ? "holds" : r.verdict == Verdict::fails ? "fails" : "skipped";
        os << r.name << '\t' << v << '\t' << r.detail << '\n';
    }
    return os.str();
}

namespace {

// K ∪ {α} consistent: the literal holds with α added as a fact (positive)
// or is underivable (negative), and no constraint is violated.
bool consistent_with(const std::vector<Rule>& rules, const std::set<Atom>& facts, const Literal& alpha,
                     const std::vector<Constraint>& ic) {
    Database d{rules, facts, ic};
    if (alpha.positive) d.edb.insert(alpha.atom);
    Interpretation m = least_model(d);
    if (!alpha.positive && m.contains(alpha.atom)) return false;
    return check_ic(d, m).empty();
}

std::string set_text(const std::set<Atom>& s) { return to_string(s); }

class Checker {
public:
    Checker(const KnowledgeBase& kb, const Literal& alpha, const KnowledgeBase& revised, const PostulateOptions& o)
        : kb_(kb), alpha_(alpha), revised_(revised), options_(o), before_(least_model(kb.database())),
          after_(least_model(revised.database())) {
        consistent_alpha_ = consistent_with_immutable(kb, alpha);
        for (const auto& f : kb.updatable)
            if (!revised.updatable.count(f)) deleted_.insert(f);
        for (const auto& f : revised.updatable)
            if (!kb.updatable.count(f)) inserted_.insert(f);
    }

    PostulateReport run() {
        PostulateReport r;
        r.results = {kb1(), kb2(), kb3_1(), kb3_2(), kb4_1(), kb4_2(), kb5(), kb6(), kb7_1(), kb7_2(), kb7_3()};
        return r;
    }

private:
    const KnowledgeBase& kb_;
    Literal alpha_;
    const KnowledgeBase& revised_;
    PostulateOptions options_;
    Interpretation before_, after_;
    bool consistent_alpha_ = false;
    std::set<Atom> deleted_, inserted_;

    static PostulateResult ok(const char* name, std::string detail) { return {name, Verdict::holds, std::move(detail)}; }
    static PostulateResult bad(const char* name, std::string detail) { return {name, Verdict::fails, std::move(detail)}; }
    static PostulateResult skip(const char* name, std::string detail) {
        return {name, Verdict::skipped, std::move(detail)};
    }

    PostulateResult kb1() const {
        auto v = validate(revised_.database());
        if (!v.empty()) return bad("KB*1", v.front().message);
        if (revised_.constraints != kb_.constraints) return bad("KB*1", "constraints changed");
        return ok("KB*1", "valid knowledge base");
    }

    PostulateResult kb2() const {
        if (!consistent_alpha_) return ok("KB*2", "vacuous: " + literal_text(alpha_) + " inconsistent with rules and constraints");
        if (holds(alpha_, after_)) return ok("KB*2", literal_text(alpha_) + " holds");
        return bad("KB*2", "witness " + literal_text(alpha_) + " does not hold");
    }

    // Inserted facts must come from a minimal proof of α in the result.
    PostulateResult kb3_1() const {
        for (const auto& r : revised_.immutable)
            if (std::find(kb_.immutable.begin(), kb_.immutable.end(), r) == kb_.immutable.end())
                return bad("KB*3.1", "new rule " + to_string(r));
        if (inserted_.empty()) return ok("KB*3.1", "no facts added");
        if (!alpha_.positive) return bad("KB*3.1", "facts " + set_text(inserted_) + " added for a negative literal");
        std::set<Atom> covered;
        for (const auto& k : kernels(revised_.database(), alpha_.atom)) {
            auto f = facts_of(k);
            covered.insert(f.begin(), f.end());
        }
        for (const auto& f : inserted_)
            if (!covered.count(f)) return bad("KB*3.1", "added fact " + to_string(f) + " is in no minimal proof");
        return ok("KB*3.1", "added facts " + set_text(inserted_) + " lie in minimal proofs");
    }

    PostulateResult kb3_2() const {
        for (const auto& r : kb_.immutable)
            if (std::find(revised_.immutable.begin(), revised_.immutable.end(), r) == revised_.immutable.end())
                return bad("KB*3.2", "rule " + to_string(r) + " dropped");
        return ok("KB*3.2", "immutable part kept");
    }

    PostulateResult kb4_1() const {
        if (consistent_alpha_) return ok("KB*4.1", "vacuous: " + literal_text(alpha_) + " consistent");
        if (revised_ == kb_) return ok("KB*4.1", "unchanged");
        return bad("KB*4.1", "changed although " + literal_text(alpha_) + " is inconsistent");
    }

    PostulateResult kb4_2() const {
        Database db = kb_.database();
        bool view = db.is_view(alpha_.atom);
        bool base_consistent = check_ic(db, before_).empty();
        if (view) {
            if (!base_consistent || !holds(alpha_, before_))
                return ok("KB*4.2", "vacuous: kb with " + literal_text(alpha_) + " not a consistent expansion");
            if (revised_ == kb_) return ok("KB*4.2", "unchanged");
            return bad("KB*4.2", literal_text(alpha_) + " already holds but kb changed");
        }
        KnowledgeBase expected = kb_;
        if (alpha_.positive)
            expected.updatable.insert(alpha_.atom);
        else if (kb_.updatable.count(alpha_.atom))
            return ok("KB*4.2", "vacuous: " + to_string(alpha_.atom) + " is a fact");
        if (!check_ic(expected.database()).empty()) return ok("KB*4.2", "vacuous: expansion inconsistent");
        if (revised_ == expected) return ok("KB*4.2", "result is the expansion");
        return bad("KB*4.2", "result differs from the consistent expansion");
    }

    PostulateResult kb5() const {
        if (!consistent_alpha_) return ok("KB*5", "vacuous: " + literal_text(alpha_) + " inconsistent");
        auto v = check_ic(revised_.database(), after_);
        if (v.empty()) return ok("KB*5", "constraints satisfied");
        return bad("KB*5", "violates " + to_string(v.front().constraint));
    }

    PostulateResult kb6() const {
        if (!options_.reviser) return skip("KB*6", "no reviser supplied");
        GroundProgram program(Database{kb_.immutable, {}, {}}, universe_of(kb_, alpha_.atom), {alpha_.atom});
        auto alpha_id = *program.find(alpha_.atom);
        std::size_t checked = 0;
        std::vector<Atom> atoms = ground_signature(kb_, {alpha_.atom});
        for (const auto& b : atoms) {
            Literal beta{b, alpha_.positive};
            if (b != alpha_.atom) {
                // Quick necessary condition before the bounded test.
                auto bid = program.find(b);
                if (!bid) continue;
                std::vector<char> fa(program.atom_count(), 0), fb(program.atom_count(), 0);
                fa[alpha_id] = 1;
                fb[*bid] = 1;
                if (!program.closure(fa)[*bid] || !program.closure(fb)[alpha_id]) continue;
                Rule ra = alpha_.positive ? Rule{{alpha_.atom}, {}} : Rule{{}, {Literal{alpha_.atom}}};
                Rule rb = beta.positive ? Rule{{b}, {}} : Rule{{}, {Literal{b}}};
                if (!kb_equivalent(kb_, ra, rb, options_.equivalence_bound).equivalent) continue;
            }
            ++checked;
            bool matched = false;
            for (const auto& alt : options_.reviser(kb_, beta))
                if (least_model(alt.database()) == after_ && alt.updatable == revised_.updatable) matched = true;
            if (!matched)
                return bad("KB*6", "revision by KB-equivalent " + literal_text(beta) + " gives a different result");
        }
        return ok("KB*6", "holds (sampled) over " + std::to_string(checked) + " KB-equivalent literals");
    }

    PostulateResult kb7_1() const {
        KnowledgeBase rules_only{kb_.immutable, {}, {}};
        if (!consistent_with_immutable(rules_only, alpha_))
            return ok("KB*7.1", "vacuous: rules refute " + literal_text(alpha_));
        if (holds(alpha_, after_)) return ok("KB*7.1", literal_text(alpha_) + " holds");
        return bad("KB*7.1", "witness " + literal_text(alpha_) + " does not hold");
    }

    // KB′ = result ∪ X for X ⊆ deleted \ {β}.
    std::optional<std::set<Atom>> relevance_witness(const Atom& beta) const {
        std::vector<Atom> rest;
        for (const auto& d : deleted_)
            if (d != beta) rest.push_back(d);
        if (rest.size() > options_.subset_cap) return std::nullopt;
        for (std::uint32_t mask = 0; mask < (1u << rest.size()); ++mask) {
            std::set<Atom> k = revised_.updatable;
            for (std::size_t i = 0; i < rest.size(); ++i)
                if (mask & (1u << i)) k.insert(rest[i]);
            if (!consistent_with(kb_.immutable, k, alpha_, kb_.constraints)) continue;
            std::set<Atom> with = k;
            with.insert(beta);
            if (!consistent_with(kb_.immutable, with, alpha_, kb_.constraints)) return k;
        }
        return std::nullopt;
    }

    PostulateResult kb7_2() const {
        if (deleted_.size() > options_.subset_cap + 1) return skip("KB*7.2", "too many deleted facts");
        for (const auto& b : deleted_)
            if (!relevance_witness(b)) return bad("KB*7.2", "no witness for deleted " + to_string(b));
        return ok("KB*7.2", deleted_.empty() ? "nothing deleted" : "witness for every deleted fact");
    }

    // Subsets of KB ∪ {α} may drop rules too, so minimal proofs of α (for
    // a negative literal) and minimal constraint violations serve as
    // witnesses.
    bool weak_witness(const Atom& beta) const {
        if (relevance_witness(beta)) return true;
        Database db = kb_.database();
        std::vector<std::set<Rule>> candidates;
        if (!alpha_.positive) {
            candidates = kernels(db, alpha_.atom);
        } else {
            Database with = db;
            with.edb.insert(alpha_.atom);
            for (const auto& v : check_ic(with)) {
                std::vector<std::set<Rule>> acc{{}};
                for (const auto& l : v.constraint.body) {
                    if (!l.positive || l.atom.is_equality()) continue;
                    Atom g = vud::apply(l.atom, v.witness);
                    std::vector<std::set<Rule>> next;
                    for (const auto& k : kernels(with, g))
                        for (const auto& prefix : acc) {
                            std::set<Rule> u = prefix;
                            u.insert(k.begin(), k.end());
                            next.push_back(std::move(u));
                        }
                    acc = minimal_members(next);
                }
                candidates.insert(candidates.end(), acc.begin(), acc.end());
            }
        }
        Rule unit{{beta}, {}};
        for (const auto& k : candidates) {
            if (!k.count(unit)) continue;
            std::set<Rule> rest = k;
            rest.erase(unit);
            auto facts = facts_of(rest);
            if (alpha_.positive) facts.erase(alpha_.atom);
            auto rules = rules_of(rest);
            if (!consistent_with(rules, facts, alpha_, kb_.constraints)) continue;
            facts.insert(beta);
            if (!consistent_with(rules, facts, alpha_, kb_.constraints)) return true;
        }
        return false;
    }

    PostulateResult kb7_3() const {
        if (deleted_.size() > options_.subset_cap + 1) return skip("KB*7.3", "too many deleted facts");
        for (const auto& b : deleted_)
            if (!weak_witness(b)) return bad("KB*7.3", "no witness for deleted " + to_string(b));
        return ok("KB*7.3", deleted_.empty() ? "nothing deleted" : "witness for every deleted fact");
    }
};

} // namespace

PostulateReport check_postulates(const KnowledgeBase& kb, const Literal& alpha, const KnowledgeBase& revised,
                                 const PostulateOptions& options) {
    return Checker(kb, alpha, revised, options).run();
}

} // namespace vud
