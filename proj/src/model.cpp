#include "vud/model.hpp"

#include "vud/error.hpp"

#include <algorithm>
#include <functional>

namespace vud {

namespace {

// Matches `pattern` against ground `fact`, extending `s`. Returns false on
// clash; `s` may be partially extended on failure, so callers copy.
bool unify(const Atom& pattern, const Atom& fact, Substitution& s) {
    if (pattern.predicate != fact.predicate || pattern.arity() != fact.arity()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& t = pattern.args[i];
        const std::string& value = fact.args[i].name;
        if (t.is_constant()) {
            if (t.name != value) return false;
            continue;
        }
        auto [it, inserted] = s.emplace(t.name, value);
        if (!inserted && it->second != value) return false;
    }
    return true;
}

// Iterates over the facts of one predicate in a sorted atom set.
template <typename F>
void for_each_fact(const std::set<Atom>& facts, const std::string& predicate, F&& f) {
    for (auto it = facts.lower_bound(Atom(predicate)); it != facts.end() && it->predicate == predicate; ++it)
        f(*it);
}

// Body with positive non-equality literals first, in written order.
std::vector<Literal> plan(const std::vector<Literal>& body) {
    std::vector<Literal> out;
    for (const auto& l : body)
        if (l.positive && !l.atom.is_equality()) out.push_back(l);
    for (const auto& l : body)
        if (!l.positive || l.atom.is_equality()) out.push_back(l);
    return out;
}

struct JoinContext {
    const std::vector<Literal>& body;
    const std::set<Atom>& full;
    const std::set<Atom>* delta = nullptr; ///< when set, literal `delta_at` ranges over it
    std::size_t delta_at = 0;
    const std::set<Atom>& negation_base;
    const std::function<void(const Substitution&)>& emit;
};

void join(const JoinContext& ctx, std::size_t i, const Substitution& s) {
    if (i == ctx.body.size()) {
        ctx.emit(s);
        return;
    }
    const Literal& l = ctx.body[i];
    if (l.atom.is_equality()) {
        Atom g = vud::apply(l.atom, s);
        if (g.arity() != 2) throw ValidationError("eq takes two arguments");
        const Term& x = g.args[0];
        const Term& y = g.args[1];
        if (x.is_constant() && y.is_constant()) {
            if ((x.name == y.name) == l.positive) join(ctx, i + 1, s);
            return;
        }
        if (!l.positive) throw ValidationError("unbound variable in negated equality " + to_string(l));
        if (x.is_variable() && y.is_variable()) throw ValidationError("unbound equality " + to_string(l));
        Substitution next = s;
        if (x.is_variable()) next[x.name] = y.name;
        else next[y.name] = x.name;
        join(ctx, i + 1, next);
        return;
    }
    if (!l.positive) {
        Atom g = vud::apply(l.atom, s);
        if (!g.is_ground()) throw ValidationError("unbound variable in negative literal " + to_string(l));
        if (!ctx.negation_base.count(g)) join(ctx, i + 1, s);
        return;
    }
    const std::set<Atom>& source = (ctx.delta && ctx.delta_at == i) ? *ctx.delta : ctx.full;
    Atom pattern = vud::apply(l.atom, s);
    if (pattern.is_ground()) {
        if (source.count(pattern)) join(ctx, i + 1, s);
        return;
    }
    for_each_fact(source, pattern.predicate, [&](const Atom& fact) {
        Substitution next = s;
        if (unify(pattern, fact, next)) join(ctx, i + 1, next);
    });
}

void require_ground_heads(const Rule& r, const Substitution& s, std::vector<Atom>& out) {
    for (const auto& h : r.head) {
        Atom g = vud::apply(h, s);
        if (!g.is_ground()) throw ValidationError("unsafe rule " + to_string(r));
        out.push_back(std::move(g));
    }
}

// Derives new heads of `rules` from `model`; only definite-head rules.
std::set<Atom> fire(const std::vector<const Rule*>& rules, const std::set<Atom>& model,
                    const std::set<Atom>* delta, const std::set<std::string>* stratum_preds) {
    std::set<Atom> out;
    for (const Rule* r : rules) {
        auto body = plan(r->body);
        std::vector<Atom> heads;
        std::function<void(const Substitution&)> emit = [&](const Substitution& s) {
            heads.clear();
            require_ground_heads(*r, s, heads);
            for (auto& h : heads)
                if (!model.count(h)) out.insert(std::move(h));
        };
        if (!delta) {
            JoinContext ctx{body, model, nullptr, 0, model, emit};
            join(ctx, 0, {});
            continue;
        }
        for (std::size_t i = 0; i < body.size(); ++i) {
            const Literal& l = body[i];
            if (!l.positive || l.atom.is_equality() || !stratum_preds->count(l.atom.predicate)) continue;
            JoinContext ctx{body, model, delta, i, model, emit};
            join(ctx, 0, {});
        }
    }
    return out;
}

} // namespace

Interpretation least_model(const Database& db, Evaluation mode) {
    Strata strata = stratify(db);
    std::set<Atom> model = db.edb;
    if (strata.empty()) return {std::move(model)};

    for (const auto& preds : strata) {
        std::vector<const Rule*> rules;
        for (const auto& r : db.idb) {
            if (r.head.size() != 1) throw ValidationError("disjunctive rule in model computation: " + to_string(r));
            if (preds.count(r.head.front().predicate)) rules.push_back(&r);
        }
        if (mode == Evaluation::naive) {
            while (true) {
                auto fresh = fire(rules, model, nullptr, nullptr);
                if (fresh.empty()) break;
                model.insert(fresh.begin(), fresh.end());
            }
            continue;
        }
        auto delta = fire(rules, model, nullptr, nullptr);
        while (!delta.empty()) {
            model.insert(delta.begin(), delta.end());
            delta = fire(rules, model, &delta, &preds);
        }
    }
    return {std::move(model)};
}

bool derives(const Database& db, const Atom& a) {
    auto sig = db.signature();
    auto it = sig.find(a.predicate);
    if (it == sig.end()) throw Error("unknown predicate " + a.predicate);
    if (it->second != a.arity())
        throw Error("predicate " + a.predicate + " has arity " + std::to_string(it->second));
    return least_model(db).contains(a);
}

std::vector<Substitution> matches(const std::vector<Literal>& body, const Interpretation& facts) {
    std::vector<Substitution> out;
    auto planned = plan(body);
    std::function<void(const Substitution&)> emit = [&](const Substitution& s) { out.push_back(s); };
    JoinContext ctx{planned, facts.atoms, nullptr, 0, facts.atoms, emit};
    join(ctx, 0, {});
    return out;
}

std::vector<IcViolation> check_ic(const Database& db) { return check_ic(db, least_model(db)); }

std::vector<IcViolation> check_ic(const Database& db, const Interpretation& model) {
    std::vector<IcViolation> out;
    for (std::size_t i = 0; i < db.ic.size(); ++i)
        for (auto& s : matches(db.ic[i].body, model)) out.push_back({i, db.ic[i], std::move(s)});
    return out;
}

// ---------------------------------------------------------------------------

GroundProgram::GroundProgram(const Database& db, const std::set<std::string>& extra_constants,
                             const std::set<Atom>& extra_atoms)
    : views_(db.view_predicates()) {
    Strata strata = stratify(db);
    std::map<std::string, std::size_t> level;
    for (std::size_t s = 0; s < strata.size(); ++s)
        for (const auto& p : strata[s]) level[p] = s;
    strata_ = std::max<std::size_t>(1, strata.size());

    for (const auto& f : db.edb) intern(f);
    for (const auto& a : extra_atoms) intern(a);

    Database g = ground(db, extra_constants);
    for (auto& r : g.idb) {
        if (r.head.size() != 1) throw ValidationError("disjunctive rule in ground program: " + to_string(r));
        GroundRule gr;
        gr.head = intern(r.head.front());
        for (const auto& l : r.body) (l.positive ? gr.positive : gr.negative).push_back(intern(l.atom));
        gr.stratum = level.count(r.head.front().predicate) ? level.at(r.head.front().predicate) : 0;
        gr.source = std::move(r);
        rules_.push_back(std::move(gr));
    }
    for (std::size_t i = 0, k = 0; i < db.ic.size(); ++i) {
        Rule as_rule{{}, db.ic[i].body};
        for (auto& inst : ground_instances(as_rule, herbrand_universe(db, extra_constants))) {
            GroundDenial d;
            d.constraint = i;
            for (const auto& l : inst.body) (l.positive ? d.positive : d.negative).push_back(intern(l.atom));
            denials_.push_back(std::move(d));
            ++k;
        }
    }
}

std::optional<GroundProgram::AtomId> GroundProgram::find(const Atom& a) const {
    if (auto it = ids_.find(a); it != ids_.end()) return it->second;
    return std::nullopt;
}

GroundProgram::AtomId GroundProgram::intern(const Atom& a) {
    auto [it, inserted] = ids_.emplace(a, static_cast<AtomId>(atoms_.size()));
    if (inserted) {
        atoms_.push_back(a);
        view_.push_back(views_.count(a.predicate) ? 1 : 0);
    }
    return it->second;
}

std::vector<GroundProgram::AtomId> GroundProgram::base_atoms() const {
    std::vector<AtomId> out;
    for (AtomId i = 0; i < atoms_.size(); ++i)
        if (!view_[i]) out.push_back(i);
    return out;
}

std::vector<char> GroundProgram::closure(const std::vector<char>& facts, const std::vector<char>* enabled) const {
    std::vector<char> model = facts;
    model.resize(atoms_.size(), 0);
    std::vector<std::size_t> missing(rules_.size(), 0);
    std::vector<std::vector<std::size_t>> watchers(atoms_.size());
    std::vector<AtomId> queue;

    for (std::size_t s = 0; s < strata_; ++s) {
        for (auto& w : watchers) w.clear();
        queue.clear();
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            const auto& rule = rules_[r];
            if (rule.stratum != s || (enabled && !(*enabled)[r])) continue;
            bool blocked = std::any_of(rule.negative.begin(), rule.negative.end(),
                                       [&](AtomId n) { return model[n] != 0; });
            if (blocked) continue;
            std::size_t count = 0;
            for (AtomId p : rule.positive)
                if (!model[p]) {
                    ++count;
                    watchers[p].push_back(r);
                }
            missing[r] = count;
            if (count == 0 && !model[rule.head]) {
                model[rule.head] = 1;
                queue.push_back(rule.head);
            }
        }
        while (!queue.empty()) {
            AtomId a = queue.back();
            queue.pop_back();
            for (std::size_t r : watchers[a]) {
                if (--missing[r] == 0 && !model[rules_[r].head]) {
                    model[rules_[r].head] = 1;
                    queue.push_back(rules_[r].head);
                }
            }
        }
    }
    return model;
}

std::vector<char> GroundProgram::mask(const std::set<Atom>& facts) const {
    std::vector<char> m(atoms_.size(), 0);
    for (const auto& f : facts)
        if (auto id = find(f)) m[*id] = 1;
    return m;
}

std::set<Atom> GroundProgram::atoms_of(const std::vector<char>& m) const {
    std::set<Atom> out;
    for (AtomId i = 0; i < m.size() && i < atoms_.size(); ++i)
        if (m[i]) out.insert(atoms_[i]);
    return out;
}

std::set<Atom> GroundProgram::model(const std::set<Atom>& facts) const {
    auto out = atoms_of(closure(mask(facts)));
    for (const auto& f : facts) out.insert(f);
    return out;
}

bool GroundProgram::derives(const std::set<Atom>& facts, const Atom& goal) const {
    if (facts.count(goal)) return true;
    auto id = find(goal);
    if (!id) return false;
    return closure(mask(facts))[*id] != 0;
}

bool GroundProgram::consistent(const std::vector<char>& model) const { return violated(model).empty(); }

std::vector<std::size_t> GroundProgram::violated(const std::vector<char>& model) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < denials_.size(); ++i) {
        const auto& d = denials_[i];
        bool holds = std::all_of(d.positive.begin(), d.positive.end(), [&](AtomId a) { return model[a] != 0; }) &&
                     std::none_of(d.negative.begin(), d.negative.end(), [&](AtomId a) { return model[a] != 0; });
        if (holds) out.push_back(i);
    }
    return out;
}

} // namespace vud
