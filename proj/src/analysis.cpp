#include "vud/analysis.hpp"

#include "vud/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace vud {

std::vector<std::string> herbrand_universe(const Database& db, const std::set<std::string>& extra) {
    auto constants = db.constants();
    constants.insert(extra.begin(), extra.end());
    return {constants.begin(), constants.end()};
}

namespace {

std::vector<std::string> ordered_variables(const Rule& rule) {
    std::vector<std::string> out;
    auto add = [&](const Atom& a) {
        for (auto& v : variables_of(a))
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    for (const auto& h : rule.head) add(h);
    for (const auto& l : rule.body) add(l.atom);
    return out;
}

// Returns false when a ground equality literal is false.
bool simplify_equalities(std::vector<Literal>& body) {
    std::vector<Literal> kept;
    kept.reserve(body.size());
    for (auto& l : body) {
        if (l.atom.is_equality() && l.atom.is_ground() && l.atom.arity() == 2) {
            bool equal = l.atom.args[0] == l.atom.args[1];
            if (equal != l.positive) return false;
            continue;
        }
        kept.push_back(std::move(l));
    }
    body = std::move(kept);
    return true;
}

} // namespace

std::vector<Rule> ground_instances(const Rule& rule, const std::vector<std::string>& universe) {
    std::vector<Rule> out;
    auto vars = ordered_variables(rule);
    if (vars.empty()) {
        Rule r = rule;
        if (simplify_equalities(r.body)) out.push_back(std::move(r));
        return out;
    }
    if (universe.empty()) return out;

    std::vector<std::size_t> odometer(vars.size(), 0);
    Substitution s;
    while (true) {
        for (std::size_t i = 0; i < vars.size(); ++i) s[vars[i]] = universe[odometer[i]];
        Rule r = vud::apply(rule, s);
        if (simplify_equalities(r.body)) out.push_back(std::move(r));
        std::size_t k = vars.size();
        while (k > 0) {
            --k;
            if (++odometer[k] < universe.size()) break;
            odometer[k] = 0;
            if (k == 0) return out;
        }
    }
}

Database ground(const Database& db, const std::set<std::string>& extra_constants) {
    auto universe = herbrand_universe(db, extra_constants);
    Database out;
    out.edb = db.edb;
    for (const auto& r : db.idb)
        for (auto& g : ground_instances(r, universe)) out.idb.push_back(std::move(g));
    for (const auto& c : db.ic) {
        Rule as_rule{{}, c.body};
        for (auto& g : ground_instances(as_rule, universe)) out.ic.push_back({std::move(g.body)});
    }
    return out;
}

Strata stratify(const Database& db) {
    auto views = db.view_predicates();
    std::vector<std::string> names(views.begin(), views.end());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = i;

    // edges[h] = (dependency, negative)
    std::vector<std::vector<std::pair<std::size_t, bool>>> edges(names.size());
    for (const auto& r : db.idb) {
        for (const auto& h : r.head) {
            std::size_t hi = index.at(h.predicate);
            for (const auto& l : r.body)
                if (auto it = index.find(l.atom.predicate); it != index.end())
                    edges[hi].emplace_back(it->second, !l.positive);
            for (const auto& other : r.head)
                if (other.predicate != h.predicate) edges[hi].emplace_back(index.at(other.predicate), false);
        }
    }

    // Tarjan's SCC; components come out dependencies-first.
    const std::size_t n = names.size();
    std::vector<int> order(n, -1), low(n, 0), component(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    int counter = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        order[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (auto [w, negative] : edges[v]) {
            if (order[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], order[w]);
            }
        }
        if (low[v] == order[v]) {
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                component[w] = static_cast<int>(components.size());
                comp.push_back(w);
            } while (w != v);
            components.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (order[v] < 0) visit(v);

    for (std::size_t v = 0; v < n; ++v) {
        for (auto [w, negative] : edges[v]) {
            if (!negative || component[v] != component[w]) continue;
            // v depends negatively on w and w reaches v inside the component.
            std::vector<int> parent(n, -1);
            std::queue<std::size_t> queue;
            queue.push(w);
            parent[w] = static_cast<int>(w);
            while (!queue.empty() && parent[v] < 0) {
                auto x = queue.front();
                queue.pop();
                for (auto [y, neg] : edges[x]) {
                    if (component[y] != component[v] || parent[y] >= 0) continue;
                    parent[y] = static_cast<int>(x);
                    queue.push(y);
                }
            }
            std::vector<std::string> cycle{names[v]};
            std::vector<std::string> tail;
            for (std::size_t x = v; x != w; x = static_cast<std::size_t>(parent[x])) tail.push_back(names[x]);
            tail.push_back(names[w]);
            // tail runs v <- ... <- w; the cycle is v -> w -> ... -> v.
            for (auto it = tail.rbegin(); it != tail.rend(); ++it) cycle.push_back(*it);
            if (v == w) cycle = {names[v], names[v]};
            throw NotStratifiable(std::move(cycle));
        }
    }

    std::vector<std::size_t> level(components.size(), 0);
    std::size_t top = 0;
    for (std::size_t c = 0; c < components.size(); ++c) {
        for (auto v : components[c])
            for (auto [w, negative] : edges[v]) {
                auto d = static_cast<std::size_t>(component[w]);
                if (d == c) continue;
                level[c] = std::max(level[c], level[d] + (negative ? 1 : 0));
            }
        top = std::max(top, level[c]);
    }
    if (names.empty()) return {};
    Strata strata(top + 1);
    for (std::size_t v = 0; v < n; ++v) strata[level[static_cast<std::size_t>(component[v])]].insert(names[v]);
    return strata;
}

std::string to_string(Violation::Kind kind) {
    switch (kind) {
    case Violation::Kind::view_and_base: return "view-and-base";
    case Violation::Kind::unit_clause: return "unit-clause";
    case Violation::Kind::unsafe_variable: return "unsafe-variable";
    case Violation::Kind::non_ground_fact: return "non-ground-fact";
    case Violation::Kind::arity_conflict: return "arity-conflict";
    case Violation::Kind::reserved_predicate: return "reserved-predicate";
    }
    return "unknown";
}

namespace {

void check_safety(const std::vector<Atom>& head, const std::vector<Literal>& body,
                  const std::string& where, std::vector<Violation>& out) {
    std::set<std::string> bound;
    for (const auto& l : body)
        if (l.positive && !l.atom.is_equality())
            for (auto& v : variables_of(l.atom)) bound.insert(v);
    auto check = [&](const Atom& a, const char* role) {
        for (const auto& v : variables_of(a))
            if (!bound.count(v))
                out.push_back({Violation::Kind::unsafe_variable,
                               "variable " + v + " in " + role + " " + to_string(a) + " of " + where +
                                   " does not occur in a positive body literal"});
    };
    for (const auto& h : head) check(h, "head");
    for (const auto& l : body)
        if (!l.positive || l.atom.is_equality()) check(l.atom, "literal");
}

} // namespace

std::vector<Violation> validate(const Database& db) {
    std::vector<Violation> out;
    auto views = db.view_predicates();

    std::set<std::string> reported;
    for (const auto& f : db.edb) {
        if (views.count(f.predicate) && reported.insert(f.predicate).second)
            out.push_back({Violation::Kind::view_and_base,
                           "predicate " + f.predicate + " is both view (IDB) and base (EDB)"});
        if (!f.is_ground())
            out.push_back({Violation::Kind::non_ground_fact, "fact " + to_string(f) + " is not ground"});
        if (f.is_equality())
            out.push_back({Violation::Kind::reserved_predicate, "eq is built in and cannot be a fact"});
    }

    for (const auto& r : db.idb) {
        if (r.body.empty())
            out.push_back({Violation::Kind::unit_clause, "IDB contains unit clause " + to_string(r)});
        for (const auto& h : r.head)
            if (h.is_equality())
                out.push_back({Violation::Kind::reserved_predicate,
                               "eq is built in and cannot be defined: " + to_string(r)});
        check_safety(r.head, r.body, to_string(r), out);
    }
    for (const auto& c : db.ic) check_safety({}, c.body, to_string(c), out);

    std::map<std::string, std::size_t> arity;
    auto note = [&](const Atom& a) {
        auto [it, inserted] = arity.emplace(a.predicate, a.arity());
        if (!inserted && it->second != a.arity())
            out.push_back({Violation::Kind::arity_conflict,
                           "predicate " + a.predicate + " used with arities " +
                               std::to_string(it->second) + " and " + std::to_string(a.arity())});
    };
    for (const auto& r : db.idb) {
        for (const auto& h : r.head) note(h);
        for (const auto& l : r.body) note(l.atom);
    }
    for (const auto& f : db.edb) note(f);
    for (const auto& c : db.ic)
        for (const auto& l : c.body) note(l.atom);
    if (arity.count(kEqualityPredicate) && arity.at(kEqualityPredicate) != 2)
        out.push_back({Violation::Kind::arity_conflict, "eq takes exactly two arguments"});
    return out;
}

} // namespace vud
