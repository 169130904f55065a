#include "oracles.hpp"

#include <algorithm>
#include <map>

namespace oracle {

using vud::Literal;
using vud::Rule;
using vud::Term;

namespace {

std::set<std::string> all_constants(const Database& db) {
    std::set<std::string> out;
    auto add = [&](const Atom& a) {
        for (const auto& t : a.args)
            if (t.is_constant()) out.insert(t.name);
    };
    for (const auto& f : db.edb) add(f);
    for (const auto& r : db.idb) {
        for (const auto& h : r.head) add(h);
        for (const auto& l : r.body) add(l.atom);
    }
    for (const auto& c : db.ic)
        for (const auto& l : c.body) add(l.atom);
    return out;
}

std::vector<std::string> vars_in(const std::vector<Atom>& head, const std::vector<Literal>& body) {
    std::vector<std::string> out;
    auto add = [&](const Atom& a) {
        for (const auto& t : a.args)
            if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    };
    for (const auto& h : head) add(h);
    for (const auto& l : body) add(l.atom);
    return out;
}

Atom subst(const Atom& a, const std::map<std::string, std::string>& s) {
    Atom out = a;
    for (auto& t : out.args)
        if (t.is_variable()) t = Term::constant(s.at(t.name));
    return out;
}

// Instances of (head, body) with equality decided; false equalities drop
// the instance.
std::vector<std::pair<std::vector<Atom>, std::vector<Literal>>>
instances(const std::vector<Atom>& head, const std::vector<Literal>& body, const std::vector<std::string>& universe) {
    std::vector<std::pair<std::vector<Atom>, std::vector<Literal>>> out;
    auto vars = vars_in(head, body);
    std::size_t total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) total *= universe.size();
    if (!vars.empty() && universe.empty()) return out;
    for (std::size_t code = 0; code < total; ++code) {
        std::map<std::string, std::string> s;
        std::size_t c = code;
        for (const auto& v : vars) {
            s[v] = universe[c % universe.size()];
            c /= universe.size();
        }
        std::vector<Atom> h;
        for (const auto& a : head) h.push_back(subst(a, s));
        std::vector<Literal> b;
        bool keep = true;
        for (const auto& l : body) {
            Atom g = subst(l.atom, s);
            if (g.predicate == vud::kEqualityPredicate) {
                if ((g.args[0] == g.args[1]) != l.positive) keep = false;
                continue;
            }
            b.emplace_back(g, l.positive);
        }
        if (keep) out.emplace_back(std::move(h), std::move(b));
    }
    return out;
}

std::set<std::string> heads_of(const Database& db) {
    std::set<std::string> out;
    for (const auto& r : db.idb)
        for (const auto& h : r.head) out.insert(h.predicate);
    return out;
}

} // namespace

std::vector<Rule> ground_rules(const Database& db, const std::set<std::string>& extra_constants) {
    auto c = all_constants(db);
    c.insert(extra_constants.begin(), extra_constants.end());
    std::vector<std::string> universe(c.begin(), c.end());
    std::vector<Rule> out;
    for (const auto& r : db.idb)
        for (auto& [h, b] : instances(r.head, r.body, universe)) out.push_back(Rule{h, b});
    return out;
}

namespace {

// Ground program with strata, reusable across fact sets.
struct Grounded {
    std::vector<Rule> rules;
    std::map<std::string, int> level;
    int top = 0;
    bool stratified = true;
    std::vector<std::vector<Literal>> denials;

    explicit Grounded(const Database& db) {
        auto views = heads_of(db);
        for (const auto& v : views) level[v] = 0;
        top = static_cast<int>(views.size());
        bool changed = true;
        while (changed && stratified) {
            changed = false;
            for (const auto& r : db.idb)
                for (const auto& h : r.head)
                    for (const auto& l : r.body) {
                        auto it = level.find(l.atom.predicate);
                        if (it == level.end()) continue;
                        int need = it->second + (l.positive ? 0 : 1);
                        if (level[h.predicate] < need) {
                            level[h.predicate] = need;
                            if (need > top) stratified = false;
                            changed = true;
                        }
                    }
        }
        rules = ground_rules(db);
        auto c = all_constants(db);
        std::vector<std::string> universe(c.begin(), c.end());
        for (const auto& ic : db.ic)
            for (auto& [h, b] : instances({}, ic.body, universe)) denials.push_back(b);
    }

    std::set<Atom> model(std::set<Atom> m) const {
        for (int stratum = 0; stratum <= top; ++stratum) {
            bool grew = true;
            while (grew) {
                grew = false;
                for (const auto& r : rules) {
                    if (level.at(r.head.front().predicate) != stratum || m.count(r.head.front())) continue;
                    bool ok = std::all_of(r.body.begin(), r.body.end(), [&](const Literal& l) {
                        return m.count(l.atom) == (l.positive ? 1u : 0u);
                    });
                    if (ok) {
                        m.insert(r.head.front());
                        grew = true;
                    }
                }
            }
        }
        return m;
    }

    bool satisfied(const std::set<Atom>& m) const {
        for (const auto& b : denials)
            if (std::all_of(b.begin(), b.end(),
                            [&](const Literal& l) { return m.count(l.atom) == (l.positive ? 1u : 0u); }))
                return false;
        return true;
    }
};

} // namespace

std::optional<std::set<Atom>> perfect_model(const Database& db) {
    Grounded g(db);
    if (!g.stratified) return std::nullopt;
    return g.model(db.edb);
}

bool ic_satisfied(const Database& db, const std::set<Atom>& model) {
    auto c = all_constants(db);
    std::vector<std::string> universe(c.begin(), c.end());
    for (const auto& ic : db.ic)
        for (auto& [h, b] : instances({}, ic.body, universe)) {
            bool fires = std::all_of(b.begin(), b.end(),
                                     [&](const Literal& l) { return model.count(l.atom) == (l.positive ? 1u : 0u); });
            if (fires) return false;
        }
    return true;
}

std::vector<Atom> base_herbrand(const Database& db) {
    auto views = heads_of(db);
    std::map<std::string, std::size_t> preds;
    for (const auto& f : db.edb) preds[f.predicate] = f.arity();
    for (const auto& r : db.idb)
        for (const auto& l : r.body) preds[l.atom.predicate] = l.atom.arity();
    for (const auto& ic : db.ic)
        for (const auto& l : ic.body) preds[l.atom.predicate] = l.atom.arity();
    auto c = all_constants(db);
    std::vector<std::string> universe(c.begin(), c.end());
    std::vector<Atom> out;
    for (const auto& [p, k] : preds) {
        if (views.count(p) || p == vud::kEqualityPredicate) continue;
        std::vector<Atom> head{Atom(p)};
        for (std::size_t i = 0; i < k; ++i) head.front().args.push_back(Term::variable("V" + std::to_string(i)));
        for (auto& [h, b] : instances(head, {}, universe)) out.push_back(h.front());
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

template <typename T>
std::vector<std::set<T>> keep_minimal(std::vector<std::set<T>> sets) {
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<std::set<T>> out;
    for (const auto& s : sets) {
        bool dominated = std::any_of(out.begin(), out.end(), [&](const std::set<T>& m) {
            return std::includes(s.begin(), s.end(), m.begin(), m.end());
        });
        if (!dominated) out.push_back(s);
    }
    return out;
}

bool derivable(const Database& db, const std::set<Atom>& edb, const Atom& a) {
    Database d = db;
    d.edb = edb;
    auto m = perfect_model(d);
    return m && m->count(a);
}

} // namespace

std::vector<std::set<Atom>> minimal_explanations(const Database& db, const Atom& a) {
    std::vector<Atom> facts(db.edb.begin(), db.edb.end());
    std::vector<std::set<Atom>> found;
    for (std::uint32_t mask = 0; mask < (1u << facts.size()); ++mask) {
        std::set<Atom> s;
        for (std::size_t i = 0; i < facts.size(); ++i)
            if (mask & (1u << i)) s.insert(facts[i]);
        if (derivable(db, s, a)) found.push_back(std::move(s));
    }
    return keep_minimal(found);
}

std::vector<std::set<Atom>> minimal_deletions(const Database& db, const Atom& a) {
    std::vector<Atom> facts(db.edb.begin(), db.edb.end());
    std::vector<std::set<Atom>> found;
    for (std::uint32_t mask = 0; mask < (1u << facts.size()); ++mask) {
        std::set<Atom> removed, kept;
        for (std::size_t i = 0; i < facts.size(); ++i) (mask & (1u << i) ? removed : kept).insert(facts[i]);
        Database d = db;
        d.edb = kept;
        auto m = perfect_model(d);
        if (m && !m->count(a) && ic_satisfied(d, *m)) found.push_back(std::move(removed));
    }
    return keep_minimal(found);
}

std::vector<Transaction> minimal_transactions(const Database& db, const Atom& a, bool insert, std::size_t max_size,
                                              bool insert_only, bool delete_only) {
    std::vector<std::pair<bool, Atom>> changes;
    if (!delete_only)
        for (const auto& b : base_herbrand(db))
            if (!db.edb.count(b)) changes.emplace_back(true, b);
    if (!insert_only)
        for (const auto& f : db.edb) changes.emplace_back(false, f);

    Grounded g(db);
    auto realizes = [&](const std::vector<std::size_t>& pick) {
        std::set<Atom> edb = db.edb;
        for (auto i : pick) {
            if (changes[i].first)
                edb.insert(changes[i].second);
            else
                edb.erase(changes[i].second);
        }
        auto m = g.model(edb);
        return m.count(a) == (insert ? 1u : 0u) && g.satisfied(m);
    };

    std::vector<std::set<std::size_t>> found;
    std::vector<std::size_t> pick;
    std::size_t n = changes.size();
    for (std::size_t size = 0; size <= std::min(max_size, n); ++size) {
        pick.resize(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            std::set<std::size_t> s(pick.begin(), pick.end());
            bool dominated = std::any_of(found.begin(), found.end(), [&](const std::set<std::size_t>& f) {
                return std::includes(s.begin(), s.end(), f.begin(), f.end());
            });
            if (!dominated && realizes(pick)) found.push_back(s);
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    std::vector<Transaction> out;
    for (const auto& s : found) {
        Transaction t;
        for (auto i : s) (changes[i].first ? t.inserts : t.deletes).insert(changes[i].second);
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_hitting_set(const std::set<int>& h, const std::vector<std::set<int>>& family) {
    std::set<int> all;
    for (const auto& s : family) all.insert(s.begin(), s.end());
    for (int x : h)
        if (!all.count(x)) return false;
    for (const auto& s : family) {
        if (s.empty()) continue;
        if (std::none_of(s.begin(), s.end(), [&](int x) { return h.count(x) != 0; })) return false;
    }
    return true;
}

std::vector<std::set<int>> minimal_hitting_sets(const std::vector<std::set<int>>& family) {
    std::set<int> all;
    for (const auto& s : family) all.insert(s.begin(), s.end());
    std::vector<int> items(all.begin(), all.end());
    std::vector<std::set<int>> found;
    for (std::uint32_t mask = 0; mask < (1u << items.size()); ++mask) {
        std::set<int> h;
        for (std::size_t i = 0; i < items.size(); ++i)
            if (mask & (1u << i)) h.insert(items[i]);
        if (is_hitting_set(h, family)) found.push_back(std::move(h));
    }
    return keep_minimal(found);
}

bool is_model(const vud::DisjunctiveProgram& prog, const std::set<vud::SignedAtom>& m) {
    for (const auto& x : m)
        if (m.count(x.complement())) return false;
    for (const auto& c : prog.clauses) {
        bool body = std::all_of(c.body.begin(), c.body.end(), [&](const vud::SignedAtom& s) { return m.count(s) != 0; });
        if (!body) continue;
        bool head = std::any_of(c.head.begin(), c.head.end(), [&](const vud::SignedAtom& s) { return m.count(s) != 0; });
        if (!head) return false;
    }
    return true;
}

std::vector<std::set<vud::SignedAtom>> minimal_models(const vud::DisjunctiveProgram& prog,
                                                      const vud::SignedAtom& request) {
    std::set<vud::SignedAtom> symbols{request};
    for (const auto& c : prog.clauses) {
        symbols.insert(c.head.begin(), c.head.end());
        symbols.insert(c.body.begin(), c.body.end());
    }
    std::vector<vud::SignedAtom> items(symbols.begin(), symbols.end());
    std::vector<std::set<vud::SignedAtom>> found;
    for (std::uint64_t mask = 0; mask < (1ull << items.size()); ++mask) {
        std::set<vud::SignedAtom> m;
        for (std::size_t i = 0; i < items.size(); ++i)
            if (mask & (1ull << i)) m.insert(items[i]);
        if (m.count(request) && is_model(prog, m)) found.push_back(std::move(m));
    }
    return keep_minimal(found);
}

} // namespace oracle
