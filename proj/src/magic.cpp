#include "vud/magic.hpp"

#include "vud/analysis.hpp"
#include "vud/error.hpp"
#include "vud/hitting_set.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace vud {

std::vector<std::string> request_violations(const Database& db, const VURequest& req) {
    std::vector<std::string> out;
    auto views = db.view_predicates();
    for (const auto* side : {&req.inserts, &req.deletes})
        for (const auto& a : *side) {
            if (!a.is_ground()) out.push_back(to_string(a) + " is not ground");
            if (!views.count(a.predicate)) out.push_back(to_string(a) + " is not a view atom");
        }
    for (const auto& a : req.inserts)
        if (req.deletes.count(a)) out.push_back(to_string(a) + " is both inserted and deleted");
    if (!out.empty()) return out;
    Interpretation pm = least_model(db);
    for (const auto& a : req.inserts)
        if (pm.contains(a)) out.push_back(to_string(a) + " is already true");
    for (const auto& a : req.deletes)
        if (!pm.contains(a)) out.push_back(to_string(a) + " is already false");
    return out;
}

Atom DeltaAtom::encoded() const {
    return Atom((direction == Direction::insert ? "+" : "-") + atom.predicate, atom.args);
}

bool DeltaAtom::is_delta(const Atom& a) {
    return !a.predicate.empty() && (a.predicate.front() == '+' || a.predicate.front() == '-');
}

DeltaAtom DeltaAtom::decode(const Atom& a) {
    if (!is_delta(a)) throw Error(to_string(a) + " is not a delta atom");
    return {a.predicate.front() == '+' ? Direction::insert : Direction::remove,
            Atom(a.predicate.substr(1), a.args)};
}

std::string to_string(const DeltaAtom& d) { return to_string(d.encoded()); }

std::set<DeltaAtom> vu_seeds(const VURequest& req) {
    std::set<DeltaAtom> out;
    for (const auto& a : req.inserts) out.insert({Direction::insert, a});
    for (const auto& a : req.deletes) out.insert({Direction::remove, a});
    return out;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

std::vector<std::string> ordered_vars(const std::vector<Literal>& body) {
    std::vector<std::string> out;
    for (const auto& l : body)
        for (auto& v : variables_of(l.atom))
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}

std::vector<Term> as_terms(const std::vector<std::string>& vars) {
    std::vector<Term> out;
    for (const auto& v : vars) out.push_back(Term::variable(v));
    return out;
}

std::set<std::string> var_set(const Atom& a) {
    auto v = variables_of(a);
    return {v.begin(), v.end()};
}

class Normalizer {
public:
    explicit Normalizer(const std::vector<Rule>& idb) {
        for (const auto& r : idb) {
            for (const auto& h : r.head) taken_.insert(h.predicate);
            for (const auto& l : r.body) taken_.insert(l.atom.predicate);
        }
    }

    std::vector<Rule> run(const std::vector<Rule>& idb) {
        std::vector<std::string> order;
        std::map<std::string, std::vector<const Rule*>> by_head;
        for (const auto& r : idb) {
            if (r.head.size() != 1) throw NormalizationError("disjunctive rule " + to_string(r));
            check(r);
            const auto& p = r.head.front().predicate;
            if (!by_head.count(p)) order.push_back(p);
            by_head[p].push_back(&r);
        }
        for (const auto& p : order) {
            const auto& rules = by_head[p];
            if (rules.size() == 1) {
                shape(*rules.front());
                continue;
            }
            for (const Rule* r : rules) {
                Atom aux(fresh(p), r->head.front().args);
                out_.push_back(Rule{{r->head.front()}, {Literal(aux)}});
                shape(Rule{{aux}, r->body});
            }
        }
        return std::move(out_);
    }

private:
    std::set<std::string> taken_;
    std::map<std::string, std::size_t> counters_;
    std::vector<Rule> out_;

    std::string fresh(const std::string& base) {
        while (true) {
            std::string name = base + "#" + std::to_string(++counters_[base]);
            if (taken_.insert(name).second) return name;
        }
    }

    static void check(const Rule& r) {
        std::set<std::string> seen;
        for (const auto& t : r.head.front().args)
            if (t.is_constant() || !seen.insert(t.name).second)
                throw NormalizationError("head of " + to_string(r) + " must have distinct variables as arguments");
        for (const auto& l : r.body)
            if (l.atom.is_equality()) throw NormalizationError("built-in equality in rule body: " + to_string(r));
    }

    void shape(Rule r) {
        const Atom& head = r.head.front();
        auto head_vars = var_set(head);
        auto body_vars = ordered_vars(r.body);
        auto extra = std::find_if(body_vars.begin(), body_vars.end(),
                                  [&](const std::string& v) { return !head_vars.count(v); });
        if (extra != body_vars.end()) {
            // Projection: drop one variable through an auxiliary predicate.
            std::vector<Term> args = head.args;
            args.push_back(Term::variable(*extra));
            Atom aux(fresh(head.predicate), args);
            out_.push_back(Rule{{head}, {Literal(aux)}});
            shape(Rule{{aux}, std::move(r.body)});
            return;
        }
        std::stable_partition(r.body.begin(), r.body.end(), [](const Literal& l) { return l.positive; });
        if (r.body.size() <= 1) {
            out_.push_back(std::move(r));
            return;
        }
        if (!r.body.front().positive) {
            // Only negative literals (propositional by safety): one auxiliary each.
            std::vector<Literal> replaced;
            for (const auto& l : r.body) {
                Atom aux(fresh(head.predicate), l.atom.args);
                out_.push_back(Rule{{aux}, {l}});
                replaced.emplace_back(aux);
            }
            shape(Rule{{head}, std::move(replaced)});
            return;
        }
        if (r.body.size() == 2) {
            out_.push_back(std::move(r));
            return;
        }
        Literal last = r.body.back();
        std::vector<Literal> rest(r.body.begin(), r.body.end() - 1);
        Atom aux(fresh(head.predicate), as_terms(ordered_vars(rest)));
        out_.push_back(Rule{{head}, {Literal(aux), last}});
        shape(Rule{{aux}, std::move(rest)});
    }
};

} // namespace

std::vector<Rule> normalize(const std::vector<Rule>& idb) { return Normalizer(idb).run(idb); }

// ---------------------------------------------------------------------------
// VU rules

namespace {

Atom plus(const Atom& a) { return DeltaAtom{Direction::insert, a}.encoded(); }
Atom minus(const Atom& a) { return DeltaAtom{Direction::remove, a}.encoded(); }

Rule vu(std::vector<Atom> head, std::vector<Literal> body) { return Rule{std::move(head), std::move(body)}; }

// Renames the variables of `r` so its head arguments read as `target`.
Rule align_head(const Rule& r, const std::vector<Term>& target) {
    Substitution rename;
    const auto& args = r.head.front().args;
    for (std::size_t i = 0; i < args.size(); ++i) rename[args[i].name] = target[i].name;
    Rule out = r;
    for (auto& h : out.head)
        for (auto& t : h.args)
            if (t.is_variable() && rename.count(t.name)) t.name = rename[t.name];
    for (auto& l : out.body)
        for (auto& t : l.atom.args)
            if (t.is_variable() && rename.count(t.name)) t.name = rename[t.name];
    return out;
}

bool same_vars(const Atom& a, const std::set<std::string>& vars) { return var_set(a) == vars; }

} // namespace

VuRuleSet vu_rules(const std::vector<Rule>& normalized, const std::vector<std::string>& universe) {
    VuRuleSet out;
    std::vector<std::string> order;
    std::map<std::string, std::vector<const Rule*>> by_head;
    for (const auto& r : normalized) {
        if (r.head.size() != 1) throw NormalizationError("disjunctive rule " + to_string(r));
        const auto& p = r.head.front().predicate;
        if (!by_head.count(p)) order.push_back(p);
        by_head[p].push_back(&r);
    }
    for (const auto& p : order) {
        const auto& rules = by_head[p];
        const Rule& first = *rules.front();
        const Atom& h = first.head.front();
        auto hv = var_set(h);

        if (rules.size() > 1) {
            // Case 3, for any number of alternatives.
            std::vector<Atom> disjuncts;
            for (const Rule* raw : rules) {
                Rule r = align_head(*raw, h.args);
                if (r.body.size() != 1 || !r.body.front().positive || r.body.front().atom.args != h.args)
                    throw NormalizationError("predicate " + p + " has several rules not of the form p(x) :- q(x)");
                const Atom& q = r.body.front().atom;
                out.rules.push_back(vu({minus(q)}, {Literal(minus(h)), Literal(q)}));
                disjuncts.push_back(plus(q));
            }
            out.rules.push_back(vu(disjuncts, {Literal(plus(h))}));
            continue;
        }

        const auto& body = first.body;
        if (body.size() == 1 && body[0].positive) {
            const Atom& q = body[0].atom;
            auto qv = var_set(q);
            if (qv == hv) { // case 4a
                out.rules.push_back(vu({plus(q)}, {Literal(plus(h))}));
                out.rules.push_back(vu({minus(q)}, {Literal(minus(h))}));
                continue;
            }
            std::vector<std::string> extra;
            std::set_difference(qv.begin(), qv.end(), hv.begin(), hv.end(), std::back_inserter(extra));
            bool covers = std::includes(qv.begin(), qv.end(), hv.begin(), hv.end());
            if (covers && extra.size() == 1) { // case 5
                std::string fresh = "_new_" + std::to_string(out.fresh_constants.size());
                out.fresh_constants.push_back(fresh);
                out.rules.push_back(vu({minus(q)}, {Literal(minus(h)), Literal(q)}));
                std::vector<Atom> disjuncts;
                auto constants = universe;
                constants.push_back(fresh);
                for (const auto& c : constants) disjuncts.push_back(plus(vud::apply(q, {{extra.front(), c}})));
                out.rules.push_back(vu(disjuncts, {Literal(plus(h))}));
                continue;
            }
        }
        if (body.size() == 1 && !body[0].positive && same_vars(body[0].atom, hv)) { // case 4b
            const Atom& q = body[0].atom;
            out.rules.push_back(vu({minus(q)}, {Literal(plus(h))}));
            out.rules.push_back(vu({plus(q)}, {Literal(minus(h))}));
            continue;
        }
        if (body.size() == 2) {
            Literal a = body[0], b = body[1];
            if (!a.positive) std::swap(a, b);
            const Atom& q = a.atom;
            const Atom& r = b.atom;
            auto qv = var_set(q), rv = var_set(r);
            std::set<std::string> both = qv;
            both.insert(rv.begin(), rv.end());
            if (a.positive && b.positive && both == hv) { // case 1
                out.rules.push_back(vu({plus(q)}, {Literal(plus(h)), Literal(q, false)}));
                out.rules.push_back(vu({plus(r)}, {Literal(plus(h)), Literal(r, false)}));
                out.rules.push_back(vu({minus(q), minus(r)}, {Literal(minus(h))}));
                continue;
            }
            if (a.positive && !b.positive && qv == hv &&
                std::includes(qv.begin(), qv.end(), rv.begin(), rv.end())) { // case 2
                out.rules.push_back(vu({plus(q)}, {Literal(plus(h)), Literal(q, false)}));
                out.rules.push_back(vu({minus(r)}, {Literal(plus(h)), Literal(r)}));
                out.rules.push_back(vu({minus(q), plus(r)}, {Literal(minus(h))}));
                continue;
            }
        }
        throw NormalizationError("rule matches no VU rule case: " + to_string(first));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Magic sets

Database MagicProgram::database(const std::set<Atom>& edb) const {
    Database db;
    db.idb = rules;
    db.edb = edb;
    db.edb.insert(seed);
    return db;
}

namespace {

Atom magic(const Atom& a) { return Atom(kMagicPrefix + a.predicate, a.args); }

} // namespace

MagicProgram magic_rewrite(const Database& db, const Atom& goal) {
    return magic_rewrite(db.idb, goal, db.constants());
}

MagicProgram magic_rewrite(const std::vector<Rule>& idb, const Atom& goal,
                           const std::set<std::string>& extra_constants) {
    for (const auto& r : idb)
        if (!r.is_definite()) throw ValidationError("magic rewriting needs definite rules: " + to_string(r));
    Database source;
    source.idb = idb;
    auto constants = extra_constants;
    for (const auto& t : goal.args) constants.insert(t.name);
    Database g = ground(source, constants);
    auto views = source.view_predicates();

    MagicProgram out;
    out.seed = magic(goal);
    std::set<Rule> seen;
    auto emit = [&](Rule r) {
        if (seen.insert(r).second) out.rules.push_back(std::move(r));
    };
    for (const auto& r : g.idb) {
        const Atom& h = r.head.front();
        Rule guarded{{h}, {Literal(magic(h))}};
        guarded.body.insert(guarded.body.end(), r.body.begin(), r.body.end());
        emit(std::move(guarded));
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (!views.count(r.body[i].atom.predicate)) continue;
            Rule propagate{{magic(r.body[i].atom)}, {Literal(magic(h))}};
            propagate.body.insert(propagate.body.end(), r.body.begin(), r.body.begin() + static_cast<long>(i));
            emit(std::move(propagate));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Realizations

std::set<Atom> Realization::apply_to(const std::set<Atom>& edb) const {
    std::set<Atom> out;
    std::set_difference(edb.begin(), edb.end(), deletes.begin(), deletes.end(), std::inserter(out, out.end()));
    out.insert(inserts.begin(), inserts.end());
    return out;
}

std::string to_string(const Realization& u) {
    std::string out;
    for (const auto& a : u.inserts) out += "+" + to_string(a) + ".\n";
    for (const auto& a : u.deletes) out += "-" + to_string(a) + ".\n";
    return out;
}

bool realizes(const Database& db, const VURequest& req, const Realization& u) {
    Database next = db;
    next.edb = u.apply_to(db.edb);
    Interpretation m = least_model(next);
    for (const auto& a : req.inserts)
        if (!m.contains(a)) return false;
    for (const auto& a : req.deletes)
        if (m.contains(a)) return false;
    return check_ic(next, m).empty();
}

namespace {

using World = std::set<Atom>;

// Sub-transactions of `u` other than `u` itself, smallest first.
bool has_realizing_part(const Database& db, const VURequest& req, const Realization& u) {
    std::vector<std::pair<Atom, bool>> items;
    for (const auto& a : u.inserts) items.emplace_back(a, true);
    for (const auto& a : u.deletes) items.emplace_back(a, false);
    auto subset = [&](std::uint32_t mask) {
        Realization part;
        for (std::size_t i = 0; i < items.size(); ++i)
            if (mask & (1u << i)) (items[i].second ? part.inserts : part.deletes).insert(items[i].first);
        return part;
    };
    const std::uint32_t full = (1u << items.size()) - 1;
    if (items.size() > 12) {
        for (std::size_t i = 0; i < items.size(); ++i)
            if (realizes(db, req, subset(full & ~(1u << i)))) return true;
        return false;
    }
    for (std::uint32_t mask = 0; mask < full; ++mask)
        if (realizes(db, req, subset(mask))) return true;
    return false;
}

} // namespace

std::vector<Realization> insertion_realizations(const Database& db, const VURequest& req,
                                                const RealizationOptions& options) {
    if (auto problems = request_violations(db, req); !problems.empty()) {
        std::string msg = "invalid request:";
        for (const auto& p : problems) msg += " " + p + ";";
        throw InvalidRequest(msg);
    }
    auto normalized = normalize(db.idb);
    std::set<std::string> source_views = db.view_predicates();
    std::set<std::string> views;
    for (const auto& r : normalized) views.insert(r.head.front().predicate);
    std::set<std::string> extra;
    for (const auto* side : {&req.inserts, &req.deletes})
        for (const auto& a : *side)
            for (const auto& t : a.args) extra.insert(t.name);
    auto rules = vu_rules(normalized, herbrand_universe(db, extra));

    Database eval = db;
    eval.idb = normalized;

    std::vector<const Rule*> definite, disjunctive;
    for (const auto& r : rules.rules) (r.head.size() == 1 ? definite : disjunctive).push_back(&r);

    World request_seeds;
    for (const auto& d : vu_seeds(req)) request_seeds.insert(d.encoded());

    std::size_t worlds = 0;
    std::set<Realization> candidates;
    std::vector<std::string> trace;

    // One breadth-first round over the state `edb`, starting from `seeds`.
    auto explore = [&](const std::set<Atom>& edb, const World& seeds) {
        eval.edb = edb;
        const std::set<Atom> pm = least_model(eval).atoms;
        auto view_of = [&](const World& w) {
            Interpretation i;
            i.atoms = pm;
            i.atoms.insert(w.begin(), w.end());
            return i;
        };
        std::set<Realization> found;
        std::deque<World> queue{seeds};
        std::set<World> seen{seeds};
        while (!queue.empty()) {
            World w = std::move(queue.front());
            queue.pop_front();
            for (bool changed = true; changed;) {
                changed = false;
                for (const Rule* r : definite) {
                    for (const auto& s : matches(r->body, view_of(w))) {
                        Atom h = vud::apply(r->head.front(), s);
                        if (w.insert(h).second) changed = true;
                    }
                }
            }
            bool inconsistent = std::any_of(w.begin(), w.end(), [&](const Atom& a) {
                auto d = DeltaAtom::decode(a);
                d.direction = d.direction == Direction::insert ? Direction::remove : Direction::insert;
                return w.count(d.encoded()) != 0;
            });
            if (inconsistent) continue;

            std::optional<std::vector<Atom>> split;
            Interpretation current = view_of(w);
            for (const Rule* r : disjunctive) {
                for (const auto& s : matches(r->body, current)) {
                    std::vector<Atom> heads;
                    for (const auto& h : r->head) heads.push_back(vud::apply(h, s));
                    bool satisfied =
                        std::any_of(heads.begin(), heads.end(), [&](const Atom& h) { return w.count(h) != 0; });
                    if (!satisfied) {
                        split = std::move(heads);
                        break;
                    }
                }
                if (split) break;
            }
            if (split) {
                for (const auto& h : *split) {
                    World next = w;
                    next.insert(h);
                    if (seen.insert(next).second) {
                        if (++worlds > options.world_limit)
                            throw LimitExceeded("realization search exceeds " + std::to_string(options.world_limit) +
                                                " worlds");
                        queue.push_back(std::move(next));
                    }
                }
                continue;
            }
            Realization u;
            for (const auto& a : w) {
                auto d = DeltaAtom::decode(a);
                if (views.count(d.atom.predicate) || source_views.count(d.atom.predicate)) continue;
                if (d.direction == Direction::insert && !db.edb.count(d.atom)) u.inserts.insert(d.atom);
                if (d.direction == Direction::remove && db.edb.count(d.atom)) u.deletes.insert(d.atom);
            }
            found.insert(std::move(u));
        }
        return found;
    };

    // A candidate that falls short changes the model the VU rules read, so
    // it is explored again from the state it leaves, its own changes fixed.
    std::set<Realization> frontier = explore(db.edb, request_seeds);
    for (std::size_t round = 0; !frontier.empty(); ++round) {
        std::set<Realization> next;
        for (const auto& u : frontier) {
            if (!candidates.insert(u).second) continue;
            if (round + 1 >= options.rounds || realizes(db, req, u)) continue;
            World seeds = request_seeds;
            for (const auto& a : u.inserts) seeds.insert(DeltaAtom{Direction::insert, a}.encoded());
            for (const auto& a : u.deletes) seeds.insert(DeltaAtom{Direction::remove, a}.encoded());
            for (auto& v : explore(u.apply_to(db.edb), seeds))
                if (!candidates.count(v)) next.insert(std::move(v));
        }
        frontier = std::move(next);
    }

    std::vector<Realization> valid;
    for (const auto& u : candidates) {
        if (realizes(db, req, u)) valid.push_back(u);
        else trace.push_back("candidate dropped: " + to_string(u));
    }
    std::vector<Realization> out;
    for (const auto& u : valid) {
        bool keep = true;
        if (options.policy == RealizationPolicy::subtransaction_minimal) {
            keep = !has_realizing_part(db, req, u);
        } else {
            keep = std::none_of(valid.begin(), valid.end(), [&](const Realization& v) {
                return v != u && std::includes(u.inserts.begin(), u.inserts.end(), v.inserts.begin(), v.inserts.end()) &&
                       std::includes(u.deletes.begin(), u.deletes.end(), v.deletes.begin(), v.deletes.end());
            });
        }
        if (keep) out.push_back(u);
    }
    if (out.empty()) throw Unrealizable("no realization satisfies the request and the constraints", trace);
    std::sort(out.begin(), out.end(), [](const Realization& a, const Realization& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<std::set<Atom>> minimality_filter_insert(const std::vector<std::set<Atom>>& candidates,
                                                     const Database& db, const Atom& a) {
    std::vector<std::set<Atom>> out;
    for (const auto& c : candidates) {
        auto with = [&](const std::set<Atom>& extra) {
            Database next = db;
            next.edb.insert(extra.begin(), extra.end());
            return least_model(next).contains(a);
        };
        if (!with(c)) continue;
        bool necessary = std::all_of(c.begin(), c.end(), [&](const Atom& s) {
            auto rest = c;
            rest.erase(s);
            return !with(rest);
        });
        if (necessary) out.push_back(c);
    }
    return out;
}

} // namespace vud
