#include "vud/tableau.hpp"

#include "vud/sld.hpp"

#include "vud/analysis.hpp"
#include "vud/error.hpp"

#include <algorithm>
#include <sstream>

namespace vud {

DisjunctiveProgram transform(const std::vector<Rule>& ground_idb, const std::set<Atom>& s) {
    DisjunctiveProgram out;
    for (const auto& r : ground_idb) {
        std::vector<Atom> head = r.head;
        std::vector<Atom> body;
        for (const auto& l : r.body) (l.positive ? body : head).push_back(l.atom);
        DisjunctiveClause c;
        for (const auto& b : body)
            if (s.count(b)) c.head.push_back({b, true});
        for (const auto& h : head)
            if (!s.count(h)) c.head.push_back({h, false});
        for (const auto& b : body)
            if (!s.count(b)) c.body.push_back({b, false});
        for (const auto& h : head)
            if (s.count(h)) c.body.push_back({h, true});
        out.clauses.push_back(std::move(c));
    }
    return out;
}

DisjunctiveProgram idb_star(const Database& db) {
    Database g = ground(db);
    auto views = db.view_predicates();
    std::set<Atom> s0 = db.edb;
    for (const auto& r : g.idb) {
        for (const auto& h : r.head) s0.insert(h);
        for (const auto& l : r.body)
            if (views.count(l.atom.predicate)) s0.insert(l.atom);
    }
    return transform(g.idb, s0);
}

DisjunctiveProgram idb_plus(const Database& db) {
    Database g = ground(db);
    return transform(g.idb, least_model(db).atoms);
}

DisjunctiveProgram idb_plus(const Database& db, const Atom& goal) {
    SldTree tree = sld_tree(db, goal);
    std::vector<Rule> used;
    for (auto leaf : tree.success_leaves())
        for (const auto& r : tree.nodes[leaf].rules)
            if (std::find(used.begin(), used.end(), r) == used.end()) used.push_back(r);
    return transform(used, least_model(db).atoms);
}

std::vector<DisjunctiveProgram> idb_plus_branches(const Database& db, const Atom& goal) {
    SldTree tree = sld_tree(db, goal);
    auto model = least_model(db).atoms;
    std::vector<DisjunctiveProgram> out;
    for (auto leaf : tree.success_leaves()) out.push_back(transform(tree.nodes[leaf].rules, model));
    return out;
}

std::vector<const TableauBranch*> UpdateTableau::open_branches() const {
    std::vector<const TableauBranch*> out;
    for (const auto& b : branches)
        if (b.is_open()) out.push_back(&b);
    return out;
}

namespace {

struct Pending {
    std::size_t leaf;
    std::set<SignedAtom> literals;
};

} // namespace

UpdateTableau build_update_tableau(const DisjunctiveProgram& prog, const SignedAtom& request,
                                   const TableauOptions& options) {
    UpdateTableau t;
    t.request = request;
    TableauNode root;
    root.literal = request;
    t.nodes.push_back(std::move(root));

    std::vector<Pending> stack{{0, {request}}};
    auto path = [&](std::size_t leaf) {
        std::vector<SignedAtom> out;
        for (std::size_t n = leaf; n != TableauNode::npos; n = t.nodes[n].parent) out.push_back(t.nodes[n].literal);
        std::reverse(out.begin(), out.end());
        return out;
    };
    auto finish = [&](const Pending& p, TableauBranch::Mark mark, std::string reason) {
        if (t.branches.size() >= options.branch_limit)
            throw LimitExceeded("tableau exceeds " + std::to_string(options.branch_limit) + " branches");
        t.branches.push_back({p.leaf, path(p.leaf), mark, std::move(reason)});
    };

    while (!stack.empty()) {
        t.peak_live_branches = std::max(t.peak_live_branches, stack.size());
        Pending current = std::move(stack.back());
        stack.pop_back();

        const SignedAtom& last = t.nodes[current.leaf].literal;
        if (current.literals.count(last.complement())) {
            finish(current, TableauBranch::Mark::closed, "complementary pair " + to_string(last.atom));
            continue;
        }
        std::size_t chosen = prog.clauses.size();
        for (std::size_t i = 0; i < prog.clauses.size(); ++i) {
            const auto& c = prog.clauses[i];
            bool body = std::all_of(c.body.begin(), c.body.end(),
                                    [&](const SignedAtom& b) { return current.literals.count(b) != 0; });
            if (!body) continue;
            bool satisfied = std::any_of(c.head.begin(), c.head.end(),
                                         [&](const SignedAtom& h) { return current.literals.count(h) != 0; });
            if (satisfied) continue;
            chosen = i;
            break;
        }
        if (chosen == prog.clauses.size()) {
            finish(current, TableauBranch::Mark::open, "");
            continue;
        }
        const auto& clause = prog.clauses[chosen];
        if (clause.head.empty()) {
            finish(current, TableauBranch::Mark::closed, "denial " + to_string(clause));
            continue;
        }
        std::vector<Pending> children;
        for (const auto& h : clause.head) {
            TableauNode node{h, chosen, current.leaf, {}};
            t.nodes.push_back(std::move(node));
            std::size_t id = t.nodes.size() - 1;
            t.nodes[current.leaf].children.push_back(id);
            Pending child{id, current.literals};
            child.literals.insert(h);
            children.push_back(std::move(child));
        }
        for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
    }
    return t;
}

std::set<Atom> hitting_set_of_branch(const TableauBranch& b, const Database& db) {
    std::set<Atom> out;
    for (const auto& l : b.literals)
        if (l.negated && db.edb.count(l.atom)) out.insert(l.atom);
    return out;
}

namespace {

class MinimalityChecker {
public:
    MinimalityChecker(const Database& db, const Atom& a) : db_(db), program_(db, constants_of(a)) {
        goal_ = program_.find(a);
    }

    bool passes(const std::set<Atom>& hs) const {
        if (!goal_) return hs.empty();
        std::set<Atom> rest;
        std::set_difference(db_.edb.begin(), db_.edb.end(), hs.begin(), hs.end(), std::inserter(rest, rest.end()));
        auto base = program_.mask(rest);
        for (const auto& s : hs) {
            auto facts = base;
            if (auto id = program_.find(s)) facts[*id] = 1;
            if (!program_.closure(facts)[*goal_]) return false;
        }
        return true;
    }

private:
    static std::set<std::string> constants_of(const Atom& a) {
        std::set<std::string> out;
        for (const auto& t : a.args) out.insert(t.name);
        return out;
    }

    const Database& db_;
    GroundProgram program_;
    std::optional<GroundProgram::AtomId> goal_;
};

} // namespace

bool satisfies_strong_minimality(const std::set<Atom>& hs, const Database& db, const Atom& a) {
    return MinimalityChecker(db, a).passes(hs);
}

UpdateTableau strong_minimality_filter(UpdateTableau t, const Database& db, const Atom& a) {
    MinimalityChecker checker(db, a);
    for (auto& b : t.branches) {
        if (!b.is_open()) continue;
        auto hs = hitting_set_of_branch(b, db);
        if (!checker.passes(hs)) {
            b.mark = TableauBranch::Mark::closed;
            b.reason = "strong minimality fails for " + to_string(hs);
        }
    }
    return t;
}

SetFamily<Atom> edb_cuts(const UpdateTableau& t, const Database& db) {
    auto open = t.open_branches();
    if (open.empty()) return {};
    std::set<std::set<Atom>> family{{}};
    for (const auto* b : open) {
        auto choices = hitting_set_of_branch(*b, db);
        std::set<std::set<Atom>> next;
        for (const auto& partial : family)
            for (const auto& x : choices) {
                auto extended = partial;
                extended.insert(x);
                next.insert(std::move(extended));
            }
        family = std::move(next);
        if (family.empty()) break;
    }
    return family;
}

std::string to_string(const SignedAtom& a) { return (a.negated ? "~" : "") + to_string(a.atom); }

std::string to_string(const DisjunctiveClause& c) {
    std::string out;
    for (std::size_t i = 0; i < c.head.size(); ++i) {
        if (i) out += " | ";
        out += to_string(c.head[i]);
    }
    if (!c.body.empty()) {
        out += c.head.empty() ? ":- " : " :- ";
        for (std::size_t i = 0; i < c.body.size(); ++i) {
            if (i) out += ", ";
            out += to_string(c.body[i]);
        }
    }
    return out + ".";
}

std::string to_string(const DisjunctiveProgram& p) {
    std::string out;
    for (const auto& c : p.clauses) out += to_string(c) + "\n";
    return out;
}

std::string to_string(const UpdateTableau& t) {
    std::map<std::size_t, const TableauBranch*> by_leaf;
    for (const auto& b : t.branches) by_leaf[b.leaf] = &b;
    std::ostringstream out;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [id, depth] = stack.back();
        stack.pop_back();
        const auto& n = t.nodes[id];
        out << std::string(depth * 2, ' ') << to_string(n.literal);
        if (auto it = by_leaf.find(id); it != by_leaf.end()) {
            if (it->second->is_open()) out << "  [open]";
            else out << "  [closed: " << it->second->reason << "]";
        }
        out << "\n";
        for (auto c = n.children.rbegin(); c != n.children.rend(); ++c) stack.push_back({*c, depth + 1});
    }
    return out.str();
}

} // namespace vud
