#include "vud/sld.hpp"

#include "vud/error.hpp"

#include <algorithm>
#include <sstream>

namespace vud {

std::vector<std::size_t> SldTree::leaves() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].children.empty()) out.push_back(i);
    return out;
}

std::vector<std::size_t> SldTree::success_leaves() const {
    std::vector<std::size_t> out;
    for (auto i : leaves())
        if (nodes[i].status == SldNode::Status::success) out.push_back(i);
    return out;
}

std::vector<std::size_t> SldTree::failure_leaves() const {
    std::vector<std::size_t> out;
    for (auto i : leaves())
        if (nodes[i].status == SldNode::Status::failure) out.push_back(i);
    return out;
}

namespace {

bool unify_ground(const Atom& pattern, const Atom& ground, Substitution& s) {
    if (pattern.predicate != ground.predicate || pattern.arity() != ground.arity()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& t = pattern.args[i];
        if (t.is_constant()) {
            if (t.name != ground.args[i].name) return false;
            continue;
        }
        auto [it, inserted] = s.emplace(t.name, ground.args[i].name);
        if (!inserted && it->second != ground.args[i].name) return false;
    }
    return true;
}

class Builder {
public:
    Builder(const Database& db, const Atom& goal, const SldOptions& options)
        : db_(db), options_(options), views_(db.view_predicates()) {
        std::set<std::string> extra;
        for (const auto& t : goal.args) extra.insert(t.name);
        universe_ = herbrand_universe(db, extra);
        if (has_negation()) model_ = least_model(db).atoms;
    }

    SldTree build(const Atom& goal) {
        tree_.root = goal;
        SldNode root;
        root.goal = {Literal(goal)};
        root.ancestors = {{}};
        tree_.nodes.push_back(std::move(root));
        expand(0);
        return std::move(tree_);
    }

private:
    const Database& db_;
    const SldOptions& options_;
    std::set<std::string> views_;
    std::vector<std::string> universe_;
    std::set<Atom> model_;
    std::map<Atom, std::vector<Rule>> clauses_;
    SldTree tree_;

    bool has_negation() const {
        for (const auto& r : db_.idb)
            for (const auto& l : r.body)
                if (!l.positive) return true;
        return false;
    }

    const std::vector<Rule>& clauses_for(const Atom& a) {
        auto it = clauses_.find(a);
        if (it != clauses_.end()) return it->second;
        std::vector<Rule> out;
        for (const auto& r : db_.idb) {
            if (r.head.size() != 1) continue;
            Substitution s;
            if (!unify_ground(r.head.front(), a, s)) continue;
            for (auto& g : ground_instances(vud::apply(r, s), universe_)) out.push_back(std::move(g));
        }
        return clauses_.emplace(a, std::move(out)).first->second;
    }

    static std::set<Literal> as_set(const std::vector<Literal>& goal) { return {goal.begin(), goal.end()}; }

    bool repeats_ancestor(std::size_t node) const {
        auto mine = as_set(tree_.nodes[node].goal);
        for (std::size_t cur = node; cur != 0;) {
            cur = tree_.nodes[cur].parent;
            if (as_set(tree_.nodes[cur].goal) == mine) return true;
        }
        return false;
    }

    std::size_t add_child(std::size_t parent, SldNode child) {
        if (tree_.nodes.size() >= options_.node_limit)
            throw LimitExceeded("SLD tree exceeds " + std::to_string(options_.node_limit) + " nodes");
        child.parent = parent;
        tree_.nodes.push_back(std::move(child));
        std::size_t id = tree_.nodes.size() - 1;
        tree_.nodes[parent].children.push_back(id);
        return id;
    }

    SldNode derive(std::size_t parent, std::vector<Literal> replacement) const {
        const SldNode& p = tree_.nodes[parent];
        SldNode child;
        child.used_facts = p.used_facts;
        child.assumed = p.assumed;
        child.rules = p.rules;
        auto add = [&](const Literal& l, const std::set<Atom>& anc) {
            auto it = std::find(child.goal.begin(), child.goal.end(), l);
            if (it == child.goal.end()) {
                child.goal.push_back(l);
                child.ancestors.push_back(anc);
            } else {
                auto& merged = child.ancestors[static_cast<std::size_t>(it - child.goal.begin())];
                merged.insert(anc.begin(), anc.end());
            }
        };
        std::set<Atom> below = p.ancestors.front();
        below.insert(p.goal.front().atom);
        for (auto& l : replacement) add(l, below);
        for (std::size_t i = 1; i < p.goal.size(); ++i) add(p.goal[i], p.ancestors[i]);
        return child;
    }

    void expand(std::size_t root) {
        std::vector<std::size_t> stack{root};
        while (!stack.empty()) {
            std::size_t node = stack.back();
            stack.pop_back();
            if (node != root && repeats_ancestor(node)) {
                fail(node, SldNode::Failure::loop);
                continue;
            }
            if (tree_.nodes[node].goal.empty()) {
                auto& n = tree_.nodes[node];
                if (n.assumed.empty()) n.status = SldNode::Status::success;
                else {
                    n.status = SldNode::Status::failure;
                    n.failure = SldNode::Failure::missing_facts;
                }
                continue;
            }
            Literal selected = tree_.nodes[node].goal.front();
            std::vector<std::size_t> created;
            if (!selected.positive) {
                if (model_.count(selected.atom)) {
                    fail(node, SldNode::Failure::negation);
                    continue;
                }
                SldNode child = derive(node, {});
                child.edge = SldNode::Edge::negation;
                created.push_back(add_child(node, std::move(child)));
            } else if (views_.count(selected.atom.predicate)) {
                if (tree_.nodes[node].ancestors.front().count(selected.atom)) {
                    fail(node, SldNode::Failure::loop);
                    continue;
                }
                for (const auto& clause : clauses_for(selected.atom)) {
                    SldNode child = derive(node, clause.body);
                    child.edge = SldNode::Edge::clause;
                    child.input = clause;
                    child.rules.push_back(clause);
                    created.push_back(add_child(node, std::move(child)));
                }
                if (created.empty()) {
                    fail(node, SldNode::Failure::no_clause);
                    continue;
                }
            } else {
                SldNode child = derive(node, {});
                child.input = Rule{{selected.atom}, {}};
                if (db_.edb.count(selected.atom)) {
                    child.edge = SldNode::Edge::fact;
                    child.used_facts.insert(selected.atom);
                } else {
                    child.edge = SldNode::Edge::hypothesis;
                    child.assumed.insert(selected.atom);
                }
                created.push_back(add_child(node, std::move(child)));
            }
            for (auto it = created.rbegin(); it != created.rend(); ++it) stack.push_back(*it);
        }
    }

    void fail(std::size_t node, SldNode::Failure why) {
        tree_.nodes[node].status = SldNode::Status::failure;
        tree_.nodes[node].failure = why;
    }
};

std::string goal_text(const std::vector<Literal>& goal) {
    if (goal.empty()) return "[]";
    std::string out;
    for (std::size_t i = 0; i < goal.size(); ++i) {
        if (i) out += ", ";
        out += to_string(goal[i]);
    }
    return "<- " + out;
}

const char* failure_text(SldNode::Failure f) {
    switch (f) {
    case SldNode::Failure::none: return "";
    case SldNode::Failure::no_clause: return "no clause";
    case SldNode::Failure::loop: return "loop";
    case SldNode::Failure::negation: return "negation fails";
    case SldNode::Failure::missing_facts: return "needs facts";
    }
    return "";
}

} // namespace

SldTree sld_tree(const Database& db, const Atom& goal, const SldOptions& options) {
    return Builder(db, goal, options).build(goal);
}

std::string to_string(const SldTree& tree) {
    std::ostringstream out;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [id, depth] = stack.back();
        stack.pop_back();
        const SldNode& n = tree.nodes[id];
        out << std::string(depth * 2, ' ') << goal_text(n.goal);
        if (n.input) {
            out << "  by " << to_string(*n.input);
            if (n.edge == SldNode::Edge::hypothesis) out << " (assumed)";
        } else if (n.edge == SldNode::Edge::negation) {
            out << "  by negation";
        }
        if (n.status == SldNode::Status::success) out << "  [success]";
        if (n.status == SldNode::Status::failure) {
            out << "  [failure: " << failure_text(n.failure);
            if (n.failure == SldNode::Failure::missing_facts) out << " " << to_string(n.assumed);
            out << "]";
        }
        out << "\n";
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back({*it, depth + 1});
    }
    return out.str();
}

} // namespace vud
