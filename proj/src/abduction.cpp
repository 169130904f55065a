#include "vud/abduction.hpp"

#include "vud/error.hpp"
#include "vud/model.hpp"

#include <algorithm>
#include <map>

namespace vud {

BranchFacts branch_fact_sets(const SldTree& tree) {
    BranchFacts out;
    for (auto leaf : tree.leaves()) {
        const SldNode& n = tree.nodes[leaf];
        if (n.status == SldNode::Status::success) {
            out.success.push_back(n.used_facts);
            out.success_rules.push_back(n.rules);
            out.success_union.insert(n.used_facts.begin(), n.used_facts.end());
        } else if (n.failure == SldNode::Failure::missing_facts) {
            std::set<Atom> all = n.used_facts;
            all.insert(n.assumed.begin(), n.assumed.end());
            out.failure.push_back(std::move(all));
            out.failure_assumed.push_back(n.assumed);
            out.assumed_union.insert(n.assumed.begin(), n.assumed.end());
        }
    }
    return out;
}

std::set<Atom> horn_closure(const std::vector<Rule>& ground_rules, const std::set<Atom>& facts) {
    std::set<Atom> model = facts;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : ground_rules) {
            if (r.head.size() != 1 || model.count(r.head.front())) continue;
            bool fires = std::all_of(r.body.begin(), r.body.end(),
                                     [&](const Literal& l) { return !l.positive || model.count(l.atom); });
            if (fires) {
                model.insert(r.head.front());
                changed = true;
            }
        }
    }
    return model;
}

namespace {

void require_view(const Database& db, const Atom& a) {
    if (!a.is_ground()) throw InvalidRequest("atom " + to_string(a) + " is not ground");
    if (!db.is_view(a)) throw InvalidRequest(to_string(a) + " is a base atom; explanations are defined for view atoms");
}

// Subsets of `facts` minimal for deriving `goal` with `rules` alone.
std::vector<std::set<Atom>> minimal_subsets(const std::set<Atom>& facts, const std::vector<Rule>& rules,
                                            const Atom& goal) {
    std::vector<Atom> items(facts.begin(), facts.end());
    auto derives = [&](const std::set<Atom>& f) { return horn_closure(rules, f).count(goal) != 0; };
    if (items.size() > 16) {
        // Greedy shrink to a single minimal subset.
        std::set<Atom> current = facts;
        for (const auto& x : items) {
            current.erase(x);
            if (!derives(current)) current.insert(x);
        }
        return {current};
    }
    std::vector<std::set<Atom>> found;
    for (std::uint32_t mask = 0; mask < (1u << items.size()); ++mask) {
        std::set<Atom> s;
        for (std::size_t i = 0; i < items.size(); ++i)
            if (mask & (1u << i)) s.insert(items[i]);
        if (derives(s)) found.push_back(std::move(s));
    }
    return minimal_members(found);
}

} // namespace

std::vector<Explanation> explanations(const Database& db, const Atom& a, ExplanationKind kind) {
    require_view(db, a);
    SldTree tree = sld_tree(db, a);
    BranchFacts branches = branch_fact_sets(tree);

    std::vector<std::set<Atom>> sets;
    if (kind == ExplanationKind::minimal) {
        sets = minimal_members(branches.success);
        Database probe{db.idb, {}, {}};
        std::set<std::string> extra = db.constants();
        for (const auto& t : a.args) extra.insert(t.name);
        GroundProgram program(probe, extra, db.edb);
        std::erase_if(sets, [&](const std::set<Atom>& s) { return !program.derives(s, a); });
    } else {
        std::set<std::set<Atom>> unique;
        for (std::size_t i = 0; i < branches.success.size(); ++i)
            for (auto& s : minimal_subsets(branches.success[i], branches.success_rules[i], a))
                unique.insert(std::move(s));
        sets.assign(unique.begin(), unique.end());
        sort_by_size(sets);
    }
    std::vector<Explanation> out;
    for (auto& s : sets) out.push_back({std::move(s), kind});
    return out;
}

SetFamily<Atom> explanation_family(const Database& db, const Atom& a, ExplanationKind kind) {
    SetFamily<Atom> out;
    for (auto& e : explanations(db, a, kind)) out.insert(std::move(e.facts));
    return out;
}

std::vector<std::set<Atom>> insertion_candidates(const Database& db, const Atom& a) {
    if (!a.is_ground()) throw InvalidRequest("atom " + to_string(a) + " is not ground");
    if (least_model(db).contains(a)) throw AlreadyDerivable(to_string(a) + " is already derivable");
    SldTree tree = sld_tree(db, a);
    BranchFacts branches = branch_fact_sets(tree);

    std::set<std::set<Atom>> unique(branches.failure_assumed.begin(), branches.failure_assumed.end());
    std::vector<std::set<Atom>> kept;
    for (const auto& delta : unique) {
        Database next = db;
        next.edb.insert(delta.begin(), delta.end());
        Interpretation m = least_model(next);
        if (!m.contains(a)) continue;
        if (!check_ic(next, m).empty()) continue;
        kept.push_back(delta);
    }
    auto out = minimal_members(kept);
    sort_by_size(out);
    return out;
}

} // namespace vud
