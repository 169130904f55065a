#pragma once

// Abductive explanations of ground view atoms, read off complete SLD trees.

#include "vud/hitting_set.hpp"
#include "vud/sld.hpp"
#include "vud/syntax.hpp"

#include <set>
#include <vector>

namespace vud {

enum class ExplanationKind { minimal, locally_minimal };

struct Explanation {
    std::set<Atom> facts;
    ExplanationKind kind = ExplanationKind::minimal;

    auto operator<=>(const Explanation&) const = default;
    bool operator==(const Explanation&) const = default;
};

/// Per-branch fact sets of an SLD tree.
struct BranchFacts {
    std::vector<std::set<Atom>> success;         ///< EDB facts used, per success leaf
    std::vector<std::vector<Rule>> success_rules; ///< ground clauses used, per success leaf
    std::vector<std::set<Atom>> failure;         ///< facts used plus atoms assumed, per failing leaf that only lacks facts
    std::vector<std::set<Atom>> failure_assumed; ///< atoms assumed, same leaves
    std::set<Atom> success_union;                ///< union over success branches
    std::set<Atom> assumed_union;                ///< union of assumed atoms over failing branches
};

BranchFacts branch_fact_sets(const SldTree& tree);

/// EDB-closed explanations of view atom `a`. Minimal: subset-minimal
/// union of branch fact sets. Locally minimal: for each success branch,
/// the fact sets that are minimal with respect to the clauses used on that
/// branch. Throws InvalidRequest for a base atom.
std::vector<Explanation> explanations(const Database& db, const Atom& a,
                                      ExplanationKind kind = ExplanationKind::minimal);

SetFamily<Atom> explanation_family(const Database& db, const Atom& a,
                                   ExplanationKind kind = ExplanationKind::minimal);

/// Sets of base atoms whose insertion makes `a` derivable without
/// violating the constraints, minimized. Throws AlreadyDerivable.
std::vector<std::set<Atom>> insertion_candidates(const Database& db, const Atom& a);

/// Forward closure of `facts` under ground clauses, negative literals
/// ignored.
std::set<Atom> horn_closure(const std::vector<Rule>& ground_rules, const std::set<Atom>& facts);

} // namespace vud
