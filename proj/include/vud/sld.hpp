#pragma once

// Complete ground SLD trees under the leftmost selection rule.

#include "vud/model.hpp"
#include "vud/syntax.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vud {

struct SldNode {
    enum class Status { inner, success, failure };
    enum class Edge { root, clause, fact, hypothesis, negation };
    enum class Failure { none, no_clause, loop, negation, missing_facts };

    std::vector<Literal> goal;
    std::vector<std::set<Atom>> ancestors; ///< per goal literal, the atoms it is being proved for
    Edge edge = Edge::root;
    std::optional<Rule> input; ///< ground clause or fact used on the edge from the parent
    std::set<Atom> used_facts; ///< EDB facts used as input clauses on the path
    std::set<Atom> assumed;    ///< base atoms absent from the EDB resolved hypothetically
    std::vector<Rule> rules;   ///< ground IDB clauses used on the path
    Status status = Status::inner;
    Failure failure = Failure::none;
    std::size_t parent = 0;
    std::vector<std::size_t> children;
};

struct SldOptions {
    std::size_t node_limit = 200000;
};

/// The tree is stored as an arena; node 0 is the root.
struct SldTree {
    Atom root;
    std::vector<SldNode> nodes;

    std::vector<std::size_t> leaves() const;
    std::vector<std::size_t> success_leaves() const;
    std::vector<std::size_t> failure_leaves() const;
};

/// Builds the complete SLD tree for `goal`. View atoms are expanded with
/// their ground clauses in rule order then instance order; base atoms are
/// resolved with an EDB fact, or, when absent, assumed so that insertion
/// candidates can be read off the failure branches. Negative literals are
/// decided against the perfect model. A goal whose atom set repeats an
/// ancestor's fails (loop), as does a
/// view atom selected while it is among its own proof ancestors. Throws LimitExceeded past `node_limit` nodes.
SldTree sld_tree(const Database& db, const Atom& goal, const SldOptions& options = {});

/// Indented rendering, one node per line.
std::string to_string(const SldTree& tree);

} // namespace vud
