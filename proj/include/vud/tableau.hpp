#pragma once

// Deletion by hyper tableaux: program transformations over signed atoms,
// update tableaux, EDB-cuts and the strong minimality test.

#include "vud/hitting_set.hpp"
#include "vud/model.hpp"
#include "vud/syntax.hpp"

#include <limits>
#include <set>
#include <string>
#include <vector>

namespace vud {

/// `¬A` is an ordinary atom of a shadow predicate when `negated` is set.
struct SignedAtom {
    Atom atom;
    bool negated = false;

    SignedAtom complement() const { return {atom, !negated}; }

    auto operator<=>(const SignedAtom&) const = default;
    bool operator==(const SignedAtom&) const = default;
};

/// `h1 | ... | hm :- b1, ..., bn.` over signed atoms; an empty head closes.
struct DisjunctiveClause {
    std::vector<SignedAtom> head;
    std::vector<SignedAtom> body;

    auto operator<=>(const DisjunctiveClause&) const = default;
    bool operator==(const DisjunctiveClause&) const = default;
};

struct DisjunctiveProgram {
    std::vector<DisjunctiveClause> clauses;

    bool operator==(const DisjunctiveProgram&) const = default;
};

/// Moves body atoms in `s` to the head negated and head atoms in `s` to the
/// body negated. A negative body literal `not b` is first read as the head
/// disjunct `b`. Rules are expected ground.
DisjunctiveProgram transform(const std::vector<Rule>& ground_idb, const std::set<Atom>& s);

/// Transformation against EDB plus every ground view atom.
DisjunctiveProgram idb_star(const Database& db);
/// Transformation against the least model (materialized view).
DisjunctiveProgram idb_plus(const Database& db);
/// Transformation against the least model of only the ground clauses used
/// on successful SLD branches for `goal`.
DisjunctiveProgram idb_plus(const Database& db, const Atom& goal);
/// Same, one program per successful SLD branch, in leaf order.
std::vector<DisjunctiveProgram> idb_plus_branches(const Database& db, const Atom& goal);

struct TableauNode {
    SignedAtom literal;
    std::size_t clause = npos; ///< extending clause, npos for the request
    std::size_t parent = npos;
    std::vector<std::size_t> children;

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
};

struct TableauBranch {
    enum class Mark { open, closed };

    std::size_t leaf = 0;
    std::vector<SignedAtom> literals; ///< root first
    Mark mark = Mark::open;
    std::string reason; ///< why the branch was closed

    bool is_open() const noexcept { return mark == Mark::open; }
    std::set<SignedAtom> literal_set() const { return {literals.begin(), literals.end()}; }
};

struct UpdateTableau {
    SignedAtom request;
    std::vector<TableauNode> nodes;
    std::vector<TableauBranch> branches; ///< in depth-first order
    std::size_t peak_live_branches = 0;

    std::vector<const TableauBranch*> open_branches() const;
};

struct TableauOptions {
    std::size_t branch_limit = 1000000;
};

/// Saturates a hyper tableau for `prog` plus the fact `request`, depth
/// first. A clause extends a branch when its body is on the branch and no
/// head literal is; the branch splits on the head disjuncts. Branches with
/// a complementary pair or an empty-head extension close. Throws
/// LimitExceeded when more than `branch_limit` branches are produced.
UpdateTableau build_update_tableau(const DisjunctiveProgram& prog, const SignedAtom& request,
                                   const TableauOptions& options = {});

/// EDB atoms whose negation lies on the branch.
std::set<Atom> hitting_set_of_branch(const TableauBranch& b, const Database& db);

/// Every s in `hs` alone restores `a`: IDB ∪ (EDB \ hs) ∪ {s} ⊢ a.
bool satisfies_strong_minimality(const std::set<Atom>& hs, const Database& db, const Atom& a);

/// Closes every open branch failing the strong minimality test.
UpdateTableau strong_minimality_filter(UpdateTableau t, const Database& db, const Atom& a);

/// One negated EDB atom per open branch, every combination, deduplicated.
SetFamily<Atom> edb_cuts(const UpdateTableau& t, const Database& db);

std::string to_string(const SignedAtom& a);
std::string to_string(const DisjunctiveClause& c);
std::string to_string(const DisjunctiveProgram& p);
/// Indented tree with [open] / [closed: reason] marks on the leaves.
std::string to_string(const UpdateTableau& t);

} // namespace vud
