#pragma once

// Static analysis of databases: grounding over the Herbrand universe,
// stratification and well-formedness checks.

#include "vud/syntax.hpp"

#include <set>
#include <string>
#include <vector>

namespace vud {

/// Herbrand universe: constants of `db` plus `extra`.
std::vector<std::string> herbrand_universe(const Database& db,
                                           const std::set<std::string>& extra = {});

/// All ground instances of `rule` over `universe`, variables assigned in
/// order of first occurrence, constants in lexicographic order. Built-in
/// equality literals are decided during instantiation: instances with a false
/// equality literal are dropped and true ones are removed from the body.
std::vector<Rule> ground_instances(const Rule& rule, const std::vector<std::string>& universe);

/// Ground instantiation of the IDB and the constraints. Exponential in the
/// number of variables per clause. Ground databases come back unchanged.
Database ground(const Database& db, const std::set<std::string>& extra_constants = {});

/// Ordered partition of the IDB predicates into strata: negative
/// dependencies point strictly downwards, and all head predicates of a rule
/// share a stratum. Throws NotStratifiable.
using Strata = std::vector<std::set<std::string>>;
Strata stratify(const Database& db);

struct Violation {
    enum class Kind {
        view_and_base,
        unit_clause,
        unsafe_variable,
        non_ground_fact,
        arity_conflict,
        reserved_predicate,
    };
    Kind kind;
    std::string message;
};

/// Pure check of the database invariants. Never throws.
std::vector<Violation> validate(const Database& db);

std::string to_string(Violation::Kind kind);

} // namespace vud
