#pragma once

#include "vud/syntax.hpp"

#include <iosfwd>
#include <string_view>

namespace vud {

/// Parses the clause text format:
///
///     % comment to end of line
///     fact(a,b).
///     head(X) :- body1(X), not body2(X).
///     :- denial(X), other(X).
///     h1 | h2 :- body.
///
/// Identifiers starting with an uppercase letter are variables, everything
/// else is a constant or predicate name. A rule whose head is the built-in
/// `eq(S,T)` is an equality constraint and is stored in denial form
/// `:- body, not eq(S,T).`
///
/// Throws ParseError (with line and column) on syntax errors, on a
/// predicate used with two different arities, and on non-ground facts.
Database parse_database(std::string_view text);
Database load_database(const std::string& path);
void save_database(const Database& db, const std::string& path);

/// Parses a single atom such as `p` or `staff_chair(aravindan,gerhard)`;
/// a trailing `.` is accepted.
Atom parse_atom(std::string_view text);

} // namespace vud
