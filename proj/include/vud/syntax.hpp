#pragma once

// Abstract syntax of function-free Datalog databases: terms, atoms,
// literals, (possibly disjunctive) rules, denial constraints and the
// IDB/EDB/IC triple.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace vud {

/// Reserved name of the built-in syntactic equality predicate.
inline constexpr const char* kEqualityPredicate = "eq";

struct Term {
    enum class Kind : std::uint8_t { constant, variable };

    Kind kind = Kind::constant;
    std::string name;

    static Term constant(std::string name) { return {Kind::constant, std::move(name)}; }
    static Term variable(std::string name) { return {Kind::variable, std::move(name)}; }

    bool is_variable() const noexcept { return kind == Kind::variable; }
    bool is_constant() const noexcept { return kind == Kind::constant; }

    auto operator<=>(const Term&) const = default;
    bool operator==(const Term&) const = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    Atom() = default;
    explicit Atom(std::string pred, std::vector<Term> arguments = {})
        : predicate(std::move(pred)), args(std::move(arguments)) {}

    std::size_t arity() const noexcept { return args.size(); }
    bool is_ground() const noexcept;
    bool is_equality() const noexcept { return predicate == kEqualityPredicate; }

    auto operator<=>(const Atom&) const = default;
    bool operator==(const Atom&) const = default;
};

struct Literal {
    Atom atom;
    bool positive = true;

    Literal() = default;
    Literal(Atom a, bool pos = true) : atom(std::move(a)), positive(pos) {}

    Literal complement() const { return {atom, !positive}; }

    auto operator<=>(const Literal&) const = default;
    bool operator==(const Literal&) const = default;
};

/// `h1 | ... | hm :- l1, ..., ln.`  An empty body together with a single
/// head atom is a fact.
struct Rule {
    std::vector<Atom> head;
    std::vector<Literal> body;

    bool is_definite() const noexcept;
    bool is_disjunctive() const noexcept { return head.size() > 1; }
    bool is_unit() const noexcept { return body.empty(); }
    bool is_ground() const noexcept;

    auto operator<=>(const Rule&) const = default;
    bool operator==(const Rule&) const = default;
};

/// Denial `:- l1, ..., ln.`: violated when the body is satisfiable.
struct Constraint {
    std::vector<Literal> body;

    auto operator<=>(const Constraint&) const = default;
    bool operator==(const Constraint&) const = default;
};

/// A deductive database <IDB, EDB, IC>. Rules and constraints keep their
/// written order; facts are kept sorted.
struct Database {
    std::vector<Rule> idb;
    std::set<Atom> edb;
    std::vector<Constraint> ic;

    /// Predicates defined by some IDB head.
    std::set<std::string> view_predicates() const;
    bool is_view(const Atom& a) const;

    /// Every predicate name occurring anywhere, with its arity.
    std::map<std::string, std::size_t> signature() const;

    /// Constants occurring anywhere in the database (the Herbrand universe).
    std::set<std::string> constants() const;

    bool operator==(const Database&) const = default;
};

std::vector<std::string> variables_of(const Atom& a);
std::set<std::string> variables_of(const Rule& r);
std::set<std::string> variables_of(const std::vector<Literal>& body);

using Substitution = std::map<std::string, std::string>;

Atom apply(const Atom& a, const Substitution& s);
Literal apply(const Literal& l, const Substitution& s);
Rule apply(const Rule& r, const Substitution& s);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const Rule& r);
std::string to_string(const Constraint& c);
std::string to_string(const Substitution& s);
/// Renders the database in the text format accepted by `parse_database`.
std::string to_string(const Database& db);
std::string to_string(const std::set<Atom>& atoms);

std::ostream& operator<<(std::ostream& os, const Atom& a);
std::ostream& operator<<(std::ostream& os, const Literal& l);
std::ostream& operator<<(std::ostream& os, const Rule& r);

/// Convenience builders used by tests and transformations.
Atom atom(std::string predicate, std::initializer_list<std::string> constants = {});
Atom atom_of(std::string predicate, const std::vector<std::string>& constants);

} // namespace vud
