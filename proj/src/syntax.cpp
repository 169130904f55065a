#include "vud/syntax.hpp"

#include "vud/error.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace vud {

NotStratifiable::NotStratifiable(std::vector<std::string> cycle)
    : Error([&] {
          std::string msg = "not stratifiable: recursion through negation in cycle ";
          for (std::size_t i = 0; i < cycle.size(); ++i) {
              if (i) msg += " -> ";
              msg += cycle[i];
          }
          return msg;
      }()),
      cycle_(std::move(cycle)) {}

bool Atom::is_ground() const noexcept {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

bool Rule::is_definite() const noexcept {
    return head.size() == 1 &&
           std::all_of(body.begin(), body.end(), [](const Literal& l) { return l.positive; });
}

bool Rule::is_ground() const noexcept {
    return std::all_of(head.begin(), head.end(), [](const Atom& a) { return a.is_ground(); }) &&
           std::all_of(body.begin(), body.end(), [](const Literal& l) { return l.atom.is_ground(); });
}

std::set<std::string> Database::view_predicates() const {
    std::set<std::string> out;
    for (const auto& r : idb)
        for (const auto& h : r.head) out.insert(h.predicate);
    return out;
}

bool Database::is_view(const Atom& a) const {
    for (const auto& r : idb)
        for (const auto& h : r.head)
            if (h.predicate == a.predicate) return true;
    return false;
}

namespace {

void note(std::map<std::string, std::size_t>& sig, const Atom& a) {
    sig.emplace(a.predicate, a.arity());
}

void note_constants(std::set<std::string>& out, const Atom& a) {
    for (const auto& t : a.args)
        if (t.is_constant()) out.insert(t.name);
}

} // namespace

std::map<std::string, std::size_t> Database::signature() const {
    std::map<std::string, std::size_t> sig;
    for (const auto& r : idb) {
        for (const auto& h : r.head) note(sig, h);
        for (const auto& l : r.body) note(sig, l.atom);
    }
    for (const auto& f : edb) note(sig, f);
    for (const auto& c : ic)
        for (const auto& l : c.body) note(sig, l.atom);
    return sig;
}

std::set<std::string> Database::constants() const {
    std::set<std::string> out;
    for (const auto& r : idb) {
        for (const auto& h : r.head) note_constants(out, h);
        for (const auto& l : r.body) note_constants(out, l.atom);
    }
    for (const auto& f : edb) note_constants(out, f);
    for (const auto& c : ic)
        for (const auto& l : c.body) note_constants(out, l.atom);
    return out;
}

std::vector<std::string> variables_of(const Atom& a) {
    std::vector<std::string> out;
    for (const auto& t : a.args)
        if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end())
            out.push_back(t.name);
    return out;
}

std::set<std::string> variables_of(const std::vector<Literal>& body) {
    std::set<std::string> out;
    for (const auto& l : body)
        for (auto& v : variables_of(l.atom)) out.insert(std::move(v));
    return out;
}

std::set<std::string> variables_of(const Rule& r) {
    auto out = variables_of(r.body);
    for (const auto& h : r.head)
        for (auto& v : variables_of(h)) out.insert(std::move(v));
    return out;
}

Atom apply(const Atom& a, const Substitution& s) {
    Atom out = a;
    for (auto& t : out.args) {
        if (!t.is_variable()) continue;
        if (auto it = s.find(t.name); it != s.end()) t = Term::constant(it->second);
    }
    return out;
}

Literal apply(const Literal& l, const Substitution& s) { return {apply(l.atom, s), l.positive}; }

Rule apply(const Rule& r, const Substitution& s) {
    Rule out;
    out.head.reserve(r.head.size());
    for (const auto& h : r.head) out.head.push_back(apply(h, s));
    out.body.reserve(r.body.size());
    for (const auto& l : r.body) out.body.push_back(apply(l, s));
    return out;
}

std::string to_string(const Term& t) { return t.name; }

std::string to_string(const Atom& a) {
    std::string out = a.predicate;
    if (a.args.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ',';
        out += a.args[i].name;
    }
    out += ')';
    return out;
}

std::string to_string(const Literal& l) {
    return l.positive ? to_string(l.atom) : "not " + to_string(l.atom);
}

namespace {

std::string body_text(const std::vector<Literal>& body) {
    std::string out;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i) out += ", ";
        out += to_string(body[i]);
    }
    return out;
}

} // namespace

std::string to_string(const Rule& r) {
    std::string out;
    for (std::size_t i = 0; i < r.head.size(); ++i) {
        if (i) out += " | ";
        out += to_string(r.head[i]);
    }
    if (!r.body.empty()) {
        out += r.head.empty() ? ":- " : " :- ";
        out += body_text(r.body);
    }
    return out + '.';
}

std::string to_string(const Constraint& c) { return ":- " + body_text(c.body) + '.'; }

std::string to_string(const Substitution& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [var, value] : s) {
        if (!first) out += ", ";
        first = false;
        out += var + "=" + value;
    }
    return out + "}";
}

std::string to_string(const Database& db) {
    std::ostringstream os;
    for (const auto& r : db.idb) os << to_string(r) << '\n';
    for (const auto& f : db.edb) os << to_string(f) << ".\n";
    for (const auto& c : db.ic) os << to_string(c) << '\n';
    return os.str();
}

std::string to_string(const std::set<Atom>& atoms) {
    std::string out = "{";
    bool first = true;
    for (const auto& a : atoms) {
        if (!first) out += ", ";
        first = false;
        out += to_string(a);
    }
    return out + "}";
}

std::ostream& operator<<(std::ostream& os, const Atom& a) { return os << to_string(a); }
std::ostream& operator<<(std::ostream& os, const Literal& l) { return os << to_string(l); }
std::ostream& operator<<(std::ostream& os, const Rule& r) { return os << to_string(r); }

Atom atom(std::string predicate, std::initializer_list<std::string> constants) {
    return atom_of(std::move(predicate), std::vector<std::string>(constants));
}

Atom atom_of(std::string predicate, const std::vector<std::string>& constants) {
    Atom a(std::move(predicate));
    a.args.reserve(constants.size());
    for (const auto& c : constants) a.args.push_back(Term::constant(c));
    return a;
}

} // namespace vud
