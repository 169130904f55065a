#pragma once

// Shared databases and small helpers for the unit suites.

#include "vud/parser.hpp"
#include "vud/syntax.hpp"

#include <initializer_list>
#include <set>
#include <string>
#include <vector>

namespace fixture {

inline vud::Database example2() { return vud::load_database(std::string(VUD_DATA_DIR) + "/example2.dl"); }
inline vud::Database staff() { return vud::load_database(std::string(VUD_DATA_DIR) + "/staff.dl"); }

inline vud::Database with_edb(vud::Database db, std::set<vud::Atom> edb) {
    db.edb = std::move(edb);
    return db;
}

inline std::set<vud::Atom> atoms(std::initializer_list<const char*> names) {
    std::set<vud::Atom> out;
    for (auto n : names) out.insert(vud::parse_atom(n));
    return out;
}

template <typename T>
std::set<T> as_set(const std::vector<T>& v) {
    return {v.begin(), v.end()};
}

} // namespace fixture
