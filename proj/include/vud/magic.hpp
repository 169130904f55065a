#pragma once

// Insertion side of view updating: VU seeds and rules over delta
// predicates, ground magic-set rewriting and breadth-first extraction of
// base transactions (realizations).

#include "vud/model.hpp"
#include "vud/syntax.hpp"

#include <set>
#include <string>
#include <vector>

namespace vud {

struct VURequest {
    std::set<Atom> inserts;
    std::set<Atom> deletes;

    bool empty() const noexcept { return inserts.empty() && deletes.empty(); }
    bool operator==(const VURequest&) const = default;
};

/// Problems with `req` against `db`, one message per violated condition:
/// view predicates only, ground, disjoint, inserts false and deletes true in
/// the perfect model.
std::vector<std::string> request_violations(const Database& db, const VURequest& req);

enum class Direction { insert, remove };

/// ∇⁺p(c) / ∇⁻p(c), stored as atoms of the predicates "+p" / "-p".
struct DeltaAtom {
    Direction direction = Direction::insert;
    Atom atom;

    Atom encoded() const;
    static bool is_delta(const Atom& a);
    static DeltaAtom decode(const Atom& a);

    auto operator<=>(const DeltaAtom&) const = default;
    bool operator==(const DeltaAtom&) const = default;
};

std::string to_string(const DeltaAtom& d);

std::set<DeltaAtom> vu_seeds(const VURequest& req);

/// Rewrites definite or stratified rules so every rule has one of the
/// shapes the VU rules cover: projections drop one variable per auxiliary
/// predicate, several rules for a predicate become one auxiliary each,
/// longer bodies are split in two. Auxiliary predicates are named
/// "<p>#<n>". Throws NormalizationError for built-in equality in rule
/// bodies and for heads that are not distinct variables.
std::vector<Rule> normalize(const std::vector<Rule>& idb);

struct VuRuleSet {
    std::vector<Rule> rules;                 ///< heads and bodies over delta and source predicates
    std::vector<std::string> fresh_constants; ///< one per projection rule
};

/// VU rules of a normalized rule set. Projection rules enumerate
/// `universe` plus a fresh constant `_new_<n>`. Throws NormalizationError
/// for a rule of no recognised shape.
VuRuleSet vu_rules(const std::vector<Rule>& normalized, const std::vector<std::string>& universe);

struct MagicProgram {
    std::vector<Rule> rules;
    Atom seed;

    /// Rewritten rules with `edb` plus the seed as facts.
    Database database(const std::set<Atom>& edb) const;
};

inline constexpr const char* kMagicPrefix = "m#";

/// Ground magic-set rewriting for a definite IDB: every ground rule gets its
/// head's magic atom as guard, and each view body atom gets a magic rule
/// from the guard and the body atoms before it. Throws ValidationError for
/// non-definite rules.
MagicProgram magic_rewrite(const std::vector<Rule>& idb, const Atom& goal,
                           const std::set<std::string>& extra_constants = {});
/// Same, grounded over every constant of `db`.
MagicProgram magic_rewrite(const Database& db, const Atom& goal);

struct Realization {
    std::set<Atom> inserts;
    std::set<Atom> deletes;

    std::size_t size() const noexcept { return inserts.size() + deletes.size(); }
    std::set<Atom> apply_to(const std::set<Atom>& edb) const;

    auto operator<=>(const Realization&) const = default;
    bool operator==(const Realization&) const = default;
};

/// `+fact.` and `-fact.` lines.
std::string to_string(const Realization& u);

enum class RealizationPolicy {
    subtransaction_minimal, ///< no proper sub-transaction is a realization
    family_minimal,         ///< no other returned realization is contained in it
};

struct RealizationOptions {
    RealizationPolicy policy = RealizationPolicy::subtransaction_minimal;
    std::size_t world_limit = 100000;
    std::size_t rounds = 4; ///< search rounds, each over the state a failed candidate leaves
};

/// True iff applying `u` to `db` yields inserts ⊆ PM and deletes ∩ PM = ∅
/// with every constraint satisfied.
bool realizes(const Database& db, const VURequest& req, const Realization& u);

/// Breadth-first evaluation of the seeds under the VU rules over the
/// current perfect model, one world per head disjunct. Leaf worlds give
/// candidate transactions from their base delta atoms. A candidate that
/// does not realize the request seeds another round over the state it
/// leaves; candidates that still fail (constraints included) are dropped. Throws
/// InvalidRequest, Unrealizable, LimitExceeded.
std::vector<Realization> insertion_realizations(const Database& db, const VURequest& req,
                                                const RealizationOptions& options = {});

/// Keeps candidates whose every inserted fact is necessary for `a`.
std::vector<std::set<Atom>> minimality_filter_insert(const std::vector<std::set<Atom>>& candidates,
                                                     const Database& db, const Atom& a);

} // namespace vud
