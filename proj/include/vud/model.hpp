#pragma once

// Model computation: least Herbrand / perfect models, derivability and
// integrity-constraint checking.

#include "vud/analysis.hpp"
#include "vud/syntax.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace vud {

struct Interpretation {
    std::set<Atom> atoms;

    bool contains(const Atom& a) const { return atoms.count(a) != 0; }
    std::size_t size() const noexcept { return atoms.size(); }

    bool operator==(const Interpretation&) const = default;
};

enum class Evaluation { semi_naive, naive };

/// Perfect model of a stratified database, computed stratum by stratum.
/// Within a stratum the fixpoint is semi-naive unless `naive` is requested.
/// Throws NotStratifiable and ValidationError (unsafe rules).
Interpretation least_model(const Database& db, Evaluation mode = Evaluation::semi_naive);

/// Membership of a ground atom in the perfect model. Throws Error when the
/// predicate does not occur in the database.
bool derives(const Database& db, const Atom& a);

/// All substitutions that make `body` true in `facts`; negative literals
/// and built-in equality must be bound by the positive literals before them
/// or after reordering (positives are matched first).
std::vector<Substitution> matches(const std::vector<Literal>& body, const Interpretation& facts);

struct IcViolation {
    std::size_t index = 0; ///< position of the constraint in db.ic
    Constraint constraint;
    Substitution witness;
};

std::vector<IcViolation> check_ic(const Database& db);
std::vector<IcViolation> check_ic(const Database& db, const Interpretation& model);

/// Interned ground program with fast forward chaining. Built once per
/// database signature and reused for many closure computations over
/// different fact sets, optionally with a subset of the rules disabled.
class GroundProgram {
public:
    using AtomId = std::uint32_t;

    struct GroundRule {
        AtomId head;
        std::vector<AtomId> positive;
        std::vector<AtomId> negative;
        std::size_t stratum = 0;
        Rule source; ///< the ground instance this was built from
    };

    struct GroundDenial {
        std::vector<AtomId> positive;
        std::vector<AtomId> negative;
        std::size_t constraint = 0; ///< index into the source db.ic
    };

    /// `extra_constants` widen the universe, `extra_atoms` are interned even
    /// when no rule mentions them. Requires non-disjunctive rules.
    explicit GroundProgram(const Database& db, const std::set<std::string>& extra_constants = {},
                           const std::set<Atom>& extra_atoms = {});

    std::size_t atom_count() const noexcept { return atoms_.size(); }
    const Atom& atom(AtomId id) const { return atoms_[id]; }
    std::optional<AtomId> find(const Atom& a) const;
    AtomId intern(const Atom& a);

    const std::vector<GroundRule>& rules() const noexcept { return rules_; }
    const std::vector<GroundDenial>& denials() const noexcept { return denials_; }
    bool is_view(AtomId id) const { return view_[id] != 0; }

    /// Ground atoms over base predicates known to the program.
    std::vector<AtomId> base_atoms() const;

    /// Closure of `facts` (indexed by AtomId). `enabled`, when given, masks
    /// the rules by index.
    std::vector<char> closure(const std::vector<char>& facts,
                              const std::vector<char>* enabled = nullptr) const;

    std::vector<char> mask(const std::set<Atom>& facts) const;
    std::set<Atom> atoms_of(const std::vector<char>& mask) const;

    std::set<Atom> model(const std::set<Atom>& facts) const;
    bool derives(const std::set<Atom>& facts, const Atom& goal) const;

    /// True iff no ground denial is satisfied by `model`.
    bool consistent(const std::vector<char>& model) const;
    /// Indices of denials satisfied by `model`.
    std::vector<std::size_t> violated(const std::vector<char>& model) const;

private:
    std::vector<Atom> atoms_;
    std::map<Atom, AtomId> ids_;
    std::vector<char> view_;
    std::vector<GroundRule> rules_;
    std::vector<GroundDenial> denials_;
    std::size_t strata_ = 1;
    std::set<std::string> views_;
};

} // namespace vud
