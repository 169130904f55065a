#pragma once

// Knowledge-base revision by abduction and hitting sets, and a checker for
// the rationality postulates KB*1 to KB*7.3 over the Horn fragment.

#include "vud/syntax.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vud {

/// Immutable rules, updatable facts and constraints.
struct KnowledgeBase {
    std::vector<Rule> immutable;
    std::set<Atom> updatable;
    std::vector<Constraint> constraints;

    static KnowledgeBase from(const Database& db);
    Database database() const;

    bool operator==(const KnowledgeBase&) const = default;
};

/// A ground literal as a formula: the fact rule `A.` or the denial `:- A.`
/// (a Rule with empty head and body [A]). Other rules throw InvalidRequest.
Literal formula_literal(const Rule& alpha);

struct RevisionOptions {
    std::size_t max_iterations = 16; ///< constraint-repair rounds
    std::size_t max_solutions = 64;  ///< cap for revision_alternatives
};

/// All results of the revision, in deterministic order: the literal is made
/// true by an insertion explanation (positive) or a minimal hitting set of
/// its explanations (negative), then constraint violations are repaired by
/// deleting minimal hitting sets of their explanations without touching
/// inserted facts. Returns {kb} when α already holds in a consistent kb or
/// α is inconsistent with the rules and constraints.
std::vector<KnowledgeBase> revision_alternatives(const KnowledgeBase& kb, const Literal& alpha,
                                                 const RevisionOptions& options = {});

/// First of revision_alternatives, or kb when none exists.
KnowledgeBase generalized_revision(const KnowledgeBase& kb, const Literal& alpha,
                                   const RevisionOptions& options = {});
KnowledgeBase generalized_revision(const KnowledgeBase& kb, const Rule& alpha,
                                   const RevisionOptions& options = {});

/// One pass of explanation-based change: atoms of `delta_plus` that do not
/// hold are made true by their first insertion explanation, atoms of
/// `delta_minus` that hold are removed through the first minimal hitting
/// set of their explanations. A negative literal counts for the other side.
/// Repeats until nothing changes or `max_iterations` passes.
KnowledgeBase kr(const KnowledgeBase& kb, const std::set<Literal>& delta_plus,
                 const std::set<Literal>& delta_minus, std::size_t max_iterations = 16);

/// α is satisfiable together with the rules and constraints by some set of
/// base facts (the updatable part is ignored).
bool consistent_with_immutable(const KnowledgeBase& kb, const Literal& alpha);

struct KbEquivalence {
    bool equivalent = true;
    std::optional<std::set<Atom>> witness; ///< E separating α and β
    bool exhaustive = false;               ///< every fact set over the signature was tried
};

/// Bounded test of KB-equivalence: every set E of at most `bound` ground
/// facts over the signature must give I ∪ E ⊢ α iff I ∪ E ⊢ β.
KbEquivalence kb_equivalent(const KnowledgeBase& kb, const Rule& alpha, const Rule& beta, std::size_t bound);

enum class Verdict { holds, fails, skipped };

struct PostulateResult {
    std::string name;
    Verdict verdict = Verdict::holds;
    std::string detail;
};

struct PostulateReport {
    std::vector<PostulateResult> results;

    const PostulateResult* find(const std::string& name) const;
    /// No listed postulate fails (skipped counts as not failing).
    bool passes(const std::vector<std::string>& names) const;
    std::vector<std::string> failures() const;
    /// One line per postulate: name, verdict, detail, tab separated.
    std::string to_string() const;
};

using Reviser = std::function<std::vector<KnowledgeBase>(const KnowledgeBase&, const Literal&)>;

struct PostulateOptions {
    Reviser reviser;                   ///< needed for KB*6, otherwise skipped
    std::size_t equivalence_bound = 3; ///< fact-set size for KB-equivalence
    std::size_t subset_cap = 12;       ///< largest set enumerated exhaustively
};

PostulateReport check_postulates(const KnowledgeBase& kb, const Literal& alpha, const KnowledgeBase& revised,
                                 const PostulateOptions& options = {});

inline const std::vector<std::string> kAllPostulates = {"KB*1",   "KB*2",   "KB*3.1", "KB*3.2",
                                                        "KB*4.1", "KB*4.2", "KB*5",   "KB*6",
                                                        "KB*7.1", "KB*7.2", "KB*7.3"};

} // namespace vud
