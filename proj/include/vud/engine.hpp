#pragma once

// View update orchestration: deletions through update tableaux, insertions
// and mixed requests through VU rules, constraint repair, certification.

#include "vud/magic.hpp"
#include "vud/model.hpp"
#include "vud/revision.hpp"
#include "vud/syntax.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vud {

enum class Variant {
    minimal,      ///< strong minimality test, sub-transaction minimal insertions
    materialized, ///< tableau over the materialized view, no minimality test
};

std::string to_string(Variant v);

struct UpdateOptions {
    std::size_t max_iterations = 16; ///< constraint-repair rounds
    bool certify = true;             ///< run the postulate checker on every outcome
};

struct UpdateOutcome {
    Variant variant = Variant::minimal;
    VURequest request;
    std::vector<Realization> transactions;    ///< sorted by size
    std::vector<Database> new_databases;      ///< one per transaction
    std::vector<PostulateReport> reports;     ///< one per transaction when certified
    std::vector<std::string> trace;           ///< routing notes
};

/// All alternative realizations of `req` for the chosen variant. A single
/// deletion over a definite IDB goes through the update tableau (idb_star
/// and the strong minimality filter, or idb_plus unfiltered); everything
/// else goes through the VU rules. When no direct realization satisfies the
/// constraints, a single-atom request falls back to revision with
/// deleting repairs, bounded by `max_iterations`.
/// Throws ValidationError, NotStratifiable, InvalidRequest, Unrealizable.
UpdateOutcome view_update(const Database& db, const VURequest& req, Variant variant,
                          const UpdateOptions& options = {});

/// Postulate report of one outcome of a single-atom request, with the
/// engine itself as reviser for KB*6.
PostulateReport certify_outcome(const Database& before, const VURequest& req, const Database& after,
                                Variant variant);

/// Perfect model kept for query answering, recomputed only when the
/// database differs from the cached one.
class MaterializedView {
public:
    const Interpretation& refresh(const Database& db);
    bool last_was_hit() const noexcept { return hit_; }
    std::size_t recomputations() const noexcept { return recomputations_; }

private:
    std::optional<Database> db_;
    Interpretation model_;
    bool hit_ = false;
    std::size_t recomputations_ = 0;
};

Interpretation refresh_materialized_view(const Database& db);

} // namespace vud
