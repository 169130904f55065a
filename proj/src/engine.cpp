#include "vud/engine.hpp"

#include "vud/analysis.hpp"
#include "vud/error.hpp"
#include "vud/tableau.hpp"

#include <algorithm>

namespace vud {

std::string to_string(Variant v) { return v == Variant::minimal ? "minimal" : "materialized"; }

namespace {

bool definite(const Database& db) {
    return std::all_of(db.idb.begin(), db.idb.end(), [](const Rule& r) { return r.is_definite(); });
}

std::optional<Literal> single_literal(const VURequest& req) {
    if (req.inserts.size() + req.deletes.size() != 1) return std::nullopt;
    if (!req.inserts.empty()) return Literal{*req.inserts.begin(), true};
    return Literal{*req.deletes.begin(), false};
}

std::vector<Realization> tableau_deletions(const Database& db, const Atom& a, Variant variant,
                                           std::vector<std::string>& trace) {
    DisjunctiveProgram prog = variant == Variant::minimal ? idb_star(db) : idb_plus(db, a);
    UpdateTableau t = build_update_tableau(prog, SignedAtom{a, true});
    if (variant == Variant::minimal) t = strong_minimality_filter(std::move(t), db, a);
    std::set<Realization> unique;
    for (const auto* b : t.open_branches()) {
        Realization u;
        u.deletes = hitting_set_of_branch(*b, db);
        if (!u.deletes.empty()) unique.insert(std::move(u));
    }
    trace.push_back("tableau: " + std::to_string(t.branches.size()) + " branches, " +
                    std::to_string(unique.size()) + " hitting sets");
    return {unique.begin(), unique.end()};
}

Realization diff(const std::set<Atom>& before, const std::set<Atom>& after) {
    Realization u;
    for (const auto& f : after)
        if (!before.count(f)) u.inserts.insert(f);
    for (const auto& f : before)
        if (!after.count(f)) u.deletes.insert(f);
    return u;
}

bool proper_subset_realizes(const Database& db, const VURequest& req, const Realization& u) {
    std::vector<std::pair<bool, Atom>> items;
    for (const auto& f : u.inserts) items.emplace_back(true, f);
    for (const auto& f : u.deletes) items.emplace_back(false, f);
    if (items.size() > 16) return false;
    std::uint32_t full = (1u << items.size()) - 1;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        Realization sub;
        for (std::size_t i = 0; i < items.size(); ++i)
            if (mask & (1u << i)) (items[i].first ? sub.inserts : sub.deletes).insert(items[i].second);
        if (realizes(db, req, sub)) return true;
    }
    return false;
}

// Outcomes whose result violates a constraint are repaired by revision; the
// request literal stays satisfied throughout.
std::vector<Realization> repair(const Database& db, const Literal& alpha, const std::vector<Realization>& candidates,
                                const UpdateOptions& options, std::vector<std::string>& trace) {
    std::set<Realization> out;
    RevisionOptions ro;
    ro.max_iterations = options.max_iterations;
    for (const auto& u : candidates) {
        KnowledgeBase kb{db.idb, u.apply_to(db.edb), db.ic};
        for (const auto& r : revision_alternatives(kb, alpha, ro)) {
            out.insert(diff(db.edb, r.updatable));
        }
    }
    trace.push_back("repair: " + std::to_string(out.size()) + " candidates");
    return {out.begin(), out.end()};
}

void apply_policy(std::vector<Realization>& us, const Database& db, const VURequest& req, Variant variant,
                  bool tableau_route) {
    std::erase_if(us, [&](const Realization& u) { return !realizes(db, req, u); });
    if (variant == Variant::minimal) {
        std::erase_if(us, [&](const Realization& u) { return proper_subset_realizes(db, req, u); });
    } else if (!tableau_route) {
        std::vector<Realization> kept;
        for (const auto& u : us) {
            bool dominated = std::any_of(us.begin(), us.end(), [&](const Realization& v) {
                return v != u && std::includes(u.inserts.begin(), u.inserts.end(), v.inserts.begin(), v.inserts.end()) &&
                       std::includes(u.deletes.begin(), u.deletes.end(), v.deletes.begin(), v.deletes.end());
            });
            if (!dominated) kept.push_back(u);
        }
        us = std::move(kept);
    }
    std::sort(us.begin(), us.end(), [](const Realization& a, const Realization& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    us.erase(std::unique(us.begin(), us.end()), us.end());
}

} // namespace

UpdateOutcome view_update(const Database& db, const VURequest& req, Variant variant, const UpdateOptions& options) {
    auto invalid = validate(db);
    if (!invalid.empty()) throw ValidationError(invalid.front().message);
    stratify(db);
    auto problems = request_violations(db, req);
    if (!problems.empty()) throw InvalidRequest(problems.front());

    UpdateOutcome out;
    out.variant = variant;
    out.request = req;
    auto alpha = single_literal(req);

    std::vector<Realization> found;
    bool tableau_route = alpha && !alpha->positive && definite(db);
    if (tableau_route) {
        out.trace.push_back("route: update tableau over " +
                            std::string(variant == Variant::minimal ? "idb_star" : "idb_plus"));
        found = tableau_deletions(db, alpha->atom, variant, out.trace);
        // Monotone constraints cannot be broken by deleting; others may.
        std::vector<Realization> broken;
        std::erase_if(found, [&](const Realization& u) {
            Database next{db.idb, u.apply_to(db.edb), db.ic};
            if (check_ic(next).empty()) return false;
            broken.push_back(u);
            return true;
        });
        if (!broken.empty()) {
            auto fixed = repair(db, *alpha, broken, options, out.trace);
            found.insert(found.end(), fixed.begin(), fixed.end());
        }
    } else {
        out.trace.push_back("route: VU rules");
        RealizationOptions ro;
        ro.policy = variant == Variant::minimal ? RealizationPolicy::subtransaction_minimal
                                                : RealizationPolicy::family_minimal;
        try {
            found = insertion_realizations(db, req, ro);
        } catch (const Unrealizable& e) {
            if (!alpha) throw;
            out.trace.insert(out.trace.end(), e.trace().begin(), e.trace().end());
            out.trace.push_back("no direct realization; repairing constraint violations");
            found = repair(db, *alpha, {Realization{}}, options, out.trace);
        }
    }

    apply_policy(found, db, req, variant, tableau_route);
    if (found.empty()) throw Unrealizable("no realization of the request satisfies the constraints", out.trace);

    for (const auto& u : found) {
        Database next{db.idb, u.apply_to(db.edb), db.ic};
        if (options.certify) {
            if (alpha)
                out.reports.push_back(certify_outcome(db, req, next, variant));
            else
                out.reports.push_back({{{"KB*", Verdict::skipped, "postulates are stated for a single literal"}}});
        }
        out.transactions.push_back(u);
        out.new_databases.push_back(std::move(next));
    }
    return out;
}

PostulateReport certify_outcome(const Database& before, const VURequest& req, const Database& after, Variant variant) {
    auto alpha = single_literal(req);
    if (!alpha) throw InvalidRequest("postulates are stated for a single literal");
    PostulateOptions po;
    po.reviser = [variant](const KnowledgeBase& kb, const Literal& beta) -> std::vector<KnowledgeBase> {
        Database db = kb.database();
        if (least_model(db).contains(beta.atom) == beta.positive) return {kb};
        VURequest r;
        (beta.positive ? r.inserts : r.deletes).insert(beta.atom);
        UpdateOptions o;
        o.certify = false;
        try {
            auto outcome = view_update(db, r, variant, o);
            std::vector<KnowledgeBase> out;
            for (const auto& d : outcome.new_databases) out.push_back(KnowledgeBase::from(d));
            return out;
        } catch (const Error&) {
            return {kb};
        }
    };
    return check_postulates(KnowledgeBase::from(before), *alpha, KnowledgeBase::from(after), po);
}

const Interpretation& MaterializedView::refresh(const Database& db) {
    hit_ = db_ && *db_ == db;
    if (!hit_) {
        model_ = least_model(db);
        db_ = db;
        ++recomputations_;
    }
    return model_;
}

Interpretation refresh_materialized_view(const Database& db) { return least_model(db); }

} // namespace vud
