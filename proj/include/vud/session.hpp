#pragma once

// Interactive session state behind the REPL: current database, applied
// transactions and pending alternatives.

#include "vud/engine.hpp"
#include "vud/syntax.hpp"

#include <string>
#include <vector>

namespace vud {

struct SessionConfig {
    Variant variant = Variant::minimal;
    std::size_t max_iterations = 16;
    bool show_reports = false;
};

class Session {
public:
    explicit Session(Database db, SessionConfig config = {});

    /// Runs one command line and returns its output, newline terminated.
    /// Errors come back as "error: ..." lines; the session stays usable.
    std::string execute(const std::string& line);

    bool finished() const noexcept { return finished_; }
    const Database& database() const noexcept { return db_; }
    const Database& initial() const noexcept { return initial_; }
    const std::vector<Realization>& history() const noexcept { return history_; }
    const std::vector<Realization>& pending() const noexcept { return pending_; }
    SessionConfig& config() noexcept { return config_; }

    /// Initial database with every applied transaction replayed.
    Database replay() const;

    void apply(const Realization& u);
    bool undo();

private:
    Database initial_;
    Database db_;
    SessionConfig config_;
    std::vector<Realization> history_;
    std::vector<Realization> pending_;
    bool finished_ = false;

    std::string request(const std::string& verb, const std::string& rest);
    std::string show(const std::string& rest);
};

/// Single-line rendering of a transaction, facts separated by spaces.
std::string inline_text(const Realization& u);

} // namespace vud
