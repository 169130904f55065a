#include "vud/session.hpp"

#include "vud/error.hpp"
#include "vud/model.hpp"
#include "vud/parser.hpp"
#include "vud/sld.hpp"
#include "vud/tableau.hpp"

#include <sstream>

namespace vud {

std::string inline_text(const Realization& u) {
    std::string out;
    for (const auto& f : u.inserts) out += (out.empty() ? "+" : " +") + to_string(f) + ".";
    for (const auto& f : u.deletes) out += (out.empty() ? "-" : " -") + to_string(f) + ".";
    return out;
}

Session::Session(Database db, SessionConfig config) : initial_(db), db_(std::move(db)), config_(config) {}

Database Session::replay() const {
    Database d = initial_;
    for (const auto& u : history_) d.edb = u.apply_to(d.edb);
    return d;
}

void Session::apply(const Realization& u) {
    db_.edb = u.apply_to(db_.edb);
    history_.push_back(u);
    pending_.clear();
}

bool Session::undo() {
    if (history_.empty()) return false;
    const Realization& u = history_.back();
    for (const auto& f : u.inserts) db_.edb.erase(f);
    db_.edb.insert(u.deletes.begin(), u.deletes.end());
    history_.pop_back();
    pending_.clear();
    return true;
}

namespace {

std::pair<std::string, std::string> split_command(const std::string& line) {
    std::istringstream in(line);
    std::string verb;
    in >> verb;
    std::string rest;
    std::getline(in, rest);
    auto first = rest.find_first_not_of(" \t");
    rest = first == std::string::npos ? "" : rest.substr(first);
    while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t' || rest.back() == '\r')) rest.pop_back();
    return {verb, rest};
}

const char* kHelp =
    "commands: query <atom>. | insert <atom>. | delete <atom>. | choose <n> |\n"
    "          show model|edb|ic|history|tree <atom>|tableau <atom> |\n"
    "          variant minimal|materialized | save <path> | undo | quit\n";

} // namespace

std::string Session::execute(const std::string& line) {
    auto [verb, rest] = split_command(line);
    if (verb.empty() || verb[0] == '%') return "";
    try {
        if (verb == "quit" || verb == "exit") {
            finished_ = true;
            return "";
        }
        if (verb == "help") return kHelp;
        if (verb == "query") return least_model(db_).contains(parse_atom(rest)) ? "true\n" : "false\n";
        if (verb == "insert" || verb == "delete") return request(verb, rest);
        if (verb == "choose") {
            if (pending_.empty()) return "error: no pending alternatives\n";
            std::size_t n = 0;
            try {
                n = std::stoul(rest);
            } catch (const std::exception&) {
                return "error: choose expects a number\n";
            }
            if (n < 1 || n > pending_.size())
                return "error: choose a number between 1 and " + std::to_string(pending_.size()) + "\n";
            Realization u = pending_[n - 1];
            apply(u);
            return "applied: " + inline_text(u) + "\n";
        }
        if (verb == "undo") return undo() ? "undone\n" : "nothing to undo\n";
        if (verb == "save") {
            if (rest.empty()) return "error: save expects a path\n";
            save_database(db_, rest);
            return "saved " + rest + "\n";
        }
        if (verb == "show") return show(rest);
        if (verb == "variant") {
            if (rest == "minimal")
                config_.variant = Variant::minimal;
            else if (rest == "materialized")
                config_.variant = Variant::materialized;
            else
                return "error: variant is minimal or materialized\n";
            return "variant " + rest + "\n";
        }
        return "error: unknown command " + verb + "\n";
    } catch (const Unrealizable& e) {
        return std::string("unrealizable: ") + e.what() + "\n";
    } catch (const Error& e) {
        return std::string("error: ") + e.what() + "\n";
    }
}

std::string Session::request(const std::string& verb, const std::string& rest) {
    Atom a = parse_atom(rest);
    VURequest req;
    (verb == "insert" ? req.inserts : req.deletes).insert(a);
    UpdateOptions options;
    options.max_iterations = config_.max_iterations;
    options.certify = config_.show_reports;
    auto outcome = view_update(db_, req, config_.variant, options);
    pending_ = outcome.transactions;
    std::ostringstream os;
    for (std::size_t i = 0; i < pending_.size(); ++i) {
        os << i + 1 << ": " << inline_text(pending_[i]) << '\n';
        if (config_.show_reports && i < outcome.reports.size()) os << outcome.reports[i].to_string();
    }
    return os.str();
}

std::string Session::show(const std::string& rest) {
    auto [what, arg] = split_command(rest);
    std::ostringstream os;
    if (what == "model") {
        for (const auto& a : least_model(db_).atoms) os << to_string(a) << ".\n";
    } else if (what == "edb") {
        for (const auto& a : db_.edb) os << to_string(a) << ".\n";
    } else if (what == "ic") {
        for (const auto& c : db_.ic) os << to_string(c) << '\n';
        auto v = check_ic(db_);
        if (v.empty()) os << "% satisfied\n";
        for (const auto& x : v) os << "% violated: " << to_string(x.constraint) << " with " << to_string(x.witness) << '\n';
    } else if (what == "history") {
        for (std::size_t i = 0; i < history_.size(); ++i) os << i + 1 << ": " << inline_text(history_[i]) << '\n';
    } else if (what == "tree") {
        os << to_string(sld_tree(db_, parse_atom(arg)));
    } else if (what == "tableau") {
        Atom a = parse_atom(arg);
        auto prog = config_.variant == Variant::minimal ? idb_star(db_) : idb_plus(db_, a);
        auto t = build_update_tableau(prog, SignedAtom{a, true});
        if (config_.variant == Variant::minimal) t = strong_minimality_filter(std::move(t), db_, a);
        os << to_string(t);
    } else {
        return "error: show model|edb|ic|history|tree <atom>|tableau <atom>\n";
    }
    return os.str();
}

} // namespace vud
