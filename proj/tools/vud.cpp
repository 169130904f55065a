#include "vud/analysis.hpp"
#include "vud/engine.hpp"
#include "vud/error.hpp"
#include "vud/model.hpp"
#include "vud/parser.hpp"
#include "vud/session.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <unistd.h>

namespace {

using namespace vud;

int check(const std::string& path) {
    Database db = load_database(path);
    auto violations = validate(db);
    for (const auto& v : violations) std::cerr << to_string(v.kind) << ": " << v.message << '\n';
    if (!violations.empty()) return 1;
    auto strata = stratify(db);
    std::cout << "ok: " << db.idb.size() << " rules, " << db.edb.size() << " facts, " << db.ic.size()
              << " constraints, " << strata.size() << " strata\n";
    auto ic = check_ic(db);
    for (const auto& v : ic) std::cout << "violated: " << to_string(v.constraint) << " with " << to_string(v.witness) << '\n';
    return 0;
}

void print_outcome(const UpdateOutcome& outcome, bool all, bool tsv, std::ostream& os) {
    std::size_t count = all ? outcome.transactions.size() : std::min<std::size_t>(1, outcome.transactions.size());
    for (std::size_t i = 0; i < count; ++i) {
        const auto& u = outcome.transactions[i];
        if (tsv) {
            for (const auto& f : u.inserts) os << i + 1 << "\t+\t" << to_string(f) << '\n';
            for (const auto& f : u.deletes) os << i + 1 << "\t-\t" << to_string(f) << '\n';
            if (i < outcome.reports.size())
                for (const auto& r : outcome.reports[i].results)
                    os << i + 1 << '\t' << r.name << '\t'
                       << (r.verdict == Verdict::holds ? "holds" : r.verdict == Verdict::fails ? "fails" : "skipped") << '\t'
                       << r.detail << '\n';
            continue;
        }
        if (all) os << "% alternative " << i + 1 << '\n';
        os << to_string(u);
        os << "% new EDB: " << to_string(outcome.new_databases[i].edb) << '\n';
        if (i < outcome.reports.size()) {
            std::istringstream lines(outcome.reports[i].to_string());
            for (std::string line; std::getline(lines, line);) os << "% " << line << '\n';
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"View updates for stratified Datalog databases"};
    app.require_subcommand(1);

    std::string file, atom_text, insert_text, delete_text, variant_text = "minimal", format = "text", output;
    bool all = false, no_report = false;
    std::size_t max_iter = 16;

    auto* check_cmd = app.add_subcommand("check", "Validate a database file");
    check_cmd->add_option("file", file)->required();
    auto* model_cmd = app.add_subcommand("model", "Print the perfect model");
    model_cmd->add_option("file", file)->required();
    auto* query_cmd = app.add_subcommand("query", "Decide a ground atom");
    query_cmd->add_option("file", file)->required();
    query_cmd->add_option("atom", atom_text)->required();
    auto* update_cmd = app.add_subcommand("update", "Translate a view update into base-fact transactions");
    update_cmd->add_option("file", file)->required();
    auto* ins = update_cmd->add_option("--insert", insert_text, "view atom to insert");
    auto* del = update_cmd->add_option("--delete", delete_text, "view atom to delete");
    ins->excludes(del);
    update_cmd->add_option("--variant", variant_text)->check(CLI::IsMember({"minimal", "materialized"}));
    update_cmd->add_flag("--all", all, "list every alternative instead of the first");
    update_cmd->add_option("--max-iter", max_iter, "constraint-repair rounds");
    update_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));
    update_cmd->add_option("--output", output, "write the database after the first transaction");
    update_cmd->add_flag("--no-report", no_report, "skip postulate certification");
    auto* repl_cmd = app.add_subcommand("repl", "Interactive session");
    repl_cmd->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*check_cmd) return check(file);
        Database db = load_database(file);
        auto violations = validate(db);
        if (!violations.empty()) throw ValidationError(violations.front().message);
        if (*model_cmd) {
            for (const auto& a : least_model(db).atoms) std::cout << to_string(a) << ".\n";
            return 0;
        }
        if (*query_cmd) {
            Atom a = parse_atom(atom_text);
            std::cout << (least_model(db).contains(a) ? "true" : "false") << '\n';
            return 0;
        }
        if (*update_cmd) {
            if (insert_text.empty() == delete_text.empty()) {
                std::cerr << "exactly one of --insert and --delete is required\n";
                return 1;
            }
            VURequest req;
            if (!insert_text.empty()) req.inserts.insert(parse_atom(insert_text));
            else req.deletes.insert(parse_atom(delete_text));
            UpdateOptions options;
            options.max_iterations = max_iter;
            options.certify = !no_report;
            Variant variant = variant_text == "minimal" ? Variant::minimal : Variant::materialized;
            auto outcome = view_update(db, req, variant, options);
            print_outcome(outcome, all, format == "tsv", std::cout);
            if (!output.empty()) save_database(outcome.new_databases.front(), output);
            return 0;
        }
        if (*repl_cmd) {
            Session session(db);
            bool interactive = isatty(0) != 0;
            std::string line;
            while (!session.finished()) {
                if (interactive) std::cout << "vud> " << std::flush;
                if (!std::getline(std::cin, line)) break;
                std::cout << session.execute(line) << std::flush;
            }
            return 0;
        }
    } catch (const Unrealizable& e) {
        std::cerr << "unrealizable: " << e.what() << '\n';
        for (const auto& t : e.trace()) std::cerr << "  " << t << '\n';
        return 2;
    } catch (const NotStratifiable& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
