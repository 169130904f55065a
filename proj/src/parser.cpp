#include "vud/parser.hpp"

#include "vud/error.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace vud {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Database database() {
        Database db;
        skip_space();
        while (!at_end()) {
            clause(db);
            skip_space();
        }
        return db;
    }

    Atom single_atom() {
        skip_space();
        Atom a = atom();
        skip_space();
        if (peek() == '.') {
            advance();
            skip_space();
        }
        if (!at_end()) fail("unexpected trailing input");
        if (!a.is_ground()) fail("atom must be ground");
        return a;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    std::map<std::string, std::size_t> arity_;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    char peek_at(std::size_t k) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, line_, column_);
    }

    void skip_space() {
        while (!at_end()) {
            char c = peek();
            if (c == '%') {
                while (!at_end() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    void expect(char c, const char* what) {
        skip_space();
        if (peek() != c) fail(std::string("expected ") + what);
        advance();
    }

    std::string identifier() {
        skip_space();
        if (!ident_char(peek())) fail("expected identifier");
        std::string out;
        while (!at_end() && ident_char(peek())) {
            out += peek();
            advance();
        }
        return out;
    }

    Term term() {
        std::string name = identifier();
        if (std::isupper(static_cast<unsigned char>(name.front()))) return Term::variable(std::move(name));
        return Term::constant(std::move(name));
    }

    Atom atom() {
        skip_space();
        std::size_t line = line_, column = column_;
        std::string name = identifier();
        if (std::isupper(static_cast<unsigned char>(name.front())))
            fail("predicate name must not start with an uppercase letter");
        Atom a(std::move(name));
        skip_space();
        if (peek() == '(') {
            advance();
            a.args.push_back(term());
            skip_space();
            while (peek() == ',') {
                advance();
                a.args.push_back(term());
                skip_space();
            }
            expect(')', "')'");
        }
        auto [it, inserted] = arity_.emplace(a.predicate, a.arity());
        if (!inserted && it->second != a.arity())
            throw ParseError("predicate " + a.predicate + " used with arity " +
                                 std::to_string(a.arity()) + " but previously with arity " +
                                 std::to_string(it->second),
                             line, column);
        return a;
    }

    bool keyword_not() {
        skip_space();
        if (text_.substr(pos_, 3) != "not") return false;
        char after = peek_at(3);
        if (!std::isspace(static_cast<unsigned char>(after))) return false;
        for (int i = 0; i < 3; ++i) advance();
        return true;
    }

    Literal literal() {
        bool negative = keyword_not();
        return {atom(), !negative};
    }

    std::vector<Literal> body() {
        std::vector<Literal> out;
        out.push_back(literal());
        skip_space();
        while (peek() == ',') {
            advance();
            out.push_back(literal());
            skip_space();
        }
        return out;
    }

    bool at_neck() const { return peek() == ':' && peek_at(1) == '-'; }

    void clause(Database& db) {
        std::size_t line = line_, column = column_;
        if (at_neck()) {
            advance();
            advance();
            Constraint c{body()};
            expect('.', "'.' after constraint");
            db.ic.push_back(std::move(c));
            return;
        }
        Rule r;
        r.head.push_back(atom());
        skip_space();
        while (peek() == '|') {
            advance();
            r.head.push_back(atom());
            skip_space();
        }
        if (at_neck()) {
            advance();
            advance();
            r.body = body();
        }
        expect('.', "'.' at end of clause");

        if (r.head.size() == 1 && r.head.front().is_equality()) {
            if (r.body.empty()) throw ParseError("equality constraint needs a body", line, column);
            Constraint c{r.body};
            c.body.emplace_back(r.head.front(), false);
            db.ic.push_back(std::move(c));
            return;
        }
        if (r.body.empty() && r.head.size() == 1) {
            if (!r.head.front().is_ground())
                throw ParseError("fact " + to_string(r.head.front()) + " contains variables", line,
                                 column);
            db.edb.insert(std::move(r.head.front()));
            return;
        }
        db.idb.push_back(std::move(r));
    }
};

} // namespace

Database parse_database(std::string_view text) { return Parser(text).database(); }

Atom parse_atom(std::string_view text) { return Parser(text).single_atom(); }

Database load_database(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_database(buffer.str());
}

void save_database(const Database& db, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << to_string(db);
}

} // namespace vud
