#include "dalg/parser.hpp"

#include <cctype>

#include "dalg/errors.hpp"

namespace dalg {

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : s_(text) { advance(); }

    const Token& peek() const { return cur_; }
    Token next() {
        Token t = cur_;
        advance();
        return t;
    }
    bool at(const std::string& punct) const { return cur_.kind == Tok::Punct && cur_.text == punct; }
    bool at_ident(const std::string& id) const { return cur_.kind == Tok::Ident && cur_.text == id; }
    Token expect_punct(const std::string& p) {
        if (!at(p)) fail("expected '" + p + "'");
        return next();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at line " + std::to_string(cur_.line) + ", column " +
                             std::to_string(cur_.col),
                         cur_.line, cur_.col);
    }

  private:
    void advance() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == '\n') {
                ++line_, col_ = 1, ++pos_;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_, ++pos_;
                continue;
            }
            break;
        }
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= s_.size()) {
            cur_ = {Tok::End, "", line_, col_};
            return;
        }
        char c = s_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            cur_ = {Tok::Ident, s_.substr(start, pos_ - start), line_, col_};
            col_ += static_cast<int>(pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            cur_ = {Tok::Int, s_.substr(start, pos_ - start), line_, col_};
            col_ += static_cast<int>(pos_ - start);
            return;
        }
        static const std::string punct = "+-*/^()[]{},;=";
        if (punct.find(c) != std::string::npos) {
            cur_ = {Tok::Punct, std::string(1, c), line_, col_};
            ++pos_, ++col_;
            return;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "' at line " +
                             std::to_string(line_) + ", column " + std::to_string(col_),
                         line_, col_);
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token cur_{Tok::End, "", 1, 1};
};

RatExpr rat_const(const std::shared_ptr<DiffRing>& ring, Rational c) {
    return {{ring, ring->constant(std::move(c))}, {ring, ring->constant(Rational(1))}};
}

RatExpr rat_poly(const std::shared_ptr<DiffRing>& ring, Poly p) {
    return {{ring, std::move(p)}, {ring, ring->constant(Rational(1))}};
}

RatExpr rat_add(const RatExpr& a, const RatExpr& b, int sign) {
    Poly num = a.num.poly * b.den.poly;
    Poly rhs = b.num.poly * a.den.poly;
    num = sign > 0 ? num + rhs : num - rhs;
    return {{a.num.ring, std::move(num)}, {a.num.ring, a.den.poly * b.den.poly}};
}

RatExpr rat_mul(const RatExpr& a, const RatExpr& b) {
    return {{a.num.ring, a.num.poly * b.num.poly}, {a.num.ring, a.den.poly * b.den.poly}};
}

class Parser {
  public:
    Parser(const std::string& text, std::shared_ptr<DiffRing> ring, bool expression_only)
        : lex_(text), ring_(std::move(ring)) {
        if (!expression_only) prescan(text);
    }

    // Registers independent variables and indeterminates appearing in
    // D[...](...) constructs before real parsing begins, so bare uses of an
    // indeterminate resolve correctly regardless of textual position.
    void prescan(const std::string& text) {
        Lexer scan(text);
        auto& ctx = *ring_->ctx();
        while (scan.peek().kind != Tok::End) {
            if (scan.at_ident("vars")) {
                scan.next();
                while (scan.peek().kind == Tok::Ident) {
                    std::string n = scan.next().text;
                    if (!ctx.find_indep(n)) ctx.indep.push_back(n);
                }
                if (scan.at(";")) scan.next();
                continue;
            }
            if (scan.at_ident("func")) {
                scan.next();
                if (scan.peek().kind != Tok::Ident) scan.fail("expected indeterminate name");
                std::string fn = scan.next().text;
                if (!scan.at("(")) scan.fail("expected '(' in func declaration");
                scan.next();
                std::vector<std::string> deps;
                while (scan.peek().kind == Tok::Ident) {
                    deps.push_back(scan.next().text);
                    if (scan.at(",")) scan.next();
                }
                if (scan.at(")")) scan.next();
                if (scan.at(";")) scan.next();
                pending_funcs_.push_back({fn, deps});
                continue;
            }
            if (scan.at_ident("D")) {
                scan.next();
                if (!scan.at("[")) continue;
                scan.next();
                std::vector<std::string> dvars;
                while (scan.peek().kind == Tok::Ident) {
                    dvars.push_back(scan.next().text);
                    if (scan.at(",")) scan.next();
                }
                if (!scan.at("]")) continue;
                scan.next();
                if (!scan.at("(")) continue;
                scan.next();
                if (scan.peek().kind != Tok::Ident) continue;
                std::string fn = scan.next().text;
                for (const std::string& v : dvars)
                    if (!ctx.find_indep(v)) ctx.indep.push_back(v);
                inferred_funcs_.push_back(fn);
                continue;
            }
            scan.next();
        }

        // Declared funcs first (explicit dependency sets), then inferred ones
        // depending on every independent variable.
        for (auto& [name, deps] : pending_funcs_) {
            if (ctx.find_indet(name)) throw ParseError("indeterminate declared twice: " + name);
            if (ctx.find_indep(name)) throw ParseError("name is already an independent variable: " + name);
            std::vector<uint8_t> mask(static_cast<size_t>(ctx.l()), 0);
            for (const std::string& d : deps) {
                auto i = ctx.find_indep(d);
                if (!i) throw ParseError("dependency '" + d + "' of " + name +
                                         " is not an independent variable");
                mask[static_cast<size_t>(*i)] = 1;
            }
            if (deps.empty()) throw ParseError("empty dependency list for " + name);
            ctx.indets.push_back({name, std::move(mask)});
        }
        for (const std::string& name : inferred_funcs_) {
            if (ctx.find_indet(name)) continue;
            if (ctx.find_indep(name))
                throw ParseError("independent variable used as a function: " + name);
            ctx.indets.push_back({name, std::vector<uint8_t>(static_cast<size_t>(ctx.l()), 1)});
        }
    }

    RatExpr parse_expr() {
        RatExpr acc = parse_term();
        while (lex_.at("+") || lex_.at("-")) {
            int sign = lex_.next().text == "+" ? 1 : -1;
            acc = rat_add(acc, parse_term(), sign);
        }
        return acc;
    }

    bool at_end() const { return lex_.peek().kind == Tok::End; }
    Lexer& lexer() { return lex_; }

    struct Statement {
        std::string lhs_ident;         // set when the lhs is a bare identifier
        std::optional<RatExpr> lhs;    // absent exactly when lhs_ident is set
        RatExpr rhs;
    };

    std::vector<Statement> parse_statements() {
        std::vector<Statement> stmts;
        // Skip declaration statements (handled by prescan).
        while (lex_.at_ident("vars") || lex_.at_ident("func")) {
            while (!lex_.at(";")) {
                if (lex_.peek().kind == Tok::End) lex_.fail("unterminated declaration");
                lex_.next();
            }
            lex_.next();
        }
        while (lex_.peek().kind != Tok::End) {
            Statement st;
            // A bare identifier immediately followed by '=' may be the target;
            // resolution is deferred until we know it is an ordinary equation.
            bool bare = false;
            {
                Lexer look = lex_;
                if (look.peek().kind == Tok::Ident && look.peek().text != "D") {
                    Token id = look.next();
                    if (look.at("=")) bare = true;
                }
            }
            if (bare) {
                st.lhs_ident = lex_.next().text;
                lex_.next();  // '='
            } else {
                st.lhs = parse_expr();
                lex_.expect_punct("=");
            }
            st.rhs = parse_expr();
            if (!lex_.at(";")) lex_.fail("expected ';' after equation");
            lex_.next();
            stmts.push_back(std::move(st));
        }
        return stmts;
    }

    RatExpr resolve_ident(const std::string& name) {
        return rat_poly(ring_, resolve(name, std::vector<uint32_t>()));
    }

  private:
    RatExpr parse_term() {
        RatExpr acc = parse_factor();
        while (lex_.at("*") || lex_.at("/")) {
            bool mul = lex_.next().text == "*";
            RatExpr rhs = parse_factor();
            if (mul) {
                acc = rat_mul(acc, rhs);
            } else {
                if (rhs.num.poly.is_zero()) lex_.fail("division by syntactic zero");
                acc = rat_mul(acc, RatExpr{rhs.den, rhs.num});
            }
        }
        return acc;
    }

    RatExpr parse_factor() {
        RatExpr base = parse_atom();
        if (lex_.at("^")) {
            lex_.next();
            if (lex_.peek().kind != Tok::Int) lex_.fail("expected a non-negative integer exponent");
            long e = std::stol(lex_.next().text);
            RatExpr acc = rat_const(ring_, Rational(1));
            for (long i = 0; i < e; ++i) acc = rat_mul(acc, base);
            return acc;
        }
        return base;
    }

    RatExpr parse_atom() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Int) {
            Rational c = Rational::parse(lex_.next().text);
            return rat_const(ring_, std::move(c));
        }
        if (lex_.at("(")) {
            lex_.next();
            RatExpr e = parse_expr();
            lex_.expect_punct(")");
            return e;
        }
        if (lex_.at("-")) {
            lex_.next();
            RatExpr e = parse_factor();
            return {{e.num.ring, -e.num.poly}, e.den};
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "D") return parse_deriv();
            std::string name = lex_.next().text;
            return rat_poly(ring_, resolve(name, std::vector<uint32_t>()));
        }
        lex_.fail("expected a factor");
    }

    RatExpr parse_deriv() {
        lex_.next();  // D
        lex_.expect_punct("[");
        auto& ctx = *ring_->ctx();
        std::vector<uint32_t> index(static_cast<size_t>(ctx.l()), 0);
        while (true) {
            if (lex_.peek().kind != Tok::Ident) lex_.fail("expected a derivation variable");
            std::string v = lex_.next().text;
            auto i = ctx.find_indep(v);
            if (!i) lex_.fail("'" + v + "' is not an independent variable");
            index[static_cast<size_t>(*i)] += 1;
            if (lex_.at(",")) {
                lex_.next();
                continue;
            }
            break;
        }
        lex_.expect_punct("]");
        lex_.expect_punct("(");
        if (lex_.peek().kind != Tok::Ident) lex_.fail("expected an indeterminate");
        std::string fn = lex_.next().text;
        lex_.expect_punct(")");
        return rat_poly(ring_, resolve(fn, std::move(index), /*is_deriv=*/true));
    }

    Poly resolve(const std::string& name, std::vector<uint32_t> index, bool is_deriv = false) {
        auto& ctx = *ring_->ctx();
        if (auto yi = ctx.find_indet(name)) {
            if (index.empty()) index.assign(static_cast<size_t>(ctx.l()), 0);
            for (int a = 0; a < ctx.l(); ++a)
                if (index[static_cast<size_t>(a)] > 0 && !ctx.indets[static_cast<size_t>(*yi)].depends_on(a))
                    lex_.fail("derivative of " + name + " along a variable it does not depend on");
            return ring_->var(ring_->var_deriv(*yi, std::move(index)));
        }
        if (is_deriv) lex_.fail("'" + name + "' was not recognized as an indeterminate");
        if (auto xi = ctx.find_indep(name)) return ring_->var(ring_->var_indep(*xi));
        // Undeclared identifiers are parameters.
        if (!ctx.find_param(name)) ctx.params.push_back(name);
        return ring_->var(ring_->var_param(*ctx.find_param(name)));
    }

    Lexer lex_;
    std::shared_ptr<DiffRing> ring_;
    std::vector<std::pair<std::string, std::vector<std::string>>> pending_funcs_;
    std::vector<std::string> inferred_funcs_;
};

DiffPoly normalize_den(const DiffPoly& den) {
    if (den.poly.is_constant()) return {den.ring, den.ring->constant(Rational(1))};
    return {den.ring, poly_normalize(den.poly, nullptr)};
}

}  // namespace

ParsedSystem parse_system(const std::string& text) {
    auto ctx = std::make_shared<DiffContext>();
    auto ring = std::make_shared<DiffRing>(ctx);
    Parser parser(text, ring, /*expression_only=*/false);
    if (ctx->l() == 0) throw ParseError("no independent variables declared or inferred");

    auto stmts = parser.parse_statements();
    if (stmts.size() < 2) throw ParseError("expected at least one equation and a target");

    ParsedSystem sys;
    sys.ring = ring;
    for (size_t i = 0; i + 1 < stmts.size(); ++i) {
        auto& st = stmts[i];
        RatExpr lhs = st.lhs ? *st.lhs : parser.resolve_ident(st.lhs_ident);
        RatExpr d = rat_add(lhs, st.rhs, -1);
        if (d.num.poly.is_zero()) throw ParseError("input equation is identically zero");
        sys.equations.push_back({{ring, poly_normalize(d.num.poly, nullptr)}, normalize_den(d.den)});
    }

    auto& last = stmts.back();
    if (last.lhs_ident.empty())
        throw ParseError("the final statement must be 'target = expression;'");
    const std::string& tname = last.lhs_ident;
    if (ctx->find_indet(tname) || ctx->find_indep(tname) || ctx->find_param(tname))
        throw ParseError("target name '" + tname + "' already names an input symbol");
    sys.target_name = tname;
    sys.target = last.rhs;
    return sys;
}

RatExpr parse_rat_expression(const std::shared_ptr<DiffRing>& ring, const std::string& text) {
    Parser parser(text, ring, /*expression_only=*/true);
    RatExpr e = parser.parse_expr();
    if (!parser.at_end()) parser.lexer().fail("trailing input after expression");
    return e;
}

}  // namespace dalg
