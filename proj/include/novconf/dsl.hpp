#ifndef NOVCONF_DSL_HPP
#define NOVCONF_DSL_HPP

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "novconf/confalg.hpp"

namespace novconf::dsl {

// Index literals are plain machine integers with a documented working range.
inline constexpr long long kMaxIntLiteral = 1000000;

struct ParseError : std::runtime_error {
    int line;
    int column;
    std::string expected;
    std::string found;

    ParseError(int ln, int col, std::string exp, std::string fnd)
        : std::runtime_error("parse error at " + std::to_string(ln) + ":" + std::to_string(col) +
                             ": expected " + exp + ", found " + fnd),
          line(ln), column(col), expected(std::move(exp)), found(std::move(fnd))
    {
    }
};

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Int, LBrace, RBrace, LParen, RParen, Comma, Semi, Eq, Plus, Minus, Star,
                 Caret, Slash, Colon, End };

struct Token {
    Tok kind;
    std::string text;
    int line = 1, column = 1;
};

inline const char* token_name(Tok t)
{
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Eq: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::Slash: return "'/'";
    case Tok::Colon: return "':'";
    case Tok::End: return "end of input";
    }
    return "?";
}

inline std::vector<Token> tokenize(const std::string& text)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t k) {
        for (size_t j = 0; j < k; ++j) {
            if (text[i + j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += k;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            t.kind = Tok::Ident;
            t.text = text.substr(i, j - i);
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            t.kind = Tok::Int;
            t.text = text.substr(i, j - i);
            if (t.text.size() > 7 || std::stoll(t.text) > kMaxIntLiteral)
                throw ParseError(t.line, t.column, "integer within |n| <= 10^6", t.text);
            advance(j - i);
        } else {
            switch (c) {
            case '{': t.kind = Tok::LBrace; break;
            case '}': t.kind = Tok::RBrace; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case ',': t.kind = Tok::Comma; break;
            case ';': t.kind = Tok::Semi; break;
            case '=': t.kind = Tok::Eq; break;
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '^': t.kind = Tok::Caret; break;
            case '/': t.kind = Tok::Slash; break;
            case ':': t.kind = Tok::Colon; break;
            default:
                throw ParseError(line, col, "a token", std::string(1, c));
            }
            t.text = std::string(1, c);
            advance(1);
        }
        out.push_back(std::move(t));
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

// ---------------------------------------------------------------------------
// AST

struct BracketDecl {
    std::string g, h;
    ConfElement value;
    bool operator==(const BracketDecl&) const = default;
};

struct AlgebraDecl {
    std::string name;
    std::vector<std::string> gens;
    std::vector<BracketDecl> brackets;
    bool operator==(const AlgebraDecl&) const = default;
};

using LinCombo = std::map<std::string, Rational>;

struct NPEntry {
    std::string op; // "circ" or "star"
    std::string g, h;
    LinCombo value;
    bool operator==(const NPEntry&) const = default;
};

struct NPAlgebraDecl {
    std::string name;
    std::vector<std::string> gens;
    std::vector<NPEntry> entries;
    bool operator==(const NPAlgebraDecl&) const = default;
};

struct DerivationDecl {
    std::string name;
    std::string algebra;
    std::vector<std::pair<std::string, ConfElement>> entries;
    bool operator==(const DerivationDecl&) const = default;
};

struct LocalityDecl {
    std::string name;
    long long default_bound = 0;
    std::vector<std::tuple<std::string, std::string, long long>> overrides;
    bool operator==(const LocalityDecl&) const = default;
};

using ArgValue = std::variant<long long, std::pair<long long, long long>, std::string>;

struct CommandDecl {
    enum class Kind { Check, Locality, Product, Scenario, Membership };
    Kind kind;
    std::string ident;               // identity name or scenario name
    std::vector<std::string> names;  // positional names
    long long number = 0;            // the n of a product command
    std::vector<std::pair<std::string, ArgValue>> args;
    bool operator==(const CommandDecl&) const = default;
};

using Item = std::variant<AlgebraDecl, NPAlgebraDecl, DerivationDecl, LocalityDecl, CommandDecl>;

struct Script {
    std::vector<Item> items;
    bool operator==(const Script&) const = default;
};

// ---------------------------------------------------------------------------
// Parser

namespace parser_detail {

// scalar-or-module-valued expression while parsing opexprs
struct MixedExpr {
    OpPoly scalar;      // valid when vec is empty
    ConfElement vec;    // module part
    bool is_scalar() const { return vec.is_zero(); }
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Script parse_script()
    {
        Script s;
        while (peek().kind != Tok::End)
            s.items.push_back(parse_item());
        return s;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& peek(size_t ahead = 0) const
    {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& get() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& expected) const
    {
        const Token& t = peek();
        throw ParseError(t.line, t.column, expected,
                         t.kind == Tok::End ? "end of input"
                                            : (t.text.empty() ? token_name(t.kind) : "'" + t.text + "'"));
    }

    Token expect(Tok k, const std::string& what = "")
    {
        if (peek().kind != k)
            fail(what.empty() ? token_name(k) : what);
        return get();
    }

    bool accept(Tok k)
    {
        if (peek().kind == k) {
            get();
            return true;
        }
        return false;
    }

    bool at_keyword(const std::string& kw) const
    {
        return peek().kind == Tok::Ident && peek().text == kw;
    }

    std::string expect_ident(const std::string& what = "identifier")
    {
        if (peek().kind != Tok::Ident)
            fail(what);
        return get().text;
    }

    long long expect_int_value()
    {
        bool neg = accept(Tok::Minus);
        Token t = expect(Tok::Int, "integer");
        long long v = std::stoll(t.text);
        return neg ? -v : v;
    }

    Item parse_item()
    {
        if (at_keyword("algebra"))
            return parse_algebra();
        if (at_keyword("npalgebra"))
            return parse_npalgebra();
        if (at_keyword("derivation"))
            return parse_derivation();
        if (at_keyword("localityfn"))
            return parse_locality_decl();
        if (at_keyword("check") || at_keyword("locality") || at_keyword("product") ||
            at_keyword("scenario") || at_keyword("membership"))
            return parse_command();
        fail("a declaration or command");
    }

    AlgebraDecl parse_algebra()
    {
        get(); // algebra
        AlgebraDecl a;
        a.name = expect_ident("algebra name");
        expect(Tok::LBrace);
        if (!at_keyword("generators"))
            fail("'generators'");
        get();
        expect(Tok::Colon);
        a.gens.push_back(expect_ident("generator name"));
        while (accept(Tok::Comma))
            a.gens.push_back(expect_ident("generator name"));
        expect(Tok::Semi);
        while (!accept(Tok::RBrace)) {
            if (!at_keyword("bracket"))
                fail("'bracket' or '}'");
            get();
            BracketDecl b;
            expect(Tok::LParen);
            b.g = expect_ident("generator name");
            expect(Tok::Comma);
            b.h = expect_ident("generator name");
            expect(Tok::RParen);
            expect(Tok::Eq);
            b.value = parse_module_expr();
            expect(Tok::Semi);
            a.brackets.push_back(std::move(b));
        }
        return a;
    }

    NPAlgebraDecl parse_npalgebra()
    {
        get();
        NPAlgebraDecl a;
        a.name = expect_ident("algebra name");
        expect(Tok::LBrace);
        if (!at_keyword("generators"))
            fail("'generators'");
        get();
        expect(Tok::Colon);
        a.gens.push_back(expect_ident("generator name"));
        while (accept(Tok::Comma))
            a.gens.push_back(expect_ident("generator name"));
        expect(Tok::Semi);
        while (!accept(Tok::RBrace)) {
            if (!at_keyword("circ") && !at_keyword("star"))
                fail("'circ', 'star' or '}'");
            NPEntry e;
            e.op = get().text;
            expect(Tok::LParen);
            e.g = expect_ident("generator name");
            expect(Tok::Comma);
            e.h = expect_ident("generator name");
            expect(Tok::RParen);
            expect(Tok::Eq);
            e.value = parse_lin_combo();
            expect(Tok::Semi);
            a.entries.push_back(std::move(e));
        }
        return a;
    }

    DerivationDecl parse_derivation()
    {
        get();
        DerivationDecl d;
        d.name = expect_ident("derivation name");
        if (!at_keyword("on"))
            fail("'on'");
        get();
        d.algebra = expect_ident("algebra name");
        expect(Tok::LBrace);
        while (!accept(Tok::RBrace)) {
            if (!at_keyword("map"))
                fail("'map' or '}'");
            get();
            expect(Tok::LParen);
            std::string g = expect_ident("generator name");
            expect(Tok::RParen);
            expect(Tok::Eq);
            ConfElement v = parse_module_expr();
            expect(Tok::Semi);
            d.entries.emplace_back(std::move(g), std::move(v));
        }
        return d;
    }

    LocalityDecl parse_locality_decl()
    {
        get();
        LocalityDecl l;
        l.name = expect_ident("locality function name");
        expect(Tok::LBrace);
        if (!at_keyword("default"))
            fail("'default'");
        get();
        expect(Tok::Eq);
        l.default_bound = expect_int_value();
        expect(Tok::Semi);
        while (!accept(Tok::RBrace)) {
            if (!at_keyword("override"))
                fail("'override' or '}'");
            get();
            expect(Tok::LParen);
            std::string a = expect_ident("generator name");
            expect(Tok::Comma);
            std::string b = expect_ident("generator name");
            expect(Tok::RParen);
            expect(Tok::Eq);
            long long v = expect_int_value();
            expect(Tok::Semi);
            l.overrides.emplace_back(std::move(a), std::move(b), v);
        }
        return l;
    }

    CommandDecl parse_command()
    {
        CommandDecl c;
        std::string kw = get().text;
        if (kw == "check") {
            c.kind = CommandDecl::Kind::Check;
            c.ident = expect_ident("identity, 'derivation' or 'np'");
            c.names.push_back(expect_ident("name"));
        } else if (kw == "locality") {
            c.kind = CommandDecl::Kind::Locality;
            c.names.push_back(expect_ident("algebra name"));
            c.names.push_back(expect_ident("generator name"));
            c.names.push_back(expect_ident("generator name"));
        } else if (kw == "product") {
            c.kind = CommandDecl::Kind::Product;
            c.names.push_back(expect_ident("algebra name"));
            c.names.push_back(expect_ident("generator name"));
            c.names.push_back(expect_ident("generator name"));
            c.number = expect_int_value();
        } else if (kw == "scenario") {
            c.kind = CommandDecl::Kind::Scenario;
            c.ident = expect_ident("scenario name");
            parse_kv_args(c.args);
        } else { // membership
            c.kind = CommandDecl::Kind::Membership;
            parse_kv_args(c.args);
        }
        expect(Tok::Semi);
        return c;
    }

    // "case" and "variant" take a name, "window" takes lo:hi, the rest take
    // one integer. Keeping the keys strict makes a damaged argument list fail
    // right at the damage.
    void parse_kv_args(std::vector<std::pair<std::string, ArgValue>>& out)
    {
        while (peek().kind == Tok::Ident) {
            const Token& keytok = peek();
            std::string key = keytok.text;
            static const char* known[] = {"M",    "kmax", "r",      "p",     "q",
                                          "l",    "n",    "m",      "k",     "smax",
                                          "degree", "seed", "window", "case", "variant"};
            bool ok = false;
            for (const char* kn : known)
                ok = ok || key == kn;
            if (!ok)
                fail("a known argument name");
            get();
            expect(Tok::Eq);
            if (key == "case" || key == "variant") {
                out.emplace_back(std::move(key), ArgValue(expect_ident("case name")));
            } else if (key == "window") {
                long long lo = expect_int_value();
                expect(Tok::Colon);
                long long hi = expect_int_value();
                out.emplace_back(std::move(key), ArgValue(std::make_pair(lo, hi)));
            } else {
                out.emplace_back(std::move(key), ArgValue(expect_int_value()));
            }
        }
    }

    // opexpr := term (('+'|'-') term)*
    MixedExpr parse_module_expr_mixed()
    {
        MixedExpr acc = parse_term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = get().kind == Tok::Minus;
            MixedExpr t = parse_term();
            if (minus) {
                t.scalar = -t.scalar;
                t.vec = ConfElement() - t.vec;
            }
            acc.scalar += t.scalar;
            acc.vec += t.vec;
        }
        return acc;
    }

    ConfElement parse_module_expr()
    {
        const Token& start = peek();
        MixedExpr e = parse_module_expr_mixed();
        if (!e.scalar.is_zero())
            throw ParseError(start.line, start.column, "a module-valued expression",
                             "a scalar summand");
        return e.vec;
    }

    // term := factor ('*' factor)*
    MixedExpr parse_term()
    {
        MixedExpr acc = parse_factor();
        while (accept(Tok::Star)) {
            MixedExpr f = parse_factor();
            acc = multiply(acc, f);
        }
        return acc;
    }

    MixedExpr multiply(const MixedExpr& a, const MixedExpr& b)
    {
        if (!a.is_scalar() && !b.is_scalar())
            fail("a scalar factor (generators cannot multiply generators)");
        MixedExpr r;
        if (a.is_scalar() && b.is_scalar())
            r.scalar = a.scalar * b.scalar;
        else if (a.is_scalar())
            r.vec = a.scalar * b.vec;
        else
            r.vec = b.scalar * a.vec;
        return r;
    }

    // factor := primary ('^' INT)?
    MixedExpr parse_factor()
    {
        MixedExpr p = parse_primary();
        if (accept(Tok::Caret)) {
            Token t = expect(Tok::Int, "nonnegative integer exponent");
            int e = static_cast<int>(std::stoll(t.text));
            if (!p.is_scalar())
                throw ParseError(t.line, t.column, "a scalar base for '^'", "a generator");
            MixedExpr r;
            r.scalar = p.scalar.pow(e);
            return r;
        }
        return p;
    }

    // primary := RATIONAL | 'del' | 'lam' | NAME | '(' opexpr ')' | '-' primary
    MixedExpr parse_primary()
    {
        MixedExpr r;
        if (accept(Tok::Minus)) {
            MixedExpr p = parse_factor();
            p.scalar = -p.scalar;
            p.vec = ConfElement() - p.vec;
            return p;
        }
        if (peek().kind == Tok::Int) {
            long long num = std::stoll(get().text);
            long long den = 1;
            if (accept(Tok::Slash)) {
                Token d = expect(Tok::Int, "denominator");
                den = std::stoll(d.text);
                if (den == 0)
                    throw ParseError(d.line, d.column, "nonzero denominator", "0");
            }
            r.scalar = OpPoly::constant(rat(num, den));
            return r;
        }
        if (peek().kind == Tok::Ident) {
            std::string name = get().text;
            if (name == "del" || name == "lam") {
                r.scalar = OpPoly::var(name);
                return r;
            }
            if (name == "mu" || name == "nu")
                fail("a user symbol ('mu' and 'nu' are reserved)");
            r.vec = ConfElement::generator(name);
            return r;
        }
        if (accept(Tok::LParen)) {
            MixedExpr inner = parse_module_expr_mixed();
            expect(Tok::RParen);
            return inner;
        }
        fail("a number, symbol, generator or '('");
    }

    LinCombo parse_lin_combo()
    {
        LinCombo combo;
        // zero is written as the literal 0
        if (peek().kind == Tok::Int && peek().text == "0" && peek(1).kind == Tok::Semi) {
            get();
            return combo;
        }
        parse_lin_term(combo, false);
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus)
            parse_lin_term(combo, get().kind == Tok::Minus);
        return combo;
    }

    void parse_lin_term(LinCombo& combo, bool negate)
    {
        Rational c(1);
        if (accept(Tok::Minus))
            negate = !negate;
        if (peek().kind == Tok::Int) {
            long long num = std::stoll(get().text);
            long long den = 1;
            if (accept(Tok::Slash))
                den = std::stoll(expect(Tok::Int, "denominator").text);
            c = rat(num, den);
            expect(Tok::Star);
        }
        std::string g = expect_ident("generator name");
        if (negate)
            c = -c;
        combo[g] += c;
        if (combo[g] == 0)
            combo.erase(g);
    }
};

} // namespace parser_detail

inline Script parse(const std::string& text)
{
    return parser_detail::Parser(tokenize(text)).parse_script();
}

// ---------------------------------------------------------------------------
// Printer: canonical formatting with parse(print(s)) == s structurally.

namespace printer_detail {

inline std::string print_oppoly(const OpPoly& p)
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0)
                a = -a;
        }
        first = false;
        std::string mono;
        for (const auto& [s, e] : m) {
            if (!mono.empty())
                mono += "*";
            mono += s;
            if (e != 1)
                mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            os << to_string(a);
        else if (a == 1)
            os << mono;
        else
            os << to_string(a) << "*" << mono;
    }
    return os.str();
}

inline std::string print_element(const ConfElement& e)
{
    if (e.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, p] : e.coeffs()) {
        if (!first)
            os << " + ";
        first = false;
        if (p == OpPoly::constant(1)) {
            os << g;
        } else if (p.terms().size() == 1 && !(p.terms().begin()->second < 0)) {
            os << print_oppoly(p) << "*" << g;
        } else {
            os << "(" << print_oppoly(p) << ")*" << g;
        }
    }
    return os.str();
}

inline std::string print_lin_combo(const LinCombo& combo)
{
    if (combo.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : combo) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0)
                a = -a;
        }
        first = false;
        if (a == 1)
            os << g;
        else
            os << to_string(a) << "*" << g;
    }
    return os.str();
}

inline std::string print_arg(const ArgValue& v)
{
    if (auto* i = std::get_if<long long>(&v))
        return std::to_string(*i);
    if (auto* r = std::get_if<std::pair<long long, long long>>(&v))
        return std::to_string(r->first) + ":" + std::to_string(r->second);
    return std::get<std::string>(v);
}

} // namespace printer_detail

inline std::string print(const Script& s)
{
    using namespace printer_detail;
    std::ostringstream os;
    for (const auto& item : s.items) {
        if (auto* a = std::get_if<AlgebraDecl>(&item)) {
            os << "algebra " << a->name << " {\n  generators: ";
            for (size_t i = 0; i < a->gens.size(); ++i)
                os << (i ? ", " : "") << a->gens[i];
            os << ";\n";
            for (const auto& b : a->brackets)
                os << "  bracket(" << b.g << ", " << b.h << ") = " << print_element(b.value) << ";\n";
            os << "}\n";
        } else if (auto* np = std::get_if<NPAlgebraDecl>(&item)) {
            os << "npalgebra " << np->name << " {\n  generators: ";
            for (size_t i = 0; i < np->gens.size(); ++i)
                os << (i ? ", " : "") << np->gens[i];
            os << ";\n";
            for (const auto& e : np->entries)
                os << "  " << e.op << "(" << e.g << ", " << e.h << ") = " << print_lin_combo(e.value)
                   << ";\n";
            os << "}\n";
        } else if (auto* d = std::get_if<DerivationDecl>(&item)) {
            os << "derivation " << d->name << " on " << d->algebra << " {\n";
            for (const auto& [g, v] : d->entries)
                os << "  map(" << g << ") = " << print_element(v) << ";\n";
            os << "}\n";
        } else if (auto* l = std::get_if<LocalityDecl>(&item)) {
            os << "localityfn " << l->name << " {\n  default = " << l->default_bound << ";\n";
            for (const auto& [a, b, v] : l->overrides)
                os << "  override(" << a << ", " << b << ") = " << v << ";\n";
            os << "}\n";
        } else {
            const auto& c = std::get<CommandDecl>(item);
            switch (c.kind) {
            case CommandDecl::Kind::Check:
                os << "check " << c.ident << " " << c.names.at(0) << ";\n";
                break;
            case CommandDecl::Kind::Locality:
                os << "locality " << c.names.at(0) << " " << c.names.at(1) << " " << c.names.at(2)
                   << ";\n";
                break;
            case CommandDecl::Kind::Product:
                os << "product " << c.names.at(0) << " " << c.names.at(1) << " " << c.names.at(2)
                   << " " << c.number << ";\n";
                break;
            case CommandDecl::Kind::Scenario: {
                os << "scenario " << c.ident;
                for (const auto& [k, v] : c.args)
                    os << " " << k << "=" << print_arg(v);
                os << ";\n";
                break;
            }
            case CommandDecl::Kind::Membership: {
                os << "membership";
                for (const auto& [k, v] : c.args)
                    os << " " << k << "=" << print_arg(v);
                os << ";\n";
                break;
            }
            }
        }
    }
    return os.str();
}

} // namespace novconf::dsl

#endif
