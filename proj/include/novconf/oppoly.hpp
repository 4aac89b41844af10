#ifndef NOVCONF_OPPOLY_HPP
#define NOVCONF_OPPOLY_HPP

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "novconf/rational.hpp"

namespace novconf {

// Reserved symbol names. "del" is the translation operator, "lam" the
// bracket variable; "mu" and "nu" are introduced by identity checkers.
inline const std::string kPartial = "del";
inline const std::string kLambda = "lam";
inline const std::string kMu = "mu";
inline const std::string kNu = "nu";

using OpMono = std::map<std::string, int>;

// Polynomial with rational coefficients in commuting formal symbols.
// Canonical expanded form: no zero coefficients, no zero exponents.
class OpPoly {
public:
    OpPoly() = default;

    static OpPoly constant(Rational c)
    {
        OpPoly f;
        if (c != 0)
            f.terms_[OpMono{}] = std::move(c);
        return f;
    }
    static OpPoly var(const std::string& name, int e = 1)
    {
        OpPoly f;
        OpMono m;
        if (e != 0)
            m[name] = e;
        f.terms_[std::move(m)] = 1;
        return f;
    }

    const std::map<OpMono, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    bool operator==(const OpPoly&) const = default;

    void add_term(OpMono m, const Rational& c)
    {
        if (c == 0)
            return;
        for (auto it = m.begin(); it != m.end();)
            it = (it->second == 0) ? m.erase(it) : std::next(it);
        auto [it, fresh] = terms_.try_emplace(std::move(m), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    OpPoly& operator+=(const OpPoly& g)
    {
        for (const auto& [m, c] : g.terms_)
            add_term(m, c);
        return *this;
    }
    OpPoly& operator-=(const OpPoly& g)
    {
        for (const auto& [m, c] : g.terms_)
            add_term(m, -c);
        return *this;
    }
    friend OpPoly operator+(OpPoly f, const OpPoly& g) { return f += g; }
    friend OpPoly operator-(OpPoly f, const OpPoly& g) { return f -= g; }
    friend OpPoly operator-(const OpPoly& f)
    {
        OpPoly r;
        for (const auto& [m, c] : f.terms_)
            r.terms_[m] = -c;
        return r;
    }
    friend OpPoly operator*(const OpPoly& f, const OpPoly& g)
    {
        OpPoly r;
        for (const auto& [mf, cf] : f.terms_)
            for (const auto& [mg, cg] : g.terms_) {
                OpMono m = mf;
                for (const auto& [s, e] : mg)
                    m[s] += e;
                r.add_term(std::move(m), cf * cg);
            }
        return r;
    }
    friend OpPoly operator*(const Rational& c, const OpPoly& f)
    {
        OpPoly r;
        if (c == 0)
            return r;
        for (const auto& [m, v] : f.terms_)
            r.terms_[m] = c * v;
        return r;
    }

    OpPoly pow(int e) const
    {
        if (e < 0)
            throw std::invalid_argument("OpPoly::pow: negative exponent");
        OpPoly r = constant(1);
        for (int i = 0; i < e; ++i)
            r = r * (*this);
        return r;
    }

    bool contains(const std::string& sym) const
    {
        for (const auto& [m, c] : terms_)
            if (m.count(sym))
                return true;
        return false;
    }

    // largest exponent of sym; -1 for the zero polynomial is avoided by
    // returning 0 on polynomials free of sym
    int degree_in(const std::string& sym) const
    {
        int d = 0;
        for (const auto& [m, c] : terms_)
            if (auto it = m.find(sym); it != m.end())
                d = std::max(d, it->second);
        return d;
    }

    // coefficient of sym^k, with sym struck out
    OpPoly coeff_in(const std::string& sym, int k) const
    {
        OpPoly r;
        for (const auto& [m, c] : terms_) {
            int e = 0;
            if (auto it = m.find(sym); it != m.end())
                e = it->second;
            if (e != k)
                continue;
            OpMono nm = m;
            nm.erase(sym);
            r.add_term(std::move(nm), c);
        }
        return r;
    }

    // substitute sym -> value as plain polynomial substitution
    OpPoly subst(const std::string& sym, const OpPoly& value) const
    {
        OpPoly r;
        std::map<int, OpPoly> powers; // memoized value^e
        powers[0] = constant(1);
        for (const auto& [m, c] : terms_) {
            int e = 0;
            if (auto it = m.find(sym); it != m.end())
                e = it->second;
            OpMono rest = m;
            rest.erase(sym);
            if (!powers.count(e)) {
                int have = powers.rbegin()->first;
                OpPoly acc = powers.rbegin()->second;
                for (int i = have; i < e; ++i) {
                    acc = acc * value;
                    powers[i + 1] = acc;
                }
            }
            OpPoly base;
            base.add_term(std::move(rest), c);
            r += base * powers.at(e);
        }
        return r;
    }

private:
    std::map<OpMono, Rational> terms_;
};

inline std::string to_string(const OpMono& m)
{
    if (m.empty())
        return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, e] : m) {
        if (!first)
            os << "*";
        first = false;
        os << s;
        if (e != 1)
            os << "^" << e;
    }
    return os.str();
}

inline std::string to_string(const OpPoly& f)
{
    if (f.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
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
        if (m.empty())
            os << to_string(a);
        else if (a == 1)
            os << to_string(m);
        else
            os << to_string(a) << "*" << to_string(m);
    }
    return os.str();
}

} // namespace novconf

#endif
