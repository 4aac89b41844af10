#ifndef NOVCONF_DIFFPOLY_HPP
#define NOVCONF_DIFFPOLY_HPP

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "novconf/rational.hpp"

namespace novconf {

// One symbol a^(p)(n): generator name, derivative order p >= 0, integer index n.
// Indices are plain machine integers; the documented working range is |n| <= 10^6.
struct DiffVar {
    std::string gen;
    int p = 0;
    long long n = 0;

    auto operator<=>(const DiffVar&) const = default;
};

// Commutative monomial: sorted multiset of variables. Empty vector is the unit.
using Monomial = std::vector<DiffVar>;

inline Monomial mono_mul(const Monomial& a, const Monomial& b)
{
    Monomial r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline long long mono_weight(const Monomial& m)
{
    long long w = 0;
    for (const auto& v : m)
        w += v.p - 1;
    return w;
}

inline int mono_degree(const Monomial& m)
{
    return static_cast<int>(m.size());
}

// Weight of a polynomial: an exact value, "any" for the zero polynomial,
// or inhomogeneous when monomial weights mix.
class WeightClass {
public:
    static WeightClass inhomogeneous() { return WeightClass(kMixed, 0); }
    static WeightClass any() { return WeightClass(kAny, 0); }
    static WeightClass exact(long long w) { return WeightClass(kExact, w); }

    bool homogeneous() const { return kind_ != kMixed; }
    bool is_any() const { return kind_ == kAny; }
    bool has_value() const { return kind_ == kExact; }
    long long value() const
    {
        if (kind_ != kExact)
            throw std::logic_error("WeightClass: no exact value");
        return w_;
    }
    // does every monomial have weight w?
    bool compatible_with(long long w) const
    {
        return kind_ == kAny || (kind_ == kExact && w_ == w);
    }
    bool operator==(const WeightClass&) const = default;

private:
    enum Kind { kMixed, kAny, kExact };
    WeightClass(Kind k, long long w) : kind_(k), w_(w) {}
    Kind kind_;
    long long w_;
};

// Exact multivariate polynomial over the symbols a^(p)(n). No zero
// coefficients are stored; equality is map equality.
class DiffPoly {
public:
    DiffPoly() = default;

    static DiffPoly constant(Rational c)
    {
        DiffPoly f;
        if (c != 0)
            f.terms_[Monomial{}] = std::move(c);
        return f;
    }
    static DiffPoly variable(DiffVar v)
    {
        if (v.p < 0)
            throw std::invalid_argument("DiffPoly: negative derivative order");
        DiffPoly f;
        f.terms_[Monomial{std::move(v)}] = 1;
        return f;
    }
    static DiffPoly monomial(Monomial m, Rational c = Rational(1))
    {
        DiffPoly f;
        f.add_term(std::move(m), std::move(c));
        return f;
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Monomial m, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, fresh] = terms_.try_emplace(std::move(m), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    DiffPoly& operator+=(const DiffPoly& g)
    {
        for (const auto& [m, c] : g.terms_)
            add_term(m, c);
        return *this;
    }
    DiffPoly& operator-=(const DiffPoly& g)
    {
        for (const auto& [m, c] : g.terms_)
            add_term(m, -c);
        return *this;
    }
    friend DiffPoly operator+(DiffPoly f, const DiffPoly& g) { return f += g; }
    friend DiffPoly operator-(DiffPoly f, const DiffPoly& g) { return f -= g; }
    friend DiffPoly operator-(const DiffPoly& f)
    {
        DiffPoly r;
        for (const auto& [m, c] : f.terms_)
            r.terms_[m] = -c;
        return r;
    }
    friend DiffPoly operator*(const DiffPoly& f, const DiffPoly& g)
    {
        DiffPoly r;
        for (const auto& [mf, cf] : f.terms_)
            for (const auto& [mg, cg] : g.terms_)
                r.add_term(mono_mul(mf, mg), cf * cg);
        return r;
    }
    friend DiffPoly operator*(const Rational& c, const DiffPoly& f)
    {
        DiffPoly r;
        if (c == 0)
            return r;
        for (const auto& [m, v] : f.terms_)
            r.terms_[m] = c * v;
        return r;
    }
    bool operator==(const DiffPoly&) const = default;

    int degree() const
    {
        int d = 0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, mono_degree(m));
        return d;
    }

    WeightClass weight() const
    {
        if (terms_.empty())
            return WeightClass::any();
        std::optional<long long> w;
        for (const auto& [m, c] : terms_) {
            long long mw = mono_weight(m);
            if (!w)
                w = mw;
            else if (*w != mw)
                return WeightClass::inhomogeneous();
        }
        return WeightClass::exact(*w);
    }

private:
    std::map<Monomial, Rational> terms_;
};

// d(a^(p)(n)) = a^(p+1)(n), extended by Leibniz.
inline DiffPoly derive(const DiffPoly& f)
{
    DiffPoly r;
    for (const auto& [m, c] : f.terms()) {
        for (size_t i = 0; i < m.size();) {
            size_t j = i;
            while (j < m.size() && m[j] == m[i])
                ++j;
            Monomial nm = m;
            nm[i].p += 1;
            std::sort(nm.begin(), nm.end());
            r.add_term(std::move(nm), c * Rational(static_cast<long long>(j - i)));
            i = j;
        }
    }
    return r;
}

inline DiffPoly derive(DiffPoly f, int times)
{
    for (int i = 0; i < times; ++i)
        f = derive(f);
    return f;
}

// f o g = d(f) g. Restricted to weight -1 this is the free Novikov product.
inline DiffPoly novikov_product(const DiffPoly& f, const DiffPoly& g)
{
    return derive(f) * g;
}

struct NovikovAxiomReport {
    DiffPoly right_sym_residual; // (f o g) o h - f o (g o h) - (f o h) o g + f o (h o g)
    DiffPoly left_com_residual;  // f o (g o h) - g o (f o h)
    bool ok() const { return right_sym_residual.is_zero() && left_com_residual.is_zero(); }
};

inline NovikovAxiomReport check_novikov_axioms(const DiffPoly& f, const DiffPoly& g, const DiffPoly& h)
{
    auto o = [](const DiffPoly& a, const DiffPoly& b) { return novikov_product(a, b); };
    NovikovAxiomReport rep;
    rep.right_sym_residual = o(o(f, g), h) - o(f, o(g, h)) - (o(o(f, h), g) - o(f, o(h, g)));
    rep.left_com_residual = o(f, o(g, h)) - o(g, o(f, h));
    return rep;
}

inline std::string to_string(const DiffVar& v)
{
    std::ostringstream os;
    os << v.gen << "^(" << v.p << ")(" << v.n << ")";
    return os.str();
}

inline std::string to_string(const Monomial& m)
{
    if (m.empty())
        return "1";
    std::ostringstream os;
    for (size_t i = 0; i < m.size();) {
        size_t j = i;
        while (j < m.size() && m[j] == m[i])
            ++j;
        if (i > 0)
            os << "*";
        os << to_string(m[i]);
        if (j - i > 1)
            os << "^" << (j - i);
        i = j;
    }
    return os.str();
}

// Canonical rendering, e.g. "3/2*x^(2)(0)*y^(0)(1)".
inline std::string to_string(const DiffPoly& f)
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
