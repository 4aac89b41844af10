#ifndef NOVCONF_DISTRIBUTION_HPP
#define NOVCONF_DISTRIBUTION_HPP

#include <compare>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "novconf/diffpoly.hpp"
#include "novconf/rational.hpp"

namespace novconf {

// Formal variable (z, w, zeta, ...). Distinct names are independent.
struct FVar {
    std::string name;
    auto operator<=>(const FVar&) const = default;
};

// Laurent monomial and polynomial in formal variables, exact coefficients.
using LaurentMono = std::map<FVar, int>;
using Laurent = std::map<LaurentMono, Rational>;

inline void laurent_add_term(Laurent& L, LaurentMono m, const Rational& c)
{
    if (c == 0)
        return;
    for (auto it = m.begin(); it != m.end();)
        it = (it->second == 0) ? m.erase(it) : std::next(it);
    auto [it, fresh] = L.try_emplace(std::move(m), c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            L.erase(it);
    }
}

inline Laurent laurent_one()
{
    return Laurent{{LaurentMono{}, Rational(1)}};
}

inline Laurent laurent_var(const FVar& v, int e = 1)
{
    Laurent L;
    laurent_add_term(L, LaurentMono{{v, e}}, Rational(1));
    return L;
}

inline Laurent laurent_add(const Laurent& a, const Laurent& b)
{
    Laurent r = a;
    for (const auto& [m, c] : b)
        laurent_add_term(r, m, c);
    return r;
}

inline Laurent laurent_mul(const Laurent& a, const Laurent& b)
{
    Laurent r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            LaurentMono m = ma;
            for (const auto& [v, e] : mb)
                m[v] += e;
            laurent_add_term(r, std::move(m), ca * cb);
        }
    return r;
}

inline Laurent laurent_pow(const Laurent& a, int e)
{
    if (e < 0)
        throw std::invalid_argument("laurent_pow: negative exponent");
    Laurent r = laurent_one();
    for (int i = 0; i < e; ++i)
        r = laurent_mul(r, a);
    return r;
}

// (vA - vB)^N expanded: sum_s (-1)^s C(N,s) vA^(N-s) vB^s.
inline Laurent binom_power(const FVar& vA, const FVar& vB, int N)
{
    if (N < 0)
        throw std::invalid_argument("binom_power: negative exponent");
    Laurent L;
    for (int s = 0; s <= N; ++s) {
        LaurentMono m;
        if (N - s != 0)
            m[vA] = N - s;
        if (s != 0)
            m[vB] = s;
        laurent_add_term(L, std::move(m), Rational((s % 2 == 0) ? binomial(N, s) : -binomial(N, s)));
    }
    return L;
}

// Split (vW - vZ)^(a+b) = (vW - vZeta)^a * P + (vZeta - vZ)^b * Q by cutting
// the expansion of ((vW - vZeta) + (vZeta - vZ))^(a+b) at power a of the
// first difference. Q collects the low part.
inline std::pair<Laurent, Laurent> binom_split(const FVar& vW, const FVar& vZ, const FVar& vZeta,
                                               int a, int b)
{
    if (a < 0 || b < 0)
        throw std::invalid_argument("binom_split: negative exponents");
    Laurent wz = binom_power(vW, vZeta, 1);   // w - zeta
    Laurent zz = binom_power(vZeta, vZ, 1);   // zeta - z
    Laurent P, Q;
    for (int i = 0; i <= a + b; ++i) {
        Rational c(binomial(a + b, i));
        if (i >= a) {
            // (w-zeta)^i (zeta-z)^(a+b-i) = (w-zeta)^a * [(w-zeta)^(i-a) (zeta-z)^(a+b-i)]
            Laurent t = laurent_mul(laurent_pow(wz, i - a), laurent_pow(zz, a + b - i));
            for (const auto& [m, v] : t)
                laurent_add_term(P, m, c * v);
        } else {
            // ... = (zeta-z)^b * [(w-zeta)^i (zeta-z)^(a-i)]
            Laurent t = laurent_mul(laurent_pow(wz, i), laurent_pow(zz, a - i));
            for (const auto& [m, v] : t)
                laurent_add_term(Q, m, c * v);
        }
    }
    return {P, Q};
}

// One generator series x^(p)(v) = sum_s x^(p)(s) v^(-s-1) attached to a variable.
struct SeriesFactor {
    std::string gen;
    int p = 0;
    auto operator<=>(const SeriesFactor&) const = default;
};

// Canonical shape of one term: scalar polynomial part from the coefficient
// ring, at most one generator series per variable, and a Laurent exponent
// per variable (zero exponents are not stored).
struct TermShape {
    Monomial poly;
    std::map<FVar, SeriesFactor> series;
    std::map<FVar, int> exps;
    auto operator<=>(const TermShape&) const = default;
};

// Finite sum of terms; merged shapes, no zero coefficients. This is the
// fragment of F[[z,z^-1,w,w^-1,...]] spanned by series products times
// Laurent monomials, on which coefficient extraction is exact.
class Distribution {
public:
    Distribution() = default;

    static Distribution series(const std::string& gen, int p, const FVar& v)
    {
        if (p < 0)
            throw std::invalid_argument("series: negative derivative order");
        TermShape t;
        t.series[v] = SeriesFactor{gen, p};
        Distribution d;
        d.terms_[std::move(t)] = 1;
        return d;
    }

    static Distribution from_poly(const DiffPoly& f)
    {
        Distribution d;
        for (const auto& [m, c] : f.terms()) {
            TermShape t;
            t.poly = m;
            d.terms_[std::move(t)] = c;
        }
        return d;
    }

    const std::map<TermShape, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const Distribution&) const = default;

    void add_term(TermShape t, const Rational& c)
    {
        if (c == 0)
            return;
        for (auto it = t.exps.begin(); it != t.exps.end();)
            it = (it->second == 0) ? t.exps.erase(it) : std::next(it);
        auto [it, fresh] = terms_.try_emplace(std::move(t), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    Distribution& operator+=(const Distribution& o)
    {
        for (const auto& [t, c] : o.terms_)
            add_term(t, c);
        return *this;
    }
    Distribution& operator-=(const Distribution& o)
    {
        for (const auto& [t, c] : o.terms_)
            add_term(t, -c);
        return *this;
    }
    friend Distribution operator+(Distribution a, const Distribution& b) { return a += b; }
    friend Distribution operator-(Distribution a, const Distribution& b) { return a -= b; }
    friend Distribution operator*(const Rational& c, const Distribution& d)
    {
        Distribution r;
        if (c == 0)
            return r;
        for (const auto& [t, v] : d.terms_)
            r.terms_[t] = c * v;
        return r;
    }

    // Term-by-term product. Two series in the same variable never multiply
    // here; that is a usage error by construction.
    friend Distribution operator*(const Distribution& a, const Distribution& b)
    {
        Distribution r;
        for (const auto& [ta, ca] : a.terms_)
            for (const auto& [tb, cb] : b.terms_) {
                TermShape t = ta;
                t.poly = mono_mul(ta.poly, tb.poly);
                for (const auto& [v, sf] : tb.series) {
                    if (t.series.count(v))
                        throw std::invalid_argument("Distribution: two series in variable " + v.name);
                    t.series[v] = sf;
                }
                for (const auto& [v, e] : tb.exps)
                    t.exps[v] += e;
                r.add_term(std::move(t), ca * cb);
            }
        return r;
    }

private:
    std::map<TermShape, Rational> terms_;
};

// Multiply by a Laurent polynomial with scalar coefficients: exponents add.
inline Distribution mul_laurent(const Distribution& d, const Laurent& L)
{
    Distribution r;
    for (const auto& [t, c] : d.terms())
        for (const auto& [m, v] : L) {
            TermShape nt = t;
            for (const auto& [fv, e] : m)
                nt.exps[fv] += e;
            r.add_term(std::move(nt), c * v);
        }
    return r;
}

// Coefficient-wise derivation: Leibniz over the series factors and the
// scalar polynomial part; Laurent exponents are untouched.
inline Distribution derive(const Distribution& d)
{
    Distribution r;
    for (const auto& [t, c] : d.terms()) {
        for (const auto& [v, sf] : t.series) {
            TermShape nt = t;
            nt.series[v].p += 1;
            r.add_term(std::move(nt), c);
        }
        const Monomial& m = t.poly;
        for (size_t i = 0; i < m.size();) {
            size_t j = i;
            while (j < m.size() && m[j] == m[i])
                ++j;
            TermShape nt = t;
            nt.poly[i].p += 1;
            std::sort(nt.poly.begin(), nt.poly.end());
            r.add_term(std::move(nt), c * Rational(static_cast<long long>(j - i)));
            i = j;
        }
    }
    return r;
}

// Coefficient of prod_v v^(-idx[v]-1). A series factor a^(p)(v) with Laurent
// exponent e contributes the symbol a^(p)(idx[v]+e); a series-free variable
// contributes only when its exponent equals -idx[v]-1. Every variable
// occurring in d must be covered by idx.
inline DiffPoly coefficient(const Distribution& d, const std::map<FVar, long long>& idx)
{
    DiffPoly out;
    for (const auto& [t, c] : d.terms()) {
        for (const auto& [v, sf] : t.series)
            if (!idx.count(v))
                throw std::invalid_argument("coefficient: no index for variable " + v.name);
        for (const auto& [v, e] : t.exps)
            if (!idx.count(v))
                throw std::invalid_argument("coefficient: no index for variable " + v.name);

        Monomial m = t.poly;
        bool alive = true;
        for (const auto& [v, k] : idx) {
            auto se = t.series.find(v);
            int e = 0;
            if (auto ee = t.exps.find(v); ee != t.exps.end())
                e = ee->second;
            if (se != t.series.end()) {
                m.push_back(DiffVar{se->second.gen, se->second.p, k + e});
            } else if (e != -k - 1) {
                alive = false;
                break;
            }
        }
        if (!alive)
            continue;
        std::sort(m.begin(), m.end());
        out.add_term(std::move(m), c);
    }
    return out;
}

// Coefficient of v^(-1): a series factor in v with exponent e becomes the
// variable-free symbol a^(p)(e); a term without a series in v survives iff
// its v-exponent is -1.
inline Distribution residue(const Distribution& d, const FVar& v)
{
    Distribution r;
    for (const auto& [t, c] : d.terms()) {
        int e = 0;
        if (auto it = t.exps.find(v); it != t.exps.end())
            e = it->second;
        auto se = t.series.find(v);
        TermShape nt = t;
        nt.series.erase(v);
        nt.exps.erase(v);
        if (se != t.series.end()) {
            nt.poly.push_back(DiffVar{se->second.gen, se->second.p, e});
            std::sort(nt.poly.begin(), nt.poly.end());
            r.add_term(std::move(nt), c);
        } else if (e == -1) {
            r.add_term(std::move(nt), c);
        }
    }
    return r;
}

inline std::string to_string(const SeriesFactor& sf, const FVar& v)
{
    std::ostringstream os;
    os << sf.gen;
    if (sf.p > 0 && sf.p <= 3)
        os << std::string(sf.p, '\'');
    else if (sf.p > 3)
        os << "^(" << sf.p << ")";
    os << "(" << v.name << ")";
    return os.str();
}

inline std::string to_string(const Distribution& d)
{
    if (d.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : d.terms()) {
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
        std::string body;
        if (!t.poly.empty())
            body += to_string(t.poly);
        for (const auto& [v, sf] : t.series) {
            if (!body.empty())
                body += "*";
            body += to_string(sf, v);
        }
        for (const auto& [v, e] : t.exps) {
            if (!body.empty())
                body += "*";
            body += v.name + "^" + std::to_string(e);
        }
        if (body.empty())
            body = "1";
        if (a == 1)
            os << body;
        else
            os << to_string(a) << "*" << body;
    }
    return os.str();
}

} // namespace novconf

#endif
