#ifndef NOVCONF_COEFFALG_HPP
#define NOVCONF_COEFFALG_HPP

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "novconf/confalg.hpp"

namespace novconf {

// Element of the coefficient algebra: finite support map (generator, n) -> k.
// Kept in normal form with every del eliminated at injection, so equality of
// cosets is plain map equality.
class CoeffElement {
public:
    using Key = std::pair<std::string, long long>;

    CoeffElement() = default;

    static CoeffElement symbol(const std::string& g, long long n)
    {
        CoeffElement e;
        e.terms_[{g, n}] = 1;
        return e;
    }

    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const CoeffElement&) const = default;

    void add(const Key& k, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    CoeffElement& operator+=(const CoeffElement& o)
    {
        for (const auto& [k, c] : o.terms_)
            add(k, c);
        return *this;
    }
    CoeffElement& operator-=(const CoeffElement& o)
    {
        for (const auto& [k, c] : o.terms_)
            add(k, -c);
        return *this;
    }
    friend CoeffElement operator+(CoeffElement a, const CoeffElement& b) { return a += b; }
    friend CoeffElement operator-(CoeffElement a, const CoeffElement& b) { return a -= b; }
    friend CoeffElement operator*(const Rational& c, const CoeffElement& e)
    {
        CoeffElement r;
        if (c == 0)
            return r;
        for (const auto& [k, v] : e.terms())
            r.terms_[k] = c * v;
        return r;
    }

private:
    std::map<Key, Rational> terms_;
};

// g(n) for plain generators, extended linearly with the rewriting
// (del^j g)(n) = (-1)^j n(n-1)...(n-j+1) g(n-j). Coefficients of u must be
// polynomial in del only.
inline CoeffElement inject(const ConfPresentation& A, const ConfElement& u, long long n)
{
    CoeffElement out;
    for (const auto& [g, p] : u.coeffs()) {
        A.require_generator(g);
        for (const auto& [m, c] : p.terms()) {
            int j = 0;
            for (const auto& [sym, e] : m) {
                if (sym == kPartial)
                    j = e;
                else
                    throw std::invalid_argument("inject: coefficient uses symbol " + sym);
            }
            Rational f = c * Rational(falling(n, j));
            if (j % 2 != 0)
                f = -f;
            out.add({g, n - j}, f);
        }
    }
    return out;
}

// g(n) h(m) = sum_s C(n,s) ((g s h))(n+m-s) with the generalized binomial,
// extended bilinearly. Finite because brackets are polynomial in lam.
inline CoeffElement coeff_product(const ConfPresentation& A, const CoeffElement& x,
                                  const CoeffElement& y)
{
    CoeffElement out;
    for (const auto& [kx, cx] : x.terms()) {
        for (const auto& [ky, cy] : y.terms()) {
            const auto& [g, n] = kx;
            const auto& [h, m] = ky;
            ConfElement b = A.bracket_entry(g, h);
            if (b.is_zero())
                continue;
            int dmax = b.degree_in(kLambda);
            for (int s = 0; s <= dmax; ++s) {
                // C(n,s) * s! * [lam^s] = falling(n,s) * [lam^s]
                ConfElement part = b.coeff_in(kLambda, s);
                if (part.is_zero())
                    continue;
                Rational f = cx * cy * Rational(falling(n, s));
                if (f == 0)
                    continue;
                out += f * inject(A, part, n + m - s);
            }
        }
    }
    return out;
}

struct LocalityWitness {
    long long n, m;
    CoeffElement residual;
};

struct LocalityRelationReport {
    std::vector<LocalityWitness> failures;
    int relations_checked = 0;
    bool ok() const { return failures.empty(); }
};

// sum_s (-1)^s C(N,s) g(n-s) h(m+s) over the index window.
inline LocalityRelationReport check_locality_relations(const ConfPresentation& A,
                                                       const std::string& g, const std::string& h,
                                                       int N, long long lo, long long hi)
{
    if (N < 0)
        throw std::invalid_argument("check_locality_relations: negative N");
    A.require_generator(g);
    A.require_generator(h);
    LocalityRelationReport rep;
    for (long long n = lo; n <= hi; ++n)
        for (long long m = lo; m <= hi; ++m) {
            CoeffElement acc;
            for (int s = 0; s <= N; ++s) {
                Rational c((s % 2 == 0) ? binomial(N, s) : -binomial(N, s));
                acc += c * coeff_product(A, CoeffElement::symbol(g, n - s),
                                         CoeffElement::symbol(h, m + s));
            }
            ++rep.relations_checked;
            if (!acc.is_zero())
                rep.failures.push_back({n, m, std::move(acc)});
        }
    return rep;
}

enum class CoeffIdentity { novikov, commutative, associative, lie };

inline const char* to_string(CoeffIdentity id)
{
    switch (id) {
    case CoeffIdentity::novikov: return "novikov";
    case CoeffIdentity::commutative: return "commutative";
    case CoeffIdentity::associative: return "associative";
    case CoeffIdentity::lie: return "lie";
    }
    return "?";
}

struct CoeffIdentityReport {
    CoeffIdentity which;
    int samples_checked = 0;
    std::vector<int> failed_samples;
    bool ok() const { return failed_samples.empty(); }
};

// Evaluate ordinary identities on sampled coefficient elements built from
// generator symbols with indices in [lo, hi]. Deterministic in the seed.
inline CoeffIdentityReport check_coeff_identities(const ConfPresentation& A, CoeffIdentity which,
                                                  int samples, long long lo, long long hi,
                                                  unsigned long long seed)
{
    CoeffIdentityReport rep;
    rep.which = which;

    // small multiplicative congruential sampler; enough for index/coeff picks
    unsigned long long state = seed * 6364136223846793005ull + 1442695040888963407ull;
    auto next = [&state](long long span) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<long long>((state >> 33) % static_cast<unsigned long long>(span));
    };
    auto sample = [&]() {
        CoeffElement e;
        int nterms = 1 + static_cast<int>(next(2));
        for (int t = 0; t < nterms; ++t) {
            const auto& gens = A.generators();
            const std::string& g = gens[static_cast<size_t>(next(static_cast<long long>(gens.size())))];
            long long n = lo + next(hi - lo + 1);
            long long c = next(5) - 2;
            e.add({g, n}, rat(c == 0 ? 1 : c));
        }
        return e;
    };

    auto mul = [&](const CoeffElement& x, const CoeffElement& y) { return coeff_product(A, x, y); };

    for (int i = 0; i < samples; ++i) {
        CoeffElement x = sample(), y = sample(), z = sample();
        bool pass = true;
        switch (which) {
        case CoeffIdentity::novikov: {
            CoeffElement rsym = mul(mul(x, y), z) - mul(x, mul(y, z)) -
                                (mul(mul(x, z), y) - mul(x, mul(z, y)));
            CoeffElement lcom = mul(x, mul(y, z)) - mul(y, mul(x, z));
            pass = rsym.is_zero() && lcom.is_zero();
            break;
        }
        case CoeffIdentity::commutative:
            pass = (mul(x, y) - mul(y, x)).is_zero();
            break;
        case CoeffIdentity::associative:
            pass = (mul(mul(x, y), z) - mul(x, mul(y, z))).is_zero();
            break;
        case CoeffIdentity::lie: {
            CoeffElement skew = mul(x, y) + mul(y, x);
            CoeffElement jac = mul(mul(x, y), z) + mul(mul(y, z), x) + mul(mul(z, x), y);
            pass = skew.is_zero() && jac.is_zero();
            break;
        }
        }
        ++rep.samples_checked;
        if (!pass)
            rep.failed_samples.push_back(i);
    }
    return rep;
}

// Rendering like "v2(-1)" per symbol.
inline std::string to_string(const CoeffElement& e)
{
    if (e.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : e.terms()) {
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
        if (a != 1)
            os << to_string(a) << "*";
        os << k.first << "(" << k.second << ")";
    }
    return os.str();
}

} // namespace novconf

#endif
