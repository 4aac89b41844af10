#ifndef NOVCONF_IDEALKIT_HPP
#define NOVCONF_IDEALKIT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "novconf/diffpoly.hpp"
#include "novconf/linsolve.hpp"
#include "novconf/rational.hpp"

namespace novconf {

// Locality bound per generator pair, uniformly bounded by the default.
struct LocalityFn {
    long long bound = 1; // the uniform bound M
    std::map<std::pair<std::string, std::string>, long long> overrides;

    LocalityFn() = default;
    explicit LocalityFn(long long M) : bound(M)
    {
        if (M < 0)
            throw std::invalid_argument("LocalityFn: negative bound");
    }

    void set_override(const std::string& a, const std::string& b, long long v)
    {
        if (v < 0 || v > bound)
            throw std::invalid_argument("LocalityFn: override out of [0, M]");
        overrides[{a, b}] = v;
    }

    long long operator()(const std::string& a, const std::string& b) const
    {
        auto it = overrides.find({a, b});
        return it == overrides.end() ? bound : it->second;
    }
};

// Finite proxy for the infinite generator families.
struct Window {
    long long index_lo = 0;
    long long index_hi = 0;
    int s_max = 2;
    int max_p = 1;
    int max_multiplier_degree = 1;

    Window() = default;
    Window(long long lo, long long hi, int smax, int maxp, int maxdeg)
        : index_lo(lo), index_hi(hi), s_max(smax), max_p(maxp), max_multiplier_degree(maxdeg)
    {
        if (lo > hi)
            throw std::invalid_argument("Window: empty index range");
        if (smax < 0 || maxp < 0 || maxdeg < 0)
            throw std::invalid_argument("Window: negative bound");
    }

    bool contains(long long n) const { return index_lo <= n && n <= index_hi; }
};

// sum_s (-1)^s C(E,s) a^(1)(n-s) b^(0)(m+s)
inline DiffPoly emit_f(const std::string& a, const std::string& b, long long n, long long m,
                       long long E)
{
    if (E < 0)
        throw std::invalid_argument("emit_f: negative exponent");
    DiffPoly r;
    for (long long s = 0; s <= E; ++s) {
        Rational c((s % 2 == 0) ? binomial(E, s) : -binomial(E, s));
        Monomial mono{DiffVar{a, 1, n - s}, DiffVar{b, 0, m + s}};
        std::sort(mono.begin(), mono.end());
        r.add_term(std::move(mono), c);
    }
    return r;
}

// sum_t (-1)^t C(E,t) a^(p)(n-t) b^(q)(m+t)
inline DiffPoly emit_fpq(const std::string& a, const std::string& b, int p, int q, long long n,
                         long long m, long long E)
{
    if (E < 0)
        throw std::invalid_argument("emit_fpq: negative exponent");
    if (p < 0 || q < 0)
        throw std::invalid_argument("emit_fpq: negative derivative order");
    DiffPoly r;
    for (long long t = 0; t <= E; ++t) {
        Rational c((t % 2 == 0) ? binomial(E, t) : -binomial(E, t));
        Monomial mono{DiffVar{a, p, n - t}, DiffVar{b, q, m + t}};
        std::sort(mono.begin(), mono.end());
        r.add_term(std::move(mono), c);
    }
    return r;
}

// sum_s (-1)^s C(N,s) a(n-s) o b(m+s), built through the derived product on
// letters. Coincides with emit_f; tests assert the two routes agree.
inline DiffPoly emit_J(const std::string& a, const std::string& b, long long n, long long m,
                       long long N)
{
    if (N < 0)
        throw std::invalid_argument("emit_J: negative exponent");
    DiffPoly r;
    for (long long s = 0; s <= N; ++s) {
        Rational c((s % 2 == 0) ? binomial(N, s) : -binomial(N, s));
        r += c * novikov_product(DiffPoly::variable({a, 0, n - s}), DiffPoly::variable({b, 0, m + s}));
    }
    return r;
}

// Locality bound for derivative-order pairs: 3M when p=q=0, N(a,b) when
// (p,q)=(1,0), (p+q)M otherwise.
inline long long barN(int p, int q, long long M, long long N_ab)
{
    if (p < 0 || q < 0 || M < 0)
        throw std::invalid_argument("barN: negative argument");
    if (N_ab > M)
        throw std::invalid_argument("barN: pair bound exceeds the uniform bound");
    if (p == 0 && q == 0)
        return 3 * M;
    if (p == 1 && q == 0)
        return N_ab;
    return (p + q) * M;
}

// emit_f(E) = emit_f(n,m,E-1) - emit_f(n-1,m+1,E-1); exponent drop by one.
inline bool pascal_reduce(const std::string& a, const std::string& b, long long n, long long m,
                          long long E)
{
    if (E < 1)
        throw std::invalid_argument("pascal_reduce: exponent must be >= 1");
    return emit_f(a, b, n, m, E) == emit_f(a, b, n, m, E - 1) - emit_f(a, b, n - 1, m + 1, E - 1);
}

// d(f^{p,q}) = f^{p+1,q} + f^{p,q+1} with one common exponent on all three.
inline bool leibniz_fpq(const std::string& a, const std::string& b, int p, int q, long long n,
                        long long m, long long E)
{
    return derive(emit_fpq(a, b, p, q, n, m, E)) ==
           emit_fpq(a, b, p + 1, q, n, m, E) + emit_fpq(a, b, p, q + 1, n, m, E);
}

enum class GenFamily { f_base, f_pq };

struct GenDescriptor {
    GenFamily family = GenFamily::f_base;
    std::string a, b;
    int p = 1, q = 0;
    long long n = 0, m = 0;
    int deriv_order = 0;
    long long exponent = 0;

    auto operator<=>(const GenDescriptor&) const = default;
};

struct IdealGenerator {
    GenDescriptor desc;
    DiffPoly poly;
};

inline DiffPoly expand_descriptor(const GenDescriptor& d)
{
    DiffPoly base = (d.family == GenFamily::f_base)
                        ? emit_f(d.a, d.b, d.n, d.m, d.exponent)
                        : emit_fpq(d.a, d.b, d.p, d.q, d.n, d.m, d.exponent);
    return derive(std::move(base), d.deriv_order);
}

inline std::string to_string(const GenDescriptor& d)
{
    std::ostringstream os;
    if (d.deriv_order > 0)
        os << "d^" << d.deriv_order << " ";
    os << "f^{" << d.p << "," << d.q << "}_{" << d.a << "," << d.b << "}(" << d.n << "," << d.m
       << "; " << d.exponent << ")";
    return os.str();
}

// All d^s f_{a,b}(n, m) with n, m in the window and s <= s_max.
inline std::vector<IdealGenerator> generators_I(const std::vector<std::string>& X,
                                                const LocalityFn& N, const Window& w)
{
    std::vector<IdealGenerator> out;
    for (const auto& a : X)
        for (const auto& b : X)
            for (long long n = w.index_lo; n <= w.index_hi; ++n)
                for (long long m = w.index_lo; m <= w.index_hi; ++m)
                    for (int s = 0; s <= w.s_max; ++s) {
                        GenDescriptor d{GenFamily::f_base, a, b, 1, 0, n, m, s, N(a, b)};
                        DiffPoly poly = expand_descriptor(d);
                        out.push_back({std::move(d), std::move(poly)});
                    }
    return out;
}

// All d^s f^{p,q}_{a,b}(n, m) at the barN exponent, p, q <= max_p.
inline std::vector<IdealGenerator> generators_K(const std::vector<std::string>& X,
                                                const LocalityFn& N, long long M, const Window& w)
{
    std::vector<IdealGenerator> out;
    for (const auto& a : X)
        for (const auto& b : X)
            for (int p = 0; p <= w.max_p; ++p)
                for (int q = 0; q <= w.max_p; ++q)
                    for (long long n = w.index_lo; n <= w.index_hi; ++n)
                        for (long long m = w.index_lo; m <= w.index_hi; ++m)
                            for (int s = 0; s <= w.s_max; ++s) {
                                GenDescriptor d{GenFamily::f_pq, a, b, p, q, n, m, s,
                                                barN(p, q, M, N(a, b))};
                                DiffPoly poly = expand_descriptor(d);
                                out.push_back({std::move(d), std::move(poly)});
                            }
    return out;
}

struct CertTerm {
    Monomial multiplier;
    GenDescriptor gen;
    Rational coeff;
};

// Explicit expression of the target as a combination of windowed generators
// with monomial multipliers; verifiable by exact re-expansion.
struct MembershipCertificate {
    std::vector<CertTerm> terms;
};

inline std::string to_string(const MembershipCertificate& cert)
{
    if (cert.terms.empty())
        return "(empty combination)";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : cert.terms) {
        if (!first)
            os << "\n";
        first = false;
        os << "  " << to_string(t.multiplier) << " * " << to_string(t.gen) << " * "
           << to_string(t.coeff);
    }
    return os.str();
}

namespace detail {

// gradings preserved by multiplier-times-generator products: the multiset of
// letters and the total integer index. Components in different grades never
// interact, so the search decomposes.
struct Grade {
    std::map<std::string, int> letters;
    long long index_sum = 0;
    auto operator<=>(const Grade&) const = default;
};

inline Grade grade_of(const Monomial& m)
{
    Grade g;
    for (const auto& v : m) {
        g.letters[v.gen] += 1;
        g.index_sum += v.n;
    }
    return g;
}

// letters of h minus letters of the generator pair; nullopt when not contained
inline std::optional<std::map<std::string, int>> letters_remainder(
    const std::map<std::string, int>& target, const std::string& a, const std::string& b)
{
    std::map<std::string, int> rem = target;
    for (const std::string* s : {&a, &b}) {
        auto it = rem.find(*s);
        if (it == rem.end() || it->second == 0)
            return std::nullopt;
        if (--it->second == 0)
            rem.erase(it);
    }
    return rem;
}

// enumerate monomials over the given letter multiset with derivative orders
// in [0, max_p] summing to p_total and indices in the window summing to
// idx_total
inline void enumerate_multipliers(const std::vector<std::string>& letters, size_t at, int p_left,
                                  long long idx_left, const Window& w, Monomial& acc,
                                  std::set<Monomial>& out)
{
    if (at == letters.size()) {
        if (p_left == 0 && idx_left == 0) {
            Monomial m = acc;
            std::sort(m.begin(), m.end());
            out.insert(std::move(m));
        }
        return;
    }
    long long slots = static_cast<long long>(letters.size() - at - 1);
    for (int p = 0; p <= std::min(p_left, w.max_p); ++p) {
        for (long long n = w.index_lo; n <= w.index_hi; ++n) {
            long long rest = idx_left - n;
            if (rest < slots * w.index_lo || rest > slots * w.index_hi)
                continue;
            acc.push_back(DiffVar{letters[at], p, n});
            enumerate_multipliers(letters, at + 1, p_left - p, rest, w, acc, out);
            acc.pop_back();
        }
    }
}

} // namespace detail

// Search for h = sum_i u_i g_i with monomial multipliers of bounded degree
// over the window, the multiplier weight pinned to weight(h) - weight(g_i).
// One exact linear solve per grading component. Absence means "not found
// within this window", never "not in the ideal".
inline std::optional<MembershipCertificate> membership(const DiffPoly& h,
                                                       const std::vector<IdealGenerator>& gens,
                                                       const Window& w)
{
    WeightClass hw = h.weight();
    if (!hw.homogeneous())
        throw std::invalid_argument("membership: target must be weight-homogeneous");
    if (h.is_zero())
        return MembershipCertificate{};
    const long long target_weight = hw.value();

    // split the target by grade
    std::map<detail::Grade, DiffPoly> components;
    for (const auto& [m, c] : h.terms())
        components[detail::grade_of(m)].add_term(m, c);

    MembershipCertificate cert;
    for (const auto& [grade, target] : components) {
        // candidate products for this grade
        std::vector<std::pair<Monomial, size_t>> candidates;
        std::set<std::pair<Monomial, size_t>> seen;
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            const IdealGenerator& g = gens[gi];
            WeightClass gw = g.poly.weight();
            if (!gw.has_value())
                continue;
            auto rem = detail::letters_remainder(grade.letters, g.desc.a, g.desc.b);
            if (!rem)
                continue;
            int deg = 0;
            std::vector<std::string> letters;
            for (const auto& [name, k] : *rem) {
                deg += k;
                for (int i = 0; i < k; ++i)
                    letters.push_back(name);
            }
            if (deg > w.max_multiplier_degree)
                continue;
            long long wu = target_weight - gw.value();
            int p_total = static_cast<int>(wu) + deg; // weight(u) = sum p - deg
            if (p_total < 0 || p_total > deg * w.max_p)
                continue;
            long long idx_total = grade.index_sum - (g.desc.n + g.desc.m);
            if (deg == 0 && (p_total != 0 || idx_total != 0))
                continue;
            std::set<Monomial> ms;
            Monomial acc;
            detail::enumerate_multipliers(letters, 0, p_total, idx_total, w, acc, ms);
            for (const auto& m : ms)
                if (seen.insert({m, gi}).second)
                    candidates.emplace_back(m, gi);
        }
        if (candidates.empty())
            return std::nullopt;

        // assemble the sparse system: one column per candidate product
        std::map<Monomial, int> row_of;
        std::vector<std::map<int, Rational>> cols(candidates.size());
        for (size_t j = 0; j < candidates.size(); ++j) {
            DiffPoly prod = DiffPoly::monomial(candidates[j].first) * gens[candidates[j].second].poly;
            for (const auto& [m, c] : prod.terms()) {
                auto [it, fresh] = row_of.try_emplace(m, static_cast<int>(row_of.size()));
                cols[j][it->second] += c;
            }
        }
        for (const auto& [m, c] : target.terms())
            row_of.try_emplace(m, static_cast<int>(row_of.size()));

        LinearSystem sys;
        sys.ncols = static_cast<int>(candidates.size());
        std::vector<std::map<int, Rational>> rows(row_of.size());
        for (size_t j = 0; j < candidates.size(); ++j)
            for (const auto& [r, c] : cols[j])
                if (c != 0)
                    rows[r][static_cast<int>(j)] = c;
        std::vector<Rational> rhs(row_of.size(), Rational(0));
        for (const auto& [m, r] : row_of)
            if (auto it = target.terms().find(m); it != target.terms().end())
                rhs[r] = it->second;
        for (size_t r = 0; r < rows.size(); ++r)
            sys.add_row(std::move(rows[r]), rhs[r]);

        auto sol = solve(sys);
        if (!sol)
            return std::nullopt;
        for (size_t j = 0; j < candidates.size(); ++j)
            if ((*sol)[j] != 0)
                cert.terms.push_back(
                    {candidates[j].first, gens[candidates[j].second].desc, (*sol)[j]});
    }
    return cert;
}

// Re-expand the combination and compare exactly. Descriptors must reference
// emitted generators.
inline bool verify_certificate(const DiffPoly& h, const MembershipCertificate& cert,
                               const std::vector<IdealGenerator>& gens)
{
    std::set<GenDescriptor> known;
    for (const auto& g : gens)
        known.insert(g.desc);
    DiffPoly acc;
    for (const auto& t : cert.terms) {
        if (!known.count(t.gen))
            throw std::invalid_argument("verify_certificate: dangling generator descriptor " +
                                        to_string(t.gen));
        acc += t.coeff * (DiffPoly::monomial(t.multiplier) * expand_descriptor(t.gen));
    }
    return acc == h;
}

} // namespace novconf

#endif
