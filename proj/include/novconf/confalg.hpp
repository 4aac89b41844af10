#ifndef NOVCONF_CONFALG_HPP
#define NOVCONF_CONFALG_HPP

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "novconf/oppoly.hpp"
#include "novconf/rational.hpp"

namespace novconf {

// Element of the free module over the operator-polynomial ring: a finite map
// generator -> coefficient. Coefficients may carry del plus any bracket
// variables that are in scope.
class ConfElement {
public:
    ConfElement() = default;

    static ConfElement generator(const std::string& g)
    {
        ConfElement e;
        e.coeffs_[g] = OpPoly::constant(1);
        return e;
    }

    const std::map<std::string, OpPoly>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool operator==(const ConfElement&) const = default;

    void add(const std::string& g, const OpPoly& p)
    {
        if (p.is_zero())
            return;
        auto [it, fresh] = coeffs_.try_emplace(g, p);
        if (!fresh) {
            it->second += p;
            if (it->second.is_zero())
                coeffs_.erase(it);
        }
    }

    ConfElement& operator+=(const ConfElement& o)
    {
        for (const auto& [g, p] : o.coeffs_)
            add(g, p);
        return *this;
    }
    ConfElement& operator-=(const ConfElement& o)
    {
        for (const auto& [g, p] : o.coeffs_)
            add(g, -p);
        return *this;
    }
    friend ConfElement operator+(ConfElement a, const ConfElement& b) { return a += b; }
    friend ConfElement operator-(ConfElement a, const ConfElement& b) { return a -= b; }
    friend ConfElement operator*(const OpPoly& p, const ConfElement& e)
    {
        ConfElement r;
        for (const auto& [g, q] : e.coeffs())
            r.add(g, p * q);
        return r;
    }

    bool contains_symbol(const std::string& sym) const
    {
        for (const auto& [g, p] : coeffs_)
            if (p.contains(sym))
                return true;
        return false;
    }

    int degree_in(const std::string& sym) const
    {
        int d = 0;
        for (const auto& [g, p] : coeffs_)
            d = std::max(d, p.degree_in(sym));
        return d;
    }

    ConfElement coeff_in(const std::string& sym, int k) const
    {
        ConfElement r;
        for (const auto& [g, p] : coeffs_)
            r.add(g, p.coeff_in(sym, k));
        return r;
    }

    ConfElement subst(const std::string& sym, const OpPoly& value) const
    {
        ConfElement r;
        for (const auto& [g, p] : coeffs_)
            r.add(g, p.subst(sym, value));
        return r;
    }

private:
    std::map<std::string, OpPoly> coeffs_;
};

inline ConfElement apply_partial(const ConfElement& e)
{
    return OpPoly::var(kPartial) * e;
}

// Finitely presented conformal algebra: an ordered generator list and a
// bracket table. Table values use only del and lam; unlisted pairs are zero.
class ConfPresentation {
public:
    ConfPresentation() = default;
    explicit ConfPresentation(std::vector<std::string> gens) : gens_(std::move(gens))
    {
        for (const auto& g : gens_)
            if (!gen_set_.insert(g).second)
                throw std::invalid_argument("ConfPresentation: duplicate generator " + g);
    }

    const std::vector<std::string>& generators() const { return gens_; }
    bool has_generator(const std::string& g) const { return gen_set_.count(g) != 0; }

    void set_bracket(const std::string& a, const std::string& b, ConfElement value)
    {
        require_generator(a);
        require_generator(b);
        for (const auto& [g, p] : value.coeffs()) {
            require_generator(g);
            for (const auto& [m, c] : p.terms())
                for (const auto& [sym, e] : m)
                    if (sym != kPartial && sym != kLambda)
                        throw std::invalid_argument("bracket table entry uses symbol " + sym);
        }
        if (value.is_zero())
            table_.erase({a, b});
        else
            table_[{a, b}] = std::move(value);
    }

    const ConfElement& bracket_entry(const std::string& a, const std::string& b) const
    {
        require_generator(a);
        require_generator(b);
        static const ConfElement zero;
        auto it = table_.find({a, b});
        return it == table_.end() ? zero : it->second;
    }

    const std::map<std::pair<std::string, std::string>, ConfElement>& table() const { return table_; }

    void require_generator(const std::string& g) const
    {
        if (!has_generator(g))
            throw std::invalid_argument("unknown generator name: " + g);
    }

private:
    std::vector<std::string> gens_;
    std::set<std::string> gen_set_;
    std::map<std::pair<std::string, std::string>, ConfElement> table_;
};

// Bilinear sesquilinear extension of the bracket table, evaluated at the
// formal variable out. A factor del^j on the left argument contributes
// (-out)^j, del^k on the right contributes (del+out)^k; every other symbol
// in the coefficients passes through as a scalar.
inline ConfElement bracket(const ConfPresentation& A, const ConfElement& u, const ConfElement& v,
                           const std::string& out)
{
    if (u.contains_symbol(out) || v.contains_symbol(out))
        throw std::invalid_argument("bracket: output variable " + out + " occurs in an argument");
    ConfElement acc;
    for (const auto& [g, P] : u.coeffs()) {
        A.require_generator(g);
        for (const auto& [h, Q] : v.coeffs()) {
            A.require_generator(h);
            const ConfElement& T = A.bracket_entry(g, h);
            if (T.is_zero())
                continue;
            OpPoly left = P.subst(kPartial, -OpPoly::var(out));
            OpPoly right = Q.subst(kPartial, OpPoly::var(kPartial) + OpPoly::var(out));
            ConfElement term = (left * right) * T.subst(kLambda, OpPoly::var(out));
            acc += term;
        }
    }
    return acc;
}

// n-th product: n! times the coefficient of lam^n in the bracket.
inline ConfElement n_product(const ConfPresentation& A, const ConfElement& u, const ConfElement& v,
                             int n)
{
    if (n < 0)
        throw std::invalid_argument("n_product: negative n");
    ConfElement b = bracket(A, u, v, kLambda);
    return OpPoly::constant(Rational(factorial(n))) * b.coeff_in(kLambda, n);
}

// 0 for a zero bracket, otherwise 1 + lam-degree.
inline int locality(const ConfPresentation& A, const ConfElement& u, const ConfElement& v)
{
    ConfElement b = bracket(A, u, v, kLambda);
    if (b.is_zero())
        return 0;
    return 1 + b.degree_in(kLambda);
}

// Substitute a bracket variable by the operator -del-target.
inline ConfElement subst_neg_partial(const ConfElement& e, const std::string& var,
                                     const std::string& target)
{
    return e.subst(var, -OpPoly::var(kPartial) - OpPoly::var(target));
}

enum class Identity {
    commutative,
    anticommutative,
    associative,
    jacobi,
    rsym_novikov,
    lcom_novikov,
};

inline const char* to_string(Identity id)
{
    switch (id) {
    case Identity::commutative: return "commutative";
    case Identity::anticommutative: return "anticommutative";
    case Identity::associative: return "associative";
    case Identity::jacobi: return "jacobi";
    case Identity::rsym_novikov: return "rsym_novikov";
    case Identity::lcom_novikov: return "lcom_novikov";
    }
    return "?";
}

inline Identity identity_from_string(const std::string& s)
{
    for (Identity id : {Identity::commutative, Identity::anticommutative, Identity::associative,
                        Identity::jacobi, Identity::rsym_novikov, Identity::lcom_novikov})
        if (s == to_string(id))
            return id;
    throw std::invalid_argument("unknown identity: " + s);
}

// Left-minus-right of the selected identity with independent variables lam
// and mu; zero means the identity holds on this triple.
inline ConfElement check_identity(const ConfPresentation& A, Identity which, const ConfElement& u,
                                  const ConfElement& v, const ConfElement& w)
{
    auto at_sum_of = [&](const ConfElement& x, const ConfElement& y) {
        // (x_{lam+mu} y) via a fresh variable
        ConfElement b = bracket(A, x, y, kNu);
        return b.subst(kNu, OpPoly::var(kLambda) + OpPoly::var(kMu));
    };
    auto at_neg = [&](const ConfElement& x, const ConfElement& y, const std::string& target) {
        ConfElement b = bracket(A, x, y, kNu);
        return subst_neg_partial(b, kNu, target);
    };

    switch (which) {
    case Identity::commutative:
        return bracket(A, u, v, kLambda) - at_neg(v, u, kLambda);
    case Identity::anticommutative:
        return bracket(A, u, v, kLambda) + at_neg(v, u, kLambda);
    case Identity::associative:
        // u_lam (v_mu w) = (u_lam v)_{lam+mu} w
        return bracket(A, u, bracket(A, v, w, kMu), kLambda) - at_sum_of(bracket(A, u, v, kLambda), w);
    case Identity::jacobi:
        return bracket(A, u, bracket(A, v, w, kMu), kLambda) -
               bracket(A, v, bracket(A, u, w, kLambda), kMu) - at_sum_of(bracket(A, u, v, kLambda), w);
    case Identity::rsym_novikov: {
        // (u_lam v)_{lam+mu} w - u_lam (v_mu w) = (u_lam w)_{-del-mu} v - u_lam (w_{-del-mu} v)
        ConfElement lhs = at_sum_of(bracket(A, u, v, kLambda), w) -
                          bracket(A, u, bracket(A, v, w, kMu), kLambda);
        ConfElement rhs = at_neg(bracket(A, u, w, kLambda), v, kMu) -
                          bracket(A, u, at_neg(w, v, kMu), kLambda);
        return lhs - rhs;
    }
    case Identity::lcom_novikov:
        return bracket(A, u, bracket(A, v, w, kMu), kLambda) -
               bracket(A, v, bracket(A, u, w, kLambda), kMu);
    }
    throw std::logic_error("check_identity: bad identity");
}

struct TripleResidual {
    std::string a, b, c;
    ConfElement residual;
};

struct IdentityReport {
    Identity which;
    std::vector<TripleResidual> failures;
    int triples_checked = 0;
    bool ok() const { return failures.empty(); }
};

inline IdentityReport check_identity_on_generators(const ConfPresentation& A, Identity which)
{
    IdentityReport rep;
    rep.which = which;
    for (const auto& a : A.generators())
        for (const auto& b : A.generators())
            for (const auto& c : A.generators()) {
                ConfElement r = check_identity(A, which, ConfElement::generator(a),
                                               ConfElement::generator(b), ConfElement::generator(c));
                ++rep.triples_checked;
                if (!r.is_zero())
                    rep.failures.push_back({a, b, c, std::move(r)});
            }
    return rep;
}

// Derivation table: generator -> image, coefficients in del only.
using DerivationTable = std::map<std::string, ConfElement>;

inline void validate_derivation_table(const ConfPresentation& A, const DerivationTable& D)
{
    for (const auto& [g, e] : D) {
        A.require_generator(g);
        for (const auto& [h, p] : e.coeffs()) {
            A.require_generator(h);
            for (const auto& [m, c] : p.terms())
                for (const auto& [sym, ex] : m)
                    if (sym != kPartial)
                        throw std::invalid_argument("derivation table entry uses symbol " + sym);
        }
    }
}

// Extend the table to module elements: D(P(del) g) = P(del) D(g).
inline ConfElement apply_derivation(const ConfPresentation& A, const DerivationTable& D,
                                    const ConfElement& u)
{
    ConfElement r;
    for (const auto& [g, P] : u.coeffs()) {
        A.require_generator(g);
        auto it = D.find(g);
        if (it == D.end())
            continue;
        r += P * it->second;
    }
    return r;
}

struct DerivationPairResidual {
    std::string a, b;
    ConfElement residual;
};

struct DerivationReport {
    std::vector<DerivationPairResidual> failures;
    int pairs_checked = 0;
    bool ok() const { return failures.empty(); }
};

// Leibniz check D(a_lam b) = (Da)_lam b + a_lam (Db) on all generator pairs.
inline DerivationReport check_derivation(const ConfPresentation& A, const DerivationTable& D)
{
    validate_derivation_table(A, D);
    DerivationReport rep;
    for (const auto& a : A.generators())
        for (const auto& b : A.generators()) {
            ConfElement ea = ConfElement::generator(a), eb = ConfElement::generator(b);
            ConfElement lhs = apply_derivation(A, D, bracket(A, ea, eb, kLambda));
            ConfElement rhs = bracket(A, apply_derivation(A, D, ea), eb, kLambda) +
                              bracket(A, ea, apply_derivation(A, D, eb), kLambda);
            ++rep.pairs_checked;
            ConfElement r = lhs - rhs;
            if (!r.is_zero())
                rep.failures.push_back({a, b, std::move(r)});
        }
    return rep;
}

// Operation-changing construction: from a commutative presentation and a
// derivation table, the table (g,h) -> (Dg)_lam h. The derived bracket must
// stay inside the generator span; a table entry naming anything else is a
// closure failure reported with the offending pair.
inline ConfPresentation gelfand(const ConfPresentation& A, const DerivationTable& D)
{
    validate_derivation_table(A, D);
    ConfPresentation out(A.generators());
    for (const auto& g : A.generators())
        for (const auto& h : A.generators()) {
            ConfElement value;
            try {
                value = bracket(A, apply_derivation(A, D, ConfElement::generator(g)),
                                ConfElement::generator(h), kLambda);
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("gelfand: closure failure at (" + g + ", " + h +
                                            "): " + e.what());
            }
            out.set_bracket(g, h, std::move(value));
        }
    return out;
}

// Finite-dimensional algebra as structure constants over an ordered basis:
// product(i, j) = sum_k c[i][j][k] e_k.
struct StructureConstants {
    std::vector<std::string> basis;
    std::vector<std::vector<std::vector<Rational>>> c;

    static StructureConstants zero(std::vector<std::string> basis_names)
    {
        StructureConstants s;
        s.basis = std::move(basis_names);
        size_t d = s.basis.size();
        s.c.assign(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d, Rational(0))));
        return s;
    }

    size_t dim() const { return basis.size(); }
    void set(size_t i, size_t j, size_t k, Rational v) { c[i][j][k] = std::move(v); }

    std::vector<Rational> mul(const std::vector<Rational>& x, const std::vector<Rational>& y) const
    {
        size_t d = dim();
        std::vector<Rational> r(d, Rational(0));
        for (size_t i = 0; i < d; ++i) {
            if (x[i] == 0)
                continue;
            for (size_t j = 0; j < d; ++j) {
                if (y[j] == 0)
                    continue;
                for (size_t k = 0; k < d; ++k)
                    r[k] += x[i] * y[j] * c[i][j][k];
            }
        }
        return r;
    }
};

struct NPAxiomFailure {
    std::string axiom;
    size_t i = 0, j = 0, k = 0;
};

struct NPAxiomReport {
    std::vector<NPAxiomFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Axioms of a Novikov-Poisson structure (o, *): o right-symmetric and left
// commutative, * associative and commutative, plus the two compatibility
// identities (a o b)*c = a o (b*c) and
// (a*b) o c - a*(b o c) = (a*c) o b - a*(c o b).
inline NPAxiomReport check_np_axioms(const StructureConstants& nov, const StructureConstants& assoc)
{
    if (nov.dim() != assoc.dim())
        throw std::invalid_argument("check_np_axioms: dimension mismatch");
    NPAxiomReport rep;
    size_t d = nov.dim();
    auto unit = [&](size_t i) {
        std::vector<Rational> v(d, Rational(0));
        v[i] = 1;
        return v;
    };
    auto is_zero = [](const std::vector<Rational>& v) {
        for (const auto& x : v)
            if (x != 0)
                return false;
        return true;
    };
    auto sub = [](std::vector<Rational> a, const std::vector<Rational>& b) {
        for (size_t i = 0; i < a.size(); ++i)
            a[i] -= b[i];
        return a;
    };

    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            for (size_t k = 0; k < d; ++k) {
                auto a = unit(i), b = unit(j), cc = unit(k);
                auto o = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
                    return nov.mul(x, y);
                };
                auto s = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
                    return assoc.mul(x, y);
                };
                if (!is_zero(sub(sub(o(o(a, b), cc), o(a, o(b, cc))),
                                 sub(o(o(a, cc), b), o(a, o(cc, b))))))
                    rep.failures.push_back({"novikov_rsym", i, j, k});
                if (!is_zero(sub(o(a, o(b, cc)), o(b, o(a, cc)))))
                    rep.failures.push_back({"novikov_lcom", i, j, k});
                if (!is_zero(sub(s(s(a, b), cc), s(a, s(b, cc)))))
                    rep.failures.push_back({"assoc", i, j, k});
                if (k == 0 && !is_zero(sub(s(a, b), s(b, a))))
                    rep.failures.push_back({"comm", i, j, k});
                if (!is_zero(sub(s(o(a, b), cc), o(a, s(b, cc)))))
                    rep.failures.push_back({"np_compat_1", i, j, k});
                if (!is_zero(sub(sub(o(s(a, b), cc), s(a, o(b, cc))),
                                 sub(o(s(a, cc), b), s(a, o(cc, b))))))
                    rep.failures.push_back({"np_compat_2", i, j, k});
            }
    return rep;
}

// Quadratic conformal structure on the free module over a Novikov-Poisson
// algebra: bracket(e_i, e_j) = e_i o e_j + lam * (e_i * e_j).
inline ConfPresentation quadratic_from_np(const StructureConstants& nov,
                                          const StructureConstants& assoc)
{
    NPAxiomReport axioms = check_np_axioms(nov, assoc);
    if (!axioms.ok()) {
        const auto& f = axioms.failures.front();
        std::ostringstream os;
        os << "quadratic_from_np: axiom " << f.axiom << " fails on basis triple (" << f.i << ", "
           << f.j << ", " << f.k << ")";
        throw std::invalid_argument(os.str());
    }
    ConfPresentation A(nov.basis);
    size_t d = nov.dim();
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            ConfElement value;
            for (size_t k = 0; k < d; ++k) {
                OpPoly p = OpPoly::constant(nov.c[i][j][k]) +
                           OpPoly::constant(assoc.c[i][j][k]) * OpPoly::var(kLambda);
                value.add(nov.basis[k], p);
            }
            A.set_bracket(nov.basis[i], nov.basis[j], std::move(value));
        }
    return A;
}

// The module with generators x, v_0..v_kmax, bracket(v_k, x) = (del+lam)^k v_k
// and all other pairs zero.
inline ConfPresentation build_W(int kmax)
{
    if (kmax < 0)
        throw std::invalid_argument("build_W: kmax must be nonnegative");
    std::vector<std::string> gens{"x"};
    for (int k = 0; k <= kmax; ++k)
        gens.push_back("v" + std::to_string(k));
    ConfPresentation A(std::move(gens));
    for (int k = 0; k <= kmax; ++k) {
        ConfElement val;
        val.add("v" + std::to_string(k),
                (OpPoly::var(kPartial) + OpPoly::var(kLambda)).pow(k));
        A.set_bracket("v" + std::to_string(k), "x", std::move(val));
    }
    return A;
}

inline std::string to_string(const ConfElement& e)
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
            continue;
        }
        if (p.terms().size() == 1)
            os << to_string(p) << "*" << g;
        else
            os << "(" << to_string(p) << ")*" << g;
    }
    return os.str();
}

} // namespace novconf

#endif
