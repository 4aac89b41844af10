#ifndef NOVCONF_HARNESS_HPP
#define NOVCONF_HARNESS_HPP

#include <chrono>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "novconf/coeffalg.hpp"
#include "novconf/confalg.hpp"
#include "novconf/distribution.hpp"
#include "novconf/idealkit.hpp"
#include "novconf/report.hpp"
#include "novconf/sampling.hpp"

namespace novconf {

// ---------------------------------------------------------------------------
// Conformal expression trees over derivative symbols a^(p), with the
// translation operator and the n-products of the enveloping commutative
// algebra. Weights: wt(a^(p)) = p-1, additive under products, invariant
// under the translation.

class ConfTree;
using ConfTreePtr = std::shared_ptr<const ConfTree>;

class ConfTree {
public:
    struct Gen {
        std::string name;
        int p;
    };
    struct Partial {
        ConfTreePtr child;
    };
    struct NProd {
        ConfTreePtr left, right;
        long long n;
    };
    struct Lin {
        std::vector<std::pair<Rational, ConfTreePtr>> terms;
    };

    using Node = std::variant<Gen, Partial, NProd, Lin>;
    explicit ConfTree(Node n) : node_(std::move(n)) {}
    const Node& node() const { return node_; }

    static ConfTreePtr gen(std::string name, int p)
    {
        if (p < 0)
            throw std::invalid_argument("ConfTree: negative derivative order");
        return std::make_shared<ConfTree>(Node{Gen{std::move(name), p}});
    }
    static ConfTreePtr partial(ConfTreePtr c) { return std::make_shared<ConfTree>(Node{Partial{std::move(c)}}); }
    static ConfTreePtr nprod(ConfTreePtr l, ConfTreePtr r, long long n)
    {
        if (n < 0)
            throw std::invalid_argument("ConfTree: negative product index");
        return std::make_shared<ConfTree>(Node{NProd{std::move(l), std::move(r), n}});
    }
    static ConfTreePtr lin(std::vector<std::pair<Rational, ConfTreePtr>> terms)
    {
        return std::make_shared<ConfTree>(Node{Lin{std::move(terms)}});
    }

private:
    Node node_;
};

inline WeightClass check_wt_conformal(const ConfTreePtr& t)
{
    const auto& n = t->node();
    if (auto* g = std::get_if<ConfTree::Gen>(&n))
        return WeightClass::exact(g->p - 1);
    if (auto* pa = std::get_if<ConfTree::Partial>(&n))
        return check_wt_conformal(pa->child);
    if (auto* pr = std::get_if<ConfTree::NProd>(&n)) {
        WeightClass l = check_wt_conformal(pr->left), r = check_wt_conformal(pr->right);
        if (!l.homogeneous() || !r.homogeneous())
            return WeightClass::inhomogeneous();
        if (l.is_any() || r.is_any())
            return WeightClass::any();
        return WeightClass::exact(l.value() + r.value());
    }
    const auto& lin = std::get<ConfTree::Lin>(n);
    WeightClass acc = WeightClass::any();
    for (const auto& [c, child] : lin.terms) {
        if (c == 0)
            continue;
        WeightClass w = check_wt_conformal(child);
        if (!w.homogeneous())
            return WeightClass::inhomogeneous();
        if (w.is_any())
            continue;
        if (acc.is_any())
            acc = w;
        else if (acc.value() != w.value())
            return WeightClass::inhomogeneous();
    }
    return acc;
}

// The derivation a^(p) -> a^(p+1) extended by Leibniz over products.
inline ConfTreePtr tree_derive(const ConfTreePtr& t)
{
    const auto& n = t->node();
    if (auto* g = std::get_if<ConfTree::Gen>(&n))
        return ConfTree::gen(g->name, g->p + 1);
    if (auto* pa = std::get_if<ConfTree::Partial>(&n))
        return ConfTree::partial(tree_derive(pa->child));
    if (auto* pr = std::get_if<ConfTree::NProd>(&n))
        return ConfTree::lin({{Rational(1), ConfTree::nprod(tree_derive(pr->left), pr->right, pr->n)},
                              {Rational(1), ConfTree::nprod(pr->left, tree_derive(pr->right), pr->n)}});
    const auto& lin = std::get<ConfTree::Lin>(n);
    std::vector<std::pair<Rational, ConfTreePtr>> out;
    for (const auto& [c, child] : lin.terms)
        out.emplace_back(c, tree_derive(child));
    return ConfTree::lin(std::move(out));
}

// Coefficient of the expression at one integer index, written out in the
// polynomial algebra: generators map to their symbols, the translation acts
// by (pf)(k) = -k f(k-1), and a product contributes
// (f n g)(k) = sum_s (-1)^s C(n,s) f(n-s) g(k+s).
inline DiffPoly tree_coefficient(const ConfTreePtr& t, long long k)
{
    const auto& n = t->node();
    if (auto* g = std::get_if<ConfTree::Gen>(&n))
        return DiffPoly::variable({g->name, g->p, k});
    if (auto* pa = std::get_if<ConfTree::Partial>(&n))
        return rat(-k) * tree_coefficient(pa->child, k - 1);
    if (auto* pr = std::get_if<ConfTree::NProd>(&n)) {
        DiffPoly acc;
        for (long long s = 0; s <= pr->n; ++s) {
            Rational c((s % 2 == 0) ? binomial(pr->n, s) : -binomial(pr->n, s));
            acc += c * (tree_coefficient(pr->left, pr->n - s) * tree_coefficient(pr->right, k + s));
        }
        return acc;
    }
    const auto& lin = std::get<ConfTree::Lin>(n);
    DiffPoly acc;
    for (const auto& [c, child] : lin.terms)
        acc += c * tree_coefficient(child, k);
    return acc;
}

// ---------------------------------------------------------------------------
// Locality-relation shape sum_s C(d,s) a^(p+s) (n) b^(q+d-s): the formal
// relation family together with its coefficient image.

struct GenerateKRelation {
    std::string a, b;
    int p = 0, q = 0, d = 0;
    long long n = 0;

    std::vector<std::pair<Integer, std::pair<int, int>>> terms() const
    {
        std::vector<std::pair<Integer, std::pair<int, int>>> out;
        for (int s = 0; s <= d; ++s)
            out.push_back({binomial(d, s), {p + s, q + d - s}});
        return out;
    }
};

inline GenerateKRelation emit_generateK_relation(const std::string& a, const std::string& b, int p,
                                                 int q, int d, long long n)
{
    if (p < 0 || q < 0 || d < 0 || n < 0)
        throw std::invalid_argument("emit_generateK_relation: negative argument");
    return GenerateKRelation{a, b, p, q, d, n};
}

inline std::string to_string(const GenerateKRelation& r)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, pq] : r.terms()) {
        if (!first)
            os << " + ";
        first = false;
        if (c != 1)
            os << c.str() << "*";
        os << r.a << "^(" << pq.first << ") (*" << r.n << "*) " << r.b << "^(" << pq.second << ")";
    }
    return os.str();
}

// The coefficient image of the relation at index m equals the d-th derivative
// of the base family at the common exponent n, by iterated Leibniz.
inline bool check_generateK_relation(const GenerateKRelation& r, long long m)
{
    DiffPoly image;
    for (const auto& [c, pq] : r.terms()) {
        ConfTreePtr t = ConfTree::nprod(ConfTree::gen(r.a, pq.first), ConfTree::gen(r.b, pq.second), r.n);
        image += Rational(c) * tree_coefficient(t, m);
    }
    DiffPoly expect = derive(emit_fpq(r.a, r.b, r.p, r.q, r.n, m, r.n), r.d);
    return image == expect;
}

// ---------------------------------------------------------------------------
// Scenario runners.

namespace harness_detail {

inline Distribution ser(const std::string& g, int p, const FVar& v)
{
    return Distribution::series(g, p, v);
}

inline void note_window(ScenarioReport& rep, const Window& w)
{
    rep.param("window", std::to_string(w.index_lo) + ":" + std::to_string(w.index_hi));
    rep.param("smax", std::to_string(w.s_max));
    rep.param("max_p", std::to_string(w.max_p));
    rep.param("multiplier_degree", std::to_string(w.max_multiplier_degree));
}

// Documented default window: indices widened by 3M beyond the target's
// support, s_max = 2, multiplier degree = deg(target) - 2. The derivative
// cap covers both the family orders (p+q+1) and the single-letter
// multipliers of weight wt(target)+1 that the constructive decompositions
// use, i.e. order wt(target)+2.
inline Window default_window(const DiffPoly& target, long long M, int family_p, int family_q)
{
    long long lo = 0, hi = 0;
    bool first = true;
    for (const auto& [mono, c] : target.terms())
        for (const auto& v : mono) {
            if (first) {
                lo = hi = v.n;
                first = false;
            } else {
                lo = std::min(lo, v.n);
                hi = std::max(hi, v.n);
            }
        }
    int maxp = family_p + family_q + 1;
    WeightClass w = target.weight();
    if (w.has_value())
        maxp = std::max<int>(maxp, static_cast<int>(w.value()) + 2);
    int degree = std::max(0, target.degree() - 2);
    return Window(lo - 3 * M, hi + 3 * M, 2, std::max(maxp, 0), degree);
}

inline void run_membership_check(ScenarioReport& rep, const std::string& name, const DiffPoly& h,
                                 const std::vector<IdealGenerator>& gens, const Window& w)
{
    auto cert = membership(h, gens, w);
    if (!cert) {
        rep.add(name, false, "no certificate within window " + std::to_string(w.index_lo) + ":" +
                                 std::to_string(w.index_hi));
        return;
    }
    bool ok = verify_certificate(h, *cert, gens);
    std::ostringstream os;
    os << cert->terms.size() << " summands\n" << to_string(*cert);
    rep.add(name, ok, os.str());
}

} // namespace harness_detail

// Both symbolic identities behind the exponent-splitting step, at one M.
inline ScenarioReport run_series00(long long M, const std::string& a = "a",
                                   const std::string& x = "x", const std::string& y = "y")
{
    using namespace harness_detail;
    if (M < 1)
        throw std::invalid_argument("run_series00: M must be >= 1");
    ScenarioReport rep;
    rep.scenario = "series00";
    rep.param("M", std::to_string(M));

    const FVar w{"w"}, z{"z"}, zeta{"zeta"};
    const int Mi = static_cast<int>(M);

    Distribution axy = ser(a, 2, zeta) * ser(x, 0, w) * ser(y, 0, z);
    auto [P, Q] = binom_split(w, z, zeta, Mi, Mi);
    Laurent wzM = binom_power(w, z, Mi);

    Distribution lhs = mul_laurent(axy, binom_power(w, z, 3 * Mi));
    Distribution rhs = mul_laurent(axy, laurent_mul(laurent_mul(binom_power(w, zeta, Mi), P), wzM)) +
                       mul_laurent(axy, laurent_mul(laurent_mul(binom_power(zeta, z, Mi), Q), wzM));
    rep.add("split identity", (lhs - rhs).is_zero());

    // rewriting of the first summand through the derivation
    Distribution first = mul_laurent(axy, laurent_mul(binom_power(w, zeta, Mi), wzM));
    Distribution inner = mul_laurent(ser(a, 1, zeta) * ser(x, 0, w), binom_power(w, zeta, Mi));
    Distribution term1 = mul_laurent(derive(inner) * ser(y, 0, z), wzM);
    Distribution term2 = mul_laurent(ser(a, 1, zeta), binom_power(w, zeta, Mi)) *
                         mul_laurent(ser(x, 1, w) * ser(y, 0, z), wzM);
    rep.add("first summand rewriting", (first - (term1 - term2)).is_zero());

    // and of the second, with the roles of x(w) and y(z) exchanged
    Distribution second = mul_laurent(axy, laurent_mul(binom_power(zeta, z, Mi), wzM));
    Distribution inner2 = mul_laurent(ser(a, 1, zeta) * ser(y, 0, z), binom_power(zeta, z, Mi));
    Distribution term3 = mul_laurent(derive(inner2) * ser(x, 0, w), wzM);
    Distribution term4 = mul_laurent(ser(a, 1, zeta), binom_power(zeta, z, Mi)) *
                         mul_laurent(ser(y, 1, z) * ser(x, 0, w), wzM);
    rep.add("second summand rewriting", (second - (term3 - term4)).is_zero());
    return rep;
}

// Splitting of a(zeta) x^(p)(w) y^(q)(z) (w-z)^((p+q)M), plus the two-term
// rewriting when one order vanishes.
inline ScenarioReport run_series_pq(long long M, int p, int q)
{
    using namespace harness_detail;
    if (M < 1)
        throw std::invalid_argument("run_series_pq: M must be >= 1");
    if (p < 0 || q < 0 || p + q < 1)
        throw std::invalid_argument("run_series_pq: need p+q >= 1");
    ScenarioReport rep;
    rep.scenario = "series_pq";
    rep.param("M", std::to_string(M));
    rep.param("p", std::to_string(p));
    rep.param("q", std::to_string(q));

    const FVar w{"w"}, z{"z"}, zeta{"zeta"};
    const int Mi = static_cast<int>(M);

    Distribution axy = ser("a", 0, zeta) * ser("x", p, w) * ser("y", q, z);
    auto [P, Q] = binom_split(w, z, zeta, p * Mi, q * Mi);
    Distribution lhs = mul_laurent(axy, binom_power(w, z, (p + q) * Mi));
    Distribution rhs = mul_laurent(axy, laurent_mul(binom_power(w, zeta, p * Mi), P)) +
                       mul_laurent(axy, laurent_mul(binom_power(zeta, z, q * Mi), Q));
    rep.add("split identity", (lhs - rhs).is_zero());

    if (q == 0 && p >= 1) {
        Distribution inner = mul_laurent(ser("x", p - 1, w) * ser("y", 0, z),
                                         binom_power(w, z, (p - 1) * Mi));
        Distribution t1 = ser("a", 0, zeta) * mul_laurent(derive(inner), binom_power(w, z, Mi));
        Distribution t2 = ser("a", 0, zeta) *
                          mul_laurent(ser("x", p - 1, w) * ser("y", 1, z), binom_power(w, z, p * Mi));
        rep.add("two-term rewriting (q = 0)", (lhs - (t1 - t2)).is_zero());
    }
    if (p == 0 && q >= 1) {
        Distribution inner = mul_laurent(ser("x", 0, w) * ser("y", q - 1, z),
                                         binom_power(w, z, (q - 1) * Mi));
        Distribution t1 = ser("a", 0, zeta) * mul_laurent(derive(inner), binom_power(w, z, Mi));
        Distribution t2 = ser("a", 0, zeta) *
                          mul_laurent(ser("x", 1, w) * ser("y", q - 1, z), binom_power(w, z, q * Mi));
        rep.add("two-term rewriting (p = 0)", (lhs - (t1 - t2)).is_zero());
    }
    return rep;
}

// Membership of a^(r)(k) f^{0,0}_{x,y}(n,m; 3M) in the windowed ideal.
inline ScenarioReport run_case1(long long M, long long k, long long n, long long m, int r,
                                std::optional<Window> window = std::nullopt)
{
    using namespace harness_detail;
    if (M < 1)
        throw std::invalid_argument("run_case1: M must be >= 1");
    if (r < 2)
        throw std::invalid_argument("run_case1: the letter must have derivative order >= 2");
    ScenarioReport rep;
    rep.scenario = "case1";
    rep.param("M", std::to_string(M));
    rep.param("r", std::to_string(r));
    rep.param("k", std::to_string(k));
    rep.param("n", std::to_string(n));
    rep.param("m", std::to_string(m));

    DiffPoly h = DiffPoly::variable({"a", r, k}) * emit_fpq("x", "y", 0, 0, n, m, 3 * M);
    Window w = window ? *window : default_window(h, M, 0, 0);
    note_window(rep, w);
    auto gens = generators_I({"a", "x", "y"}, LocalityFn(M), w);
    rep.param("generators", std::to_string(gens.size()));
    run_membership_check(rep, "a^(" + std::to_string(r) + ") times the 3M family", h, gens, w);
    return rep;
}

// The three order-one reductions.
inline ScenarioReport run_case2(long long M, const std::string& variant, long long n, long long m,
                                std::optional<Window> window = std::nullopt)
{
    using namespace harness_detail;
    if (M < 1)
        throw std::invalid_argument("run_case2: M must be >= 1");
    if (!variant.empty() && variant != "f10" && variant != "f01" && variant != "df00")
        throw std::invalid_argument("run_case2: unknown variant " + variant);
    ScenarioReport rep;
    rep.scenario = "case2";
    rep.param("M", std::to_string(M));
    rep.param("variant", variant.empty() ? "all" : variant);
    rep.param("n", std::to_string(n));
    rep.param("m", std::to_string(m));

    LocalityFn N(M);

    if (variant.empty() || variant == "f10") {
        bool ok = emit_fpq("x", "y", 1, 0, n, m, N("x", "y")) == emit_f("x", "y", n, m, N("x", "y"));
        rep.add("order (1,0) coincides with the base family", ok);
    }
    if (variant.empty() || variant == "f01") {
        DiffPoly h = emit_fpq("x", "y", 0, 1, n, m, M);
        DiffPoly reindexed = emit_f("y", "x", m + M, n - M, M);
        if (M % 2 != 0)
            reindexed = -reindexed;
        rep.add("order (0,1) reindexes to the base family", h == reindexed);

        Window w = window ? *window : default_window(h, M, 0, 1);
        note_window(rep, w);
        auto gens = generators_I({"x", "y"}, N, w);
        auto cert = membership(h, gens, w);
        bool ok = cert.has_value() && verify_certificate(h, *cert, gens);
        if (ok)
            for (const auto& t : cert->terms)
                ok = ok && t.multiplier.empty();
        rep.add("order (0,1) membership with unit multipliers", ok,
                cert ? to_string(*cert) : "no certificate");
    }
    if (variant.empty() || variant == "df00") {
        DiffPoly h = derive(emit_fpq("x", "y", 0, 0, n, m, 3 * M));
        Window w = window ? *window : default_window(h, M, 0, 0);
        note_window(rep, w);
        auto gens = generators_I({"x", "y"}, N, w);
        run_membership_check(rep, "derivative of the 3M family", h, gens, w);
    }
    return rep;
}

// Negative-weight multipliers: u d^l(f^{p,q}) with wt(u) = 1-p-q-l.
inline ScenarioReport run_case3(long long M, int p, int q, int l,
                                std::optional<Window> window = std::nullopt)
{
    using namespace harness_detail;
    if (M < 1)
        throw std::invalid_argument("run_case3: M must be >= 1");
    if (p < 0 || q < 0 || l < 0 || p + q + l < 2)
        throw std::invalid_argument("run_case3: need p+q+l >= 2");
    ScenarioReport rep;
    rep.scenario = "case3";
    rep.param("M", std::to_string(M));
    rep.param("p", std::to_string(p));
    rep.param("q", std::to_string(q));
    rep.param("l", std::to_string(l));

    LocalityFn N(M);
    long long wu = 1 - p - q - l; // always <= -1 here
    Monomial u(static_cast<size_t>(-wu), DiffVar{"a", 0, 0});
    rep.param("multiplier", to_string(u));

    DiffPoly h = DiffPoly::monomial(u) *
                 derive(emit_fpq("x", "y", p, q, 0, 0, barN(p, q, M, N("x", "y"))), l);
    Window w = window ? *window : default_window(h, M, p, q);
    note_window(rep, w);
    auto gens = generators_I({"a", "x", "y"}, N, w);
    rep.param("generators", std::to_string(gens.size()));
    run_membership_check(rep, "multiplied derivative family", h, gens, w);
    return rep;
}

// The non-special module: identity checks, the two closed-form
// intermediates, and the growing obstruction localities.
inline ScenarioReport run_counterexample(int kmax, unsigned long long seed = 0,
                                         int random_samples = 0)
{
    if (kmax < 1)
        throw std::invalid_argument("run_counterexample: kmax must be >= 1");
    ScenarioReport rep;
    rep.scenario = "counterexample";
    rep.param("kmax", std::to_string(kmax));
    rep.param("seed", std::to_string(seed));

    ConfPresentation W = build_W(kmax);
    auto rsym = check_identity_on_generators(W, Identity::rsym_novikov);
    rep.add("right-symmetry on generator triples", rsym.ok(),
            std::to_string(rsym.triples_checked) + " triples");
    auto lcom = check_identity_on_generators(W, Identity::lcom_novikov);
    rep.add("left-commutativity on generator triples", lcom.ok(),
            std::to_string(lcom.triples_checked) + " triples");

    OpPoly del = OpPoly::var(kPartial), lam = OpPoly::var(kLambda), mu = OpPoly::var(kMu);
    std::vector<long long> localities;
    bool intermediates_ok = true, obstruction_ok = true, coeff_ok = true;
    for (int k = 0; k <= kmax; ++k) {
        std::string vk = "v" + std::to_string(k);
        ConfElement vke = ConfElement::generator(vk), xe = ConfElement::generator("x");

        // ((v_k lam x) at lam+mu with x) and (... at -del-mu with x)
        ConfElement inner = bracket(W, vke, xe, kLambda);
        ConfElement left = bracket(W, inner, xe, kNu).subst(kNu, lam + mu);
        ConfElement expect_left;
        expect_left.add(vk, (-mu).pow(k) * (del + lam + mu).pow(k));
        intermediates_ok = intermediates_ok && (left == expect_left);

        ConfElement right = subst_neg_partial(bracket(W, inner, xe, kNu), kNu, kMu);
        ConfElement expect_right;
        expect_right.add(vk, (del + mu + lam).pow(k) * (-mu).pow(k));
        intermediates_ok = intermediates_ok && (right == expect_right);

        // ((v_k 0 x) lam x) = (-lam)^k (del+lam)^k v_k
        ConfElement t = n_product(W, vke, xe, 0);
        ConfElement obstruction = bracket(W, t, xe, kLambda);
        ConfElement expect_obs;
        expect_obs.add(vk, (-lam).pow(k) * (del + lam).pow(k));
        obstruction_ok = obstruction_ok && (obstruction == expect_obs);
        localities.push_back(locality(W, t, xe));

        // lam^k coefficient is (-1)^k del^k v_k, nonzero
        ConfElement ck = obstruction.coeff_in(kLambda, k);
        ConfElement expect_ck;
        expect_ck.add(vk, (k % 2 == 0 ? OpPoly::constant(1) : OpPoly::constant(-1)) * del.pow(k));
        coeff_ok = coeff_ok && (ck == expect_ck) && !ck.is_zero();
    }
    rep.add("closed forms of both nested brackets", intermediates_ok);
    rep.add("obstruction bracket ((v_k 0 x) lam x)", obstruction_ok);

    bool loc_ok = true;
    std::ostringstream seq;
    for (size_t k = 0; k < localities.size(); ++k) {
        loc_ok = loc_ok && (localities[k] == 2 * static_cast<long long>(k) + 1);
        if (k)
            seq << ",";
        seq << localities[k];
    }
    rep.add("locality sequence 2k+1", loc_ok, seq.str());
    rep.add("lam^k coefficient (-1)^k del^k v_k nonzero", coeff_ok);

    if (random_samples > 0) {
        std::mt19937_64 rng(seed);
        bool ok = true;
        for (int i = 0; i < random_samples; ++i) {
            ConfElement u = sample_conf_element(W, rng), v = sample_conf_element(W, rng),
                        x = sample_conf_element(W, rng);
            ok = ok && check_identity(W, Identity::rsym_novikov, u, v, x).is_zero() &&
                 check_identity(W, Identity::lcom_novikov, u, v, x).is_zero();
        }
        rep.add("identities on random module elements", ok, std::to_string(random_samples) + " samples");
    }
    return rep;
}

// Quadratic structure from the one-dimensional Novikov-Poisson algebra.
inline ScenarioReport run_quadratic_np()
{
    ScenarioReport rep;
    rep.scenario = "quadratic_np";

    StructureConstants nov = StructureConstants::zero({"e"});
    nov.set(0, 0, 0, rat(1));
    StructureConstants assoc = StructureConstants::zero({"e"});
    assoc.set(0, 0, 0, rat(1));
    rep.add("axioms of the structure pair", check_np_axioms(nov, assoc).ok());

    ConfPresentation Q = quadratic_from_np(nov, assoc);
    ConfElement ee = bracket(Q, ConfElement::generator("e"), ConfElement::generator("e"), kLambda);
    ConfElement expect;
    expect.add("e", OpPoly::constant(1) + OpPoly::var(kLambda));
    rep.add("bracket (1+lam) e", ee == expect);
    rep.add("right-symmetry on generator triples",
            check_identity_on_generators(Q, Identity::rsym_novikov).ok());
    rep.add("left-commutativity on generator triples",
            check_identity_on_generators(Q, Identity::lcom_novikov).ok());
    return rep;
}

// The derived product of the dual-number current table with D(t) = one.
inline ScenarioReport run_gelfand_demo(unsigned long long seed = 0)
{
    ScenarioReport rep;
    rep.scenario = "gelfand_demo";
    rep.param("seed", std::to_string(seed));

    ConfPresentation Cur({"one", "t"});
    Cur.set_bracket("one", "one", ConfElement::generator("one"));
    Cur.set_bracket("one", "t", ConfElement::generator("t"));
    Cur.set_bracket("t", "one", ConfElement::generator("t"));

    rep.add("input is commutative", check_identity_on_generators(Cur, Identity::commutative).ok());
    rep.add("input is associative", check_identity_on_generators(Cur, Identity::associative).ok());

    DerivationTable D;
    D["t"] = ConfElement::generator("one");
    ConfPresentation derived = gelfand(Cur, D);

    rep.add("derived right-symmetry on generator triples",
            check_identity_on_generators(derived, Identity::rsym_novikov).ok());
    rep.add("derived left-commutativity on generator triples",
            check_identity_on_generators(derived, Identity::lcom_novikov).ok());

    std::mt19937_64 rng(seed);
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
        ConfElement u = sample_conf_element(derived, rng), v = sample_conf_element(derived, rng),
                    w = sample_conf_element(derived, rng);
        ok = ok && check_identity(derived, Identity::rsym_novikov, u, v, w).is_zero() &&
             check_identity(derived, Identity::lcom_novikov, u, v, w).is_zero();
    }
    rep.add("identities on random module elements", ok, "50 samples");
    return rep;
}

// Coefficient-algebra checks for the quadratic algebra and the counterexample.
inline ScenarioReport run_coeff_locality(unsigned long long seed = 0)
{
    ScenarioReport rep;
    rep.scenario = "coeff_locality";
    rep.param("seed", std::to_string(seed));

    ConfPresentation Q({"e"});
    ConfElement v;
    v.add("e", OpPoly::constant(1) + OpPoly::var(kLambda));
    Q.set_bracket("e", "e", v);

    bool prod_ok = true;
    for (long long n = -4; n <= 4 && prod_ok; ++n)
        for (long long m = -4; m <= 4 && prod_ok; ++m) {
            CoeffElement lhs = coeff_product(Q, CoeffElement::symbol("e", n), CoeffElement::symbol("e", m));
            CoeffElement rhs =
                CoeffElement::symbol("e", n + m) + rat(n) * CoeffElement::symbol("e", n + m - 1);
            prod_ok = (lhs == rhs);
        }
    rep.add("quadratic products e(n)e(m) = e(n+m) + n e(n+m-1)", prod_ok, "indices in [-4,4]");

    auto loc = check_locality_relations(Q, "e", "e", 2, -4, 4);
    rep.add("locality relations vanish at N = 2", loc.ok(),
            std::to_string(loc.relations_checked) + " relations");

    auto nov = check_coeff_identities(Q, CoeffIdentity::novikov, 100, -2, 2, seed + 1);
    rep.add("sampled identities of the quadratic coefficients", nov.ok(), "100 samples");

    ConfPresentation W = build_W(4);
    bool w_ok = true;
    for (int k = 0; k <= 4 && w_ok; ++k) {
        std::string vk = "v" + std::to_string(k);
        for (long long n = -3; n <= 3 && w_ok; ++n)
            for (long long m = -3; m <= 3 && w_ok; ++m) {
                CoeffElement got =
                    coeff_product(W, CoeffElement::symbol(vk, n), CoeffElement::symbol("x", m));
                CoeffElement expect;
                for (int s = 0; s <= k; ++s) {
                    Rational c = Rational(falling(n, s)) * Rational(binomial(k, s));
                    long long idx = n + m - s;
                    Rational f = c * Rational(falling(idx, k - s));
                    if ((k - s) % 2 != 0)
                        f = -f;
                    expect.add({vk, idx - (k - s)}, f);
                }
                w_ok = (got == expect);
            }
    }
    rep.add("counterexample products match the expansion", w_ok, "indices in [-3,3]");
    return rep;
}

// ---------------------------------------------------------------------------
// Scenario registry for the command line and the script runner.

struct ScenarioParams {
    std::optional<long long> M;
    std::optional<int> kmax;
    std::optional<int> r;
    std::optional<int> p, q, l;
    std::optional<long long> n, m, k;
    std::optional<std::string> variant;
    std::optional<long long> window_lo, window_hi;
    std::optional<int> smax;
    std::optional<int> degree;
    unsigned long long seed = 0;
};

inline std::vector<std::string> list_scenarios()
{
    return {"series00", "series_pq", "case1",        "case2",       "case3",
            "counterexample", "quadratic_np", "gelfand_demo", "coeff_locality"};
}

inline std::vector<ScenarioReport> run_scenario(const std::string& name, const ScenarioParams& sp)
{
    auto window_override = [&](const DiffPoly& target, long long M, int fp, int fq) -> std::optional<Window> {
        if (!sp.window_lo && !sp.window_hi && !sp.smax && !sp.degree)
            return std::nullopt;
        Window base = harness_detail::default_window(target, M, fp, fq);
        long long lo = sp.window_lo.value_or(base.index_lo);
        long long hi = sp.window_hi.value_or(base.index_hi);
        return Window(lo, hi, sp.smax.value_or(base.s_max), base.max_p,
                      sp.degree.value_or(base.max_multiplier_degree));
    };

    std::vector<ScenarioReport> out;
    if (name == "series00") {
        if (sp.M)
            out.push_back(run_series00(*sp.M));
        else
            for (long long M = 1; M <= 3; ++M)
                out.push_back(run_series00(M));
    } else if (name == "series_pq") {
        if (sp.M && sp.p && sp.q) {
            out.push_back(run_series_pq(*sp.M, *sp.p, *sp.q));
        } else {
            long long M_lo = sp.M.value_or(1), M_hi = sp.M.value_or(3);
            for (long long M = M_lo; M <= M_hi; ++M)
                for (int p = 0; p <= 3; ++p)
                    for (int q = (p == 0 ? 1 : 0); p + q <= 3; ++q)
                        out.push_back(run_series_pq(M, p, q));
        }
    } else if (name == "case1") {
        long long M = sp.M.value_or(1);
        long long k = sp.k.value_or(0), n = sp.n.value_or(0), m = sp.m.value_or(0);
        DiffPoly probe = DiffPoly::variable({"a", sp.r.value_or(2), k}) *
                         emit_fpq("x", "y", 0, 0, n, m, 3 * M);
        if (sp.r)
            out.push_back(run_case1(M, k, n, m, *sp.r, window_override(probe, M, 0, 0)));
        else {
            out.push_back(run_case1(M, k, n, m, 2, window_override(probe, M, 0, 0)));
            out.push_back(run_case1(M, 0, 1, -1, 3, std::nullopt));
        }
    } else if (name == "case2") {
        long long M = sp.M.value_or(1);
        DiffPoly probe = derive(emit_fpq("x", "y", 0, 0, sp.n.value_or(0), sp.m.value_or(0), 3 * M));
        out.push_back(run_case2(M, sp.variant.value_or(""), sp.n.value_or(0), sp.m.value_or(0),
                                window_override(probe, M, 0, 0)));
    } else if (name == "case3") {
        long long M = sp.M.value_or(1);
        auto probe3 = [&](int p, int q, int l) {
            Monomial u(static_cast<size_t>(p + q + l - 1), DiffVar{"a", 0, 0});
            return DiffPoly::monomial(u) *
                   derive(emit_fpq("x", "y", p, q, 0, 0, barN(p, q, M, M)), l);
        };
        if (sp.p || sp.q || sp.l) {
            int p = sp.p.value_or(0), q = sp.q.value_or(0), l = sp.l.value_or(0);
            std::optional<Window> w;
            if (p >= 0 && q >= 0 && l >= 0 && p + q + l >= 2)
                w = window_override(probe3(p, q, l), M, p, q);
            out.push_back(run_case3(M, p, q, l, w));
        } else {
            for (auto [p, q, l] : std::vector<std::tuple<int, int, int>>{
                     {1, 1, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 0, 1}})
                out.push_back(run_case3(M, p, q, l, window_override(probe3(p, q, l), M, p, q)));
        }
    } else if (name == "counterexample") {
        out.push_back(run_counterexample(sp.kmax.value_or(8), sp.seed));
    } else if (name == "quadratic_np") {
        out.push_back(run_quadratic_np());
    } else if (name == "gelfand_demo") {
        out.push_back(run_gelfand_demo(sp.seed));
    } else if (name == "coeff_locality") {
        out.push_back(run_coeff_locality(sp.seed));
    } else if (name == "embedding") {
        if (!sp.variant && !sp.r)
            throw std::invalid_argument("embedding: select a case with --case");
        ScenarioParams forward = sp;
        std::string selected = sp.variant.value_or("case1");
        if (selected == "case1" || (!sp.variant && sp.r))
            return run_scenario("case1", forward);
        if (selected == "case2") {
            forward.variant.reset();
            return run_scenario("case2", forward);
        }
        if (selected == "case3")
            return run_scenario("case3", forward);
        if (selected == "f10" || selected == "f01" || selected == "df00")
            return run_scenario("case2", forward);
        throw std::invalid_argument("embedding: unknown case " + selected);
    } else {
        throw std::invalid_argument("unknown scenario: " + name);
    }
    for (auto& rep : out) {
        bool has_seed = false;
        for (const auto& [k, v] : rep.params)
            has_seed = has_seed || k == "seed";
        if (!has_seed)
            rep.param("seed", std::to_string(sp.seed));
    }
    return out;
}

} // namespace novconf

#endif
