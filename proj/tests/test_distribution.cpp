#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "novconf/distribution.hpp"

using namespace novconf;

namespace {

const FVar z{"z"}, w{"w"}, zeta{"zeta"};

DiffPoly sym(const std::string& g, int p, long long n)
{
    return DiffPoly::variable({g, p, n});
}

// Brute-force truncated model of a distribution: expand every series over
// indices in [-W, W] and record, per full Laurent exponent vector, the exact
// polynomial coefficient. Independent of the coefficient() implementation.
std::map<LaurentMono, DiffPoly> truncated_model(const Distribution& d, long long W)
{
    std::map<LaurentMono, DiffPoly> model;
    for (const auto& [t, c] : d.terms()) {
        std::vector<std::pair<FVar, SeriesFactor>> sv(t.series.begin(), t.series.end());
        std::vector<long long> s(sv.size(), -W);
        while (true) {
            LaurentMono expv = t.exps;
            Monomial m = t.poly;
            for (size_t i = 0; i < sv.size(); ++i) {
                expv[sv[i].first] += static_cast<int>(-s[i] - 1);
                m.push_back(DiffVar{sv[i].second.gen, sv[i].second.p, s[i]});
            }
            for (auto it = expv.begin(); it != expv.end();)
                it = (it->second == 0) ? expv.erase(it) : std::next(it);
            std::sort(m.begin(), m.end());
            model[expv].add_term(std::move(m), c);

            size_t k = 0;
            for (; k < s.size(); ++k) {
                if (s[k] < W) {
                    ++s[k];
                    break;
                }
                s[k] = -W;
            }
            if (k == s.size()) // includes series-free terms: single pass
                break;
        }
    }
    for (auto it = model.begin(); it != model.end();)
        it = it->second.is_zero() ? model.erase(it) : std::next(it);
    return model;
}

DiffPoly model_coefficient(const std::map<LaurentMono, DiffPoly>& model,
                           const std::map<FVar, long long>& idx)
{
    LaurentMono key;
    for (const auto& [v, k] : idx)
        if (-k - 1 != 0)
            key[v] = static_cast<int>(-k - 1);
    auto it = model.find(key);
    return it == model.end() ? DiffPoly() : it->second;
}

Distribution random_distribution(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> nterms(1, 3), p(0, 2), e(-2, 2), pick(0, 2);
    std::uniform_int_distribution<long long> coef(-3, 3);
    static const char* gens[] = {"a", "x", "y"};
    Distribution d;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        TermShape t;
        if (pick(rng) != 0)
            t.series[z] = SeriesFactor{gens[pick(rng)], p(rng)};
        if (pick(rng) != 0)
            t.series[w] = SeriesFactor{gens[pick(rng)], p(rng)};
        if (int ez = e(rng); ez != 0)
            t.exps[z] = ez;
        if (int ew = e(rng); ew != 0)
            t.exps[w] = ew;
        if (pick(rng) == 0)
            t.poly = Monomial{DiffVar{"b", p(rng), e(rng)}};
        long long c = coef(rng);
        d.add_term(std::move(t), rat(c == 0 ? 1 : c));
    }
    return d;
}

} // namespace

TEST_CASE("series construction and rendering")
{
    Distribution az = Distribution::series("a", 0, z);
    CHECK(az.terms().size() == 1);
    CHECK(to_string(az) == "a(z)");
    CHECK(to_string(Distribution::series("a", 2, zeta)) == "a''(zeta)");

    // series then coefficient at m gives a^(0)(m)
    for (long long m = -3; m <= 3; ++m)
        CHECK(coefficient(az, {{z, m}}) == sym("a", 0, m));
}

TEST_CASE("laurent multiplication")
{
    Distribution az = Distribution::series("a", 0, z);
    CHECK(mul_laurent(az, laurent_one()) == az);

    Distribution az2 = mul_laurent(az, laurent_var(z, 2));
    REQUIRE(az2.terms().size() == 1);
    CHECK(az2.terms().begin()->first.exps.at(z) == 2);

    Distribution xy = Distribution::series("x", 0, w) * Distribution::series("y", 0, z);
    Distribution d = mul_laurent(xy, binom_power(w, z, 2));
    CHECK(d.terms().size() == 3);
    // binomial expansion: coefficients 1, -2, 1 at exponent pairs (2,0),(1,1),(0,2)
    for (long long n = -2; n <= 2; ++n)
        for (long long m = -2; m <= 2; ++m) {
            DiffPoly expect;
            for (long long s = 0; s <= 2; ++s) {
                Rational c((s % 2 == 0) ? binomial(2, s) : -binomial(2, s));
                expect += c * (sym("x", 0, n + 2 - s) * sym("y", 0, m + s));
            }
            CHECK(coefficient(d, {{w, n}, {z, m}}) == expect);
        }
}

TEST_CASE("two series in one variable is a usage error")
{
    Distribution aw = Distribution::series("a", 0, w);
    Distribution xw = Distribution::series("x", 1, w);
    CHECK_THROWS_AS(aw * xw, std::invalid_argument);
}

TEST_CASE("binom_power")
{
    CHECK(binom_power(w, z, 0) == laurent_one());
    Laurent wz = binom_power(w, z, 1);
    CHECK(wz.size() == 2);
    Laurent cube = binom_power(w, z, 3);
    CHECK(cube == laurent_mul(wz, laurent_mul(wz, wz)));
}

TEST_CASE("binom_split")
{
    SECTION("degenerate split")
    {
        auto [P, Q] = binom_split(w, z, zeta, 0, 0);
        CHECK(P == laurent_one());
        CHECK(Q.empty());
    }
    SECTION("a = b = 1")
    {
        auto [P, Q] = binom_split(w, z, zeta, 1, 1);
        Laurent expP = laurent_add(binom_power(w, zeta, 1),
                                   laurent_mul(Laurent{{LaurentMono{}, rat(2)}}, binom_power(zeta, z, 1)));
        CHECK(P == expP);
        CHECK(Q == binom_power(zeta, z, 1));
    }
    SECTION("identity for all a, b <= 5")
    {
        for (int a = 0; a <= 5; ++a)
            for (int b = 0; b <= 5; ++b) {
                auto [P, Q] = binom_split(w, z, zeta, a, b);
                Laurent lhs = binom_power(w, z, a + b);
                Laurent rhs = laurent_add(laurent_mul(laurent_pow(binom_power(w, zeta, 1), a), P),
                                          laurent_mul(laurent_pow(binom_power(zeta, z, 1), b), Q));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("derivation of distributions")
{
    CHECK(derive(Distribution::series("a", 0, z)) == Distribution::series("a", 1, z));

    Distribution d = Distribution::series("a", 1, zeta) * Distribution::series("x", 0, w);
    Distribution expect = Distribution::series("a", 2, zeta) * Distribution::series("x", 0, w) +
                          Distribution::series("a", 1, zeta) * Distribution::series("x", 1, w);
    CHECK(derive(d) == expect);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        Distribution D = random_distribution(rng);
        Laurent L = binom_power(w, z, 2);
        CHECK(derive(mul_laurent(D, L)) == mul_laurent(derive(D), L));
        // Leibniz across a series-times-series product in distinct variables
        Distribution bz = Distribution::series("b", 0, zeta);
        CHECK(derive(D * bz) == derive(D) * bz + D * derive(bz));
    }
}

TEST_CASE("coefficient extraction against the truncated model")
{
    SECTION("shifted series")
    {
        for (int e = -2; e <= 2; ++e) {
            Distribution d = mul_laurent(Distribution::series("a", 0, z), laurent_var(z, e));
            auto model = truncated_model(d, 8);
            for (long long m = -3; m <= 3; ++m) {
                CHECK(coefficient(d, {{z, m}}) == model_coefficient(model, {{z, m}}));
                CHECK(coefficient(d, {{z, m}}) == sym("a", 0, m + e));
            }
        }
    }
    SECTION("random distributions")
    {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 25; ++i) {
            Distribution d = random_distribution(rng);
            auto model = truncated_model(d, 9);
            for (long long n = -2; n <= 2; ++n)
                for (long long m = -2; m <= 2; ++m) {
                    std::map<FVar, long long> idx{{z, m}, {w, n}};
                    CHECK(coefficient(d, idx) == model_coefficient(model, idx));
                }
        }
    }
    SECTION("coefficient and variable shift commute")
    {
        std::mt19937_64 rng(77);
        for (int i = 0; i < 25; ++i) {
            Distribution d = random_distribution(rng);
            Distribution dz = mul_laurent(d, laurent_var(z, 1));
            for (long long n = -2; n <= 2; ++n)
                for (long long m = -2; m <= 2; ++m)
                    CHECK(coefficient(dz, {{z, m}, {w, n}}) == coefficient(d, {{z, m + 1}, {w, n}}));
        }
    }
    SECTION("missing index is a usage error")
    {
        Distribution d = Distribution::series("a", 0, z);
        CHECK_THROWS_AS(coefficient(d, {}), std::invalid_argument);
    }
}

TEST_CASE("residue")
{
    Distribution az = Distribution::series("a", 0, z);
    CHECK(residue(az, z) == Distribution::from_poly(sym("a", 0, 0)));

    for (int e = -2; e <= 2; ++e)
        CHECK(residue(mul_laurent(az, laurent_var(z, e)), z) == Distribution::from_poly(sym("a", 0, e)));
}

TEST_CASE("residue drops series-free terms unless exponent is -1")
{
    Distribution aw = Distribution::series("a", 0, w);
    CHECK(residue(aw, z).is_zero());
    Distribution shifted = mul_laurent(aw, laurent_var(z, -1));
    CHECK(residue(shifted, z) == aw);
}

TEST_CASE("raising the annihilation exponent follows Pascal's rule")
{
    auto f_E = [](int E, long long n, long long m) {
        DiffPoly r;
        for (long long s = 0; s <= E; ++s) {
            Rational c((s % 2 == 0) ? binomial(E, s) : -binomial(E, s));
            r += c * (sym("x", 1, n - s) * sym("y", 0, m + s));
        }
        return r;
    };
    Distribution xy = Distribution::series("x", 1, w) * Distribution::series("y", 0, z);
    for (int E = 0; E <= 4; ++E)
        for (long long n = -2; n <= 2; ++n)
            for (long long m = -2; m <= 2; ++m) {
                Distribution d = mul_laurent(xy, binom_power(w, z, E + 1));
                DiffPoly got = coefficient(d, {{w, n - (E + 1)}, {z, m}});
                CHECK(got == f_E(E, n, m) - f_E(E, n - 1, m + 1));
            }
}
