#include <catch2/catch_amalgamated.hpp>

#include "novconf/coeffalg.hpp"

using namespace novconf;

namespace {

ConfPresentation quadratic_one_dim()
{
    // bracket(e, e) = (1 + lam) e
    ConfPresentation A({"e"});
    ConfElement v;
    v.add("e", OpPoly::constant(1) + OpPoly::var(kLambda));
    A.set_bracket("e", "e", v);
    return A;
}

ConfElement gen(const std::string& g) { return ConfElement::generator(g); }

} // namespace

TEST_CASE("injection rewrites del")
{
    ConfPresentation A = quadratic_one_dim();

    SECTION("plain generator")
    {
        CHECK(inject(A, gen("e"), 4) == CoeffElement::symbol("e", 4));
    }
    SECTION("(del g)(n) = -n g(n-1)")
    {
        ConfElement dg = apply_partial(gen("e"));
        for (long long n = -4; n <= 4; ++n)
            CHECK(inject(A, dg, n) == rat(-n) * CoeffElement::symbol("e", n - 1));
    }
    SECTION("(del^2 g)(3) = 6 g(1)")
    {
        ConfElement d2g = apply_partial(apply_partial(gen("e")));
        CHECK(inject(A, d2g, 3) == rat(6) * CoeffElement::symbol("e", 1));
    }
    SECTION("lam in a coefficient is a usage error")
    {
        ConfElement bad;
        bad.add("e", OpPoly::var(kLambda));
        CHECK_THROWS_AS(inject(A, bad, 0), std::invalid_argument);
    }
    SECTION("injection respects the defining relation of the quotient")
    {
        // inject(del u, n) = -n inject(u, n-1) for module elements u
        ConfElement u;
        u.add("e", OpPoly::constant(rat(3)) + OpPoly::var(kPartial).pow(2));
        for (long long n = -5; n <= 5; ++n)
            CHECK(inject(A, apply_partial(u), n) == rat(-n) * inject(A, u, n - 1));
    }
}

TEST_CASE("coefficient products in the quadratic algebra")
{
    ConfPresentation A = quadratic_one_dim();
    for (long long n = -4; n <= 4; ++n)
        for (long long m = -4; m <= 4; ++m) {
            CoeffElement lhs = coeff_product(A, CoeffElement::symbol("e", n), CoeffElement::symbol("e", m));
            CoeffElement rhs = CoeffElement::symbol("e", n + m) + rat(n) * CoeffElement::symbol("e", n + m - 1);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("zero bracket kills all products")
{
    ConfPresentation Z({"a", "b"});
    CHECK(coeff_product(Z, CoeffElement::symbol("a", 2), CoeffElement::symbol("b", -1)).is_zero());
}

TEST_CASE("locality relations in the coefficient algebra")
{
    ConfPresentation A = quadratic_one_dim();

    SECTION("N = 2 annihilates the window")
    {
        auto rep = check_locality_relations(A, "e", "e", 2, -3, 3);
        CHECK(rep.ok());
        CHECK(rep.relations_checked == 49);
    }
    SECTION("N below the locality leaves witnesses")
    {
        auto rep = check_locality_relations(A, "e", "e", 1, -3, 3);
        CHECK_FALSE(rep.ok());
        CHECK(!rep.failures.empty());
    }
    SECTION("zero bracket is vacuously local at N = 0")
    {
        ConfPresentation Z({"a"});
        CHECK(check_locality_relations(Z, "a", "a", 0, -2, 2).ok());
    }
}

TEST_CASE("product respects the rewriting on either side")
{
    ConfPresentation A = quadratic_one_dim();
    // x = (del e)(n) rewritten at injection vs. assembled directly
    for (long long n = -2; n <= 2; ++n)
        for (long long m = -2; m <= 2; ++m) {
            CoeffElement left = coeff_product(A, inject(A, apply_partial(gen("e")), n),
                                              CoeffElement::symbol("e", m));
            CoeffElement expect = rat(-n) * coeff_product(A, CoeffElement::symbol("e", n - 1),
                                                          CoeffElement::symbol("e", m));
            CHECK(left == expect);
        }
}

TEST_CASE("sampled identities of coefficient algebras")
{
    ConfPresentation A = quadratic_one_dim();
    auto novikov = check_coeff_identities(A, CoeffIdentity::novikov, 60, -2, 2, 12345);
    CHECK(novikov.ok());
    CHECK(novikov.samples_checked == 60);

    ConfPresentation W = build_W(3);
    CHECK(check_coeff_identities(W, CoeffIdentity::novikov, 40, -2, 2, 777).ok());

    ConfPresentation Z({"a"});
    CHECK(check_coeff_identities(Z, CoeffIdentity::novikov, 10, -2, 2, 1).ok());
    CHECK(check_coeff_identities(Z, CoeffIdentity::commutative, 10, -2, 2, 1).ok());
    CHECK(check_coeff_identities(Z, CoeffIdentity::associative, 10, -2, 2, 1).ok());
    CHECK(check_coeff_identities(Z, CoeffIdentity::lie, 10, -2, 2, 1).ok());

    // a commutative presentation has commuting coefficients
    ConfPresentation Cur({"one", "t"});
    Cur.set_bracket("one", "one", gen("one"));
    Cur.set_bracket("one", "t", gen("t"));
    Cur.set_bracket("t", "one", gen("t"));
    REQUIRE(check_identity_on_generators(Cur, Identity::commutative).ok());
    CHECK(check_coeff_identities(Cur, CoeffIdentity::commutative, 60, -2, 2, 5).ok());
    CHECK(check_coeff_identities(Cur, CoeffIdentity::associative, 60, -2, 2, 5).ok());
}

TEST_CASE("coefficient products in W against the direct expansion")
{
    ConfPresentation W = build_W(4);
    // v_k(n) x(m) = sum_s C(n,s) s! C(k,s) (del^(k-s) v_k)(n+m-s) expanded by hand
    for (int k = 0; k <= 4; ++k) {
        std::string vk = "v" + std::to_string(k);
        for (long long n = -3; n <= 3; ++n)
            for (long long m = -3; m <= 3; ++m) {
                CoeffElement got = coeff_product(W, CoeffElement::symbol(vk, n),
                                                 CoeffElement::symbol("x", m));
                CoeffElement expect;
                for (int s = 0; s <= k; ++s) {
                    // [lam^s](del+lam)^k = C(k,s) del^(k-s); falling(n,s) = C(n,s) s!
                    Rational c = Rational(falling(n, s)) * Rational(binomial(k, s));
                    long long idx = n + m - s;
                    // (del^(k-s) v_k)(idx) = (-1)^(k-s) falling(idx, k-s) v_k(idx-(k-s))
                    Rational f = c * Rational(falling(idx, k - s));
                    if ((k - s) % 2 != 0)
                        f = -f;
                    expect.add({vk, idx - (k - s)}, f);
                }
                CHECK(got == expect);
                // the mirror order has zero bracket
                CHECK(coeff_product(W, CoeffElement::symbol("x", m), CoeffElement::symbol(vk, n))
                          .is_zero());
            }
    }
}

TEST_CASE("coefficient rendering")
{
    CoeffElement e = CoeffElement::symbol("v2", -1) - rat(3, 2) * CoeffElement::symbol("x", 0);
    CHECK(to_string(e) == "v2(-1) - 3/2*x(0)");
    CHECK(to_string(CoeffElement()) == "0");
}
