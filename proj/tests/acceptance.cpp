// Acceptance suite: every criterion runs with its tolerance pinned in code
// and prints exactly one pass/fail line. Exit status 0 iff everything passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "novconf/exec.hpp"
#include "novconf/harness.hpp"
#include "novconf/sampling.hpp"

#include "script_corpus.hpp"

using namespace novconf;

namespace {

struct Criterion {
    int number;
    std::string title;
    double limit_seconds;
    std::function<bool(std::string&)> run;
};

bool all_reports_pass(const std::vector<ScenarioReport>& reports, std::string& why)
{
    for (const auto& r : reports)
        if (!r.passed()) {
            for (const auto& c : r.checks)
                if (!c.passed)
                    why = r.scenario + ": " + c.name;
            return false;
        }
    return true;
}

// 1. Counterexample suite at kmax = 8: zero residuals on all generator
// triples and the two closed-form intermediates, symbol for symbol.
bool criterion1(std::string& why)
{
    ScenarioReport rep = run_counterexample(8);
    if (!rep.passed()) {
        for (const auto& c : rep.checks)
            if (!c.passed)
                why = c.name;
        return false;
    }
    return true;
}

// 2. Obstruction computation for 0 <= k <= 8.
bool criterion2(std::string& why)
{
    ConfPresentation W = build_W(8);
    OpPoly del = OpPoly::var(kPartial), lam = OpPoly::var(kLambda);
    for (int k = 0; k <= 8; ++k) {
        std::string vk = "v" + std::to_string(k);
        ConfElement t = n_product(W, ConfElement::generator(vk), ConfElement::generator("x"), 0);
        ConfElement b = bracket(W, t, ConfElement::generator("x"), kLambda);
        ConfElement expect;
        expect.add(vk, (-lam).pow(k) * (del + lam).pow(k));
        if (b != expect) {
            why = "closed form fails at k = " + std::to_string(k);
            return false;
        }
        if (locality(W, t, ConfElement::generator("x")) != 2 * k + 1) {
            why = "locality differs from 2k+1 at k = " + std::to_string(k);
            return false;
        }
        ConfElement ck = b.coeff_in(kLambda, k);
        ConfElement expect_ck;
        expect_ck.add(vk, (k % 2 == 0 ? OpPoly::constant(1) : OpPoly::constant(-1)) * del.pow(k));
        if (ck.is_zero() || ck != expect_ck) {
            why = "lam^k coefficient differs at k = " + std::to_string(k);
            return false;
        }
    }
    return true;
}

// 3. Free Novikov properties on 200 random weight -1 triples plus the
// explicit associator rewrite.
bool criterion3(std::string& why)
{
    std::mt19937_64 rng(424242);
    const std::vector<std::string> gens{"x", "y", "z"};
    for (int i = 0; i < 200; ++i) {
        DiffPoly f = sample_weight_minus_one(rng, gens, 4, -2, 2);
        DiffPoly g = sample_weight_minus_one(rng, gens, 4, -2, 2);
        DiffPoly h = sample_weight_minus_one(rng, gens, 4, -2, 2);
        auto rep = check_novikov_axioms(f, g, h);
        if (!rep.ok()) {
            why = "identity residual nonzero at sample " + std::to_string(i);
            return false;
        }
    }
    DiffPoly x = DiffPoly::variable({"x", 0, 0});
    DiffPoly y = DiffPoly::variable({"y", 0, 0});
    DiffPoly z = DiffPoly::variable({"z", 0, 0});
    DiffPoly assoc =
        novikov_product(novikov_product(x, y), z) - novikov_product(x, novikov_product(y, z));
    DiffPoly expect = DiffPoly::variable({"x", 2, 0}) * y * z;
    if (assoc != expect) {
        why = "associator rewrite differs";
        return false;
    }
    return true;
}

// 4. Exponent splitting and the series identities for M <= 3, p+q <= 3.
bool criterion4(std::string& why)
{
    const FVar w{"w"}, z{"z"}, zeta{"zeta"};
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) {
            auto [P, Q] = binom_split(w, z, zeta, a, b);
            Laurent lhs = binom_power(w, z, a + b);
            Laurent rhs = laurent_add(laurent_mul(laurent_pow(binom_power(w, zeta, 1), a), P),
                                      laurent_mul(laurent_pow(binom_power(zeta, z, 1), b), Q));
            if (lhs != rhs) {
                why = "split identity fails at (" + std::to_string(a) + "," + std::to_string(b) + ")";
                return false;
            }
        }
    std::vector<ScenarioReport> reports;
    for (long long M = 1; M <= 3; ++M) {
        reports.push_back(run_series00(M));
        for (int p = 0; p <= 3; ++p)
            for (int q = (p == 0 ? 1 : 0); p + q <= 3; ++q)
                reports.push_back(run_series_pq(M, p, q));
    }
    return all_reports_pass(reports, why);
}

// 5. Membership certificates for the three cases at M = 1, default windows.
bool criterion5(std::string& why)
{
    std::vector<ScenarioReport> reports;
    reports.push_back(run_case1(1, 0, 0, 0, 2));
    reports.push_back(run_case1(1, 0, 1, -1, 3));
    reports.push_back(run_case2(1, "", 0, 0));
    for (auto [p, q, l] : std::vector<std::tuple<int, int, int>>{
             {1, 1, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 0, 1}})
        reports.push_back(run_case3(1, p, q, l));
    return all_reports_pass(reports, why);
}

// 6. Exponent-raising recurrence and the derivative split of the families.
bool criterion6(std::string& why)
{
    for (long long E = 1; E <= 6; ++E)
        for (long long n = -3; n <= 3; ++n)
            for (long long m = -3; m <= 3; ++m)
                if (!pascal_reduce("a", "b", n, m, E)) {
                    why = "recurrence fails at E = " + std::to_string(E);
                    return false;
                }
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; p + q <= 3; ++q)
            for (long long E = 0; E <= 6; ++E)
                for (long long n = -2; n <= 2; ++n)
                    for (long long m = -2; m <= 2; ++m)
                        if (!leibniz_fpq("x", "y", p, q, n, m, E)) {
                            why = "derivative split fails at (" + std::to_string(p) + "," +
                                  std::to_string(q) + "), E = " + std::to_string(E);
                            return false;
                        }
    return true;
}

// 7. Coefficient algebra of the quadratic structure and of the
// counterexample module.
bool criterion7(std::string& why)
{
    ScenarioReport rep = run_coeff_locality(0);
    if (!rep.passed()) {
        for (const auto& c : rep.checks)
            if (!c.passed)
                why = c.name;
        return false;
    }
    return true;
}

// 8. Derived product of the current-type table with D(t) = one.
bool criterion8(std::string& why)
{
    ScenarioReport rep = run_gelfand_demo(0);
    if (!rep.passed()) {
        for (const auto& c : rep.checks)
            if (!c.passed)
                why = c.name;
        return false;
    }
    return true;
}

// 9. The family emitters agree with series coefficient extraction.
bool criterion9(std::string& why)
{
    const FVar w{"w"}, z{"z"};
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q)
            for (long long E = 0; E <= 4; ++E) {
                Distribution d =
                    mul_laurent(Distribution::series("x", p, w) * Distribution::series("y", q, z),
                                binom_power(w, z, static_cast<int>(E)));
                for (long long n = -2; n <= 2; ++n)
                    for (long long m = -2; m <= 2; ++m)
                        if (coefficient(d, {{w, n - E}, {z, m}}) !=
                            emit_fpq("x", "y", p, q, n, m, E)) {
                            why = "mismatch at p=" + std::to_string(p) + " q=" + std::to_string(q) +
                                  " E=" + std::to_string(E);
                            return false;
                        }
            }
    return true;
}

// 10. DSL round-trip corpus and planted-deletion error positions.
bool criterion10(std::string& why)
{
    std::mt19937_64 rng(20250810);
    for (int i = 0; i < 50; ++i) {
        dsl::Script s = corpus::random_script(rng, i);
        std::string text = dsl::print(s);
        dsl::Script back = dsl::parse(text);
        if (!(back == s)) {
            why = "round-trip differs on script " + std::to_string(i);
            return false;
        }
    }
    std::mt19937_64 rng2(99);
    int errors_seen = 0;
    for (int i = 0; i < 10; ++i) {
        dsl::Script s = corpus::random_script(rng2, 100 + i);
        auto toks = dsl::tokenize(dsl::print(s));
        for (size_t k = 0; k + 1 < toks.size(); ++k) {
            corpus::Mutation mu = corpus::delete_token(toks, k);
            if (mu.skipped)
                continue;
            try {
                dsl::parse(mu.text);
            } catch (const dsl::ParseError& e) {
                ++errors_seen;
                if (e.line != 1 || e.column > mu.site) {
                    why = "error reported after the deletion of '" + toks[k].text + "'";
                    return false;
                }
            }
        }
    }
    if (errors_seen < 100) {
        why = "too few planted errors (" + std::to_string(errors_seen) + ")";
        return false;
    }
    return true;
}

} // namespace

int main()
{
    std::vector<Criterion> criteria = {
        {1, "counterexample suite at kmax = 8", 5.0, criterion1},
        {2, "obstruction localities 2k+1 for k <= 8", 1.0, criterion2},
        {3, "free Novikov identities on 200 random triples", 10.0, criterion3},
        {4, "exponent split and series identities (M <= 3, p+q <= 3)", 30.0, criterion4},
        {5, "membership certificates for cases 1-3 at M = 1", 300.0, criterion5},
        {6, "exponent recurrence and derivative split of the families", 10.0, criterion6},
        {7, "coefficient algebra products, locality and identities", 30.0, criterion7},
        {8, "derived product of the current-type table", 5.0, criterion8},
        {9, "family emitters equal series coefficients", 10.0, criterion9},
        {10, "DSL round-trip corpus and error positions", 5.0, criterion10},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string why;
        bool ok = false;
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = secs < c.limit_seconds;
        bool pass = ok && in_time;
        all_ok = all_ok && pass;
        std::printf("[%s] criterion %2d: %s (%.2fs < %.0fs)%s%s\n", pass ? "PASS" : "FAIL",
                    c.number, c.title.c_str(), secs, c.limit_seconds,
                    why.empty() ? "" : " -- ", why.c_str());
    }
    std::printf("%s\n", all_ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
    return all_ok ? 0 : 1;
}
