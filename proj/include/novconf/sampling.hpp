#ifndef NOVCONF_SAMPLING_HPP
#define NOVCONF_SAMPLING_HPP

#include <random>
#include <string>
#include <vector>

#include "novconf/confalg.hpp"
#include "novconf/diffpoly.hpp"

namespace novconf {

// Deterministic samplers shared by the scenario runners and the test suites.

// Weight-homogeneous polynomial of weight -1: each monomial of degree d
// carries derivative orders summing to d - 1.
inline DiffPoly sample_weight_minus_one(std::mt19937_64& rng,
                                        const std::vector<std::string>& gens, int max_degree,
                                        long long idx_lo, long long idx_hi, int max_terms = 3)
{
    std::uniform_int_distribution<int> deg(1, max_degree);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<long long> idx(idx_lo, idx_hi);
    std::uniform_int_distribution<long long> coef(-3, 3);
    std::uniform_int_distribution<int> nterms(1, max_terms);

    DiffPoly f;
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        int d = deg(rng);
        Monomial m;
        int budget = d - 1;
        for (int i = 0; i < d; ++i) {
            int p;
            if (i + 1 == d)
                p = budget;
            else {
                std::uniform_int_distribution<int> pd(0, budget);
                p = pd(rng);
            }
            budget -= p;
            m.push_back({gens[pick(rng)], p, idx(rng)});
        }
        std::sort(m.begin(), m.end());
        long long c = coef(rng);
        f.add_term(std::move(m), rat(c == 0 ? 1 : c));
    }
    return f;
}

// Module element with small polynomial coefficients in del.
inline ConfElement sample_conf_element(const ConfPresentation& A, std::mt19937_64& rng,
                                       int max_del_degree = 2)
{
    std::uniform_int_distribution<int> deg(0, max_del_degree);
    std::uniform_int_distribution<long long> coef(-3, 3);
    ConfElement e;
    for (const auto& g : A.generators()) {
        OpPoly p;
        int d = deg(rng);
        for (int j = 0; j <= d; ++j) {
            long long c = coef(rng);
            if (c != 0)
                p += OpPoly::constant(rat(c)) * OpPoly::var(kPartial).pow(j);
        }
        if (!p.is_zero())
            e.add(g, p);
    }
    return e;
}

} // namespace novconf

#endif
