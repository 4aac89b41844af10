#ifndef NOVCONF_EXEC_HPP
#define NOVCONF_EXEC_HPP

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "novconf/coeffalg.hpp"
#include "novconf/dsl.hpp"
#include "novconf/harness.hpp"

namespace novconf {

// A usage error in an otherwise well-formed script: undeclared names,
// duplicate declarations, invalid table entries.
struct ScriptError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace exec_detail {

struct Environment {
    std::map<std::string, ConfPresentation> algebras;
    std::map<std::string, std::pair<std::string, DerivationTable>> derivations;
    std::map<std::string, std::pair<StructureConstants, StructureConstants>> nps;
    std::map<std::string, LocalityFn> localities;

    void require_fresh(const std::string& name) const
    {
        if (algebras.count(name) || derivations.count(name) || nps.count(name) ||
            localities.count(name))
            throw ScriptError("duplicate declaration of '" + name + "'");
    }

    const ConfPresentation& algebra(const std::string& name) const
    {
        auto it = algebras.find(name);
        if (it == algebras.end())
            throw ScriptError("undeclared algebra '" + name + "'");
        return it->second;
    }
};

inline ScenarioParams params_from_args(const std::vector<std::pair<std::string, dsl::ArgValue>>& args)
{
    ScenarioParams sp;
    for (const auto& [key, value] : args) {
        auto as_int = [&](const std::string& k) -> long long {
            if (auto* v = std::get_if<long long>(&value))
                return *v;
            throw ScriptError("argument '" + k + "' expects an integer");
        };
        if (key == "M")
            sp.M = as_int(key);
        else if (key == "kmax")
            sp.kmax = static_cast<int>(as_int(key));
        else if (key == "r")
            sp.r = static_cast<int>(as_int(key));
        else if (key == "p")
            sp.p = static_cast<int>(as_int(key));
        else if (key == "q")
            sp.q = static_cast<int>(as_int(key));
        else if (key == "l")
            sp.l = static_cast<int>(as_int(key));
        else if (key == "n")
            sp.n = as_int(key);
        else if (key == "m")
            sp.m = as_int(key);
        else if (key == "k")
            sp.k = as_int(key);
        else if (key == "smax")
            sp.smax = static_cast<int>(as_int(key));
        else if (key == "degree")
            sp.degree = static_cast<int>(as_int(key));
        else if (key == "seed")
            sp.seed = static_cast<unsigned long long>(as_int(key));
        else if (key == "case" || key == "variant") {
            if (auto* s = std::get_if<std::string>(&value))
                sp.variant = *s;
            else
                throw ScriptError("argument '" + key + "' expects a name");
        } else if (key == "window") {
            if (auto* r = std::get_if<std::pair<long long, long long>>(&value)) {
                sp.window_lo = r->first;
                sp.window_hi = r->second;
            } else
                throw ScriptError("argument 'window' expects lo:hi");
        } else {
            throw ScriptError("unknown argument '" + key + "'");
        }
    }
    return sp;
}

inline StructureConstants np_table(const dsl::NPAlgebraDecl& decl, const std::string& op)
{
    StructureConstants s = StructureConstants::zero(decl.gens);
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < decl.gens.size(); ++i)
        index[decl.gens[i]] = i;
    for (const auto& e : decl.entries) {
        if (e.op != op)
            continue;
        auto gi = index.find(e.g), hi = index.find(e.h);
        if (gi == index.end() || hi == index.end())
            throw ScriptError("npalgebra '" + decl.name + "': unknown generator in " + e.op + "(" +
                              e.g + ", " + e.h + ")");
        for (const auto& [t, c] : e.value) {
            auto ti = index.find(t);
            if (ti == index.end())
                throw ScriptError("npalgebra '" + decl.name + "': unknown generator '" + t + "'");
            s.c[gi->second][hi->second][ti->second] = c;
        }
    }
    return s;
}

} // namespace exec_detail

// Execute every item in order. Declarations bind names; commands append
// check lines or whole scenario reports. Usage errors throw ScriptError.
inline std::vector<ScenarioReport> execute_script(const dsl::Script& script,
                                                  unsigned long long default_seed = 0)
{
    using namespace exec_detail;
    Environment env;
    std::vector<ScenarioReport> out;
    ScenarioReport current;
    current.scenario = "script";
    current.param("seed", std::to_string(default_seed));
    auto flush = [&]() {
        if (!current.checks.empty()) {
            out.push_back(current);
            current = ScenarioReport{};
            current.scenario = "script";
            current.param("seed", std::to_string(default_seed));
        }
    };

    for (const auto& item : script.items) {
        if (auto* a = std::get_if<dsl::AlgebraDecl>(&item)) {
            env.require_fresh(a->name);
            ConfPresentation pres(a->gens);
            for (const auto& b : a->brackets) {
                try {
                    pres.set_bracket(b.g, b.h, b.value);
                } catch (const std::invalid_argument& e) {
                    throw ScriptError("algebra '" + a->name + "': " + e.what());
                }
            }
            env.algebras.emplace(a->name, std::move(pres));
        } else if (auto* np = std::get_if<dsl::NPAlgebraDecl>(&item)) {
            env.require_fresh(np->name);
            env.nps.emplace(np->name, std::make_pair(np_table(*np, "circ"), np_table(*np, "star")));
        } else if (auto* d = std::get_if<dsl::DerivationDecl>(&item)) {
            env.require_fresh(d->name);
            const ConfPresentation& A = env.algebra(d->algebra);
            DerivationTable table;
            for (const auto& [g, v] : d->entries)
                table[g] = v;
            try {
                validate_derivation_table(A, table);
            } catch (const std::invalid_argument& e) {
                throw ScriptError("derivation '" + d->name + "': " + e.what());
            }
            env.derivations.emplace(d->name, std::make_pair(d->algebra, std::move(table)));
        } else if (auto* l = std::get_if<dsl::LocalityDecl>(&item)) {
            env.require_fresh(l->name);
            try {
                LocalityFn fn(l->default_bound);
                for (const auto& [ga, gb, v] : l->overrides)
                    fn.set_override(ga, gb, v);
                env.localities.emplace(l->name, std::move(fn));
            } catch (const std::invalid_argument& e) {
                throw ScriptError("locality '" + l->name + "': " + e.what());
            }
        } else {
            const auto& c = std::get<dsl::CommandDecl>(item);
            switch (c.kind) {
            case dsl::CommandDecl::Kind::Check: {
                const std::string& target = c.names.at(0);
                if (c.ident == "derivation") {
                    auto it = env.derivations.find(target);
                    if (it == env.derivations.end())
                        throw ScriptError("undeclared derivation '" + target + "'");
                    auto rep = check_derivation(env.algebra(it->second.first), it->second.second);
                    std::ostringstream detail;
                    if (!rep.ok()) {
                        detail << rep.failures.size() << " failing pairs, first at ("
                               << rep.failures[0].a << ", " << rep.failures[0].b
                               << "): " << to_string(rep.failures[0].residual);
                    } else {
                        detail << rep.pairs_checked << " pairs";
                    }
                    current.add("check derivation " + target, rep.ok(), detail.str());
                } else if (c.ident == "np") {
                    auto it = env.nps.find(target);
                    if (it == env.nps.end())
                        throw ScriptError("undeclared npalgebra '" + target + "'");
                    auto rep = check_np_axioms(it->second.first, it->second.second);
                    std::string detail;
                    if (!rep.ok())
                        detail = "axiom " + rep.failures[0].axiom + " fails";
                    current.add("check np " + target, rep.ok(), detail);
                } else {
                    Identity id;
                    try {
                        id = identity_from_string(c.ident);
                    } catch (const std::invalid_argument& e) {
                        throw ScriptError(e.what());
                    }
                    auto rep = check_identity_on_generators(env.algebra(target), id);
                    std::ostringstream detail;
                    if (!rep.ok())
                        detail << rep.failures.size() << " failing triples, first at ("
                               << rep.failures[0].a << ", " << rep.failures[0].b << ", "
                               << rep.failures[0].c << ") with residual "
                               << to_string(rep.failures[0].residual);
                    else
                        detail << rep.triples_checked << " triples";
                    current.add("check " + c.ident + " " + target, rep.ok(), detail.str());
                }
                break;
            }
            case dsl::CommandDecl::Kind::Locality: {
                const ConfPresentation& A = env.algebra(c.names.at(0));
                int loc;
                try {
                    loc = locality(A, ConfElement::generator(c.names.at(1)),
                                   ConfElement::generator(c.names.at(2)));
                } catch (const std::invalid_argument& e) {
                    throw ScriptError(e.what());
                }
                current.add("locality " + c.names.at(1) + " " + c.names.at(2), true,
                            std::to_string(loc));
                break;
            }
            case dsl::CommandDecl::Kind::Product: {
                const ConfPresentation& A = env.algebra(c.names.at(0));
                if (c.number < 0)
                    throw ScriptError("product: n must be nonnegative");
                ConfElement r;
                try {
                    r = n_product(A, ConfElement::generator(c.names.at(1)),
                                  ConfElement::generator(c.names.at(2)),
                                  static_cast<int>(c.number));
                } catch (const std::invalid_argument& e) {
                    throw ScriptError(e.what());
                }
                current.add("product " + c.names.at(1) + " (" + std::to_string(c.number) + ") " +
                                c.names.at(2),
                            true, to_string(r));
                break;
            }
            case dsl::CommandDecl::Kind::Scenario:
            case dsl::CommandDecl::Kind::Membership: {
                ScenarioParams sp = params_from_args(c.args);
                if (sp.seed == 0)
                    sp.seed = default_seed;
                std::string name =
                    c.kind == dsl::CommandDecl::Kind::Membership ? "embedding" : c.ident;
                flush();
                std::vector<ScenarioReport> reports;
                try {
                    reports = run_scenario(name, sp);
                } catch (const std::invalid_argument& e) {
                    throw ScriptError(e.what());
                }
                for (auto& r : reports)
                    out.push_back(std::move(r));
                break;
            }
            }
        }
    }
    flush();
    return out;
}

} // namespace novconf

#endif
