#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "contour/homology.hpp"
#include "contour/lift.hpp"
#include "contour/moves.hpp"

namespace contour::testing {

inline const std::vector<std::string>& figure_variants() {
    static const std::vector<std::string> keys = {
        "III^a(b)",    "III^b",       "III^c",       "III^d",   "III_1^{0,a}",
        "III_2^{0,a}", "III_1^{1,a}", "III_2^{1,a}", "III_1^e", "III_2^e",
    };
    return keys;
}

/// A diagram reached by random moves from the standard one, together with a
/// site of the requested variant that applies to it.
inline std::optional<std::pair<SingularDiagram, MoveSite>> neighbourhood_for(const std::string& variant,
                                                                             unsigned seed = 1,
                                                                             int walks = 400) {
    std::mt19937 rng(seed);
    for (int walk = 0; walk < walks; ++walk) {
        auto d = standard_s3_diagram();
        for (int step = 0; step < 6; ++step) {
            auto sites = enumerate_all_sites(d);
            for (const auto& s : sites) {
                if (s.variant != variant) continue;
                try {
                    apply(d, s);
                    return std::make_pair(d, s);
                } catch (const Error&) {
                }
            }
            if (sites.empty()) break;
            try {
                d = apply(d, sites[rng() % sites.size()]);
            } catch (const Error&) {
                break;
            }
        }
    }
    return std::nullopt;
}

/// Coherent sites only: what a liftability-preserving script may use.
inline std::vector<MoveSite> coherent_sites(const SingularDiagram& d) {
    std::vector<MoveSite> out;
    for (const auto& s : enumerate_all_sites(d))
        if (in_coherent_repertoire(s)) out.push_back(s);
    return out;
}

inline MoveScript random_coherent_script(const SingularDiagram& start, std::size_t length, std::mt19937& rng) {
    MoveScript script;
    auto d = start;
    for (int attempts = 0; script.size() < length && attempts < 64; ++attempts) {
        auto sites = coherent_sites(d);
        if (sites.empty()) break;
        const auto& s = sites[rng() % sites.size()];
        try {
            d = apply(d, s);
        } catch (const Error&) {
            continue;
        }
        script.push_back(s);
    }
    return script;
}

/// Random presentation on n generators with up to n relations, entries in [-4, 4].
inline AbelianGroup random_group(std::mt19937& rng) {
    std::uniform_int_distribution<int> gens(1, 3), entry(-4, 4);
    std::size_t n = static_cast<std::size_t>(gens(rng));
    std::size_t r = rng() % (n + 1);
    IntMatrix rel(r, std::vector<Int>(n));
    for (auto& row : rel)
        for (auto& x : row) x = entry(rng);
    return AbelianGroup(n, rel);
}

inline std::vector<ClassVector> random_components(std::size_t n, std::mt19937& rng) {
    std::uniform_int_distribution<int> count(1, 4), entry(-3, 3);
    std::vector<ClassVector> out(static_cast<std::size_t>(count(rng)), ClassVector(n));
    for (auto& c : out)
        for (auto& x : c) x = entry(rng);
    return out;
}

}  // namespace contour::testing
