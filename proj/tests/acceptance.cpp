#include "gcomp/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

using namespace gcomp;

int main(int argc, char** argv) {
    verify::Config cfg;
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--seed") && i + 1 < argc)
            cfg.seed = std::strtoull(argv[++i], nullptr, 10);
        else
            only.push_back(std::atoi(argv[i]));
    }

    using Fn = verify::Check (*)(const verify::Config&);
    const std::vector<Fn> criteria{
        verify::threshold_formulas,     verify::exact_weight_complexity, verify::composition_equivalence,
        verify::negation_scaling_laws,  verify::circulation_decomposition, verify::algorithm1_end_to_end,
        verify::transducer_relations,   verify::adversary_dual,          verify::gapped_majority_check,
        verify::converter_soundness,    verify::savitch_check,           verify::string_catalogs,
        verify::witness_scaling_check,
    };

    int violations = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const auto c = criteria[i](cfg);
        if (!c.ok()) ++violations;
        std::printf("criterion %2d %-18s %s: %s (%.1fs)\n", id, c.verdict().c_str(), c.name.c_str(), c.detail.c_str(),
                    c.seconds);
        std::fflush(stdout);
    }
    std::printf("%d unexpected result(s)\n", violations);
    return violations == 0 ? 0 : 1;
}
