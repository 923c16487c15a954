#pragma once

#include "twc/bundle.hpp"
#include "twc/generate.hpp"

namespace twc::cli {

/// Size parameters for the generator, kept inside the documented bounds
/// (<= 6 cover sets, truncation <= 5, ranks <= 4, amplitude <= 3).
struct GenerateOptions {
    std::uint64_t seed = 0;
    std::string ring = "Q";  // "Q" or "F<p>", e.g. "F101"
    std::string kind = "auto";  // "fold", "constant", or "auto"
    int max_sets = 2;
    int max_points = 3;
    int truncation = 4;
    int amplitude = 1;
    int max_rank = 2;
    int objects = 2;
    int morphisms = 3;
};

InstanceBundle cmd_generate(const GenerateOptions& opts);

/// Simplicial identities, map/homotopy clauses, flatness, nondegeneracy,
/// window policy, and d^2 = 0 on every named morphism.
ValidationReport cmd_validate(const InstanceBundle& b);

struct PhiResult {
    ValidationReport report;
    std::string components_json;  // Phi_0 per probe object, Phi_1 per probe morphism
};
PhiResult cmd_phi(const InstanceBundle& b, const std::string& homotopy, const std::string& probe,
                  int max_level = 3);

struct HoInvertResult {
    ValidationReport report;
    bool feasible = false;
    std::string witness_json;  // empty when infeasible
};
HoInvertResult cmd_ho_invert(const InstanceBundle& b, const std::string& morphism);

/// Generated mini-corpus through every verifier; the exit gate for `twc selftest`.
ValidationReport cmd_selftest(std::uint64_t seed);

}  // namespace twc::cli
