#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "twc/ainf.hpp"

namespace twc {

/// Named collection of everything a verification run needs. Names resolve
/// within the bundle; parsing checks structure and reference integrity, the
/// validate command checks the mathematics.
struct InstanceBundle {
    BaseRing ring = BaseRing::rationals();
    std::map<std::string, SpacePtr> spaces;

    struct NamedMap {
        std::string source, target;
        SimplicialMap map;
    };
    std::map<std::string, NamedMap> maps;

    struct NamedHomotopy {
        std::string f, g;
        SimplicialHomotopy h;
    };
    std::map<std::string, NamedHomotopy> homotopies;

    struct NamedTwisted {
        std::string space;
        TwistedPtr t;
    };
    std::map<std::string, NamedTwisted> twisted;

    struct NamedMorphism {
        std::string source, target;
        TwistedMorphism m;
    };
    std::map<std::string, NamedMorphism> morphisms;

    struct NamedProbe {
        std::vector<std::string> objects;
        std::vector<std::string> morphisms;
    };
    std::map<std::string, NamedProbe> probes;

    ProbeSet probe(const std::string& name) const;
};

/// Canonical, versioned JSON. serialize(parse(text)) is idempotent.
InstanceBundle parse_bundle(const std::string& text);
std::string serialize_bundle(const InstanceBundle& b);

/// Machine-readable report envelope. Deterministic: timing only when asked.
std::string report_json(const ValidationReport& rep, const std::string& command,
                        std::optional<std::uint64_t> seed, std::optional<double> wall_ms);
std::string report_text(const ValidationReport& rep, const std::string& command);

/// Canonical JSON for the components of one morphism (used by the phi and
/// ho-invert commands to emit their outputs).
std::string morphism_components_json(const TwistedMorphism& m);

}  // namespace twc
