#include "twc/report.hpp"

#include <sstream>

namespace twc {

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& it : items) {
        os << (it.pass ? "pass" : "FAIL") << "  " << it.name << " (" << it.instances << " checked)";
        for (const auto& v : it.violations) os << "\n      at " << v;
        os << "\n";
    }
    return os.str();
}

}  // namespace twc
