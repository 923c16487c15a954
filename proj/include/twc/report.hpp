#pragma once

#include <deque>
#include <string>
#include <vector>

namespace twc {

/// One named check family: pass/fail plus the violating instances, if any.
/// Informative families report findings without failing the report.
struct CheckItem {
    std::string name;
    bool pass = true;
    long long instances = 0;            // how many cases were enumerated
    std::vector<std::string> violations;  // located failures (empty when pass)
    bool informative = false;
};

/// Result of an exhaustive validator. Failures are report entries, not throws.
/// Items live in a deque so references handed out by family() stay valid while
/// further families are added.
struct ValidationReport {
    std::deque<CheckItem> items;

    bool all_pass() const {
        for (const auto& it : items) {
            if (!it.pass && !it.informative) return false;
        }
        return true;
    }

    CheckItem& family(const std::string& name) {
        for (auto& it : items) {
            if (it.name == name) return it;
        }
        items.push_back(CheckItem{name, true, 0, {}});
        return items.back();
    }

    void count(const std::string& name) { family(name).instances++; }

    void violation(const std::string& name, std::string where) {
        auto& f = family(name);
        f.pass = false;
        f.violations.push_back(std::move(where));
    }

    void merge(const ValidationReport& other, const std::string& prefix = "") {
        for (const auto& it : other.items) {
            auto& f = family(prefix.empty() ? it.name : prefix + "." + it.name);
            f.instances += it.instances;
            if (!it.pass) {
                f.pass = false;
                f.violations.insert(f.violations.end(), it.violations.begin(), it.violations.end());
            }
        }
    }

    std::string summary() const;
};

}  // namespace twc
