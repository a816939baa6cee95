#pragma once

#include <string>
#include <vector>

#include "kodbundle/plan.hpp"

namespace kodbundle {

struct CheckEntry {
    std::string name;
    bool ok;
    std::string lhs;
    std::string rhs;
};

struct VerificationReport {
    std::vector<CheckEntry> checks;

    bool overall() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

// Re-checks every identity a plan claims, from the instance and the plan's
// own witnesses only.  Failures become report entries, never exceptions.
VerificationReport verify_plan(const ConstructionPlan& plan, const ChernInstance& inst);

}  // namespace kodbundle
