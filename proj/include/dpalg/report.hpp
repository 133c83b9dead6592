#pragma once

#include <string>
#include <vector>

namespace dpalg {

/// Outcome of one named relation over a batch of trials.
struct RelationReport {
    std::string name;
    int trials = 0;
    int passed = 0;
    /// trials where the compared values were nonzero
    int nontrivial = 0;
    std::string witness;
    bool ok() const { return trials == passed; }
};

inline bool all_ok(const std::vector<RelationReport>& reps) {
    for (const auto& r : reps)
        if (!r.ok()) return false;
    return true;
}

/// Accumulates trials for a single relation, keeping the first failing witness.
class Checker {
public:
    explicit Checker(std::string name) { rep_.name = std::move(name); }
    template <class F>
    void check(bool ok, F&& witness, bool nontrivial = true) {
        ++rep_.trials;
        if (nontrivial) ++rep_.nontrivial;
        if (ok)
            ++rep_.passed;
        else if (rep_.witness.empty())
            rep_.witness = witness();
    }
    const RelationReport& report() const { return rep_; }

private:
    RelationReport rep_;
};

}  // namespace dpalg
