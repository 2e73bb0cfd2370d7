#ifndef HEUNBLOCKS_REPORT_HPP
#define HEUNBLOCKS_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

namespace heunblocks {

// Outcome of a coefficientwise exact comparison of two series. Comparisons
// are exact equalities of canonical forms; a mismatch is a verdict, never an
// exception.
struct SeriesReport {
    struct Mismatch {
        std::string order; // e.g. "t^2"
        std::string lhs, rhs;
    };

    std::string lhsLabel, rhsLabel;
    std::vector<std::string> ordersChecked;
    bool exactEqual = true;
    std::optional<Mismatch> firstMismatch;

    void record(const std::string& order, bool equal, const std::string& lhs,
                const std::string& rhs) {
        ordersChecked.push_back(order);
        if (!equal && exactEqual) {
            exactEqual = false;
            firstMismatch = Mismatch{order, lhs, rhs};
        }
    }
};

} // namespace heunblocks

#endif
