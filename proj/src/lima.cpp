#include "mssc/lima.hpp"

#include <sstream>
#include <stdexcept>

namespace mssc {

const std::vector<LimaProfile>& lima_profiles() {
    static const std::vector<LimaProfile> profiles = {
        {"BDCSM",
         {"partitioning", "clustering", "centroid pooling", "final clustering",
          "final assignment"},
         1},
        {"Big-means",
         {"random sampling", "conditional reinitialization", "centroid update",
          "condition checking and updating", "iteration", "final assignment"},
         2},
        {"Minibatch K-means",
         {"initialization", "random sampling", "assignment", "centroid update", "iteration",
          "final assignment"},
         2},
        {"K-means++",
         {"random selection", "distance calculation", "probabilistic selection", "iteration",
          "cluster assignment", "centroid update"},
         1},
        {"CURE",
         {"random sampling", "partitioning", "hierarchical clustering",
          "representative selection", "geometric transformation", "iteration",
          "cluster assignment"},
         6},
        {"CluDataSE",
         {"random sampling", "density-based clustering", "cluster center reduction",
          "k-means clustering", "iteration", "parameter adjustment", "cluster assignment"},
         3},
        {"LW-coreset",
         {"mean calculation", "distance computation", "probability computation", "sampling",
          "centroid initialization", "centroid update", "assignment"},
         1},
        {"IK-means",
         {"initialization", "distance computation", "exclusion check", "assignment",
          "centroid reinitialization", "centroid update", "radius update", "convergence check"},
         0},
    };
    return profiles;
}

std::size_t lima_number(const std::string& algorithm) {
    for (const LimaProfile& p : lima_profiles()) {
        if (p.algorithm == algorithm) return p.lima_number();
    }
    throw std::out_of_range("lima_number: unknown algorithm " + algorithm);
}

bool dominates(const AlgoScore& b, const AlgoScore& a, double time_tolerance) {
    const bool leq = b.accuracy <= a.accuracy && b.time <= a.time + time_tolerance &&
                     b.lima <= a.lima;
    const bool strict = b.accuracy < a.accuracy || b.time < a.time || b.lima < a.lima;
    return leq && strict;
}

std::string dominance_matrix_markdown(
    const std::vector<std::pair<std::string, AlgoScore>>& scores, double time_tolerance) {
    std::ostringstream os;
    os << "| dominates -> |";
    for (const auto& [name, score] : scores) os << ' ' << name << " |";
    os << "\n|---|";
    for (std::size_t i = 0; i < scores.size(); ++i) os << "---|";
    os << '\n';
    for (const auto& [b_name, b] : scores) {
        os << "| " << b_name << " |";
        for (const auto& [a_name, a] : scores) {
            if (b_name == a_name) {
                os << " - |";
            } else {
                os << ' ' << (dominates(b, a, time_tolerance) ? "yes" : "no") << " |";
            }
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace mssc
