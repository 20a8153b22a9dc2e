#pragma once

#include <string>
#include <vector>

namespace mssc {

/// Declarative complexity profile: the LIMA number is exactly the length of
/// the ingredient list.
struct LimaProfile {
    std::string algorithm;
    std::vector<std::string> ingredients;
    std::size_t input_parameter_count = 0;
    std::size_t lima_number() const { return ingredients.size(); }
};

/// All eight shipped profiles, LIMA numbers 5 through 8.
const std::vector<LimaProfile>& lima_profiles();

/// Tabulated LIMA number for a known algorithm; throws std::out_of_range for
/// unknown names.
std::size_t lima_number(const std::string& algorithm);

/// (accuracy, time, |U|) triple fed to the dominance relation. Accuracy is
/// the mean median relative error over the benchmark grid.
struct AlgoScore {
    double accuracy = 0.0;
    double time = 0.0;
    std::size_t lima = 0;
};

/// B dominates A iff accuracy_B <= accuracy_A, t_B <= t_A + time_tolerance,
/// |U_B| <= |U_A|, and at least one of the untolerated comparisons is strict.
/// The tolerance exists for "comparable time" readings of near-tied clocks;
/// zero gives the strict relation.
bool dominates(const AlgoScore& b, const AlgoScore& a, double time_tolerance = 0.0);

/// Pairwise dominance matrix over named scores, rendered as markdown.
std::string dominance_matrix_markdown(
    const std::vector<std::pair<std::string, AlgoScore>>& scores, double time_tolerance = 0.0);

}  // namespace mssc
