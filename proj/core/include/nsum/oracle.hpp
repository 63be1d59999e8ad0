#ifndef NSUM_ORACLE_HPP_
#define NSUM_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nsum/types.hpp"

namespace nsum {

// Desk-scale probability space of the random-network construction. Hidden set
// is {0..h-1}; by exchangeability of the uniform neighbor choice any fixed
// placement has the same law.
struct TinyModel {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, double>> pmf;  // degree -> probability
    std::size_t h = 0;

    std::string label() const;
};

// Weighted outcome count: product over nodes of sum_k pmf(k) * C(n-1, k).
// Enforced against the cap before any enumeration starts.
double enumeration_state_estimate(const TinyModel& model);

// Visits every (degree vector, in-neighbor set vector) outcome of the joint
// construction with its exact probability. The callback receives per-node
// (R_v, C_v) records and the outcome weight.
using OutcomeVisitor =
    std::function<void(const std::vector<ArdRecord>&, double probability)>;
void enumerate_exact(const TinyModel& model, const OutcomeVisitor& visit,
                     double state_cap = 1e7);

// Total probability mass of the enumeration; 1 within 1e-12 when correct.
double enumerate_total_mass(const TinyModel& model, double state_cap = 1e7);

struct ExpectationReport {
    double e_y = 0.0;          // exact E[Y_v], v uniform
    double dev_y = 0.0;        // |E[Y_v] - h/n|
    double e_x_in = 0.0;       // exact E[X_vj | v in H]
    double dev_x_in = 0.0;     // deviation from (h-1)/(n-1)
    double e_x_out = 0.0;      // exact E[X_vj | v not in H]
    double dev_x_out = 0.0;    // deviation from h/(n-1)
    bool pass = false;
};

// Verifies E[X_vj] = E[Y_v] = h/n and the conditional means by exact
// enumeration of each node's degree and neighbor-set choices.
ExpectationReport check_expectation_y(const TinyModel& model,
                                      double tolerance = 1e-12);

struct CorrelationReport {
    // Largest value of E[prod] - prod E over all checked subsets; negative
    // correlation means every entry is <= tolerance.
    double worst_y = 0.0;
    double worst_y_complement = 0.0;
    double worst_x = 0.0;
    double worst_x_complement = 0.0;
    std::size_t subsets_checked = 0;
    bool pass = false;
};

// Product inequalities of the Y_v and X_vj families over every node subset of
// size <= max_subset_size, with the surveyed set enumerated exactly.
CorrelationReport check_negative_correlation(const TinyModel& model,
                                             std::size_t max_subset_size = 3,
                                             double tolerance = 1e-12);

struct DependenceReport {
    bool applicable = false;  // requires h = 1
    double conditional = 0.0;    // P[Y_v2 > 0 | Y_v1 > 0]
    double unconditional = 0.0;  // P[Y_v2 > 0]
    bool strict = false;         // conditional < unconditional
};

// The h = 1 dependence example: conditioning on another respondent seeing the
// hidden node strictly lowers the probability of seeing it yourself.
DependenceReport check_dependence_example(std::size_t n, std::size_t h = 1);

// n in {2..6}, h in {0..n}, point and two-point degree pmfs.
std::vector<TinyModel> default_corpus();

}  // namespace nsum

#endif  // NSUM_ORACLE_HPP_
