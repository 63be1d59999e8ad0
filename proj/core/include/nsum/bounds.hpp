#ifndef NSUM_BOUNDS_HPP_
#define NSUM_BOUNDS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nsum/types.hpp"

namespace nsum {

// Right-hand side of a tail bound. The raw value may exceed 1 (vacuous
// region); the clamped value is min(1, raw).
struct BoundResult {
    double raw = 0.0;
    double clamped = 0.0;
    double beta = 0.0;   // echo: 1 + epsilon
    double y = 0.0;      // echo: mu or m*rho, whichever drives the F term
    std::optional<double> delta;  // echo: Chernoff slack, when used
};

BoundResult make_bound(double raw, double beta, double y,
                       std::optional<double> delta = std::nullopt);

// F(x,y) = (e^{x-1}/x^x)^y + (e^{1/x-1}/x^{-1/x})^y, evaluated in log-space.
// Both exponent coefficients are strictly negative for x > 1.
double f_bound(double beta, double y);

// Two-sided Chernoff for sums of [0,1] variables with negative cylinder
// dependence: P[not(mu/beta <= Z <= beta*mu)] <= F(beta, mu).
BoundResult chernoff_two_sided(double beta, double mu);

// Lower tail: P[Z <= (1-delta)*mu] <= (e^{-delta}/(1-delta)^{1-delta})^mu.
BoundResult chernoff_lower(double delta, double mu);

// MoR tail bound: P[E_MoR > beta] <= F(beta, m*rho).
BoundResult mor_bound(double beta, std::size_t m, double rho);

// RoS corollary bound, same expression as mor_bound.
BoundResult ros_bound_simple(double beta, std::size_t m, double rho);

// RoS bound averaged over the distribution of R_S:
// sum_R F(beta, R*rho) * P[R_S = R].
BoundResult ros_bound_pmf(double beta, double rho,
                          const std::map<std::uint64_t, double>& rs_pmf);

// Smallest integer m with
// m >= (ln 2 + alpha ln n) / (rho * (1 - (1/beta)(ln beta + 1))),
// guaranteeing error <= beta with probability >= 1 - 1/n^alpha.
std::size_t sample_size(std::size_t n, double rho, double beta, double alpha);

struct DeltaPolicy {
    // Fixed slack in (0,1), or grid-minimized over {0.001..0.999} when unset.
    std::optional<double> fixed;
    static DeltaPolicy minimize() { return {}; }
    static DeltaPolicy at(double d) { return {d}; }
};

// Erdos-Renyi RoS bound with mu = m*p*(n-1):
// (e^{-delta}/(1-delta)^{1-delta})^mu + F(beta, (1-delta)*mu*rho).
BoundResult er_ros_bound(double beta, double rho, std::size_t m, std::size_t n,
                         double p, DeltaPolicy delta_policy);

enum class SfMuMode {
    closed_form_approx,  // mu = m * ((1-g)/(2-g)) * (1-(n-1)^{2-g})/(1-(n-1)^{1-g})
    exact_pmf_mean,      // mu = m * sum_k k * nu * k^-g
};

// Scale-free RoS bound (gamma > 2), same shape as er_ros_bound.
BoundResult sf_ros_bound(double beta, double rho, std::size_t m, std::size_t n,
                         double gamma, DeltaPolicy delta_policy,
                         SfMuMode mu_mode = SfMuMode::closed_form_approx);

// ER MoR bound; identical expression to mor_bound.
BoundResult mor_er_bound(double beta, std::size_t m, double rho);

// Worst-case error sqrt((n-1)/2) achievable against any deterministic
// estimator; n = 2k+1 must be odd.
double adversarial_lower_bound(std::size_t n);

struct DegreeSummary {
    std::uint64_t out_max;   // Delta
    std::uint64_t out_min;   // delta
    std::uint64_t in_min;    // r
    std::uint64_t in_max;    // R
    double in_mean;          // r-bar
};

// Full-sampling worst-case factors: MoR -> (Delta/r_min, R_max/delta),
// RoS -> (Delta/r_bar, r_bar/delta). Returned as (E+ cap, E- cap).
std::pair<double, double> fullsampling_worstcase(Method kind,
                                                 const DegreeSummary& degrees);

// Exact pmf of R_S for m iid degree draws (m-fold convolution, dynamic
// programming over the sum). Throws when m*(n-1) exceeds the state cap.
std::map<std::uint64_t, double> convolve_rs_pmf(
    const DegreeDistribution& degrees, std::size_t m,
    std::size_t state_cap = 10'000'000);

}  // namespace nsum

#endif  // NSUM_BOUNDS_HPP_
