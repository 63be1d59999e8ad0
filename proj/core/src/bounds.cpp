#include "nsum/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsum {

BoundResult make_bound(double raw, double beta, double y,
                       std::optional<double> delta) {
    BoundResult r;
    r.raw = raw;
    r.clamped = std::min(1.0, raw);
    r.beta = beta;
    r.y = y;
    r.delta = delta;
    return r;
}

double f_bound(double beta, double y) {
    if (!(beta > 1.0))
        throw std::invalid_argument("f_bound: beta must be > 1");
    if (y < 0.0) throw std::invalid_argument("f_bound: y must be >= 0");
    const double lb = std::log(beta);
    const double upper_coeff = (beta - 1.0) - beta * lb;
    const double lower_coeff = (1.0 / beta - 1.0) + lb / beta;
    return std::exp(y * upper_coeff) + std::exp(y * lower_coeff);
}

BoundResult chernoff_two_sided(double beta, double mu) {
    if (mu < 0.0)
        throw std::invalid_argument("chernoff_two_sided: mu must be >= 0");
    return make_bound(f_bound(beta, mu), beta, mu);
}

BoundResult chernoff_lower(double delta, double mu) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("chernoff_lower: delta must be in (0,1)");
    if (mu < 0.0)
        throw std::invalid_argument("chernoff_lower: mu must be >= 0");
    const double exponent = -delta - (1.0 - delta) * std::log1p(-delta);
    BoundResult r = make_bound(std::exp(mu * exponent), 1.0 / (1.0 - delta), mu,
                               delta);
    return r;
}

BoundResult mor_bound(double beta, std::size_t m, double rho) {
    if (m < 1) throw std::invalid_argument("mor_bound: m must be >= 1");
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("mor_bound: rho must be in (0,1]");
    const double y = static_cast<double>(m) * rho;
    return make_bound(f_bound(beta, y), beta, y);
}

BoundResult ros_bound_simple(double beta, std::size_t m, double rho) {
    BoundResult r = mor_bound(beta, m, rho);
    return r;
}

BoundResult ros_bound_pmf(double beta, double rho,
                          const std::map<std::uint64_t, double>& rs_pmf) {
    if (!(beta > 1.0))
        throw std::invalid_argument("ros_bound_pmf: beta must be > 1");
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("ros_bound_pmf: rho must be in (0,1]");
    double total = 0.0;
    for (auto [rs, p] : rs_pmf) {
        if (p < 0.0)
            throw std::invalid_argument("ros_bound_pmf: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("ros_bound_pmf: pmf not normalized");
    double raw = 0.0;
    double mean_rs = 0.0;
    for (auto [rs, p] : rs_pmf) {
        raw += p * f_bound(beta, static_cast<double>(rs) * rho);
        mean_rs += p * static_cast<double>(rs);
    }
    return make_bound(raw, beta, mean_rs * rho);
}

std::size_t sample_size(std::size_t n, double rho, double beta, double alpha) {
    if (n < 2) throw std::invalid_argument("sample_size: n must be >= 2");
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("sample_size: rho must be in (0,1]");
    if (!(beta > 1.0))
        throw std::invalid_argument("sample_size: beta must be > 1");
    if (!(alpha > 0.0))
        throw std::invalid_argument("sample_size: alpha must be > 0");
    // 1 - (1/beta)(ln beta + 1) is the smaller of the two exponent slopes, so
    // one constraint covers both tails.
    const double denom =
        rho * (1.0 - (std::log(beta) + 1.0) / beta);
    const double numer = std::log(2.0) + alpha * std::log(static_cast<double>(n));
    return static_cast<std::size_t>(std::ceil(numer / denom));
}

namespace {

BoundResult minimized_sum_bound(double beta, double rho, double mu,
                                DeltaPolicy policy) {
    auto eval = [&](double delta) {
        return chernoff_lower(delta, mu).raw +
               f_bound(beta, (1.0 - delta) * mu * rho);
    };
    if (policy.fixed) {
        const double d = *policy.fixed;
        if (!(d > 0.0 && d < 1.0))
            throw std::invalid_argument("delta must be in (0,1)");
        return make_bound(eval(d), beta, (1.0 - d) * mu * rho, d);
    }
    double best_delta = 0.001, best = eval(0.001);
    for (int i = 2; i <= 999; ++i) {
        const double d = 0.001 * i;
        const double v = eval(d);
        if (v < best) {
            best = v;
            best_delta = d;
        }
    }
    return make_bound(best, beta, (1.0 - best_delta) * mu * rho, best_delta);
}

}  // namespace

BoundResult er_ros_bound(double beta, double rho, std::size_t m, std::size_t n,
                         double p, DeltaPolicy delta_policy) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("er_ros_bound: p must be in (0,1)");
    if (!(beta > 1.0))
        throw std::invalid_argument("er_ros_bound: beta must be > 1");
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("er_ros_bound: rho must be in (0,1]");
    const double mu =
        static_cast<double>(m) * p * static_cast<double>(n - 1);
    return minimized_sum_bound(beta, rho, mu, delta_policy);
}

BoundResult sf_ros_bound(double beta, double rho, std::size_t m, std::size_t n,
                         double gamma, DeltaPolicy delta_policy,
                         SfMuMode mu_mode) {
    if (!(gamma > 2.0))
        throw std::invalid_argument("sf_ros_bound: gamma must be > 2");
    if (!(beta > 1.0))
        throw std::invalid_argument("sf_ros_bound: beta must be > 1");
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("sf_ros_bound: rho must be in (0,1]");
    double mu = 0.0;
    if (mu_mode == SfMuMode::closed_form_approx) {
        const double nm1 = static_cast<double>(n - 1);
        mu = static_cast<double>(m) * ((1.0 - gamma) / (2.0 - gamma)) *
             (1.0 - std::pow(nm1, 2.0 - gamma)) /
             (1.0 - std::pow(nm1, 1.0 - gamma));
    } else {
        mu = static_cast<double>(m) *
             DegreeDistribution::scale_free(n, gamma).mean();
    }
    return minimized_sum_bound(beta, rho, mu, delta_policy);
}

BoundResult mor_er_bound(double beta, std::size_t m, double rho) {
    return mor_bound(beta, m, rho);
}

double adversarial_lower_bound(std::size_t n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument(
            "adversarial_lower_bound: n must be odd and >= 3");
    return std::sqrt(static_cast<double>(n - 1) / 2.0);
}

std::pair<double, double> fullsampling_worstcase(Method kind,
                                                 const DegreeSummary& d) {
    if (d.out_min == 0 || d.in_min == 0 || d.in_mean <= 0.0)
        throw std::invalid_argument("fullsampling_worstcase: zero denominator");
    switch (kind) {
        case Method::MoR:
            return {static_cast<double>(d.out_max) /
                        static_cast<double>(d.in_min),
                    static_cast<double>(d.in_max) /
                        static_cast<double>(d.out_min)};
        case Method::RoS:
            return {static_cast<double>(d.out_max) / d.in_mean,
                    d.in_mean / static_cast<double>(d.out_min)};
        default:
            throw std::invalid_argument(
                "fullsampling_worstcase: kind must be MoR or RoS");
    }
}

std::map<std::uint64_t, double> convolve_rs_pmf(
    const DegreeDistribution& degrees, std::size_t m, std::size_t state_cap) {
    if (m < 1) throw std::invalid_argument("convolve_rs_pmf: m must be >= 1");
    const std::size_t max_sum = m * (degrees.n() - 1);
    if (max_sum > state_cap)
        throw std::invalid_argument("convolve_rs_pmf: state cap exceeded");

    const auto& support = degrees.support();
    const auto& prob = degrees.probabilities();

    std::vector<double> cur(1, 1.0);  // pmf of the partial sum, offset 0
    for (std::size_t step = 0; step < m; ++step) {
        std::vector<double> next(cur.size() + support.back(), 0.0);
        for (std::size_t s = 0; s < cur.size(); ++s) {
            if (cur[s] == 0.0) continue;
            for (std::size_t i = 0; i < support.size(); ++i)
                next[s + support[i]] += cur[s] * prob[i];
        }
        cur = std::move(next);
    }
    std::map<std::uint64_t, double> pmf;
    for (std::size_t s = 0; s < cur.size(); ++s)
        if (cur[s] > 0.0) pmf[s] = cur[s];
    return pmf;
}

}  // namespace nsum
