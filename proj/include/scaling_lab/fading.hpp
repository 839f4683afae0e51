#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "scaling_lab/rng.hpp"

namespace scaling_lab {

enum class Family {
    rayleigh,         // exponential power gain, mean mu
    log_normal,       // sigma_dB shadowing, normalized to unit mean power
    nakagami,         // gamma power gain, shape m_s, mean mu
    extremal_mv,      // the mean/variance-constrained extremal law, population n
    pareto_pathloss,  // tail pi * x^(-2/alpha), support [pi^(alpha/2), inf)
    pareto_general,   // tail c0 * x^(-nu) / Gamma(1-nu)
};

struct MomentReport {
    double mean = 0.0;      // +infinity when mean_finite is false
    double variance = 0.0;  // +infinity when variance_finite is false
    bool mean_finite = true;
    bool variance_finite = true;
    std::optional<double> tail_index;  // nu, Pareto families only
};

// Immutable power-gain distribution.  cdf/quantile are exact closed forms for
// the extremal and Pareto laws; the classic families go through standard
// special functions.  Sampling is inverse-transform for every family, so a
// fixed uniform stream pins the whole gain sequence.
class FadingModel {
  public:
    static FadingModel rayleigh(double mean_power);
    static FadingModel log_normal(double sigma_db);
    static FadingModel nakagami(double shape, double mean_power);
    static FadingModel extremal_mv(double mu, double sigma, int population);
    static FadingModel pareto_pathloss(double alpha);
    static FadingModel pareto_general(double nu, double c0);

    Family family() const { return family_; }

    double cdf(double x) const;

    // Right-continuous inverse of cdf.  u must lie in [0,1]; u = 1 is a
    // domain error for every family with unbounded support.
    double quantile(double u) const {
        if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("quantile: u outside [0,1]");
        switch (family_) {
            case Family::rayleigh:
                if (u == 1.0) throw std::domain_error("quantile: u=1 on unbounded support");
                return -mu_ * std::log1p(-u);
            case Family::extremal_mv:
                // lower + sigma*sqrt(2n-1)*n/(n-1) * u^(n-1); anchoring at the
                // support edge avoids cancellation for u near 0.
                return lower_ + q_scale_ * std::pow(u, pop_minus_1_);
            case Family::pareto_pathloss:
            case Family::pareto_general: {
                if (u == 1.0) throw std::domain_error("quantile: u=1 on unbounded support");
                double t = 1.0 / (1.0 - u);
                if (tail_inv_nu_ == 2.0) return x_min_ * t * t;  // alpha = 4 hot path
                if (tail_inv_nu_ == 1.0) return x_min_ * t;
                return x_min_ * std::pow(t, tail_inv_nu_);
            }
            case Family::log_normal:
                if (u == 1.0) throw std::domain_error("quantile: u=1 on unbounded support");
                return log_normal_quantile_impl(u);
            case Family::nakagami:
                if (u == 1.0) throw std::domain_error("quantile: u=1 on unbounded support");
                return nakagami_quantile_impl(u);
        }
        throw std::logic_error("quantile: unreachable");
    }

    double sample(Rng& rng) const { return quantile(rng.uniform()); }

    MomentReport moments() const;

    double support_min() const { return lower_; }
    // +infinity for unbounded families.
    double support_max() const { return upper_; }

    // Parameter accessors; each throws std::domain_error on family mismatch.
    double mean_power() const;       // rayleigh, nakagami
    double sigma_db() const;         // log_normal
    double shape() const;            // nakagami
    double mu() const;               // extremal_mv
    double sigma() const;            // extremal_mv
    int population() const;          // extremal_mv
    double alpha() const;            // pareto_pathloss
    double nu() const;               // pareto families
    double c0() const;               // pareto_general

    std::string describe() const;

  private:
    FadingModel() = default;

    double log_normal_quantile_impl(double u) const;
    double nakagami_quantile_impl(double u) const;

    Family family_ = Family::rayleigh;

    // Raw parameters (family-dependent subset is meaningful).
    double mu_ = 1.0;        // rayleigh/nakagami mean power, extremal mean, log-normal location
    double sigma_ = 1.0;     // extremal std dev; log-normal ln-scale s
    double sigma_db_ = 0.0;  // log-normal dB std dev
    double shape_ = 1.0;     // nakagami m_s
    int pop_ = 0;            // extremal population n
    double alpha_ = 0.0;     // pareto_pathloss exponent
    double nu_ = 0.0;        // pareto tail index
    double c0_ = 0.0;        // pareto_general scale

    // Precomputed constants.
    double lower_ = 0.0;          // support minimum
    double upper_ = 0.0;          // support maximum (+inf when unbounded)
    double q_scale_ = 0.0;        // extremal: sigma*sqrt(2n-1)*n/(n-1)
    double pop_minus_1_ = 0.0;    // extremal: n-1 as double
    double cdf_scale_ = 0.0;      // extremal: (n-1)/(n*sigma*sqrt(2n-1))
    double x_min_ = 0.0;          // pareto: support edge C^(1/nu)
    double tail_coef_ = 0.0;      // pareto: C in 1-F = C*x^(-nu)
    double tail_inv_nu_ = 0.0;    // pareto: 1/nu
};

// E[max of n i.i.d. draws] for the extremal law: mu + sigma*(n-1)/sqrt(2n-1).
// Domain error for any other family.
double extreme_mean(const FadingModel& model);

}  // namespace scaling_lab
