#include "scaling_lab/fading.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace scaling_lab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn10Over10 = 0.23025850929940457;  // ln(10)/10
constexpr double kSqrt2 = 1.4142135623730951;
}  // namespace

FadingModel FadingModel::rayleigh(double mean_power) {
    if (!(mean_power > 0.0)) throw std::invalid_argument("rayleigh: mean power must be > 0");
    FadingModel m;
    m.family_ = Family::rayleigh;
    m.mu_ = mean_power;
    m.lower_ = 0.0;
    m.upper_ = kInf;
    return m;
}

FadingModel FadingModel::log_normal(double sigma_db) {
    if (!(sigma_db > 0.0)) throw std::invalid_argument("log_normal: sigma_dB must be > 0");
    FadingModel m;
    m.family_ = Family::log_normal;
    m.sigma_db_ = sigma_db;
    m.sigma_ = sigma_db * kLn10Over10;  // ln-domain scale
    m.mu_ = -0.5 * m.sigma_ * m.sigma_;  // ln-domain location pinning E[gain] = 1
    m.lower_ = 0.0;
    m.upper_ = kInf;
    return m;
}

FadingModel FadingModel::nakagami(double shape, double mean_power) {
    if (!(shape >= 0.5)) throw std::invalid_argument("nakagami: shape must be >= 0.5");
    if (!(mean_power > 0.0)) throw std::invalid_argument("nakagami: mean power must be > 0");
    FadingModel m;
    m.family_ = Family::nakagami;
    m.shape_ = shape;
    m.mu_ = mean_power;
    m.lower_ = 0.0;
    m.upper_ = kInf;
    return m;
}

FadingModel FadingModel::extremal_mv(double mu, double sigma, int population) {
    if (!(sigma > 0.0)) throw std::invalid_argument("extremal_mv: sigma must be > 0");
    if (population < 2) throw std::invalid_argument("extremal_mv: population must be >= 2");
    if (!std::isfinite(mu)) throw std::invalid_argument("extremal_mv: mu must be finite");
    FadingModel m;
    m.family_ = Family::extremal_mv;
    m.mu_ = mu;
    m.sigma_ = sigma;
    m.pop_ = population;
    const double n = static_cast<double>(population);
    const double w = sigma * std::sqrt(2.0 * n - 1.0);
    m.lower_ = mu - w / (n - 1.0);
    m.upper_ = mu + w;
    m.q_scale_ = w * n / (n - 1.0);
    m.pop_minus_1_ = n - 1.0;
    m.cdf_scale_ = (n - 1.0) / (n * w);
    return m;
}

FadingModel FadingModel::pareto_pathloss(double alpha) {
    if (!(alpha >= 2.0)) throw std::invalid_argument("pareto_pathloss: alpha must be >= 2");
    FadingModel m;
    m.family_ = Family::pareto_pathloss;
    m.alpha_ = alpha;
    m.nu_ = 2.0 / alpha;
    m.tail_coef_ = M_PI;
    m.tail_inv_nu_ = alpha / 2.0;
    m.x_min_ = std::pow(M_PI, alpha / 2.0);
    m.lower_ = m.x_min_;
    m.upper_ = kInf;
    return m;
}

FadingModel FadingModel::pareto_general(double nu, double c0) {
    if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("pareto_general: nu must lie in (0,1)");
    if (!(c0 > 0.0)) throw std::invalid_argument("pareto_general: c0 must be > 0");
    FadingModel m;
    m.family_ = Family::pareto_general;
    m.nu_ = nu;
    m.c0_ = c0;
    m.tail_coef_ = c0 / std::tgamma(1.0 - nu);
    m.tail_inv_nu_ = 1.0 / nu;
    m.x_min_ = std::pow(m.tail_coef_, 1.0 / nu);
    m.lower_ = m.x_min_;
    m.upper_ = kInf;
    return m;
}

double FadingModel::cdf(double x) const {
    if (!std::isfinite(x)) throw std::domain_error("cdf: x must be finite");
    switch (family_) {
        case Family::rayleigh:
            return x <= 0.0 ? 0.0 : -std::expm1(-x / mu_);
        case Family::log_normal: {
            if (x <= 0.0) return 0.0;
            double z = (std::log(x) - mu_) / sigma_;
            return 0.5 * std::erfc(-z / kSqrt2);
        }
        case Family::nakagami:
            if (x <= 0.0) return 0.0;
            return boost::math::gamma_p(shape_, x * shape_ / mu_);
        case Family::extremal_mv: {
            if (x <= lower_) return 0.0;
            if (x >= upper_) return 1.0;
            // ((x-mu)/(sigma*sqrt(2n-1)) * (n-1)/n + 1/n)^(1/(n-1)), computed
            // anchored at the support edge so the 1/n term never cancels.
            double base = (x - lower_) * cdf_scale_;
            if (base >= 1.0) return 1.0;
            return std::pow(base, 1.0 / pop_minus_1_);
        }
        case Family::pareto_pathloss:
        case Family::pareto_general: {
            if (x <= x_min_) return 0.0;
            double tail = tail_coef_ * std::pow(x, -nu_);
            return tail >= 1.0 ? 0.0 : 1.0 - tail;
        }
    }
    throw std::logic_error("cdf: unreachable");
}

double FadingModel::log_normal_quantile_impl(double u) const {
    if (u == 0.0) return 0.0;
    return std::exp(mu_ + sigma_ * kSqrt2 * boost::math::erf_inv(2.0 * u - 1.0));
}

double FadingModel::nakagami_quantile_impl(double u) const {
    if (u == 0.0) return 0.0;
    return (mu_ / shape_) * boost::math::gamma_p_inv(shape_, u);
}

MomentReport FadingModel::moments() const {
    MomentReport r;
    switch (family_) {
        case Family::rayleigh:
            r.mean = mu_;
            r.variance = mu_ * mu_;
            return r;
        case Family::log_normal: {
            // Unit mean by construction; Var = exp(s^2) - 1.
            r.mean = 1.0;
            r.variance = std::expm1(sigma_ * sigma_);
            return r;
        }
        case Family::nakagami:
            r.mean = mu_;
            r.variance = mu_ * mu_ / shape_;
            return r;
        case Family::extremal_mv:
            // Exact: integrating the closed-form quantile gives mean mu and
            // variance sigma^2 for every n >= 2.
            r.mean = mu_;
            r.variance = sigma_ * sigma_;
            return r;
        case Family::pareto_pathloss:
        case Family::pareto_general:
            r.tail_index = nu_;
            r.mean_finite = false;  // nu <= 1 throughout both families (inclusive boundary)
            r.variance_finite = false;
            r.mean = kInf;
            r.variance = kInf;
            return r;
    }
    throw std::logic_error("moments: unreachable");
}

namespace {
[[noreturn]] void wrong_family(const char* accessor) {
    throw std::domain_error(std::string(accessor) + ": wrong model family");
}
}  // namespace

double FadingModel::mean_power() const {
    if (family_ != Family::rayleigh && family_ != Family::nakagami) wrong_family("mean_power");
    return mu_;
}
double FadingModel::sigma_db() const {
    if (family_ != Family::log_normal) wrong_family("sigma_db");
    return sigma_db_;
}
double FadingModel::shape() const {
    if (family_ != Family::nakagami) wrong_family("shape");
    return shape_;
}
double FadingModel::mu() const {
    if (family_ != Family::extremal_mv) wrong_family("mu");
    return mu_;
}
double FadingModel::sigma() const {
    if (family_ != Family::extremal_mv) wrong_family("sigma");
    return sigma_;
}
int FadingModel::population() const {
    if (family_ != Family::extremal_mv) wrong_family("population");
    return pop_;
}
double FadingModel::alpha() const {
    if (family_ != Family::pareto_pathloss) wrong_family("alpha");
    return alpha_;
}
double FadingModel::nu() const {
    if (family_ != Family::pareto_pathloss && family_ != Family::pareto_general) wrong_family("nu");
    return nu_;
}
double FadingModel::c0() const {
    if (family_ != Family::pareto_general) wrong_family("c0");
    return c0_;
}

std::string FadingModel::describe() const {
    std::ostringstream os;
    switch (family_) {
        case Family::rayleigh: os << "rayleigh(mu=" << mu_ << ")"; break;
        case Family::log_normal: os << "log_normal(sigma_db=" << sigma_db_ << ")"; break;
        case Family::nakagami: os << "nakagami(shape=" << shape_ << ",mu=" << mu_ << ")"; break;
        case Family::extremal_mv:
            os << "extremal_mv(mu=" << mu_ << ",sigma=" << sigma_ << ",pop=" << pop_ << ")";
            break;
        case Family::pareto_pathloss: os << "pareto_pathloss(alpha=" << alpha_ << ")"; break;
        case Family::pareto_general: os << "pareto_general(nu=" << nu_ << ",c0=" << c0_ << ")"; break;
    }
    return os.str();
}

double extreme_mean(const FadingModel& model) {
    if (model.family() != Family::extremal_mv)
        throw std::domain_error("extreme_mean: requires the extremal_mv family");
    const double n = static_cast<double>(model.population());
    return model.mu() + model.sigma() * (n - 1.0) / std::sqrt(2.0 * n - 1.0);
}

}  // namespace scaling_lab
