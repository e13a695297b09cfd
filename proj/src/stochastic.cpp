#include "qmm/stochastic.hpp"

#include <cmath>
#include <string>

#include "qmm/errors.hpp"

namespace qmm {

namespace {

void require_time(double t, bool allow_zero, const char* op) {
    const bool ok = allow_zero ? t >= 0.0 : t > 0.0;
    if (!ok || !std::isfinite(t)) {
        throw ValidationError(std::string(op) + ": time must be " +
                              (allow_zero ? ">= 0" : "> 0") + ", got " + std::to_string(t));
    }
}

}  // namespace

RateParam::RateParam(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ValidationError("rate must be a finite value > 0, got " + std::to_string(value));
    }
}

double exponential_from_uniform(double r, RateParam rate) {
    if (!(r > 0.0 && r <= 1.0)) {
        throw ValidationError("exponential_from_uniform: r must lie in (0, 1]");
    }
    // -log(1) is -0.0; keep the sign positive.
    return r == 1.0 ? 0.0 : -std::log(r) / rate.value();
}

double sample_exponential(RandomStream& stream, RateParam rate) {
    return exponential_from_uniform(1.0 - stream.next_uniform(), rate);
}

double poisson_pmf(std::uint64_t n, RateParam rate, double t) {
    require_time(t, false, "poisson_pmf");
    const double mean = rate.value() * t;
    if (n == 0) {
        return std::exp(-mean);
    }
    const double k = static_cast<double>(n);
    return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

PmfCurve poisson_curve(RateParam rate, double t, std::uint64_t n_max) {
    require_time(t, false, "poisson_curve");
    PmfCurve curve;
    curve.rate_time_product = rate.value() * t;
    curve.probabilities.reserve(n_max + 1);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        curve.probabilities.push_back(poisson_pmf(n, rate, t));
    }
    return curve;
}

double exponential_cdf(double t, RateParam rate) {
    require_time(t, true, "exponential_cdf");
    return -std::expm1(-rate.value() * t);
}

double exponential_pdf(double t, RateParam rate) {
    require_time(t, true, "exponential_pdf");
    return rate.value() * std::exp(-rate.value() * t);
}

}  // namespace qmm
