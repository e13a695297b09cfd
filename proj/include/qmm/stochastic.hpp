#pragma once

#include <cstdint>
#include <vector>

namespace qmm {

// SplitMix64 stream (Steele, Lea & Flood; Vigna's reference constants).
// Bit-reproducible on every platform, which is what makes traces replayable.
// Single owner: copy it if you need a fork, never share one across threads.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) noexcept : state_(seed), seed_(seed) {}

    std::uint64_t next_u64() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Top 53 bits scaled by 2^-53, so the result is in [0, 1).
    double next_uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t state() const noexcept { return state_; }

  private:
    std::uint64_t state_;
    std::uint64_t seed_;
};

// Events per unit time. Strictly positive and finite; used for both the
// arrival rate and the service rate.
class RateParam {
  public:
    explicit RateParam(double value);

    double value() const noexcept { return value_; }

    friend bool operator==(const RateParam&, const RateParam&) = default;

  private:
    double value_;
};

// Inverse transform: -ln(r) / rate for r in (0, 1].
double exponential_from_uniform(double r, RateParam rate);

// Draws u in [0, 1) and evaluates the inverse transform at r = 1 - u, so the
// logarithm never sees zero. Returns 0 exactly when u == 0.
double sample_exponential(RandomStream& stream, RateParam rate);

// P(n arrivals in t) for a Poisson process, evaluated in log space so large
// n does not overflow. Throws ValidationError for t <= 0.
double poisson_pmf(std::uint64_t n, RateParam rate, double t);

struct PmfCurve {
    double rate_time_product = 0.0;
    std::vector<double> probabilities;  // index is the arrival count n
};

PmfCurve poisson_curve(RateParam rate, double t, std::uint64_t n_max);

// 1 - exp(-rate * t). Throws ValidationError for t < 0.
double exponential_cdf(double t, RateParam rate);

// rate * exp(-rate * t). Throws ValidationError for t < 0.
double exponential_pdf(double t, RateParam rate);

}  // namespace qmm
