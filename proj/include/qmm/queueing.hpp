#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qmm/stochastic.hpp"

namespace qmm {

// FCFS single-server schedule: for node i, inter_arrivals[i] is the gap since
// the previous arrival, arrivals[i] the cumulative arrival time, services[i]
// the service time and departures[i] the departure time.
//
// The constructor enforces the schedule invariants (equal lengths, strictly
// increasing arrivals and departures, departures[i] >= arrivals[i] +
// services[i]) and throws ValidationError otherwise. Immutable afterwards.
class ArrivalSchedule {
  public:
    ArrivalSchedule() = default;
    ArrivalSchedule(std::vector<double> inter_arrivals, std::vector<double> arrivals,
                    std::vector<double> services, std::vector<double> departures);

    std::size_t size() const noexcept { return arrivals_.size(); }
    bool empty() const noexcept { return arrivals_.empty(); }

    std::span<const double> inter_arrivals() const noexcept { return inter_arrivals_; }
    std::span<const double> arrivals() const noexcept { return arrivals_; }
    std::span<const double> services() const noexcept { return services_; }
    std::span<const double> departures() const noexcept { return departures_; }

  private:
    std::vector<double> inter_arrivals_;
    std::vector<double> arrivals_;
    std::vector<double> services_;
    std::vector<double> departures_;
};

struct QueueObservation {
    double time = 0.0;
    std::size_t count = 0;
};

// n exponential gaps at `rate`. A draw of exactly zero (u == 0 from the
// stream) is redrawn so every gap is strictly positive.
std::vector<double> generate_interarrivals(std::size_t n, RateParam rate, RandomStream& stream);

// Prefix sums of the gaps. Throws ValidationError on a nonpositive gap.
std::vector<double> arrival_times(std::span<const double> inter_arrivals);

std::vector<double> generate_service_times(std::size_t n, RateParam rate, RandomStream& stream);

// y[0] = x[0] + st[0]; y[i] = max(x[i] + st[i], y[i-1] + st[i]).
std::vector<double> departure_times(std::span<const double> arrivals,
                                    std::span<const double> services);

// Draw order: all n inter-arrival gaps, then all n service times.
ArrivalSchedule build_schedule(std::size_t n, RateParam lambda, RateParam mu,
                               RandomStream& stream);

// Nodes with arrival <= t < departure.
std::size_t number_in_system(const ArrivalSchedule& schedule, double t);

QueueObservation observe(const ArrivalSchedule& schedule, double t);

// Exact time average of number_in_system over [0, horizon].
double mean_number_in_system(const ArrivalSchedule& schedule, double horizon);

std::vector<double> sojourn_times(const ArrivalSchedule& schedule);

}  // namespace qmm
