#include "qmm/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmm/errors.hpp"

namespace qmm {

namespace {

double positive_exponential(RandomStream& stream, RateParam rate) {
    double v = 0.0;
    while (v == 0.0) {
        v = sample_exponential(stream, rate);
    }
    return v;
}

std::vector<double> draw_positive(std::size_t n, RateParam rate, RandomStream& stream) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(positive_exponential(stream, rate));
    }
    return out;
}

void require_strictly_increasing(std::span<const double> v, const char* what) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) {
            throw ValidationError(std::string(what) + " must be strictly increasing (index " +
                                  std::to_string(i) + ")");
        }
    }
}

void require_positive(std::span<const double> v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
            throw ValidationError(std::string(what) + " must be finite and > 0 (index " +
                                  std::to_string(i) + ")");
        }
    }
}

}  // namespace

ArrivalSchedule::ArrivalSchedule(std::vector<double> inter_arrivals, std::vector<double> arrivals,
                                 std::vector<double> services, std::vector<double> departures)
    : inter_arrivals_(std::move(inter_arrivals)),
      arrivals_(std::move(arrivals)),
      services_(std::move(services)),
      departures_(std::move(departures)) {
    const std::size_t n = arrivals_.size();
    if (inter_arrivals_.size() != n || services_.size() != n || departures_.size() != n) {
        throw ValidationError("schedule lists must have equal length");
    }
    // The first node may arrive at the time origin; later gaps must be > 0.
    if (n > 0 && !(inter_arrivals_[0] >= 0.0)) {
        throw ValidationError("first inter-arrival time must be >= 0");
    }
    require_positive(std::span<const double>(inter_arrivals_).subspan(n > 0 ? 1 : 0),
                     "inter-arrival times");
    require_positive(services_, "service times");
    require_strictly_increasing(arrivals_, "arrival times");
    require_strictly_increasing(departures_, "departure times");
    for (std::size_t i = 0; i < n; ++i) {
        if (departures_[i] < arrivals_[i] + services_[i]) {
            throw ValidationError("node " + std::to_string(i) + " departs before being served");
        }
    }
}

std::vector<double> generate_interarrivals(std::size_t n, RateParam rate, RandomStream& stream) {
    return draw_positive(n, rate, stream);
}

std::vector<double> arrival_times(std::span<const double> inter_arrivals) {
    require_positive(inter_arrivals, "inter-arrival times");
    std::vector<double> out(inter_arrivals.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < inter_arrivals.size(); ++i) {
        acc += inter_arrivals[i];
        out[i] = acc;
    }
    return out;
}

std::vector<double> generate_service_times(std::size_t n, RateParam rate, RandomStream& stream) {
    return draw_positive(n, rate, stream);
}

std::vector<double> departure_times(std::span<const double> arrivals,
                                    std::span<const double> services) {
    if (arrivals.size() != services.size()) {
        throw ValidationError("departure_times: " + std::to_string(arrivals.size()) +
                              " arrivals vs " + std::to_string(services.size()) + " services");
    }
    require_strictly_increasing(arrivals, "arrival times");
    require_positive(services, "service times");

    std::vector<double> out(arrivals.size());
    for (std::size_t i = 0; i < arrivals.size(); ++i) {
        const double own = arrivals[i] + services[i];
        out[i] = i == 0 ? own : std::max(own, out[i - 1] + services[i]);
    }
    return out;
}

ArrivalSchedule build_schedule(std::size_t n, RateParam lambda, RateParam mu,
                               RandomStream& stream) {
    auto gaps = generate_interarrivals(n, lambda, stream);
    auto arrivals = arrival_times(gaps);
    auto services = generate_service_times(n, mu, stream);
    auto departures = departure_times(arrivals, services);
    return ArrivalSchedule(std::move(gaps), std::move(arrivals), std::move(services),
                           std::move(departures));
}

std::size_t number_in_system(const ArrivalSchedule& schedule, double t) {
    // Both sequences are sorted and departures[i] > arrivals[i], so the count
    // of present nodes is (#arrived by t) - (#departed by t).
    const auto a = schedule.arrivals();
    const auto d = schedule.departures();
    const auto arrived = std::upper_bound(a.begin(), a.end(), t) - a.begin();
    const auto departed = std::upper_bound(d.begin(), d.end(), t) - d.begin();
    return static_cast<std::size_t>(arrived - departed);
}

QueueObservation observe(const ArrivalSchedule& schedule, double t) {
    return {t, number_in_system(schedule, t)};
}

double mean_number_in_system(const ArrivalSchedule& schedule, double horizon) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw ValidationError("mean_number_in_system: horizon must be > 0");
    }
    // The count process is a sum of indicators on [arrival, departure), so
    // its integral is the total overlap of those intervals with [0, horizon].
    const auto a = schedule.arrivals();
    const auto d = schedule.departures();
    double area = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double lo = std::max(a[i], 0.0);
        const double hi = std::min(d[i], horizon);
        if (hi > lo) {
            area += hi - lo;
        }
    }
    return area / horizon;
}

std::vector<double> sojourn_times(const ArrivalSchedule& schedule) {
    const auto a = schedule.arrivals();
    const auto d = schedule.departures();
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = d[i] - a[i];
    }
    return out;
}

}  // namespace qmm
