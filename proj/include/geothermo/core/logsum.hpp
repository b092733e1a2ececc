#pragma once

#include <limits>
#include <span>
#include <string_view>

#include "geothermo/core/orbit.hpp"

namespace geothermo::core {

// Streaming log-sum-exp: holds log(sum exp(x_i)) as (max, sum exp(x_i - max)),
// the scaled sum kept with Neumaier compensation.
// Partial accumulators merge associatively, so partitions can be reduced in
// parallel and combined.
class LogSumExp {
public:
    void add(double x);
    void merge(const LogSumExp& other);

    bool empty() const { return count_ == 0; }
    std::size_t count() const { return count_; }
    // -infinity when empty.
    double value() const;

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double scaled_ = 0.0;
    double compensation_ = 0.0;
    std::size_t count_ = 0;

    void accumulate(double v);
    void rescale(double factor);
};

LogSumExp log_sum_exp(std::span<const double> xs);

struct SumMode {
    enum class Kind { cumulative, window };
    Kind kind = Kind::cumulative;
    double epsilon = 0.0;

    static SumMode cumulative() { return {}; }
    static SumMode window(double eps) { return {Kind::window, eps}; }
};

// log of sum over selected orbits of exp(integral of f). Cumulative selects
// length <= t, window selects t < length <= t + eps.
// Throws EmptySelection("empty orbit window") when nothing is selected.
double weighted_orbit_sum(const OrbitTable& orbits, std::string_view f, double t, SumMode mode = {});

// Same value computed by `threads` partial accumulators merged in order.
double weighted_orbit_sum_parallel(const OrbitTable& orbits, std::string_view f, double t, SumMode mode,
                                   unsigned threads);

}  // namespace geothermo::core
