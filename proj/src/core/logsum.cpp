#include "geothermo/core/logsum.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "geothermo/core/errors.hpp"
#include "geothermo/core/parallel.hpp"

namespace geothermo::core {

void LogSumExp::accumulate(double v) {
    const double sum = scaled_ + v;
    compensation_ += std::abs(scaled_) >= std::abs(v) ? (scaled_ - sum) + v : (v - sum) + scaled_;
    scaled_ = sum;
}

void LogSumExp::rescale(double factor) {
    scaled_ *= factor;
    compensation_ *= factor;
}

void LogSumExp::add(double x) {
    if (!std::isfinite(x)) {
        if (std::isnan(x) || x > 0) throw std::domain_error("log-sum-exp term must be finite or -inf");
        ++count_;  // exp(-inf) contributes nothing
        return;
    }
    if (x > max_) {
        rescale(std::exp(max_ - x));
        max_ = x;
        accumulate(1.0);
    } else {
        accumulate(std::exp(x - max_));
    }
    ++count_;
}

void LogSumExp::merge(const LogSumExp& other) {
    if (other.count_ == 0) return;
    if (other.max_ > max_) {
        rescale(std::exp(max_ - other.max_));
        max_ = other.max_;
        accumulate(other.scaled_);
        accumulate(other.compensation_);
    } else if (std::isfinite(other.max_)) {
        const double f = std::exp(other.max_ - max_);
        accumulate(other.scaled_ * f);
        accumulate(other.compensation_ * f);
    }
    count_ += other.count_;
}

double LogSumExp::value() const {
    const double total = scaled_ + compensation_;
    if (count_ == 0 || total == 0.0) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(total);
}

LogSumExp log_sum_exp(std::span<const double> xs) {
    LogSumExp acc;
    for (double x : xs) acc.add(x);
    return acc;
}

namespace {

std::pair<std::size_t, std::size_t> selection(const OrbitTable& orbits, double t, SumMode mode) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    if (mode.kind == SumMode::Kind::window) {
        if (!(mode.epsilon > 0.0)) throw std::invalid_argument("window epsilon must be positive");
        return orbits.window(t, t + mode.epsilon);
    }
    return {0, orbits.count_up_to(t)};
}

}  // namespace

double weighted_orbit_sum(const OrbitTable& orbits, std::string_view f, double t, SumMode mode) {
    const std::size_t slot = orbits.slot(f);
    const auto [lo, hi] = selection(orbits, t, mode);
    if (lo >= hi) throw EmptySelection();
    LogSumExp acc;
    for (std::size_t i = lo; i < hi; ++i) acc.add(orbits[i].integrals[slot]);
    return acc.value();
}

double weighted_orbit_sum_parallel(const OrbitTable& orbits, std::string_view f, double t, SumMode mode,
                                   unsigned threads) {
    const std::size_t slot = orbits.slot(f);
    const auto [lo, hi] = selection(orbits, t, mode);
    if (lo >= hi) throw EmptySelection();
    threads = resolve_threads(threads);
    const std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(threads * 4, hi - lo));
    std::vector<LogSumExp> partial(parts);
    const std::size_t chunk = (hi - lo + parts - 1) / parts;
    parallel_for(parts, threads, [&](std::size_t p) {
        const std::size_t b = lo + p * chunk;
        const std::size_t e = std::min(hi, b + chunk);
        for (std::size_t i = b; i < e; ++i) partial[p].add(orbits[i].integrals[slot]);
    });
    LogSumExp acc;
    for (const auto& p : partial) acc.merge(p);
    return acc.value();
}

}  // namespace geothermo::core
