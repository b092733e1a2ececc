#pragma once

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "geothermo/core/parallel.hpp"

namespace geothermo::core {

// Constrained Lyndon-word search. Enumerates every Lyndon word (aperiodic
// word that is the least of its rotations) of length <= max_length over
// {0..alphabet-1} such that every consecutive pair, including the closing
// pair (last, first), is allowed, and whose additive cost lower bound fits
// in the budget. These are exactly the primitive admissible necklaces.
//
// Costs must be nonnegative: a prefix is abandoned as soon as its cost plus
// the cheapest closing cost exceeds the budget, which is safe because every
// extension only adds cost.
struct NecklaceSearch {
    int alphabet = 0;
    int max_length = 0;
    double budget = std::numeric_limits<double>::infinity();
    std::vector<char> allowed;         // alphabet x alphabet, empty = all allowed
    std::vector<double> first_cost;    // cost of the first symbol, empty = 0
    std::vector<double> step_cost;     // alphabet x alphabet (prev, next), empty = 0
    std::vector<double> closing_cost;  // alphabet x alphabet (last, first), empty = 0

    // Prefix length at which the tree is cut into parallel tasks.
    int split_depth = 3;

    // make(word, cost) -> std::optional<T>; cost includes the closing pair.
    template <class Make>
    auto run(unsigned threads, Make&& make) const;

private:
    struct Task {
        std::vector<int> prefix;  // 1-indexed storage, slot 0 is a sentinel 0
        int t = 1;
        int p = 1;
        double cost = 0.0;
    };

    bool ok(int a, int b) const {
        return allowed.empty() || allowed[static_cast<std::size_t>(a * alphabet + b)] != 0;
    }
    double step(int a, int b) const {
        return step_cost.empty() ? 0.0 : step_cost[static_cast<std::size_t>(a * alphabet + b)];
    }
    double first(int a) const { return first_cost.empty() ? 0.0 : first_cost[static_cast<std::size_t>(a)]; }
    double closing(int a, int b) const {
        return closing_cost.empty() ? 0.0 : closing_cost[static_cast<std::size_t>(a * alphabet + b)];
    }
    double min_closing() const {
        double m = std::numeric_limits<double>::infinity();
        if (closing_cost.empty()) return 0.0;
        for (double c : closing_cost) m = std::min(m, c);
        return m;
    }
    void validate() const {
        if (alphabet < 1) throw std::invalid_argument("necklace search needs a nonempty alphabet");
        if (max_length < 1) throw std::invalid_argument("necklace search needs max_length >= 1");
        const auto sq = static_cast<std::size_t>(alphabet * alphabet);
        if (!allowed.empty() && allowed.size() != sq) throw std::invalid_argument("allowed matrix size");
        if (!step_cost.empty() && step_cost.size() != sq) throw std::invalid_argument("step cost size");
        if (!closing_cost.empty() && closing_cost.size() != sq) throw std::invalid_argument("closing cost size");
        if (!first_cost.empty() && first_cost.size() != static_cast<std::size_t>(alphabet))
            throw std::invalid_argument("first cost size");
        for (const auto* v : {&first_cost, &step_cost, &closing_cost})
            for (double c : *v)
                if (c < 0.0) throw std::invalid_argument("necklace costs must be nonnegative");
    }

    // Depth-first over prenecklaces a[1..t-1] with Lyndon prefix period p.
    // With `tasks` non-null, nodes at split_depth are deferred there.
    template <class Emit>
    void dfs(std::vector<int>& a, int t, int p, double cost, double min_close, Emit& emit,
             std::vector<Task>* tasks) const {
        const int len = t - 1;
        if (tasks != nullptr && len == split_depth && len < max_length) {
            tasks->push_back(Task{a, t, p, cost});
            // Emission of the deferred node itself happens inside the task.
            return;
        }
        if (len >= 1 && p == len && ok(a[static_cast<std::size_t>(len)], a[1])) {
            const double total = cost + closing(a[static_cast<std::size_t>(len)], a[1]);
            if (total <= budget) emit(std::span<const int>(a.data() + 1, static_cast<std::size_t>(len)), total);
        }
        if (len == max_length) return;
        const int from = a[static_cast<std::size_t>(t - p)];
        for (int j = from; j < alphabet; ++j) {
            double c = cost;
            if (len >= 1) {
                if (!ok(a[static_cast<std::size_t>(len)], j)) continue;
                c += step(a[static_cast<std::size_t>(len)], j);
            } else {
                c += first(j);
            }
            if (c + min_close > budget) continue;
            a[static_cast<std::size_t>(t)] = j;
            dfs(a, t + 1, j == from ? p : t, c, min_close, emit, tasks);
        }
    }
};

template <class Make>
auto NecklaceSearch::run(unsigned threads, Make&& make) const {
    using Opt = std::invoke_result_t<Make&, std::span<const int>, double>;
    using T = typename Opt::value_type;
    validate();
    const double min_close = min_closing();

    std::vector<T> head;
    std::vector<Task> tasks;
    {
        std::vector<int> a(static_cast<std::size_t>(max_length) + 2, 0);
        auto emit = [&](std::span<const int> w, double c) {
            if (auto v = make(w, c)) head.push_back(std::move(*v));
        };
        dfs(a, 1, 1, 0.0, min_close, emit, &tasks);
    }

    std::vector<std::vector<T>> parts(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        Task task = tasks[i];
        auto emit = [&](std::span<const int> w, double c) {
            if (auto v = make(w, c)) parts[i].push_back(std::move(*v));
        };
        dfs(task.prefix, task.t, task.p, task.cost, min_close, emit, nullptr);
    });

    for (auto& part : parts)
        for (auto& v : part) head.push_back(std::move(v));
    return head;
}

}  // namespace geothermo::core
