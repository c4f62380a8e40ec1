#include "easme/pareto.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace easme {

bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dominates: objective vectors differ in length");
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
        if (a[i] > b[i]) strictly_better = true;
    }
    return strictly_better;
}

bool constrained_dominates(std::span<const double> a, double violation_a, std::span<const double> b,
                           double violation_b) {
    if (violation_a != violation_b) {
        if (a.size() != b.size()) throw std::invalid_argument("dominates: objective vectors differ in length");
        return violation_a < violation_b;
    }
    return dominates(a, b);
}

namespace {

template <typename Dominates>
std::vector<std::vector<std::size_t>> stratify(std::size_t n, Dominates&& dom) {
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;
    if (n == 0) return fronts;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dom(i, j)) {
                dominated_by[i].push_back(j);
                ++domination_count[j];
            } else if (dom(j, i)) {
                dominated_by[j].push_back(i);
                ++domination_count[i];
            }
        }
    }

    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        if (domination_count[i] == 0) current.push_back(i);
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated_by[i]) {
                if (--domination_count[j] == 0) next.push_back(j);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

} // namespace

std::vector<std::vector<std::size_t>> non_dominated_sort(const std::vector<ObjectiveVector>& points) {
    return stratify(points.size(), [&](std::size_t i, std::size_t j) { return dominates(points[i], points[j]); });
}

std::vector<std::vector<std::size_t>> non_dominated_sort(const std::vector<ObjectiveVector>& points,
                                                         std::span<const double> violations) {
    if (violations.size() != points.size()) throw std::invalid_argument("non_dominated_sort: one violation per point");
    return stratify(points.size(), [&](std::size_t i, std::size_t j) {
        return constrained_dominates(points[i], violations[i], points[j], violations[j]);
    });
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = front.size();
    if (n == 0) throw std::invalid_argument("crowding_distance: empty front");
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), inf);
        return distance;
    }
    const std::size_t m = front.front().size();
    std::vector<std::size_t> order(n);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][obj] < front[b][obj]; });
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        const double range = front[order.back()][obj] - front[order.front()][obj];
        if (range <= 0.0) continue;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            distance[order[k]] += (front[order[k + 1]][obj] - front[order[k - 1]][obj]) / range;
        }
    }
    return distance;
}

} // namespace easme
