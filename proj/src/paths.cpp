#include "drchm/paths.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "drchm/format.hpp"

namespace drchm {

StepPath StepPath::constant(double c) {
    StepPath s;
    s.values[0] = c;
    return s;
}

StepPath StepPath::from_events(double initial, std::vector<std::pair<double, double>> events) {
    std::stable_sort(events.begin(), events.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    StepPath s = constant(initial);
    s.times.reserve(events.size() + 1);
    s.values.reserve(events.size() + 1);
    double v = initial;
    for (std::size_t k = 0; k < events.size();) {
        const double t = events[k].first;
        if (!(t > 0.0)) throw std::invalid_argument("events must lie in (0,1]");
        for (; k < events.size() && events[k].first == t; ++k) v += events[k].second;
        s.times.push_back(t);
        s.values.push_back(v);
    }
    return s;
}

double StepPath::operator()(double t) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return values.front();
    return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

LinearPath LinearPath::from_step(const StepPath& s) {
    LinearPath p;
    p.times = s.times;
    p.values = s.values;
    p.slopes.assign(s.times.size(), 0.0);
    return p;
}

double LinearPath::operator()(double t) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t i = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
    return values[i] + slopes[i] * (t - times[i]);
}

double LinearPath::left_limit(std::size_t i) const {
    return values[i - 1] + slopes[i - 1] * (times[i] - times[i - 1]);
}

StepPath normalize_path(const StepPath& path, double expectation, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    StepPath out = path;
    for (auto& v : out.values) v = (v - expectation) / scale;
    return out;
}

LinearPath normalize_path(const LinearPath& path, double expectation, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    LinearPath out = path;
    for (auto& v : out.values) v = (v - expectation) / scale;
    for (auto& s : out.slopes) s /= scale;
    return out;
}

double sup_norm_distance(const LinearPath& a, const LinearPath& b) {
    std::vector<double> grid;
    grid.reserve(a.times.size() + b.times.size() + 1);
    std::merge(a.times.begin(), a.times.end(), b.times.begin(), b.times.end(),
               std::back_inserter(grid));
    grid.push_back(1.0);
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    // walk both paths segment by segment; difference is linear on each merged piece
    double best = 0.0;
    std::size_t ia = 0, ib = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double t = grid[g];
        if (t > 1.0) break;
        while (ia + 1 < a.times.size() && a.times[ia + 1] <= t) ++ia;
        while (ib + 1 < b.times.size() && b.times[ib + 1] <= t) ++ib;
        const double va = a.values[ia] + a.slopes[ia] * (t - a.times[ia]);
        const double vb = b.values[ib] + b.slopes[ib] * (t - b.times[ib]);
        best = std::max(best, std::abs(va - vb));
        if (g + 1 < grid.size()) {
            const double t2 = std::min(grid[g + 1], 1.0);
            const double la = a.values[ia] + a.slopes[ia] * (t2 - a.times[ia]);
            const double lb = b.values[ib] + b.slopes[ib] * (t2 - b.times[ib]);
            best = std::max(best, std::abs(la - lb));
        }
    }
    return best;
}

double sup_norm_distance(const StepPath& a, const StepPath& b) {
    return sup_norm_distance(LinearPath::from_step(a), LinearPath::from_step(b));
}

double sup_norm_distance(const LinearPath& a, const StepPath& b) {
    return sup_norm_distance(a, LinearPath::from_step(b));
}

double sup_norm(const StepPath& a) { return sup_norm_distance(a, StepPath::constant(0.0)); }
double sup_norm(const LinearPath& a) { return sup_norm_distance(a, StepPath::constant(0.0)); }

void write_csv(std::ostream& os, const StepPath& p) {
    os << "t,value\n";
    for (std::size_t i = 0; i < p.times.size(); ++i)
        os << fmt17(p.times[i]) << ',' << fmt17(p.values[i]) << '\n';
}

void write_csv(std::ostream& os, const LinearPath& p, const std::vector<double>& grid) {
    os << "t,value\n";
    for (double t : grid) os << fmt17(t) << ',' << fmt17(p(t)) << '\n';
}

}  // namespace drchm
