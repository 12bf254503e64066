#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

namespace drchm {

// cadlag piecewise-constant function on [0,1]; values[i] holds on [times[i], times[i+1])
struct StepPath {
    std::vector<double> times{0.0};
    std::vector<double> values{0.0};

    static StepPath constant(double c);
    // events are (time, delta); events at times <= 0 must already be in `initial`
    static StepPath from_events(double initial, std::vector<std::pair<double, double>> events);

    double operator()(double t) const;
    std::size_t size() const { return times.size(); }
};

// piecewise-linear on [0,1], right-continuous at breakpoints
struct LinearPath {
    std::vector<double> times{0.0};
    std::vector<double> values{0.0};
    std::vector<double> slopes{0.0};

    static LinearPath from_step(const StepPath& s);

    double operator()(double t) const;
    // value approached from the left at times[i], i >= 1
    double left_limit(std::size_t i) const;
};

StepPath normalize_path(const StepPath& path, double expectation, double scale);
LinearPath normalize_path(const LinearPath& path, double expectation, double scale);

double sup_norm_distance(const StepPath& a, const StepPath& b);
double sup_norm_distance(const LinearPath& a, const LinearPath& b);
double sup_norm_distance(const LinearPath& a, const StepPath& b);
double sup_norm(const StepPath& a);
double sup_norm(const LinearPath& a);

// CSV with header "t,value", first row t=0
void write_csv(std::ostream& os, const StepPath& p);
void write_csv(std::ostream& os, const LinearPath& p, const std::vector<double>& grid);

}  // namespace drchm
