#pragma once

#include <stdexcept>
#include <vector>

#include "grid.hpp"

namespace modns {

/// Time-indexed sequence of VectorFields on a uniform grid 0 = t_0 < ... < t_N = T.
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(double T, std::size_t steps, GridPtr grid, Rep rep = Rep::spectral)
        : T_(T) {
        if (steps == 0) throw std::invalid_argument("trajectory: need >= 1 step");
        states_.reserve(steps + 1);
        for (std::size_t i = 0; i <= steps; ++i) states_.emplace_back(grid, rep);
    }
    Trajectory(double T, std::vector<VectorField> states)
        : T_(T), states_(std::move(states)) {
        if (states_.size() < 2) throw std::invalid_argument("trajectory: need >= 2 states");
    }

    double horizon() const { return T_; }
    std::size_t steps() const { return states_.size() - 1; }
    std::size_t size() const { return states_.size(); }
    double dt() const { return T_ / double(steps()); }
    double time(std::size_t i) const { return T_ * double(i) / double(steps()); }
    VectorField& operator[](std::size_t i) { return states_[i]; }
    const VectorField& operator[](std::size_t i) const { return states_[i]; }
    const SpectralGrid& grid() const { return states_.at(0).grid(); }
    GridPtr grid_ptr() const { return states_.at(0).grid_ptr(); }

private:
    double T_{0};
    std::vector<VectorField> states_;
};

/// Composite trapezoid weights on the trajectory's uniform time grid.
inline std::vector<double> trapezoid_weights(std::size_t npoints, double dt) {
    std::vector<double> w(npoints, dt);
    if (npoints >= 1) {
        w.front() = dt / 2;
        w.back() = dt / 2;
    }
    return w;
}

} // namespace modns
