#include "pathlab/grid.hpp"

#include <cmath>
#include <utility>

namespace pathlab {

double SpatialGrid::fold(double q) const {
    const double half = 0.5 * length;
    if (boundary == Boundary::Periodic) {
        double x = std::fmod(q + half, length);
        if (x < 0.0) x += length;
        return x - half;
    }
    double x = std::fmod(q + half, 2.0 * length);
    if (x < 0.0) x += 2.0 * length;
    if (x > length) x = 2.0 * length - x;
    return x - half;
}

std::size_t SpatialGrid::nearest_site(double q) const {
    const double x = fold(q) + 0.5 * length;
    auto j = static_cast<long long>(std::llround(x / dq));
    if (boundary == Boundary::Periodic)
        return static_cast<std::size_t>(j) % n;  // site n is site 0 again
    if (j >= static_cast<long long>(n)) j = static_cast<long long>(n) - 1;
    return static_cast<std::size_t>(j);
}

Potential Potential::free() { return Potential(PotentialKind::Free); }

Potential Potential::harmonic(double omega, double mass) {
    if (!(omega > 0.0))
        throw std::invalid_argument("Potential::harmonic: omega must be > 0");
    Potential p(PotentialKind::Harmonic);
    p.omega_ = omega;
    p.mass_ = mass;
    return p;
}

Potential Potential::square_well(double depth, double width) {
    if (!(depth >= 0.0) || !(width > 0.0))
        throw std::invalid_argument(
            "Potential::square_well: need depth >= 0 and width > 0");
    Potential p(PotentialKind::SquareWell);
    p.depth_ = depth;
    p.width_ = width;
    return p;
}

Potential Potential::tabulated(std::vector<double> values) {
    if (values.empty())
        throw std::invalid_argument("Potential::tabulated: empty table");
    Potential p(PotentialKind::Tabulated);
    p.table_ = std::move(values);
    return p;
}

Eigen::VectorXd Potential::sample(const SpatialGrid& grid) const {
    Eigen::VectorXd v(grid.n);
    if (kind_ == PotentialKind::Tabulated) {
        if (table_.size() != grid.n)
            throw std::invalid_argument(
                "Potential::sample: table size does not match grid");
        for (std::size_t j = 0; j < grid.n; ++j) v[j] = table_[j];
        return v;
    }
    for (std::size_t j = 0; j < grid.n; ++j) v[j] = value(grid.site(j));
    return v;
}

double Potential::value(double q) const {
    switch (kind_) {
        case PotentialKind::Free:
            return 0.0;
        case PotentialKind::Harmonic:
            return 0.5 * mass_ * omega_ * omega_ * q * q;
        case PotentialKind::SquareWell:
            // attractive well of given depth, inclusive edges
            return std::abs(q) <= 0.5 * width_ ? -depth_ : 0.0;
        case PotentialKind::Tabulated:
            break;
    }
    throw std::domain_error(
        "Potential::value: tabulated potential has no off-grid values");
}

double Potential::value_on(const SpatialGrid& grid, double q) const {
    if (kind_ == PotentialKind::Tabulated) {
        if (table_.size() != grid.n)
            throw std::invalid_argument(
                "Potential::value_on: table size does not match grid");
        return table_[grid.nearest_site(q)];
    }
    return value(grid.fold(q));
}

std::string Potential::describe() const {
    switch (kind_) {
        case PotentialKind::Free:
            return "free";
        case PotentialKind::Harmonic:
            return "harmonic(omega=" + std::to_string(omega_) + ")";
        case PotentialKind::SquareWell:
            return "square_well(depth=" + std::to_string(depth_) +
                   ",width=" + std::to_string(width_) + ")";
        case PotentialKind::Tabulated:
            return "tabulated[" + std::to_string(table_.size()) + "]";
    }
    return "unknown";
}

}  // namespace pathlab
