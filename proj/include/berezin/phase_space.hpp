#ifndef BEREZIN_PHASE_SPACE_HPP
#define BEREZIN_PHASE_SPACE_HPP

#include <berezin/types.hpp>

#include <functional>
#include <limits>
#include <string>

namespace berezin {

enum class SpaceKind { Plane, Sphere, Disc, Custom };

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& name);

/// One-chart model of a Kaehler phase space: a potential K on a radial
/// domain {|z| < radial_limit}. The three closed-form models carry exact
/// potential, metric and measure density; Custom wraps a user potential and
/// differentiates it numerically.
class PhaseSpace {
public:
    static PhaseSpace plane();
    static PhaseSpace sphere();
    static PhaseSpace disc();
    /// radial_limit may be infinity for potentials confining on the full plane.
    static PhaseSpace custom(std::function<double(Complex)> potential, double radial_limit);

    SpaceKind kind() const { return kind_; }
    double radial_limit() const { return radial_limit_; }
    bool contains(Complex z) const;

    /// True when the measure density integrates to a finite total volume.
    /// Exact for the model spaces (only the sphere chart is finite); Custom
    /// spaces report false since the question is undecidable for a black-box
    /// potential.
    bool has_finite_volume() const;

    const std::function<double(Complex)>& custom_potential() const { return custom_potential_; }

private:
    PhaseSpace(SpaceKind kind, double radial_limit);

    SpaceKind kind_;
    double radial_limit_;
    std::function<double(Complex)> custom_potential_;
};

/// Kaehler potential K(z). Throws std::invalid_argument outside the domain.
double potential_eval(const PhaseSpace& space, Complex z);

/// Metric component g = d^2 K / dz dzbar. Closed-form for the models,
/// five-point Laplacian/4 with step 1e-4*(1+|z|) for Custom (clamped to a
/// fraction of the boundary clearance on bounded domains). Throws
/// std::runtime_error when a Custom potential yields a non-positive value.
double metric_eval(const PhaseSpace& space, Complex z);

/// Measure density det(g) relative to the reference measure dx dy / pi.
double measure_density(const PhaseSpace& space, Complex z);

}

#endif
