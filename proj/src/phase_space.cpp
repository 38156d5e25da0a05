#include <berezin/phase_space.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace berezin {

std::string to_string(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::Plane: return "plane";
        case SpaceKind::Sphere: return "sphere";
        case SpaceKind::Disc: return "disc";
        case SpaceKind::Custom: return "custom";
    }
    throw std::invalid_argument("unknown space kind");
}

SpaceKind space_kind_from_string(const std::string& name) {
    if (name == "plane") return SpaceKind::Plane;
    if (name == "sphere") return SpaceKind::Sphere;
    if (name == "disc") return SpaceKind::Disc;
    if (name == "custom") return SpaceKind::Custom;
    throw std::invalid_argument("unknown space '" + name + "' (expected plane, sphere, disc or custom)");
}

PhaseSpace::PhaseSpace(SpaceKind kind, double radial_limit)
    : kind_(kind), radial_limit_(radial_limit) {}

PhaseSpace PhaseSpace::plane() {
    return PhaseSpace(SpaceKind::Plane, std::numeric_limits<double>::infinity());
}

PhaseSpace PhaseSpace::sphere() {
    return PhaseSpace(SpaceKind::Sphere, std::numeric_limits<double>::infinity());
}

PhaseSpace PhaseSpace::disc() {
    return PhaseSpace(SpaceKind::Disc, 1.0);
}

PhaseSpace PhaseSpace::custom(std::function<double(Complex)> potential, double radial_limit) {
    if (!potential)
        throw std::invalid_argument("custom space needs a potential callable");
    if (!(radial_limit > 0.0))
        throw std::invalid_argument("custom space radial limit must be positive");
    PhaseSpace space(SpaceKind::Custom, radial_limit);
    space.custom_potential_ = std::move(potential);
    return space;
}

bool PhaseSpace::contains(Complex z) const {
    return std::abs(z) < radial_limit_;
}

bool PhaseSpace::has_finite_volume() const {
    return kind_ == SpaceKind::Sphere;
}

namespace {

void require_inside(const PhaseSpace& space, Complex z, const char* what) {
    if (!space.contains(z)) {
        std::ostringstream msg;
        msg << what << " evaluated at |z| = " << std::abs(z)
            << " outside the chart domain |z| < " << space.radial_limit();
        throw std::invalid_argument(msg.str());
    }
}

}

double potential_eval(const PhaseSpace& space, Complex z) {
    require_inside(space, z, "potential");
    const double t = std::norm(z);
    switch (space.kind()) {
        case SpaceKind::Plane: return t;
        case SpaceKind::Sphere: return std::log1p(t);
        case SpaceKind::Disc: return -std::log1p(-t);
        case SpaceKind::Custom: return space.custom_potential()(z);
    }
    throw std::invalid_argument("unknown space kind");
}

double metric_eval(const PhaseSpace& space, Complex z) {
    require_inside(space, z, "metric");
    const double t = std::norm(z);
    switch (space.kind()) {
        case SpaceKind::Plane:
            return 1.0;
        case SpaceKind::Sphere: {
            const double u = 1.0 + t;
            return 1.0 / (u * u);
        }
        case SpaceKind::Disc: {
            const double u = 1.0 - t;
            return 1.0 / (u * u);
        }
        case SpaceKind::Custom: {
            double h = 1e-4 * (1.0 + std::abs(z));
            if (std::isfinite(space.radial_limit()))
                h = std::min(h, 0.45 * (space.radial_limit() - std::abs(z)));
            const auto& K = space.custom_potential();
            const double laplacian =
                (K(z + Complex(h, 0.0)) + K(z - Complex(h, 0.0)) +
                 K(z + Complex(0.0, h)) + K(z - Complex(0.0, h)) - 4.0 * K(z)) /
                (h * h);
            const double g = 0.25 * laplacian;
            if (!(g > 0.0) || !std::isfinite(g)) {
                std::ostringstream msg;
                msg << "custom potential gives non-positive metric " << g
                    << " at z = (" << z.real() << ", " << z.imag() << ")";
                throw std::runtime_error(msg.str());
            }
            return g;
        }
    }
    throw std::invalid_argument("unknown space kind");
}

double measure_density(const PhaseSpace& space, Complex z) {
    return metric_eval(space, z);
}

}
