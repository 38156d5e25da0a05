#ifndef BEREZIN_QUADRATURE_HPP
#define BEREZIN_QUADRATURE_HPP

#include <berezin/phase_space.hpp>
#include <berezin/types.hpp>

#include <functional>

namespace berezin {

/// Product rule over one chart: a Gauss-type radial rule in t = r^2 adapted
/// to the space's weight at the configured 1/hbar, tensored with equispaced
/// angles. Radial weights absorb the measure density, the exponential/power
/// weight and the normalization constant, so integrating the constant 1
/// yields 1. For Custom spaces the weight cannot be absorbed radially
/// (the potential need not be rotation invariant); the per-node factor
/// density(z)*exp(-K(z)/hbar) is applied during integration instead.
class QuadratureRule {
public:
    const PhaseSpace& space() const { return space_; }
    double inv_hbar() const { return inv_hbar_; }
    const RealVector& radial_nodes() const { return radial_nodes_; }
    const RealVector& radial_weights() const { return radial_weights_; }
    int angular_order() const { return angular_order_; }
    int node_count() const { return static_cast<int>(radial_nodes_.size()) * angular_order_; }

    /// Highest monomial degree the rule is sized for (angular order and
    /// radial exactness both cover it).
    int max_degree() const { return max_degree_; }

    /// Normalization constant folded into the weights so that <1,1> = 1.
    double normalization() const { return normalization_; }

    /// Node-doubling validated relative tolerance of the normalization
    /// integral.
    double tolerance() const { return tolerance_; }

    /// Full weight of node (radial index i, angular index j), including the
    /// angular 1/A factor and, for Custom spaces, the pointwise weight.
    double node_weight(int radial_index, int angular_index) const;

    Complex node(int radial_index, int angular_index) const;

private:
    friend QuadratureRule build_rule(const PhaseSpace&, double, double, int);

    PhaseSpace space_ = PhaseSpace::plane();
    double inv_hbar_ = 1.0;
    RealVector radial_nodes_;
    RealVector radial_weights_;
    int angular_order_ = 0;
    int max_degree_ = 0;
    double normalization_ = 1.0;
    double tolerance_ = 0.0;
};

/// Builds a rule sized for monomial degrees up to max_degree and validates
/// it by node-doubling of the normalization integral. Throws
/// std::invalid_argument for parameter violations (non-integer 1/hbar on the
/// sphere, 1/hbar <= 1 on the disc) and std::runtime_error when the target
/// tolerance is unreachable within the node budget.
QuadratureRule build_rule(const PhaseSpace& space, double inv_hbar, double target_rel_err,
                          int max_degree = 40);

/// Sum of weights times f at every node, in a fixed sequential order with
/// compensated summation. Throws std::runtime_error on a non-finite
/// integrand value.
Complex integrate(const QuadratureRule& rule, const std::function<Complex(Complex)>& f);

/// Decides analytically whether the norm integral of z^m diverges: never on
/// the plane, iff 2m - 2/hbar - 4 >= -2 on the sphere, iff 1/hbar <= 1 on
/// the disc. Custom spaces fall back to the growth probe below.
bool detect_divergence(const PhaseSpace& space, double inv_hbar, int monomial_degree);

/// Quadrature-based cross-check: integrates |z|^{2m} times the space's full
/// weight over a geometric ladder of radial shells and flags divergence when
/// the shell integrals stop decaying. Heuristic, used to corroborate
/// detect_divergence.
bool divergence_growth_probe(const PhaseSpace& space, double inv_hbar, int monomial_degree);

}

#endif
