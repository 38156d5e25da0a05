#ifndef BEREZIN_HILBERT_HPP
#define BEREZIN_HILBERT_HPP

#include <berezin/analytic.hpp>
#include <berezin/phase_space.hpp>
#include <berezin/quadrature.hpp>

#include <vector>

namespace berezin {

/// A phase space with its quantization parameter 1/hbar, the normalization
/// constant making <1,1> = 1, and a validated quadrature rule sized for
/// monomial degrees up to max_degree.
class InnerProductSpec {
public:
    static InnerProductSpec make(const PhaseSpace& space, double inv_hbar = 1.0,
                                 int max_degree = 40, double target_rel_err = 1e-10);

    const PhaseSpace& space() const { return space_; }
    double inv_hbar() const { return inv_hbar_; }
    double hbar() const { return 1.0 / inv_hbar_; }

    /// Prefactor c(hbar) of the inner product: 1/hbar for the plane (1 at the
    /// default hbar=1), 1/hbar+1 for the sphere, 1/hbar-1 for the disc,
    /// numerically determined for Custom.
    double normalization() const { return rule_.normalization(); }

    const QuadratureRule& rule() const { return rule_; }
    int max_degree() const { return rule_.max_degree(); }

    /// True when two specs describe the same inner product (same space kind
    /// and 1/hbar); Custom potentials are not comparable and never match a
    /// different instance's identity.
    bool compatible_with(const InnerProductSpec& other) const;

private:
    InnerProductSpec(PhaseSpace space, double inv_hbar, QuadratureRule rule);

    PhaseSpace space_;
    double inv_hbar_;
    QuadratureRule rule_;
};

class GramMatrix {
public:
    GramMatrix(ComplexMatrix entries, int max_degree);
    const ComplexMatrix& entries() const { return entries_; }
    int max_degree() const { return max_degree_; }
    double diagonal(int degree) const { return entries_(degree, degree).real(); }

private:
    ComplexMatrix entries_;
    int max_degree_;
};

struct SpaceDimension {
    bool finite = false;
    int value = 0;      // meaningful when finite
    bool has_stated = false;
    int stated = 0;     // the 1/hbar convention value, when applicable
};

/// c(hbar) * integral of measure * weight * conj(f) * g. Throws
/// std::invalid_argument when a monomial of f or g has divergent norm or
/// exceeds the rule's exactness degree.
Complex inner_product(const InnerProductSpec& spec, const AnalyticFunction& f,
                      const AnalyticFunction& g);

/// G_{mn} = <z^m, z^n> for m, n <= max_degree. Model spaces use the radial
/// moment fast path with exact angular zeros off the diagonal; Custom spaces
/// integrate every pair.
GramMatrix gram_matrix(const InnerProductSpec& spec, int max_degree);

/// e_m(z) = z^m / sqrt(G_mm) on model spaces; a triangular factorization of
/// the Gram matrix in the general case. Throws std::runtime_error when the
/// Gram matrix is numerically degenerate.
std::vector<AnalyticFunction> orthonormal_basis(const InnerProductSpec& spec, int max_degree);

/// Finite-norm dimension count via detect_divergence, reported alongside the
/// 1/hbar convention value for the sphere.
SpaceDimension space_dimension(const InnerProductSpec& spec);

/// K(z, w) = sum_m e_m(z) conj(e_m(w)) truncated at max_degree.
Complex reproducing_kernel(const InnerProductSpec& spec, Complex z, Complex w, int max_degree);

/// K(. , w) as an AnalyticFunction of degree max_degree.
AnalyticFunction kernel_section(const InnerProductSpec& spec, Complex w, int max_degree);

}

#endif
