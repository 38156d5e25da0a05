#include <berezin/coherent.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace berezin {

namespace {

void require_plane(const InnerProductSpec& spec, const char* what) {
    if (spec.space().kind() != SpaceKind::Plane) {
        std::ostringstream msg;
        msg << what << " is defined on the plane space only (got "
            << to_string(spec.space().kind()) << ")";
        throw std::invalid_argument(msg.str());
    }
}

/// Orthonormal-basis coordinates of a monomial coefficient vector on a
/// model space: alpha_m = c_m * sqrt(G_mm).
ComplexVector onb_coordinates(const InnerProductSpec& spec, const AnalyticFunction& f) {
    const int degree = f.truncation_degree();
    const GramMatrix gram = gram_matrix(spec, degree);
    ComplexVector alpha(degree + 1);
    for (int m = 0; m <= degree; ++m)
        alpha(m) = f.coefficient(m) * std::sqrt(gram.diagonal(m));
    return alpha;
}

}

CoherentState::CoherentState(InnerProductSpec spec, Complex label, AnalyticFunction vector)
    : spec_(std::move(spec)), label_(label), vector_(std::move(vector)) {}

LadderOperators ladder_operators(const InnerProductSpec& spec, int truncation) {
    require_plane(spec, "ladder algebra");
    if (truncation < 1)
        throw std::invalid_argument("ladder truncation must be at least 1");
    const GramMatrix gram = gram_matrix(spec, truncation);
    const double sqrt_hbar = std::sqrt(spec.hbar());

    LadderOperators ops;
    ops.truncation = truncation;
    ops.hbar = spec.hbar();
    ops.annihilation = ComplexMatrix::Zero(truncation + 1, truncation + 1);
    for (int n = 1; n <= truncation; ++n) {
        const double ratio = std::sqrt(gram.diagonal(n - 1) / gram.diagonal(n));
        ops.annihilation(n - 1, n) = sqrt_hbar * n * ratio;
    }
    ops.creation = ops.annihilation.adjoint();
    const double scale = std::sqrt(0.5 * spec.hbar());
    ops.position = scale * (ops.annihilation + ops.creation);
    ops.momentum = Complex(0.0, -1.0) * scale * (ops.annihilation - ops.creation);
    return ops;
}

CoherentState coherent_state(const InnerProductSpec& spec, Complex label, int truncation) {
    if (!spec.space().contains(label)) {
        std::ostringstream msg;
        msg << "coherent-state label (" << label.real() << ", " << label.imag()
            << ") lies outside the chart domain";
        throw std::invalid_argument(msg.str());
    }
    AnalyticFunction section = kernel_section(spec, label, truncation);
    const double norm2 = reproducing_kernel(spec, label, label, truncation).real();
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw std::runtime_error("coherent-state normalization is not positive");
    const Complex scale(1.0 / std::sqrt(norm2), 0.0);
    return CoherentState(spec, label, scale * section);
}

Complex overlap(const CoherentState& s1, const CoherentState& s2) {
    if (!s1.spec().compatible_with(s2.spec()))
        throw std::invalid_argument("overlap requires coherent states from the same spec");
    return inner_product(s1.spec(), s1.vector(), s2.vector());
}

double annihilation_eigen_residual(const CoherentState& state) {
    require_plane(state.spec(), "annihilation eigen residual");
    const int truncation = state.vector().truncation_degree();
    const LadderOperators ops = ladder_operators(state.spec(), truncation);
    const ComplexVector alpha = onb_coordinates(state.spec(), state.vector());
    const Complex mu = std::conj(state.label()) / std::sqrt(state.spec().hbar());
    const ComplexVector residual = ops.annihilation * alpha - mu * alpha;
    const double norm = alpha.norm();
    if (!(norm > 0.0))
        throw std::runtime_error("coherent state has zero norm");
    return residual.norm() / norm;
}

double resolution_of_identity_residual(const InnerProductSpec& spec, int max_degree) {
    const QuadratureRule* rule = &spec.rule();
    QuadratureRule rebuilt;
    if (spec.max_degree() < max_degree) {
        rebuilt = build_rule(spec.space(), spec.inv_hbar(), spec.rule().tolerance(), max_degree);
        rule = &rebuilt;
    }
    const auto basis = orthonormal_basis(spec, max_degree);
    const int dim = max_degree + 1;
    ComplexMatrix accumulated = ComplexMatrix::Zero(dim, dim);
    ComplexVector e_at(dim);
    ComplexVector u(dim);
    const int radial = static_cast<int>(rule->radial_nodes().size());
    for (int i = 0; i < radial; ++i)
        for (int j = 0; j < rule->angular_order(); ++j) {
            const Complex z = rule->node(i, j);
            double kernel_diag = 0.0;
            for (int m = 0; m < dim; ++m) {
                e_at(m) = basis[m](z);
                kernel_diag += std::norm(e_at(m));
            }
            for (int m = 0; m < dim; ++m)
                u(m) = std::conj(e_at(m)) / std::sqrt(kernel_diag);
            const double w = rule->node_weight(i, j) * kernel_diag;
            accumulated.noalias() += w * (u * u.adjoint());
        }
    return (accumulated - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

}
