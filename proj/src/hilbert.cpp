#include <berezin/hilbert.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace berezin {

namespace {

int sphere_cutoff(const InnerProductSpec& spec) {
    return static_cast<int>(std::round(spec.inv_hbar()));
}

void check_degree_budget(const InnerProductSpec& spec, int degree, const char* what) {
    if (degree < 0)
        throw std::invalid_argument(std::string(what) + " degree must be nonnegative");
    if (spec.space().kind() == SpaceKind::Sphere && degree > sphere_cutoff(spec)) {
        std::ostringstream msg;
        msg << what << " degree " << degree << " has divergent norm on the sphere "
            << "(finite-norm cutoff is degree " << sphere_cutoff(spec) << ")";
        throw std::invalid_argument(msg.str());
    }
    if (degree > spec.max_degree()) {
        std::ostringstream msg;
        msg << what << " degree " << degree << " exceeds the rule's exactness degree "
            << spec.max_degree() << "; build the spec with a larger max_degree";
        throw std::invalid_argument(msg.str());
    }
}

void check_point(const InnerProductSpec& spec, Complex z, const char* what) {
    if (!spec.space().contains(z)) {
        std::ostringstream msg;
        msg << what << " point (" << z.real() << ", " << z.imag()
            << ") lies outside the chart domain";
        throw std::invalid_argument(msg.str());
    }
}

/// Radial moments sum_i W_i t_i^m for m = 0..max_degree; the Gram diagonal
/// of a rotation-invariant weight.
RealVector radial_moments(const QuadratureRule& rule, int max_degree) {
    const int n = static_cast<int>(rule.radial_nodes().size());
    RealVector running(n);
    for (int i = 0; i < n; ++i) running(i) = rule.radial_weights()(i);
    RealVector moments(max_degree + 1);
    for (int m = 0; m <= max_degree; ++m) {
        double sum = 0.0, carry = 0.0;
        for (int i = 0; i < n; ++i) {
            const double y = running(i) - carry;
            const double t = sum + y;
            carry = (t - sum) - y;
            sum = t;
        }
        moments(m) = sum;
        if (m < max_degree)
            for (int i = 0; i < n; ++i) {
                const double t = rule.radial_nodes()(i);
                running(i) *= t * t;
            }
    }
    return moments;
}

bool is_model(const PhaseSpace& space) { return space.kind() != SpaceKind::Custom; }

}

InnerProductSpec::InnerProductSpec(PhaseSpace space, double inv_hbar, QuadratureRule rule)
    : space_(std::move(space)), inv_hbar_(inv_hbar), rule_(std::move(rule)) {}

InnerProductSpec InnerProductSpec::make(const PhaseSpace& space, double inv_hbar,
                                        int max_degree, double target_rel_err) {
    if (!(inv_hbar > 0.0))
        throw std::invalid_argument("1/hbar must be positive");
    if (max_degree < 0)
        throw std::invalid_argument("max degree must be nonnegative");
    if (space.kind() == SpaceKind::Sphere) {
        const double rounded = std::round(inv_hbar);
        if (std::abs(inv_hbar - rounded) > 1e-9)
            throw std::invalid_argument("1/hbar must be an integer for the sphere space");
        max_degree = std::min(max_degree, static_cast<int>(rounded));
    }
    if (space.kind() == SpaceKind::Disc && !(inv_hbar > 1.0))
        throw std::invalid_argument("disc space requires 1/hbar > 1");
    QuadratureRule rule = build_rule(space, inv_hbar, target_rel_err, max_degree);
    return InnerProductSpec(space, inv_hbar, std::move(rule));
}

bool InnerProductSpec::compatible_with(const InnerProductSpec& other) const {
    if (space_.kind() != other.space_.kind()) return false;
    if (space_.kind() == SpaceKind::Custom) return this == &other;
    return inv_hbar_ == other.inv_hbar_;
}

GramMatrix::GramMatrix(ComplexMatrix entries, int max_degree)
    : entries_(std::move(entries)), max_degree_(max_degree) {
    if (entries_.rows() != max_degree_ + 1 || entries_.cols() != max_degree_ + 1)
        throw std::invalid_argument("Gram matrix size does not match its degree range");
}

Complex inner_product(const InnerProductSpec& spec, const AnalyticFunction& f,
                      const AnalyticFunction& g) {
    check_degree_budget(spec, std::max(f.effective_degree(), 0), "function");
    check_degree_budget(spec, std::max(g.effective_degree(), 0), "function");
    return integrate(spec.rule(),
                     [&](Complex z) { return std::conj(f(z)) * g(z); });
}

GramMatrix gram_matrix(const InnerProductSpec& spec, int max_degree) {
    check_degree_budget(spec, max_degree, "Gram");
    ComplexMatrix entries = ComplexMatrix::Zero(max_degree + 1, max_degree + 1);
    if (is_model(spec.space())) {
        const RealVector moments = radial_moments(spec.rule(), max_degree);
        for (int m = 0; m <= max_degree; ++m) entries(m, m) = moments(m);
    } else {
        for (int m = 0; m <= max_degree; ++m)
            for (int n = m; n <= max_degree; ++n) {
                const Complex value = inner_product(spec, AnalyticFunction::monomial(m),
                                                    AnalyticFunction::monomial(n));
                entries(m, n) = value;
                if (n != m) entries(n, m) = std::conj(value);
            }
    }
    return GramMatrix(std::move(entries), max_degree);
}

std::vector<AnalyticFunction> orthonormal_basis(const InnerProductSpec& spec, int max_degree) {
    const GramMatrix gram = gram_matrix(spec, max_degree);
    std::vector<AnalyticFunction> basis;
    basis.reserve(max_degree + 1);
    if (is_model(spec.space())) {
        for (int m = 0; m <= max_degree; ++m) {
            const double g = gram.diagonal(m);
            if (!(g > 0.0))
                throw std::runtime_error("non-positive Gram diagonal entry");
            basis.push_back(AnalyticFunction::monomial(m, Complex(1.0 / std::sqrt(g), 0.0)));
        }
        return basis;
    }
    Eigen::LLT<ComplexMatrix> llt(gram.entries());
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("Gram matrix is not numerically positive definite");
    const ComplexMatrix L = llt.matrixL();
    double dmin = std::abs(L(0, 0)), dmax = dmin;
    for (int m = 1; m <= max_degree; ++m) {
        dmin = std::min(dmin, std::abs(L(m, m)));
        dmax = std::max(dmax, std::abs(L(m, m)));
    }
    if (!(dmin > 0.0) || (dmax / dmin) * (dmax / dmin) > 1e12)
        throw std::runtime_error("Gram matrix numerically degenerate (condition estimate above 1e12)");
    const ComplexMatrix coeffs = L.adjoint()
                                     .triangularView<Eigen::Upper>()
                                     .solve(ComplexMatrix::Identity(max_degree + 1, max_degree + 1));
    for (int m = 0; m <= max_degree; ++m)
        basis.push_back(AnalyticFunction(coeffs.col(m).head(m + 1).eval()));
    return basis;
}

SpaceDimension space_dimension(const InnerProductSpec& spec) {
    SpaceDimension result;
    const int scan_cap = 200;
    int first_divergent = -1;
    for (int m = 0; m <= scan_cap; ++m)
        if (detect_divergence(spec.space(), spec.inv_hbar(), m)) {
            first_divergent = m;
            break;
        }
    result.finite = first_divergent >= 0;
    if (result.finite) result.value = first_divergent;
    if (spec.space().kind() == SpaceKind::Sphere) {
        result.has_stated = true;
        result.stated = sphere_cutoff(spec);
    }
    return result;
}

Complex reproducing_kernel(const InnerProductSpec& spec, Complex z, Complex w, int max_degree) {
    check_point(spec, z, "kernel");
    check_point(spec, w, "kernel");
    check_degree_budget(spec, max_degree, "kernel");
    if (is_model(spec.space())) {
        const RealVector moments = radial_moments(spec.rule(), max_degree);
        const Complex p = z * std::conj(w);
        Complex power(1.0, 0.0);
        Complex sum(0.0, 0.0), carry(0.0, 0.0);
        for (int m = 0; m <= max_degree; ++m) {
            const Complex term = power / moments(m) - carry;
            const Complex t = sum + term;
            carry = (t - sum) - term;
            sum = t;
            power *= p;
        }
        return sum;
    }
    const auto basis = orthonormal_basis(spec, max_degree);
    Complex sum(0.0, 0.0);
    for (const auto& e : basis) sum += e(z) * std::conj(e(w));
    return sum;
}

AnalyticFunction kernel_section(const InnerProductSpec& spec, Complex w, int max_degree) {
    check_point(spec, w, "kernel");
    check_degree_budget(spec, max_degree, "kernel");
    if (is_model(spec.space())) {
        const RealVector moments = radial_moments(spec.rule(), max_degree);
        ComplexVector coeffs(max_degree + 1);
        Complex power(1.0, 0.0);
        const Complex wbar = std::conj(w);
        for (int m = 0; m <= max_degree; ++m) {
            coeffs(m) = power / moments(m);
            power *= wbar;
        }
        return AnalyticFunction(std::move(coeffs));
    }
    const auto basis = orthonormal_basis(spec, max_degree);
    AnalyticFunction section = AnalyticFunction::zero(max_degree);
    for (const auto& e : basis) section = section + std::conj(e(w)) * e;
    return section;
}

}
