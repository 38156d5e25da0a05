#include <berezin/duality.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace berezin {

namespace {

constexpr double kMatchTol = 1e-12;

bool near(double x, double y) { return std::abs(x - y) <= kMatchTol; }

Complex pow_nonneg(Complex base, int exponent) {
    Complex result(1.0, 0.0);
    for (int k = 0; k < exponent; ++k) result *= base;
    return result;
}

void require_plane(const InnerProductSpec& spec, const char* what) {
    if (spec.space().kind() != SpaceKind::Plane) {
        std::ostringstream msg;
        msg << what << " is defined on the plane space only (got "
            << to_string(spec.space().kind()) << ")";
        throw std::invalid_argument(msg.str());
    }
}

}

MoebiusMap::MoebiusMap(double a, double b, double c, double d, int weight)
    : a_(a), b_(b), c_(c), d_(d), weight_(weight) {
    const double det = a * d - b * c;
    if (std::abs(det - 1.0) > kMatchTol) {
        std::ostringstream msg;
        msg << "Moebius matrix must have determinant 1 (got " << det << ")";
        throw std::invalid_argument(msg.str());
    }
    if (weight < 0)
        throw std::invalid_argument("pullback weight must be nonnegative");
}

MoebiusMap MoebiusMap::identity(int weight) { return MoebiusMap(1.0, 0.0, 0.0, 1.0, weight); }

MoebiusMap MoebiusMap::duality_s(int weight) { return MoebiusMap(0.0, -1.0, 1.0, 0.0, weight); }

MoebiusMap MoebiusMap::translation(double b, int weight) {
    return MoebiusMap(1.0, b, 0.0, 1.0, weight);
}

MoebiusMap MoebiusMap::scaling(double a, int weight) {
    if (a == 0.0) throw std::invalid_argument("scaling factor must be nonzero");
    return MoebiusMap(a, 0.0, 0.0, 1.0 / a, weight);
}

Complex MoebiusMap::apply(Complex z) const { return (a_ * z + b_) / (c_ * z + d_); }

double MoebiusMap::pole() const {
    if (!has_pole()) throw std::invalid_argument("affine maps have no pole");
    return -d_ / c_;
}

Complex MoebiusMap::cocycle(Complex z) const {
    return Complex(1.0, 0.0) / pow_nonneg(c_ * z + d_, weight_);
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& other) const {
    if (weight_ != other.weight_)
        throw std::invalid_argument("composed maps must share the pullback weight");
    return MoebiusMap(a_ * other.a_ + b_ * other.c_, a_ * other.b_ + b_ * other.d_,
                      c_ * other.a_ + d_ * other.c_, c_ * other.b_ + d_ * other.d_, weight_);
}

std::string to_string(MapClass value) {
    switch (value) {
        case MapClass::Identity: return "identity";
        case MapClass::Affine: return "affine";
        case MapClass::DualityS: return "dualityS";
        case MapClass::General: return "general";
    }
    throw std::invalid_argument("unknown map class");
}

MapClass classify(const MoebiusMap& map) {
    const double a = map.a(), b = map.b(), c = map.c(), d = map.d();
    const bool plus_identity = near(a, 1.0) && near(d, 1.0) && near(b, 0.0) && near(c, 0.0);
    const bool minus_identity = near(a, -1.0) && near(d, -1.0) && near(b, 0.0) && near(c, 0.0);
    if (plus_identity || minus_identity) return MapClass::Identity;
    const bool plus_s = near(a, 0.0) && near(d, 0.0) && near(b, -1.0) && near(c, 1.0);
    const bool minus_s = near(a, 0.0) && near(d, 0.0) && near(b, 1.0) && near(c, -1.0);
    if (plus_s || minus_s) return MapClass::DualityS;
    if (near(c, 0.0)) return MapClass::Affine;
    return MapClass::General;
}

ComplexVector node_points(const QuadratureRule& rule) {
    const int radial = static_cast<int>(rule.radial_nodes().size());
    const int angular = rule.angular_order();
    ComplexVector points(radial * angular);
    for (int i = 0; i < radial; ++i)
        for (int j = 0; j < angular; ++j) points(i * angular + j) = rule.node(i, j);
    return points;
}

std::function<Complex(Complex)> transformed(const MoebiusMap& map,
                                            std::function<Complex(Complex)> f) {
    return [map, f = std::move(f)](Complex z) { return map.cocycle(z) * f(map.apply(z)); };
}

SampledFunction pullback(const MoebiusMap& map, const QuadratureRule& rule,
                         const std::function<Complex(Complex)>& f) {
    SampledFunction result;
    result.points = node_points(rule);
    const int count = static_cast<int>(result.points.size());
    if (map.has_pole()) {
        const Complex pole(map.pole(), 0.0);
        std::ostringstream offenders;
        int offending = 0;
        for (int i = 0; i < count; ++i)
            if (std::abs(result.points(i) - pole) <= 1e-8) {
                if (offending < 4)
                    offenders << (offending ? ", " : "") << "(" << result.points(i).real()
                              << ", " << result.points(i).imag() << ")";
                ++offending;
            }
        if (offending > 0) {
            std::ostringstream msg;
            msg << offending << " sample point(s) within 1e-8 of the pole at "
                << map.pole() << ": " << offenders.str();
            throw std::invalid_argument(msg.str());
        }
    }
    const auto g = transformed(map, f);
    result.values.resize(count);
    for (int i = 0; i < count; ++i) {
        const Complex v = g(result.points(i));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream msg;
            msg << "transformed function is not finite at sample point ("
                << result.points(i).real() << ", " << result.points(i).imag() << ")";
            throw std::runtime_error(msg.str());
        }
        result.values(i) = v;
    }
    return result;
}

SampledFunction pullback(const MoebiusMap& map, const QuadratureRule& rule,
                         const AnalyticFunction& f) {
    return pullback(map, rule, std::function<Complex(Complex)>(
                                   [&f](Complex z) { return f(z); }));
}

AnalyticFunction refit(const InnerProductSpec& spec, const SampledFunction& sampled,
                       int max_degree) {
    const QuadratureRule& rule = spec.rule();
    const int radial = static_cast<int>(rule.radial_nodes().size());
    const int angular = rule.angular_order();
    const int count = radial * angular;
    if (static_cast<int>(sampled.points.size()) != count ||
        sampled.values.size() != sampled.points.size())
        throw std::invalid_argument("sample layout does not match the spec's quadrature rule");
    for (int i : {0, count - 1})
        if (std::abs(sampled.points(i) - rule.node(i / angular, i % angular)) > 1e-12)
            throw std::invalid_argument("sample points do not match the spec's quadrature nodes");

    const auto basis = orthonormal_basis(spec, max_degree);
    const int dim = max_degree + 1;
    ComplexMatrix design(count, dim);
    RealVector weights(count);
    for (int i = 0; i < radial; ++i)
        for (int j = 0; j < angular; ++j) {
            const int row = i * angular + j;
            const Complex z = sampled.points(row);
            weights(row) = rule.node_weight(i, j);
            for (int m = 0; m < dim; ++m) design(row, m) = basis[m](z);
        }
    ComplexMatrix weighted = design;
    for (int row = 0; row < count; ++row) weighted.row(row) *= weights(row);
    const ComplexMatrix normal = design.adjoint() * weighted;
    const ComplexVector rhs = weighted.adjoint() * sampled.values;

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(normal);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("refit normal-matrix eigensolve failed");
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > 1e8) {
        std::ostringstream msg;
        msg << "refit normal matrix is ill-conditioned (eigenvalue range [" << lo << ", "
            << hi << "])";
        throw std::runtime_error(msg.str());
    }
    const ComplexVector alpha = Eigen::LLT<ComplexMatrix>(normal).solve(rhs);

    AnalyticFunction result = AnalyticFunction::zero(max_degree);
    for (int m = 0; m < dim; ++m) result = result + alpha(m) * basis[m];
    return result;
}

ComplexMatrix transformed_annihilation(const InnerProductSpec& spec, const MoebiusMap& map,
                                       int truncation) {
    require_plane(spec, "transformed annihilation operator");
    if (truncation < 1)
        throw std::invalid_argument("operator truncation must be at least 1");
    const GramMatrix gram = gram_matrix(spec, truncation);
    const double sqrt_hbar = std::sqrt(spec.hbar());
    const double c = map.c(), d = map.d();
    const int w = map.weight();
    ComplexMatrix op = ComplexMatrix::Zero(truncation + 1, truncation + 1);
    for (int n = 0; n <= truncation; ++n) {
        if (n >= 1)
            op(n - 1, n) = sqrt_hbar * n * d * d *
                           std::sqrt(gram.diagonal(n - 1) / gram.diagonal(n));
        op(n, n) = sqrt_hbar * (2.0 * n + w) * c * d;
        if (n + 1 <= truncation)
            op(n + 1, n) = sqrt_hbar * (n + w) * c * c *
                           std::sqrt(gram.diagonal(n + 1) / gram.diagonal(n));
    }
    return op;
}

namespace {

double min_eigen_residual(const ComplexMatrix& op, const ComplexVector& alpha) {
    const double norm2 = alpha.squaredNorm();
    if (!(norm2 > 1e-300))
        throw std::runtime_error("state vector is numerically zero");
    const ComplexVector image = op * alpha;
    const Complex mu = alpha.dot(image) / norm2;
    return (image - mu * alpha).norm() / std::sqrt(norm2);
}

ComplexVector model_onb_coordinates(const GramMatrix& gram, const AnalyticFunction& f) {
    const int degree = f.truncation_degree();
    ComplexVector alpha(degree + 1);
    for (int m = 0; m <= degree; ++m)
        alpha(m) = f.coefficient(m) * std::sqrt(gram.diagonal(m));
    return alpha;
}

}

double coherence_residual(const InnerProductSpec& spec, const MoebiusMap& map, Complex label,
                          int truncation) {
    require_plane(spec, "coherence residual");
    const CoherentState state = coherent_state(spec, label, truncation);
    const GramMatrix gram = gram_matrix(spec, truncation);
    if (!map.has_pole()) {
        const SampledFunction sampled = pullback(map, spec.rule(), state.vector());
        const AnalyticFunction refitted = refit(spec, sampled, truncation);
        const ComplexMatrix a = ladder_operators(spec, truncation).annihilation;
        return min_eigen_residual(a, model_onb_coordinates(gram, refitted));
    }
    const ComplexMatrix a_tilde = transformed_annihilation(spec, map, truncation);
    return min_eigen_residual(a_tilde, model_onb_coordinates(gram, state.vector()));
}

DualityReport duality_report(const InnerProductSpec& spec, const MoebiusMap& map, Complex label,
                             int truncation) {
    DualityReport report{map, label, truncation, classify(map), 0.0, 0.0};
    report.residual = coherence_residual(spec, map, label, truncation);
    report.baseline_residual =
        coherence_residual(spec, MoebiusMap::identity(map.weight()), label, truncation);
    return report;
}

}
