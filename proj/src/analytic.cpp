#include <berezin/analytic.hpp>

#include <algorithm>
#include <stdexcept>

namespace berezin {

AnalyticFunction::AnalyticFunction(ComplexVector coefficients)
    : coefficients_(std::move(coefficients)) {
    if (coefficients_.size() == 0)
        throw std::invalid_argument("AnalyticFunction needs at least the constant coefficient");
}

AnalyticFunction AnalyticFunction::zero(int truncation_degree) {
    if (truncation_degree < 0)
        throw std::invalid_argument("truncation degree must be nonnegative");
    return AnalyticFunction(ComplexVector::Zero(truncation_degree + 1));
}

AnalyticFunction AnalyticFunction::monomial(int degree, Complex scale) {
    if (degree < 0)
        throw std::invalid_argument("monomial degree must be nonnegative");
    ComplexVector c = ComplexVector::Zero(degree + 1);
    c(degree) = scale;
    return AnalyticFunction(std::move(c));
}

Complex AnalyticFunction::coefficient(int degree) const {
    if (degree < 0)
        throw std::invalid_argument("coefficient degree must be nonnegative");
    if (degree > truncation_degree()) return Complex(0.0, 0.0);
    return coefficients_(degree);
}

int AnalyticFunction::effective_degree() const {
    for (int d = truncation_degree(); d >= 0; --d)
        if (coefficients_(d) != Complex(0.0, 0.0)) return d;
    return -1;
}

Complex AnalyticFunction::operator()(Complex z) const {
    Complex acc(0.0, 0.0);
    for (int d = truncation_degree(); d >= 0; --d)
        acc = acc * z + coefficients_(d);
    return acc;
}

AnalyticFunction AnalyticFunction::derivative() const {
    if (truncation_degree() == 0) return zero(0);
    ComplexVector c(coefficients_.size() - 1);
    for (int d = 1; d <= truncation_degree(); ++d)
        c(d - 1) = static_cast<double>(d) * coefficients_(d);
    return AnalyticFunction(std::move(c));
}

AnalyticFunction AnalyticFunction::resized(int truncation_degree) const {
    if (truncation_degree < 0)
        throw std::invalid_argument("truncation degree must be nonnegative");
    ComplexVector c = ComplexVector::Zero(truncation_degree + 1);
    const int copy = std::min(truncation_degree, this->truncation_degree());
    c.head(copy + 1) = coefficients_.head(copy + 1);
    return AnalyticFunction(std::move(c));
}

AnalyticFunction operator+(const AnalyticFunction& f, const AnalyticFunction& g) {
    const int degree = std::max(f.truncation_degree(), g.truncation_degree());
    ComplexVector c = ComplexVector::Zero(degree + 1);
    c.head(f.coefficients_.size()) += f.coefficients_;
    c.head(g.coefficients_.size()) += g.coefficients_;
    return AnalyticFunction(std::move(c));
}

AnalyticFunction operator-(const AnalyticFunction& f, const AnalyticFunction& g) {
    return f + (Complex(-1.0, 0.0) * g);
}

AnalyticFunction operator*(Complex scale, const AnalyticFunction& f) {
    return AnalyticFunction(scale * f.coefficients_);
}

}
