#ifndef BEREZIN_ANALYTIC_HPP
#define BEREZIN_ANALYTIC_HPP

#include <berezin/types.hpp>

namespace berezin {

/// Polynomial truncation of an analytic function on a single chart,
/// stored as monomial coefficients c_0..c_T. Coefficients beyond the
/// truncation degree are identically zero.
class AnalyticFunction {
public:
    explicit AnalyticFunction(ComplexVector coefficients);

    static AnalyticFunction zero(int truncation_degree);
    static AnalyticFunction monomial(int degree, Complex scale = Complex(1.0, 0.0));

    int truncation_degree() const { return static_cast<int>(coefficients_.size()) - 1; }
    const ComplexVector& coefficients() const { return coefficients_; }
    Complex coefficient(int degree) const;

    /// Highest degree with a nonzero coefficient; -1 for the zero function.
    int effective_degree() const;

    Complex operator()(Complex z) const;

    AnalyticFunction derivative() const;

    /// Truncates or zero-pads to the requested degree.
    AnalyticFunction resized(int truncation_degree) const;

    friend AnalyticFunction operator+(const AnalyticFunction& f, const AnalyticFunction& g);
    friend AnalyticFunction operator-(const AnalyticFunction& f, const AnalyticFunction& g);
    friend AnalyticFunction operator*(Complex scale, const AnalyticFunction& f);

private:
    ComplexVector coefficients_;
};

}

#endif
