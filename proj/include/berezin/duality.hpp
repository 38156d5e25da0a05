#ifndef BEREZIN_DUALITY_HPP
#define BEREZIN_DUALITY_HPP

#include <berezin/coherent.hpp>
#include <berezin/hilbert.hpp>

#include <functional>
#include <string>

namespace berezin {

/// Unimodular real Moebius map z -> (az+b)/(cz+d) acting on wavefunctions
/// as the weight-w pullback psi -> (cz+d)^{-w} psi((az+b)/(cz+d)).
class MoebiusMap {
public:
    MoebiusMap(double a, double b, double c, double d, int weight);

    static MoebiusMap identity(int weight = 0);
    static MoebiusMap duality_s(int weight = 0);       // z -> -1/z
    static MoebiusMap translation(double b, int weight = 0);
    static MoebiusMap scaling(double a, int weight = 0);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    int weight() const { return weight_; }

    Complex apply(Complex z) const;
    bool has_pole() const { return c_ != 0.0; }
    double pole() const;
    /// (cz+d)^{-weight}
    Complex cocycle(Complex z) const;

    /// this after other: (this.compose(other))(z) = this(other(z)); the
    /// matrix is the product of the two matrices. Weights must agree.
    MoebiusMap compose(const MoebiusMap& other) const;

private:
    double a_, b_, c_, d_;
    int weight_;
};

enum class MapClass { Identity, Affine, DualityS, General };

std::string to_string(MapClass value);

MapClass classify(const MoebiusMap& map);

struct SampledFunction {
    ComplexVector points;
    ComplexVector values;
};

/// Quadrature nodes flattened radial-major; the point set SampledFunction
/// instances are defined on.
ComplexVector node_points(const QuadratureRule& rule);

/// The transformed function as an evaluable: z -> cocycle(z) * f(map(z)).
std::function<Complex(Complex)> transformed(const MoebiusMap& map,
                                            std::function<Complex(Complex)> f);

/// Samples the transformed function at the rule's nodes. Throws
/// std::invalid_argument when a node is within 1e-8 of the map's pole and
/// std::runtime_error on non-finite values.
SampledFunction pullback(const MoebiusMap& map, const QuadratureRule& rule,
                         const std::function<Complex(Complex)>& f);
SampledFunction pullback(const MoebiusMap& map, const QuadratureRule& rule,
                         const AnalyticFunction& f);

/// Measure-weighted least-squares refit of samples onto degrees
/// <= max_degree, solved in the orthonormal basis. Throws
/// std::runtime_error when the normal matrix is ill-conditioned.
AnalyticFunction refit(const InnerProductSpec& spec, const SampledFunction& sampled,
                       int max_degree);

/// Annihilation operator of the transformed frame pulled back to the
/// original coordinates, sqrt(hbar) [ (cz+d)^2 d/dz + w c (cz+d) ], on the
/// orthonormal basis truncated at the given degree. Plane only.
ComplexMatrix transformed_annihilation(const InnerProductSpec& spec, const MoebiusMap& map,
                                       int truncation);

/// Best-case annihilation-eigenstate residual of the coherent state at
/// `label` viewed from the vacuum defined by `map`: min over mu of
/// ||(a_tilde - mu) psi|| / ||psi||. Affine maps (c = 0) stay inside the
/// polynomial class, so the state is pulled back, refitted and tested
/// against the plane annihilation operator; maps with c != 0 leave the
/// class and are tested against the transformed operator directly. Plane
/// only.
double coherence_residual(const InnerProductSpec& spec, const MoebiusMap& map, Complex label,
                          int truncation);

struct DualityReport {
    MoebiusMap map;
    Complex label;
    int truncation = 0;
    MapClass classification = MapClass::Identity;
    double residual = 0.0;
    double baseline_residual = 0.0;
};

/// Runs coherence_residual for the map and for the identity baseline at the
/// same weight.
DualityReport duality_report(const InnerProductSpec& spec, const MoebiusMap& map, Complex label,
                             int truncation);

}

#endif
