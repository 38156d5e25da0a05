#ifndef BEREZIN_COHERENT_HPP
#define BEREZIN_COHERENT_HPP

#include <berezin/hilbert.hpp>

namespace berezin {

/// Annihilation/creation pair on the orthonormal basis of the plane space,
/// truncated at degree T, with position and momentum derived at the spec's
/// hbar. Truncation corrupts only the top corner of products.
struct LadderOperators {
    ComplexMatrix annihilation;
    ComplexMatrix creation;
    ComplexMatrix position;
    ComplexMatrix momentum;
    int truncation = 0;
    double hbar = 1.0;
};

/// Normalized reproducing kernel pinned at a phase-space label.
class CoherentState {
public:
    CoherentState(InnerProductSpec spec, Complex label, AnalyticFunction vector);

    const InnerProductSpec& spec() const { return spec_; }
    Complex label() const { return label_; }
    const AnalyticFunction& vector() const { return vector_; }

private:
    InnerProductSpec spec_;
    Complex label_;
    AnalyticFunction vector_;
};

/// Throws std::invalid_argument for non-plane specs; the ladder algebra is
/// defined on the plane only.
LadderOperators ladder_operators(const InnerProductSpec& spec, int truncation);

/// K(., label)/sqrt(K(label, label)) truncated at the given degree.
CoherentState coherent_state(const InnerProductSpec& spec, Complex label, int truncation);

/// <s1|s2> via the shared inner product. Throws std::invalid_argument when
/// the states live in different specs.
Complex overlap(const CoherentState& s1, const CoherentState& s2);

/// ||(a - mu) psi|| / ||psi|| with the canonical eigenvalue
/// mu = conj(label)/sqrt(hbar); plane only.
double annihilation_eigen_residual(const CoherentState& state);

/// Max-norm distance from the identity of the label-integrated projector
/// sum over the coherent family, on degrees <= max_degree.
double resolution_of_identity_residual(const InnerProductSpec& spec, int max_degree);

}

#endif
