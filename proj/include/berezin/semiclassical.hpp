#ifndef BEREZIN_SEMICLASSICAL_HPP
#define BEREZIN_SEMICLASSICAL_HPP

#include <berezin/hilbert.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace berezin {

struct SemiclassicalSweep {
    PhaseSpace space = PhaseSpace::plane();
    std::vector<double> inv_hbar_sequence;
    std::vector<std::pair<Complex, Complex>> probe_labels;
};

struct SweepRow {
    double inv_hbar = 0.0;
    int pair_index = 0;
    Complex u;
    Complex v;
    double scaled_log_overlap = 0.0;
    std::optional<double> diff_to_previous;
};

struct SweepResult {
    std::vector<SweepRow> rows;       // ordered by (inv_hbar, pair index)
    std::vector<bool> convergent;     // one verdict per probe pair
};

/// -(1/inv_hbar) * log |<u|v>|^2 of the normalized coherent overlap,
/// computed from kernel values. Symmetric in (u, v), zero iff u = v;
/// a vanishing overlap is reported as +infinity.
double scaled_log_overlap(const InnerProductSpec& spec, Complex u, Complex v);

/// Evaluates every (inv_hbar, pair) cell and declares a pair semiclassically
/// convergent when successive differences shrink monotonically, with
/// absolute floor 1e-12 to absorb exactly-constant sequences.
SweepResult run_sweep(const SemiclassicalSweep& sweep);

}

#endif
