#include <berezin/semiclassical.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace berezin {

namespace {

int kernel_degree(const PhaseSpace& space, double inv_hbar) {
    if (space.kind() == SpaceKind::Sphere)
        return static_cast<int>(std::round(inv_hbar));
    return 40;
}

}

double scaled_log_overlap(const InnerProductSpec& spec, Complex u, Complex v) {
    if (u == v) {
        if (!spec.space().contains(u))
            throw std::invalid_argument("overlap label lies outside the chart domain");
        return 0.0;
    }
    const int degree = std::min(spec.max_degree(), kernel_degree(spec.space(), spec.inv_hbar()));
    const Complex k_uv = reproducing_kernel(spec, u, v, degree);
    const double k_uu = reproducing_kernel(spec, u, u, degree).real();
    const double k_vv = reproducing_kernel(spec, v, v, degree).real();
    if (!(k_uu > 0.0 && k_vv > 0.0))
        throw std::runtime_error("kernel diagonal is not positive");
    const double mag = std::abs(k_uv);
    if (mag == 0.0) return std::numeric_limits<double>::infinity();
    const double log_abs2 = 2.0 * std::log(mag) - std::log(k_uu) - std::log(k_vv);
    return -log_abs2 / spec.inv_hbar();
}

SweepResult run_sweep(const SemiclassicalSweep& sweep) {
    const size_t steps = sweep.inv_hbar_sequence.size();
    if (steps < 3)
        throw std::invalid_argument("sweep needs at least three 1/hbar values");
    for (size_t k = 1; k < steps; ++k)
        if (!(sweep.inv_hbar_sequence[k] > sweep.inv_hbar_sequence[k - 1]))
            throw std::invalid_argument("sweep 1/hbar sequence must be strictly increasing");
    if (sweep.probe_labels.empty())
        throw std::invalid_argument("sweep needs at least one probe pair");

    const size_t pairs = sweep.probe_labels.size();
    std::vector<std::vector<double>> values(pairs);
    SweepResult result;
    for (size_t k = 0; k < steps; ++k) {
        const double inv_hbar = sweep.inv_hbar_sequence[k];
        InnerProductSpec spec = [&] {
            try {
                return InnerProductSpec::make(sweep.space, inv_hbar,
                                              kernel_degree(sweep.space, inv_hbar));
            } catch (const std::invalid_argument& e) {
                std::ostringstream msg;
                msg << "sweep at inv_hbar=" << inv_hbar << ": " << e.what();
                throw std::invalid_argument(msg.str());
            }
        }();
        for (size_t p = 0; p < pairs; ++p) {
            const auto& [u, v] = sweep.probe_labels[p];
            SweepRow row;
            row.inv_hbar = inv_hbar;
            row.pair_index = static_cast<int>(p);
            row.u = u;
            row.v = v;
            try {
                row.scaled_log_overlap = scaled_log_overlap(spec, u, v);
            } catch (const std::invalid_argument& e) {
                std::ostringstream msg;
                msg << "sweep at inv_hbar=" << inv_hbar << ", pair #" << p << ": " << e.what();
                throw std::invalid_argument(msg.str());
            } catch (const std::runtime_error& e) {
                std::ostringstream msg;
                msg << "sweep at inv_hbar=" << inv_hbar << ", pair #" << p << ": " << e.what();
                throw std::runtime_error(msg.str());
            }
            if (k > 0)
                row.diff_to_previous = row.scaled_log_overlap - values[p].back();
            values[p].push_back(row.scaled_log_overlap);
            result.rows.push_back(row);
        }
    }

    const double floor = 1e-12;
    for (size_t p = 0; p < pairs; ++p) {
        bool convergent = true;
        double previous = std::numeric_limits<double>::infinity();
        for (size_t k = 1; k < steps; ++k) {
            const double diff = std::abs(values[p][k] - values[p][k - 1]);
            if (diff > previous && diff > floor) {
                convergent = false;
                break;
            }
            previous = diff;
        }
        result.convergent.push_back(convergent);
    }
    return result;
}

}
