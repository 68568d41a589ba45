#include "qsim/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "qsim/error.hpp"

namespace qsim {

double RandomSource::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::uniform_int(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) {
        throw Error(ErrorKind::InvalidInput, "uniform_int: empty range");
    }
    const std::uint64_t span = hi - lo;
    if (span == ~std::uint64_t{0}) {
        return engine_();
    }
    const std::uint64_t range = span + 1;
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range);
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return lo + x % range;
}

namespace {

void require_normalized(const StateVector& v) {
    const double n2 = v.norm_squared();
    if (std::abs(n2 - 1.0) > kUnitaryTol) {
        throw Error(ErrorKind::NotNormalized,
                    "state has squared norm " + std::to_string(n2) + ", expected 1");
    }
}

struct WireSelection {
    std::vector<bool> selected;
    std::vector<std::size_t> ordered; // ascending register order
};

WireSelection select_wires(const StateVector& v, std::span<const std::size_t> wires) {
    if (wires.empty()) {
        throw Error(ErrorKind::EmptyWireSet, "no wires to measure");
    }
    WireSelection sel{std::vector<bool>(v.dims().size(), false), {}};
    for (auto w : wires) {
        if (w >= v.dims().size()) {
            throw Error(ErrorKind::InvalidWire,
                        "wire " + std::to_string(w) + " is outside the register");
        }
        if (sel.selected[w]) {
            throw Error(ErrorKind::InvalidWire, "wire " + std::to_string(w) + " listed twice");
        }
        sel.selected[w] = true;
    }
    for (std::size_t w = 0; w < sel.selected.size(); ++w) {
        if (sel.selected[w]) {
            sel.ordered.push_back(w);
        }
    }
    return sel;
}

// Joint index of the selected wires for every full basis index.
std::vector<std::size_t> outcome_of_each_index(const StateVector& v, const WireSelection& sel,
                                               std::size_t& outcome_count) {
    const auto& dims = v.dims();
    outcome_count = 1;
    for (auto w : sel.ordered) {
        outcome_count *= dims[w];
    }
    std::vector<std::size_t> map(v.size());
    std::vector<std::size_t> digits(dims.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t k = 0;
        for (auto w : sel.ordered) {
            k = k * dims[w] + digits[w];
        }
        map[i] = k;
        // Odometer increment, last wire fastest.
        for (std::size_t w = dims.size(); w-- > 0;) {
            if (++digits[w] < dims[w]) {
                break;
            }
            digits[w] = 0;
        }
    }
    return map;
}

} // namespace

std::vector<double> probabilities(const StateVector& v) {
    require_normalized(v);
    std::vector<double> p(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        p[i] = std::norm(v[i]);
    }
    return p;
}

std::size_t cumulative_pick(std::span<const double> probs, double u) {
    if (probs.empty()) {
        throw Error(ErrorKind::InvalidInput, "empty distribution");
    }
    double cum = 0.0;
    std::size_t last_support = probs.size() - 1;
    bool any_support = false;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) {
            continue;
        }
        cum += probs[i];
        last_support = i;
        any_support = true;
        if (cum >= u) {
            return i;
        }
    }
    if (!any_support) {
        throw Error(ErrorKind::NotNormalized, "distribution has no support");
    }
    return last_support;
}

MeasurementOutcome measure_full_at(const StateVector& v, double u) {
    const auto p = probabilities(v);
    const auto i = cumulative_pick(p, u);
    return {i, p[i], StateVector::basis(v.dims(), i)};
}

MeasurementOutcome measure_full(const StateVector& v, RandomSource& rng) {
    return measure_full_at(v, rng.uniform());
}

std::vector<double> marginal_probabilities(const StateVector& v,
                                           std::span<const std::size_t> wires) {
    require_normalized(v);
    const auto sel = select_wires(v, wires);
    std::size_t outcomes = 0;
    const auto map = outcome_of_each_index(v, sel, outcomes);
    std::vector<double> marginal(outcomes, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        marginal[map[i]] += std::norm(v[i]);
    }
    return marginal;
}

MeasurementOutcome measure_partial_at(const StateVector& v, std::span<const std::size_t> wires,
                                      double u) {
    require_normalized(v);
    const auto sel = select_wires(v, wires);
    std::size_t outcomes = 0;
    const auto map = outcome_of_each_index(v, sel, outcomes);
    std::vector<double> marginal(outcomes, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        marginal[map[i]] += std::norm(v[i]);
    }
    const auto k = cumulative_pick(marginal, u);

    const double scale = 1.0 / std::sqrt(marginal[k]);
    std::vector<Complex> amps(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (map[i] == k) {
            amps[i] = v[i] * scale;
        }
    }
    return {k, marginal[k], StateVector(v.dims(), std::move(amps))};
}

MeasurementOutcome measure_partial(const StateVector& v, std::span<const std::size_t> wires,
                                   RandomSource& rng) {
    return measure_partial_at(v, wires, rng.uniform());
}

std::map<std::size_t, std::size_t> sample_histogram(const StateVector& v, std::size_t trials,
                                                    RandomSource& rng) {
    if (trials < 1) {
        throw Error(ErrorKind::InvalidInput, "trials must be at least 1");
    }
    // Every trial measures a fresh copy of v, so the distribution is reused.
    const auto p = probabilities(v);
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t t = 0; t < trials; ++t) {
        ++counts[cumulative_pick(p, rng.uniform())];
    }
    return counts;
}

ChiSquareResult chi_square_test(const std::map<std::size_t, std::size_t>& counts,
                                std::span<const double> expected_probs) {
    std::size_t total = 0;
    for (const auto& [k, c] : counts) {
        if (k >= expected_probs.size()) {
            throw Error(ErrorKind::DimensionMismatch, "count for an index outside the distribution");
        }
        total += c;
    }
    ChiSquareResult result;
    if (total == 0) {
        return result;
    }
    std::size_t cells = 0;
    for (std::size_t k = 0; k < expected_probs.size(); ++k) {
        const auto it = counts.find(k);
        const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        const double expected = expected_probs[k] * static_cast<double>(total);
        if (expected_probs[k] <= 0.0) {
            if (observed > 0.0) {
                result.statistic = std::numeric_limits<double>::infinity();
                result.p_value = 0.0;
                return result;
            }
            continue;
        }
        ++cells;
        result.statistic += (observed - expected) * (observed - expected) / expected;
    }
    result.degrees_of_freedom = cells > 0 ? cells - 1 : 0;
    if (result.degrees_of_freedom == 0) {
        result.p_value = 1.0;
        return result;
    }
    result.p_value = boost::math::gamma_q(static_cast<double>(result.degrees_of_freedom) / 2.0,
                                          result.statistic / 2.0);
    return result;
}

} // namespace qsim
