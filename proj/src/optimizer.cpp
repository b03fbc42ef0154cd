#include "skg/optimizer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace skg {

double unit_gain(double sigma2_ra_i, double sigma2_rb_i) {
    if (!(sigma2_ra_i > 0.0) || !(sigma2_rb_i > 0.0)) {
        throw std::invalid_argument("unit_gain: variances must be positive");
    }
    return sigma2_ra_i * sigma2_rb_i / (sigma2_ra_i + sigma2_rb_i);
}

std::vector<std::uint8_t> random_selection(int n, int m, RngStream& stream) {
    if (m > n || m < 0 || n < 0) {
        throw std::invalid_argument("random_selection: need 0 <= m <= n");
    }
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    // Partial Fisher-Yates: the first m entries end up a uniform m-subset.
    for (int i = 0; i < m; ++i) {
        const int j = i + static_cast<int>(stream.bounded(static_cast<std::uint64_t>(n - i)));
        std::swap(idx[i], idx[j]);
    }
    std::vector<std::uint8_t> switches(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < m; ++i) {
        switches[static_cast<std::size_t>(idx[i])] = 1;
    }
    return switches;
}

SelectionResult select_units(const SystemParams& params,
                             Strategy strategy,
                             RngStream* stream,
                             FormulaVariant variant) {
    params.validate();
    const int n = params.n_units;
    const int m = params.budget;

    SelectionResult result;
    result.strategy = strategy;

    if (strategy == Strategy::Random) {
        if (stream == nullptr) {
            throw std::invalid_argument("select_units: Random strategy needs a stream");
        }
        result.switches = random_selection(n, m, *stream);
    } else {
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return unit_gain(params.sigma2_ra[a], params.sigma2_rb[a]) >
                   unit_gain(params.sigma2_ra[b], params.sigma2_rb[b]);
        });
        if (strategy == Strategy::TopM) {
            result.switches.assign(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < m; ++i) {
                result.switches[static_cast<std::size_t>(order[i])] = 1;
            }
        } else {
            // BestPrefix: best capacity over prefix cardinalities 0..M.
            std::vector<std::uint8_t> prefix(static_cast<std::size_t>(n), 0);
            double best_csk = csk_closed_form(params.sigma2_ab, params.rho, variant);
            int best_j = 0;
            double x = params.sigma2_ab;
            for (int j = 1; j <= m; ++j) {
                const int u = order[j - 1];
                x += unit_gain(params.sigma2_ra[u], params.sigma2_rb[u]);
                const double csk = csk_closed_form(x, params.rho, variant);
                if (csk > best_csk) {
                    best_csk = csk;
                    best_j = j;
                }
            }
            for (int i = 0; i < best_j; ++i) {
                prefix[static_cast<std::size_t>(order[i])] = 1;
            }
            result.switches = std::move(prefix);
        }
    }

    result.achieved_x = effective_variance(params, result.switches);
    result.achieved_csk = csk_closed_form(result.achieved_x, params.rho, variant);
    return result;
}

}  // namespace skg
