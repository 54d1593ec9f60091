#include "pdclab/optics.hpp"

#include "pdclab/error.hpp"

#include <cmath>

namespace pdclab {

namespace {

double binomial(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

bool has_split_photons(const Occupation& occ)
{
    return occ.total_on(Side::A, Port::A1) + occ.total_on(Side::A, Port::A2) > 0;
}

} // namespace

FockVector split_side_a(const FockVector& state)
{
    FockVector::Map out;
    for (const auto& [occ, amp] : state.entries()) {
        if (has_split_photons(occ))
            throw PreconditionError("split_side_a: input already has beamsplitter-port photons");

        // Partial expansion: occupations with their accumulated amplitude.
        std::vector<Occupation::Entry> untouched;
        std::vector<std::pair<int, int>> sources; // (internal, n)
        for (const auto& e : occ.entries()) {
            if (e.first.side == Side::A)
                sources.emplace_back(e.first.internal, e.second);
            else
                untouched.push_back(e);
        }

        std::vector<std::pair<std::vector<Occupation::Entry>, Amplitude>> partial{{untouched, amp}};
        for (const auto& [i, n] : sources) {
            // |n> -> sum_k sqrt(C(n,k)) / 2^{n/2} |k>_{A1} |n-k>_{A2}
            std::vector<std::pair<std::vector<Occupation::Entry>, Amplitude>> next;
            const double norm = std::pow(2.0, -0.5 * n);
            for (const auto& [entries, a] : partial) {
                for (int k = 0; k <= n; ++k) {
                    auto e = entries;
                    e.emplace_back(ModeId::a(i, Port::A1), k);
                    e.emplace_back(ModeId::a(i, Port::A2), n - k);
                    next.emplace_back(std::move(e), a * norm * std::sqrt(binomial(n, k)));
                }
            }
            partial = std::move(next);
        }
        for (auto& [entries, a] : partial)
            out[Occupation::from(std::move(entries))] += a;
    }
    return FockVector::from_entries(state.dimension(), std::move(out));
}

FockVector coincidence_component(const FockVector& state)
{
    for (const auto& kv : state.entries())
        if (kv.first.total_on(Side::A, Port::Source) > 0)
            throw PreconditionError("coincidence_component: state has unsplit side-A photons");
    return filter_by_port_counts(state, {{Port::A1, 1}, {Port::A2, 1}});
}

} // namespace pdclab
