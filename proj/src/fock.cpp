#include "pdclab/fock.hpp"

#include "pdclab/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pdclab {

namespace {

const char* port_name(Port p)
{
    switch (p) {
    case Port::Source: return "src";
    case Port::A1: return "A1";
    case Port::A2: return "A2";
    }
    return "?";
}

void prune(FockVector::Map& entries)
{
    std::erase_if(entries, [](const auto& kv) { return std::abs(kv.second) <= kPruneTolerance; });
}

} // namespace

std::string to_string(const ModeId& mode)
{
    std::ostringstream os;
    os << (mode.side == Side::A ? 'a' : 'b') << mode.internal;
    if (mode.side == Side::A && mode.port != Port::Source)
        os << '@' << port_name(mode.port);
    return os.str();
}

std::string to_string(const Occupation& occ)
{
    if (occ.is_vacuum())
        return "|vac>";
    std::ostringstream os;
    os << '|';
    bool first = true;
    for (const auto& [mode, n] : occ.entries()) {
        if (!first)
            os << ' ';
        first = false;
        os << to_string(mode) << ':' << n;
    }
    os << '>';
    return os.str();
}

void check_mode(const ModeId& mode, int dimension)
{
    if (mode.internal < 0 || mode.internal >= dimension)
        throw ConfigError("mode " + to_string(mode) + " outside state dimension "
                          + std::to_string(dimension));
    if (mode.side == Side::B && mode.port != Port::Source)
        throw ConfigError("side-B modes carry no beamsplitter port");
}

// ---------------------------------------------------------------------------
// Occupation

Occupation Occupation::from(std::vector<Entry> entries)
{
    std::sort(entries.begin(), entries.end(),
              [](const Entry& l, const Entry& r) { return l.first < r.first; });
    Occupation occ;
    for (const auto& [mode, n] : entries) {
        if (n < 0)
            throw ConfigError("negative photon count on " + to_string(mode));
        if (n == 0)
            continue;
        if (!occ.entries_.empty() && occ.entries_.back().first == mode)
            occ.entries_.back().second += n;
        else
            occ.entries_.emplace_back(mode, n);
    }
    return occ;
}

int Occupation::count(const ModeId& mode) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), mode,
                               [](const Entry& e, const ModeId& m) { return e.first < m; });
    return (it != entries_.end() && it->first == mode) ? it->second : 0;
}

int Occupation::total() const
{
    int sum = 0;
    for (const auto& e : entries_)
        sum += e.second;
    return sum;
}

int Occupation::total_on(Side side, Port port) const
{
    int sum = 0;
    for (const auto& [mode, n] : entries_)
        if (mode.side == side && mode.port == port)
            sum += n;
    return sum;
}

int Occupation::total_on(Side side) const
{
    int sum = 0;
    for (const auto& [mode, n] : entries_)
        if (mode.side == side)
            sum += n;
    return sum;
}

Occupation Occupation::with_added(const ModeId& mode, int n) const
{
    Occupation out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), mode,
                               [](const Entry& e, const ModeId& m) { return e.first < m; });
    if (it != out.entries_.end() && it->first == mode) {
        it->second += n;
        if (it->second < 0)
            throw ConfigError("negative photon count on " + to_string(mode));
        if (it->second == 0)
            out.entries_.erase(it);
    } else if (n > 0) {
        out.entries_.insert(it, Entry{mode, n});
    } else if (n < 0) {
        throw ConfigError("negative photon count on " + to_string(mode));
    }
    return out;
}

// ---------------------------------------------------------------------------
// FockVector

FockVector::FockVector(int dimension) : dimension_(dimension)
{
    if (dimension < 1)
        throw ConfigError("state dimension must be positive");
}

FockVector FockVector::vacuum(int dimension)
{
    return basis(dimension, Occupation{}, 1.0);
}

FockVector FockVector::basis(int dimension, const Occupation& occ, Amplitude amplitude)
{
    Map m;
    m.emplace(occ, amplitude);
    return from_entries(dimension, std::move(m));
}

FockVector FockVector::from_entries(int dimension, Map entries)
{
    FockVector v(dimension);
    for (const auto& [occ, amp] : entries) {
        for (const auto& [mode, n] : occ.entries())
            check_mode(mode, dimension);
        if (occ.total() > kMaxTotalPhotons)
            throw ConfigError("occupation " + to_string(occ) + " exceeds "
                              + std::to_string(kMaxTotalPhotons) + " photons");
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
            throw ConfigError("non-finite amplitude on " + to_string(occ));
    }
    prune(entries);
    v.entries_ = std::move(entries);
    return v;
}

Amplitude FockVector::amplitude(const Occupation& occ) const
{
    auto it = entries_.find(occ);
    return it == entries_.end() ? Amplitude{} : it->second;
}

double FockVector::norm2() const
{
    double sum = 0.0;
    for (const auto& kv : entries_)
        sum += std::norm(kv.second);
    return sum;
}

FockVector FockVector::sector(int n) const
{
    FockVector out(dimension_);
    for (const auto& kv : entries_)
        if (kv.first.total() == n)
            out.entries_.insert(kv);
    return out;
}

// ---------------------------------------------------------------------------
// Operations

FockVector apply_creation(const FockVector& state, const ModeId& mode, int times)
{
    if (times < 1)
        throw ConfigError("creation power must be positive");
    check_mode(mode, state.dimension());

    FockVector::Map out;
    for (const auto& [occ, amp] : state.entries()) {
        const int n = occ.count(mode);
        if (occ.total() + times > kMaxTotalPhotons)
            throw ConfigError("creation would exceed " + std::to_string(kMaxTotalPhotons)
                              + " photons");
        double factor = 1.0;
        for (int k = 1; k <= times; ++k)
            factor *= std::sqrt(static_cast<double>(n + k));
        // Creation is injective on occupations, so no two inputs collide.
        out.emplace(occ.with_added(mode, times), amp * factor);
    }
    return FockVector::from_entries(state.dimension(), std::move(out));
}

FockVector superpose(const std::vector<Term>& terms)
{
    if (terms.empty())
        throw ConfigError("superpose needs at least one term");
    const int d = terms.front().second.dimension();
    FockVector::Map out;
    for (const auto& [coef, vec] : terms) {
        if (vec.dimension() != d)
            throw ConfigError("superpose: mixed state dimensions");
        for (const auto& [occ, amp] : vec.entries())
            out[occ] += coef * amp;
    }
    return FockVector::from_entries(d, std::move(out));
}

Amplitude inner(const FockVector& x, const FockVector& y)
{
    if (x.dimension() != y.dimension())
        throw ConfigError("inner: dimension mismatch");
    const auto& small = x.size() <= y.size() ? x.entries() : y.entries();
    const auto& large = x.size() <= y.size() ? y.entries() : x.entries();
    const bool x_small = x.size() <= y.size();
    Amplitude sum{};
    for (const auto& [occ, amp] : small) {
        auto it = large.find(occ);
        if (it == large.end())
            continue;
        sum += x_small ? std::conj(amp) * it->second : std::conj(it->second) * amp;
    }
    return sum;
}

FockVector filter_by_port_counts(const FockVector& state, const PortCounts& required)
{
    FockVector::Map out;
    for (const auto& kv : state.entries()) {
        const bool keep = std::all_of(required.begin(), required.end(), [&](const auto& req) {
            return kv.first.total_on(Side::A, req.first) == req.second;
        });
        if (keep)
            out.insert(kv);
    }
    return FockVector::from_entries(state.dimension(), std::move(out));
}

} // namespace pdclab
