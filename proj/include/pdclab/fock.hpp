#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pdclab {

using Amplitude = std::complex<double>;

// Amplitudes with magnitude at or below this are dropped from sparse maps.
inline constexpr double kPruneTolerance = 1e-15;

// Upper bound on photons in any stored occupation (2 x highest source order).
inline constexpr int kMaxTotalPhotons = 6;

enum class Side : std::uint8_t { A, B };

// A1/A2 are the beamsplitter outputs and only exist on side A.
enum class Port : std::uint8_t { Source, A1, A2 };

struct ModeId
{
    Side side = Side::A;
    Port port = Port::Source;
    int internal = 0;

    static constexpr ModeId a(int i, Port p = Port::Source) { return {Side::A, p, i}; }
    static constexpr ModeId b(int i) { return {Side::B, Port::Source, i}; }

    // Canonical order: (side, port, internal).
    auto operator<=>(const ModeId&) const = default;
};

std::string to_string(const ModeId& mode);

/// Photon counts per mode, sorted by mode, no zero counts.
class Occupation
{
public:
    using Entry = std::pair<ModeId, int>;

    Occupation() = default;

    /// Canonicalizes: merges repeated modes, drops zero counts. Negative counts throw.
    static Occupation from(std::vector<Entry> entries);

    int count(const ModeId& mode) const;
    int total() const;
    int total_on(Side side, Port port) const;
    int total_on(Side side) const;

    Occupation with_added(const ModeId& mode, int n) const;

    std::span<const Entry> entries() const { return entries_; }
    bool is_vacuum() const { return entries_.empty(); }

    auto operator<=>(const Occupation&) const = default;
    bool operator==(const Occupation&) const = default;

private:
    std::vector<Entry> entries_;
};

std::string to_string(const Occupation& occ);

/// Sparse bosonic state vector over labeled modes with internal dimension d.
/// Immutable once built; operations return new vectors.
class FockVector
{
public:
    using Map = std::map<Occupation, Amplitude>;

    explicit FockVector(int dimension);

    static FockVector vacuum(int dimension);
    static FockVector basis(int dimension, const Occupation& occ, Amplitude amplitude = 1.0);

    /// Prunes entries below kPruneTolerance and validates every mode against the dimension.
    static FockVector from_entries(int dimension, Map entries);

    int dimension() const { return dimension_; }
    const Map& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    Amplitude amplitude(const Occupation& occ) const;
    double norm2() const;

    /// Keeps only entries whose total photon number equals n.
    FockVector sector(int n) const;

    bool operator==(const FockVector&) const = default;

private:
    int dimension_;
    Map entries_;
};

using Term = std::pair<Amplitude, FockVector>;
using PortCounts = std::map<Port, int>;

/// Applies (mode^dagger)^times with the sqrt((n+1)...(n+times)) bosonic factor.
FockVector apply_creation(const FockVector& state, const ModeId& mode, int times = 1);

/// Linear combination of vectors sharing one dimension.
FockVector superpose(const std::vector<Term>& terms);

/// <x|y>, antilinear in x.
Amplitude inner(const FockVector& x, const FockVector& y);

/// Unrenormalized projection onto entries whose side-A photon count in each
/// listed port matches exactly. Ports not listed and side B are unconstrained.
FockVector filter_by_port_counts(const FockVector& state, const PortCounts& required);

void check_mode(const ModeId& mode, int dimension);

} // namespace pdclab
