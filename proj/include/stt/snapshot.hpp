#pragma once

// "STF1" binary field snapshots.
//
//   bytes 0..3   magic "STF1"
//   u32          domain kind (0 = rectangle, 1 = strip)
//   u32          staggering (0 center, 1 x-face, 2 z-face, 3 flow map)
//   u32 nx, u32 nz
//   f64          x extent
//   f64[]        samples, x-major with z inner; a flow map stores two
//                interleaved channels (dx, dz) per cell center
//
// All integers and doubles are little-endian regardless of host order.

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "stt/domain.hpp"

namespace stt {

class SnapshotError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SnapshotHeader {
    DomainKind kind = DomainKind::BoundedRectangle;
    Staggering staggering = Staggering::Center;
    std::uint32_t nx = 0;
    std::uint32_t nz = 0;
    double x_extent = 0.0;
};

struct RawSnapshot {
    SnapshotHeader header;
    std::vector<double> values;

    GridSpec grid() const;
};

/// Number of f64 payload values implied by a header.
std::size_t payload_count(const SnapshotHeader& h);

void write_raw_snapshot(std::ostream& os, const SnapshotHeader& h, std::span<const double> values);
RawSnapshot read_raw_snapshot(std::istream& is);

void write_snapshot(std::ostream& os, const ScalarField& f);
ScalarField read_scalar_snapshot(std::istream& is);

void save_snapshot(const std::filesystem::path& path, const ScalarField& f);
ScalarField load_scalar_snapshot(const std::filesystem::path& path);

}  // namespace stt
