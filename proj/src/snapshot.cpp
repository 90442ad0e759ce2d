#include "stt/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace stt {

namespace {

constexpr std::array<char, 4> kMagic{'S', 'T', 'F', '1'};

template <class T>
void put_le(std::ostream& os, T value) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    const U bits = std::bit_cast<U>(value);
    std::array<char, sizeof(U)> buf{};
    for (std::size_t b = 0; b < sizeof(U); ++b) buf[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    os.write(buf.data(), buf.size());
}

template <class T>
T get_le(std::istream& is) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    std::array<unsigned char, sizeof(U)> buf{};
    is.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (!is) throw SnapshotError("truncated STF1 stream");
    U bits = 0;
    for (std::size_t b = 0; b < sizeof(U); ++b) bits |= static_cast<U>(buf[b]) << (8 * b);
    return std::bit_cast<T>(bits);
}

}  // namespace

GridSpec RawSnapshot::grid() const {
    const DomainSpec d = header.kind == DomainKind::PeriodicStrip ? DomainSpec::strip(header.x_extent)
                                                                  : DomainSpec::rectangle(header.x_extent);
    return make_grid(d, static_cast<int>(header.nx), static_cast<int>(header.nz));
}

std::size_t payload_count(const SnapshotHeader& h) {
    GridSpec g;
    g.domain.kind = h.kind;
    g.nx = static_cast<int>(h.nx);
    g.nz = static_cast<int>(h.nz);
    const std::size_t n = static_cast<std::size_t>(x_samples(g, h.staggering)) *
                          static_cast<std::size_t>(z_samples(g, h.staggering));
    return h.staggering == Staggering::FlowMap ? 2 * n : n;
}

void write_raw_snapshot(std::ostream& os, const SnapshotHeader& h, std::span<const double> values) {
    if (values.size() != payload_count(h))
        throw SnapshotError("payload size does not match the STF1 header");
    os.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(h.kind));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(h.staggering));
    put_le<std::uint32_t>(os, h.nx);
    put_le<std::uint32_t>(os, h.nz);
    put_le<double>(os, h.x_extent);
    for (double v : values) put_le<double>(os, v);
    if (!os) throw SnapshotError("failed writing STF1 stream");
}

RawSnapshot read_raw_snapshot(std::istream& is) {
    std::array<char, 4> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != kMagic) throw SnapshotError("missing STF1 magic");
    RawSnapshot s;
    const auto kind = get_le<std::uint32_t>(is);
    const auto stag = get_le<std::uint32_t>(is);
    if (kind > 1) throw SnapshotError("unknown domain kind " + std::to_string(kind));
    if (stag > 3) throw SnapshotError("unknown staggering " + std::to_string(stag));
    s.header.kind = static_cast<DomainKind>(kind);
    s.header.staggering = static_cast<Staggering>(stag);
    s.header.nx = get_le<std::uint32_t>(is);
    s.header.nz = get_le<std::uint32_t>(is);
    s.header.x_extent = get_le<double>(is);
    if (s.header.nx == 0 || s.header.nz == 0 || s.header.nx > (1u << 16) || s.header.nz > (1u << 16))
        throw SnapshotError("implausible STF1 grid size");
    const std::size_t n = payload_count(s.header);
    s.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) s.values[j] = get_le<double>(is);
    return s;
}

void write_snapshot(std::ostream& os, const ScalarField& f) {
    SnapshotHeader h;
    h.kind = f.domain().kind;
    h.staggering = f.staggering();
    h.nx = static_cast<std::uint32_t>(f.grid().nx);
    h.nz = static_cast<std::uint32_t>(f.grid().nz);
    h.x_extent = f.domain().x_extent;
    write_raw_snapshot(os, h, f.values());
}

ScalarField read_scalar_snapshot(std::istream& is) {
    RawSnapshot s = read_raw_snapshot(is);
    if (s.header.staggering == Staggering::FlowMap)
        throw SnapshotError("snapshot holds a flow map, not a scalar field");
    return ScalarField(s.grid(), s.header.staggering, std::move(s.values));
}

void save_snapshot(const std::filesystem::path& path, const ScalarField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw SnapshotError("cannot open " + path.string());
    write_snapshot(os, f);
}

ScalarField load_scalar_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw SnapshotError("cannot open " + path.string());
    return read_scalar_snapshot(is);
}

}  // namespace stt
