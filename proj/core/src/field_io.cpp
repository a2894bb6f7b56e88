#include <cstdio>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vkg/error.hpp"
#include "vkg/field.hpp"

namespace vkg {

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out)
{
    std::ofstream os(path, mode);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    return os;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in)
{
    std::ifstream is(path, mode);
    if (!is)
        throw std::runtime_error("cannot open " + path);
    return is;
}

std::string fmt17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> split_doubles(const std::string& line)
{
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(std::stod(cell));
    return out;
}

constexpr std::uint64_t kBinaryMagic = 0x564b47534f555243ull; // "VKGSOURC"

} // namespace

// Header lines "# lattice ox oy oz spacing nx ny nz", then t,i,j,k,value rows.
void SourceHistory::write_csv(const std::string& path) const
{
    auto os = open_out(path);
    os << "# lattice " << fmt17(lattice_.origin.x) << ' ' << fmt17(lattice_.origin.y) << ' ' << fmt17(lattice_.origin.z)
       << ' ' << fmt17(lattice_.spacing) << ' ' << lattice_.extents[0] << ' ' << lattice_.extents[1] << ' '
       << lattice_.extents[2] << '\n';
    os << "t,i,j,k,value\n";
    for (std::size_t n = 0; n < times_.size(); ++n)
        for (std::size_t k = 0; k < lattice_.extents[2]; ++k)
            for (std::size_t j = 0; j < lattice_.extents[1]; ++j)
                for (std::size_t i = 0; i < lattice_.extents[0]; ++i)
                    os << fmt17(times_[n]) << ',' << i << ',' << j << ',' << k << ','
                       << fmt17(values_[n][lattice_.flat(i, j, k)]) << '\n';
}

SourceHistory SourceHistory::read_csv(const std::string& path)
{
    auto is = open_in(path);
    std::string line;
    BoxLattice lat;
    if (!std::getline(is, line) || line.rfind("# lattice ", 0) != 0)
        throw DomainError("source csv: missing lattice header");
    {
        std::stringstream ss(line.substr(10));
        ss >> lat.origin.x >> lat.origin.y >> lat.origin.z >> lat.spacing >> lat.extents[0] >> lat.extents[1] >>
            lat.extents[2];
        if (!ss)
            throw DomainError("source csv: malformed lattice header");
    }
    std::getline(is, line);
    std::vector<double> times;
    std::vector<std::vector<double>> values;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto row = split_doubles(line);
        if (row.size() != 5)
            throw DomainError("source csv: expected 5 columns");
        if (times.empty() || row[0] != times.back()) {
            times.push_back(row[0]);
            values.emplace_back(lat.size(), 0.0);
        }
        const auto i = static_cast<std::size_t>(row[1]), j = static_cast<std::size_t>(row[2]),
                   k = static_cast<std::size_t>(row[3]);
        if (i >= lat.extents[0] || j >= lat.extents[1] || k >= lat.extents[2])
            throw DomainError("source csv: index outside lattice");
        values.back()[lat.flat(i, j, k)] = row[4];
    }
    return SourceHistory(std::move(times), lat, std::move(values));
}

void SourceHistory::write_binary(const std::string& path) const
{
    auto os = open_out(path, std::ios::binary);
    auto put_u = [&](std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), sizeof v); };
    auto put_d = [&](double v) { os.write(reinterpret_cast<const char*>(&v), sizeof v); };
    put_u(kBinaryMagic);
    put_u(times_.size());
    put_d(lattice_.origin.x);
    put_d(lattice_.origin.y);
    put_d(lattice_.origin.z);
    put_d(lattice_.spacing);
    for (auto e : lattice_.extents)
        put_u(e);
    for (double t : times_)
        put_d(t);
    for (const auto& slice : values_)
        os.write(reinterpret_cast<const char*>(slice.data()), static_cast<std::streamsize>(slice.size() * sizeof(double)));
}

SourceHistory SourceHistory::read_binary(const std::string& path)
{
    auto is = open_in(path, std::ios::binary);
    auto get_u = [&] {
        std::uint64_t v = 0;
        is.read(reinterpret_cast<char*>(&v), sizeof v);
        return v;
    };
    auto get_d = [&] {
        double v = 0;
        is.read(reinterpret_cast<char*>(&v), sizeof v);
        return v;
    };
    if (get_u() != kBinaryMagic)
        throw DomainError("source binary: bad magic");
    const auto nt = get_u();
    BoxLattice lat;
    lat.origin.x = get_d();
    lat.origin.y = get_d();
    lat.origin.z = get_d();
    lat.spacing = get_d();
    for (auto& e : lat.extents)
        e = get_u();
    if (!is || nt > (1u << 24) || lat.size() > (std::size_t{1} << 32))
        throw DomainError("source binary: corrupt header");
    std::vector<double> times(nt);
    for (auto& t : times)
        t = get_d();
    std::vector<std::vector<double>> values(nt, std::vector<double>(lat.size()));
    for (auto& slice : values)
        is.read(reinterpret_cast<char*>(slice.data()), static_cast<std::streamsize>(slice.size() * sizeof(double)));
    if (!is)
        throw DomainError("source binary: truncated file");
    return SourceHistory(std::move(times), lat, std::move(values));
}

// Rows t,r,value on the shared radial grid.
void RadialSourceHistory::write_csv(const std::string& path) const
{
    auto os = open_out(path);
    os << "t,r,value\n";
    for (std::size_t n = 0; n < times_.size(); ++n)
        for (std::size_t j = 0; j < profiles_[n].size(); ++j)
            os << fmt17(times_[n]) << ',' << fmt17(profiles_[n].node(j)) << ',' << fmt17(profiles_[n].values()[j])
               << '\n';
}

RadialSourceHistory RadialSourceHistory::read_csv(const std::string& path)
{
    auto is = open_in(path);
    std::string line;
    std::getline(is, line);
    std::vector<double> times;
    std::vector<std::vector<double>> rows;
    std::vector<double> radii;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto row = split_doubles(line);
        if (row.size() != 3)
            throw DomainError("radial source csv: expected 3 columns");
        if (times.empty() || row[0] != times.back()) {
            times.push_back(row[0]);
            rows.emplace_back();
        }
        if (times.size() == 1)
            radii.push_back(row[1]);
        rows.back().push_back(row[2]);
    }
    if (radii.size() < 2)
        throw DomainError("radial source csv: need at least two radii");
    const double h = radii[1] - radii[0];
    std::vector<RadialProfile> profiles;
    for (auto& r : rows) {
        if (r.size() != radii.size())
            throw DomainError("radial source csv: ragged rows");
        profiles.emplace_back(h, std::move(r));
    }
    return RadialSourceHistory(std::move(times), std::move(profiles));
}

} // namespace vkg
