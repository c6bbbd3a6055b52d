#include "stormtrack/pgrd.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "stormtrack/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "PGRD I/O assumes a little-endian host");

namespace stormtrack {

namespace {

constexpr char kMagic[4] = {'P', 'G', 'R', 'D'};

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    void bytes(void* dst, std::size_t n, const char* what) {
        in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (in_.gcount() != static_cast<std::streamsize>(n))
            throw DataError(std::string("corrupt file: truncated ") + what);
    }

    template <typename T>
    T scalar(const char* what) {
        T v;
        bytes(&v, sizeof v, what);
        return v;
    }

private:
    std::istream& in_;
};

template <typename T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

}  // namespace

FieldSeries read_series(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
    Reader r(in);

    char magic[4];
    r.bytes(magic, 4, "magic");
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw DataError("format error: bad magic in '" + path.string() + "'");
    const auto version = r.scalar<std::uint32_t>("version");
    if (version != kPgrdVersion)
        throw DataError("format error: unsupported version " + std::to_string(version));

    FieldSeries s;
    const auto nx = r.scalar<std::uint32_t>("nx");
    const auto ny = r.scalar<std::uint32_t>("ny");
    const auto nt = r.scalar<std::uint32_t>("nt");
    if (nx == 0 || ny == 0) throw DataError("format error: zero grid extent");
    s.spec.nx = static_cast<int>(nx);
    s.spec.ny = static_cast<int>(ny);
    s.spec.cell_km = r.scalar<double>("cell_km");
    s.dt_hours = r.scalar<double>("dt_hours");
    s.spec.origin_lon = r.scalar<double>("origin_lon");
    s.spec.origin_lat = r.scalar<double>("origin_lat");
    if (!(s.spec.cell_km > 0) || !(s.dt_hours > 0))
        throw DataError("format error: non-positive cell_km or dt_hours");

    const auto t0_len = r.scalar<std::uint32_t>("t0 length");
    if (t0_len > 64) throw DataError("format error: implausible t0 length");
    s.t0.resize(t0_len);
    if (t0_len > 0) r.bytes(s.t0.data(), t0_len, "t0");
    parse_iso8601_utc(s.t0);

    const std::int64_t n = s.spec.n_cells();
    s.mask.resize(static_cast<std::size_t>(n));
    r.bytes(s.mask.data(), static_cast<std::size_t>(n), "mask");
    for (auto& m : s.mask)
        if (m > 1) throw DataError("corrupt file: mask byte out of range");

    s.values.resize(static_cast<std::size_t>(n) * nt);
    if (!s.values.empty())
        r.bytes(s.values.data(), s.values.size() * sizeof(float), "payload");

    for (std::uint32_t t = 0; t < nt; ++t) {
        const auto g = s.grid(static_cast<int>(t));
        for (std::int64_t i = 0; i < n; ++i) {
            if (s.mask[i]) {
                if (!std::isfinite(g[i]) || g[i] < 0.0f)
                    throw DataError("invalid data: negative or non-finite value at valid cell");
            } else if (g[i] != kMaskedSentinel) {
                throw DataError("corrupt file: masked cell payload is not the sentinel");
            }
        }
    }
    return s;
}

void write_series(const FieldSeries& series, const std::filesystem::path& path) {
    series.validate();

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");

    out.write(kMagic, 4);
    put(out, kPgrdVersion);
    put(out, static_cast<std::uint32_t>(series.spec.nx));
    put(out, static_cast<std::uint32_t>(series.spec.ny));
    put(out, static_cast<std::uint32_t>(series.nt()));
    put(out, series.spec.cell_km);
    put(out, series.dt_hours);
    put(out, series.spec.origin_lon);
    put(out, series.spec.origin_lat);
    put(out, static_cast<std::uint32_t>(series.t0.size()));
    out.write(series.t0.data(), static_cast<std::streamsize>(series.t0.size()));
    out.write(reinterpret_cast<const char*>(series.mask.data()),
              static_cast<std::streamsize>(series.mask.size()));
    out.write(reinterpret_cast<const char*>(series.values.data()),
              static_cast<std::streamsize>(series.values.size() * sizeof(float)));
    out.flush();
    if (!out) throw DataError("I/O error while writing '" + path.string() + "'");
}

namespace {

std::vector<std::vector<double>> read_csv_grid(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            try {
                row.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw DataError("invalid data: non-numeric field '" + field + "' in " +
                                path.string());
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("invalid data: empty CSV grid " + path.string());
    for (const auto& row : rows)
        if (row.size() != rows.front().size())
            throw DataError("invalid data: ragged CSV grid " + path.string());
    return rows;
}

}  // namespace

FieldSeries series_from_csv(const std::vector<std::filesystem::path>& grid_csvs,
                            double cell_km, const std::string& t0, double dt_hours,
                            double origin_lon, double origin_lat,
                            const std::filesystem::path& mask_csv) {
    if (grid_csvs.empty()) throw ConfigError("series_from_csv: no input grids");

    const auto first = read_csv_grid(grid_csvs.front());
    GridSpec spec;
    spec.ny = static_cast<int>(first.size());
    spec.nx = static_cast<int>(first.front().size());
    spec.cell_km = cell_km;
    spec.origin_lon = origin_lon;
    spec.origin_lat = origin_lat;

    FieldSeries s = make_series(spec, static_cast<int>(grid_csvs.size()), t0, dt_hours);

    if (!mask_csv.empty()) {
        const auto mrows = read_csv_grid(mask_csv);
        if (static_cast<int>(mrows.size()) != spec.ny ||
            static_cast<int>(mrows.front().size()) != spec.nx)
            throw DataError("invalid data: mask grid shape differs from field grids");
        for (int y = 0; y < spec.ny; ++y)
            for (int x = 0; x < spec.nx; ++x)
                s.mask[s.cell(x, y)] = mrows[y][x] != 0.0 ? 1 : 0;
    }

    for (std::size_t t = 0; t < grid_csvs.size(); ++t) {
        const auto rows = t == 0 ? first : read_csv_grid(grid_csvs[t]);
        if (static_cast<int>(rows.size()) != spec.ny ||
            static_cast<int>(rows.front().size()) != spec.nx)
            throw DataError("invalid data: grid shape differs across timesteps (" +
                            grid_csvs[t].string() + ")");
        auto g = s.grid(static_cast<int>(t));
        for (int y = 0; y < spec.ny; ++y) {
            for (int x = 0; x < spec.nx; ++x) {
                const std::int64_t i = s.cell(x, y);
                if (!s.mask[i]) {
                    g[i] = kMaskedSentinel;
                    continue;
                }
                const double v = rows[y][x];
                if (!(v >= 0.0) || !std::isfinite(v))
                    throw DataError("invalid data: negative or non-finite value at valid cell in " +
                                    grid_csvs[t].string());
                g[i] = static_cast<float>(v);
            }
        }
    }
    return s;
}

}  // namespace stormtrack
