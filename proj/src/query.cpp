#include "roadcast/query.hpp"

#include <cmath>
#include <stdexcept>

#include "roadcast/csv.hpp"

namespace roadcast {

namespace {
constexpr double kDedupWindowS = 600.0;
constexpr double kProximityCutoffM = 2000.0;
constexpr double kWalkSpeedKmh = 3.6;
constexpr double kLocationBusCutoffM = 2000.0;

double travel_seconds(double meters, double speed_kmh) {
    return meters * 3.6 / speed_kmh;
}
}  // namespace

QueryMode parse_mode(const std::string& s) {
    if (s == "location_search") return QueryMode::LocationSearch;
    if (s == "route_car") return QueryMode::RouteCar;
    if (s == "route_bus") return QueryMode::RouteBus;
    if (s == "route_bike") return QueryMode::RouteBike;
    if (s == "route_walk") return QueryMode::RouteWalk;
    throw std::invalid_argument("unknown query mode: '" + s + "'");
}

std::string mode_name(QueryMode m) {
    switch (m) {
        case QueryMode::LocationSearch: return "location_search";
        case QueryMode::RouteCar: return "route_car";
        case QueryMode::RouteBus: return "route_bus";
        case QueryMode::RouteBike: return "route_bike";
        case QueryMode::RouteWalk: return "route_walk";
    }
    throw std::logic_error("bad QueryMode");
}

double mode_speed_kmh(QueryMode m) {
    switch (m) {
        case QueryMode::RouteCar: return 30.0;
        case QueryMode::RouteBus: return 20.0;
        case QueryMode::RouteBike: return 10.0;
        case QueryMode::RouteWalk: return kWalkSpeedKmh;
        case QueryMode::LocationSearch: return 0.0;  // distance-dependent, see estimate_times
    }
    throw std::logic_error("bad QueryMode");
}

ArrivalTimeTensor::ArrivalTimeTensor(GridMap grid, double t0, double bin_s, int num_bins)
    : grid_(std::move(grid)), t0_(t0), bin_s_(bin_s), num_bins_(num_bins) {
    if (bin_s <= 0.0) throw std::invalid_argument("ArrivalTimeTensor: bin size must be positive");
    if (num_bins < 1) throw std::invalid_argument("ArrivalTimeTensor: need at least one bin");
}

int64_t ArrivalTimeTensor::key(int x, int y, int t) const {
    return (static_cast<int64_t>(t) * grid_.rows() + y) * grid_.cols() + x;
}

void ArrivalTimeTensor::unkey(int64_t k, int& x, int& y, int& t) const {
    x = static_cast<int>(k % grid_.cols());
    k /= grid_.cols();
    y = static_cast<int>(k % grid_.rows());
    t = static_cast<int>(k / grid_.rows());
}

void ArrivalTimeTensor::add(int x, int y, int t, int64_t count) {
    if (x < 0 || x >= grid_.cols() || y < 0 || y >= grid_.rows() || t < 0 || t >= num_bins_)
        throw std::out_of_range("ArrivalTimeTensor::add: index out of range");
    if (count <= 0) throw std::invalid_argument("ArrivalTimeTensor::add: count must be positive");
    entries_[key(x, y, t)] += count;
    total_ += count;
}

int64_t ArrivalTimeTensor::at(int x, int y, int t) const {
    if (x < 0 || x >= grid_.cols() || y < 0 || y >= grid_.rows() || t < 0 || t >= num_bins_) return 0;
    auto it = entries_.find(key(x, y, t));
    return it == entries_.end() ? 0 : it->second;
}

double ArrivalTimeTensor::density() const {
    const double cells = static_cast<double>(grid_.rows()) * grid_.cols() * num_bins_;
    return static_cast<double>(total_) / cells;
}

std::vector<RawQuery> dedup(const std::vector<RawQuery>& queries) {
    for (size_t i = 1; i < queries.size(); ++i) {
        const auto& a = queries[i - 1];
        const auto& b = queries[i];
        if (a.user_id > b.user_id || (a.user_id == b.user_id && a.search_ts > b.search_ts))
            throw std::invalid_argument("dedup: input not sorted by (user_id, search_ts) at row " +
                                        std::to_string(i));
    }
    std::vector<RawQuery> kept;
    kept.reserve(queries.size());
    for (size_t i = 0; i < queries.size(); ++i) {
        bool superseded = i + 1 < queries.size() &&
                          queries[i + 1].user_id == queries[i].user_id &&
                          queries[i + 1].search_ts - queries[i].search_ts <= kDedupWindowS;
        if (!superseded) kept.push_back(queries[i]);
    }
    return kept;
}

std::vector<RawQuery> filter_proximity(const std::vector<RawQuery>& queries) {
    std::vector<RawQuery> kept;
    kept.reserve(queries.size());
    for (const auto& q : queries)
        if (distance_m(q.cur, q.start) < kProximityCutoffM) kept.push_back(q);
    return kept;
}

Query estimate_times(const RawQuery& q, const GridMap& grid) {
    Query out;
    out.s = q.start_word;
    out.d = q.dest_word;
    out.dest = q.dest;
    out.start = q.mode == QueryMode::LocationSearch ? q.cur : q.start;

    out.t_s = q.search_ts + travel_seconds(distance_m(q.cur, out.start), kWalkSpeedKmh);

    const double trip_m = distance_m(out.start, out.dest);
    double speed_kmh;
    if (q.mode == QueryMode::LocationSearch) {
        speed_kmh = trip_m > kLocationBusCutoffM ? 20.0 : kWalkSpeedKmh;
    } else {
        speed_kmh = mode_speed_kmh(q.mode);
    }
    out.t_d = out.t_s + travel_seconds(trip_m, speed_kmh);

    if (auto c = grid.try_to_cell(out.start)) out.cell_s = *c;
    if (auto c = grid.try_to_cell(out.dest)) out.cell_d = *c;
    return out;
}

ArrivalTimeTensor build_arrival_tensor(const std::vector<Query>& queries, const GridMap& grid,
                                       double t0, double bin_s, int num_bins,
                                       TensorBuildStats* stats) {
    ArrivalTimeTensor tensor(grid, t0, bin_s, num_bins);
    TensorBuildStats local;
    for (const auto& q : queries) {
        auto cell = grid.try_to_cell(q.dest);
        if (!cell) {
            ++local.skipped_outside_grid;
            continue;
        }
        const int t = static_cast<int>(std::floor((q.t_d - t0) / bin_s));
        if (t < 0 || t >= num_bins) {
            ++local.skipped_outside_time;
            continue;
        }
        tensor.add(cell->x, cell->y, t);
        ++local.counted;
    }
    if (stats) *stats = local;
    return tensor;
}

// --- CSV ---

const std::vector<std::string> kRawQueryHeader = {
    "user_id", "search_ts", "cur_lon", "cur_lat", "start_lon", "start_lat",
    "dest_lon", "dest_lat", "start_word", "dest_word", "mode"};

const std::vector<std::string> kFilteredQueryHeader = {
    "t_s", "t_d", "s", "d", "start_lon", "start_lat", "dest_lon", "dest_lat",
    "x_s", "y_s", "x_d", "y_d"};

const std::vector<std::string> kTensorHeader = {"x", "y", "t", "count"};

std::vector<RawQuery> read_raw_queries_csv(const std::string& path) {
    auto rows = csv::read_with_header(path, kRawQueryHeader);
    std::vector<RawQuery> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        RawQuery q;
        q.user_id = r[0];
        q.search_ts = csv::parse_double(r[1], path + ":search_ts");
        q.cur = {csv::parse_double(r[2], path), csv::parse_double(r[3], path)};
        q.start = {csv::parse_double(r[4], path), csv::parse_double(r[5], path)};
        q.dest = {csv::parse_double(r[6], path), csv::parse_double(r[7], path)};
        q.start_word = r[8];
        q.dest_word = r[9];
        q.mode = parse_mode(r[10]);
        out.push_back(std::move(q));
    }
    return out;
}

void write_raw_queries_csv(const std::string& path, const std::vector<RawQuery>& queries) {
    csv::Writer w(path);
    w.row(kRawQueryHeader);
    for (const auto& q : queries) {
        w.row({q.user_id, csv::format_double(q.search_ts), csv::format_double(q.cur.lon),
               csv::format_double(q.cur.lat), csv::format_double(q.start.lon),
               csv::format_double(q.start.lat), csv::format_double(q.dest.lon),
               csv::format_double(q.dest.lat), q.start_word, q.dest_word, mode_name(q.mode)});
    }
}

std::vector<Query> read_queries_csv(const std::string& path) {
    auto rows = csv::read_with_header(path, kFilteredQueryHeader);
    std::vector<Query> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        Query q;
        q.t_s = csv::parse_double(r[0], path + ":t_s");
        q.t_d = csv::parse_double(r[1], path + ":t_d");
        q.s = r[2];
        q.d = r[3];
        q.start = {csv::parse_double(r[4], path), csv::parse_double(r[5], path)};
        q.dest = {csv::parse_double(r[6], path), csv::parse_double(r[7], path)};
        q.cell_s = {static_cast<int>(csv::parse_int(r[8], path)),
                    static_cast<int>(csv::parse_int(r[9], path))};
        q.cell_d = {static_cast<int>(csv::parse_int(r[10], path)),
                    static_cast<int>(csv::parse_int(r[11], path))};
        out.push_back(std::move(q));
    }
    return out;
}

void write_queries_csv(const std::string& path, const std::vector<Query>& queries) {
    csv::Writer w(path);
    w.row(kFilteredQueryHeader);
    for (const auto& q : queries) {
        w.row({csv::format_double(q.t_s), csv::format_double(q.t_d), q.s, q.d,
               csv::format_double(q.start.lon), csv::format_double(q.start.lat),
               csv::format_double(q.dest.lon), csv::format_double(q.dest.lat),
               std::to_string(q.cell_s.x), std::to_string(q.cell_s.y),
               std::to_string(q.cell_d.x), std::to_string(q.cell_d.y)});
    }
}

ArrivalTimeTensor read_tensor_csv(const std::string& path, const GridMap& grid, double t0,
                                  double bin_s, int num_bins) {
    auto rows = csv::read_with_header(path, kTensorHeader);
    ArrivalTimeTensor tensor(grid, t0, bin_s, num_bins);
    for (const auto& r : rows) {
        tensor.add(static_cast<int>(csv::parse_int(r[0], path)),
                   static_cast<int>(csv::parse_int(r[1], path)),
                   static_cast<int>(csv::parse_int(r[2], path)), csv::parse_int(r[3], path));
    }
    return tensor;
}

void write_tensor_csv(const std::string& path, const ArrivalTimeTensor& tensor) {
    csv::Writer w(path);
    w.row(kTensorHeader);
    for (const auto& [k, count] : tensor.entries()) {
        int x, y, t;
        tensor.unkey(k, x, y, t);
        w.row({std::to_string(x), std::to_string(y), std::to_string(t), std::to_string(count)});
    }
}

}  // namespace roadcast
