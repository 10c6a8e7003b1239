#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "roadcast/geo.hpp"

namespace roadcast {

enum class QueryMode { LocationSearch, RouteCar, RouteBus, RouteBike, RouteWalk };

QueryMode parse_mode(const std::string& s);
std::string mode_name(QueryMode m);

/// Travel speed in km/h used to estimate arrival times for a mode.
double mode_speed_kmh(QueryMode m);

/// One raw map-search record as ingested.
struct RawQuery {
    std::string user_id;
    double search_ts = 0.0;  // epoch seconds
    GeoPoint cur;            // current location
    GeoPoint start;          // searched starting location
    GeoPoint dest;           // searched destination
    std::string start_word;
    std::string dest_word;
    QueryMode mode = QueryMode::LocationSearch;
};

/// A preprocessed query with estimated start/arrival times and grid cells.
/// Cell coordinates are -1/-1 when the point falls outside the grid.
struct Query {
    double t_s = 0.0;  // estimated start, epoch seconds
    double t_d = 0.0;  // estimated arrival, epoch seconds
    std::string s;     // start query word
    std::string d;     // destination query word
    GeoPoint start;
    GeoPoint dest;
    Cell cell_s{-1, -1};
    Cell cell_d{-1, -1};
};

/// Sparse counts of estimated arrivals per grid cell per time bin.
class ArrivalTimeTensor {
public:
    ArrivalTimeTensor(GridMap grid, double t0, double bin_s, int num_bins);

    const GridMap& grid() const { return grid_; }
    double t0() const { return t0_; }
    double bin_seconds() const { return bin_s_; }
    int num_bins() const { return num_bins_; }

    void add(int x, int y, int t, int64_t count = 1);
    int64_t at(int x, int y, int t) const;

    int64_t total_count() const { return total_; }
    /// rho_d = total count / (R * C * T).
    double density() const;

    /// Sparse entries keyed by flattened (t * R + y) * C + x; values are counts.
    const std::map<int64_t, int64_t>& entries() const { return entries_; }
    int64_t key(int x, int y, int t) const;
    void unkey(int64_t k, int& x, int& y, int& t) const;

private:
    GridMap grid_;
    double t0_;
    double bin_s_;
    int num_bins_;
    int64_t total_ = 0;
    std::map<int64_t, int64_t> entries_;
};

/// Deduplicates per user: a query is dropped iff the same user has a later
/// query within 600 seconds. Input must be sorted by (user_id, search_ts);
/// throws std::invalid_argument otherwise.
std::vector<RawQuery> dedup(const std::vector<RawQuery>& queries);

/// Keeps exactly the queries whose current location is strictly closer than
/// 2000 m to the starting location.
std::vector<RawQuery> filter_proximity(const std::vector<RawQuery>& queries);

/// Estimates start and arrival times for one query and assigns grid cells.
/// For location searches the start is the current location.
Query estimate_times(const RawQuery& q, const GridMap& grid);

struct TensorBuildStats {
    int64_t counted = 0;
    int64_t skipped_outside_grid = 0;
    int64_t skipped_outside_time = 0;
    int64_t skipped() const { return skipped_outside_grid + skipped_outside_time; }
};

ArrivalTimeTensor build_arrival_tensor(const std::vector<Query>& queries, const GridMap& grid,
                                       double t0, double bin_s, int num_bins,
                                       TensorBuildStats* stats = nullptr);

// --- CSV schemas ---

extern const std::vector<std::string> kRawQueryHeader;      // user_id,search_ts,cur_lon,...
extern const std::vector<std::string> kFilteredQueryHeader; // t_s,t_d,s,d,...
extern const std::vector<std::string> kTensorHeader;        // x,y,t,count

std::vector<RawQuery> read_raw_queries_csv(const std::string& path);
void write_raw_queries_csv(const std::string& path, const std::vector<RawQuery>& queries);

std::vector<Query> read_queries_csv(const std::string& path);
void write_queries_csv(const std::string& path, const std::vector<Query>& queries);

ArrivalTimeTensor read_tensor_csv(const std::string& path, const GridMap& grid, double t0,
                                  double bin_s, int num_bins);
void write_tensor_csv(const std::string& path, const ArrivalTimeTensor& tensor);

}  // namespace roadcast
